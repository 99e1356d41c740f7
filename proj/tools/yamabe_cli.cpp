// Command-line driver: yamabe_cli <run|compare|exhaust|incompleteness|barriers> [flags]

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "yamabe/cli_io.hpp"
#include "yamabe/errors.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    yamabe::RunConfig config;
    try {
        config = yamabe::parse_config(args);
    } catch (const yamabe::HelpRequested& h) {
        std::cout << h.text;
        return 0;
    } catch (const yamabe::ConfigError& e) {
        std::cerr << "yamabe_cli: " << e.what() << "\n";
        return 2;
    }
    try {
        return yamabe::execute(config, std::cout);
    } catch (const yamabe::ConfigError& e) {
        std::cerr << "yamabe_cli: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "yamabe_cli: " << e.what() << "\n";
        return 1;
    }
}
