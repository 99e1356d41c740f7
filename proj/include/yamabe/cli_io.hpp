#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "yamabe/boundary_data.hpp"
#include "yamabe/diagnostics.hpp"
#include "yamabe/exhaustion.hpp"
#include "yamabe/initial_data.hpp"
#include "yamabe/radial_solver.hpp"

namespace yamabe {

inline constexpr int kSchemaVersion = 1;

enum class Command { Run, Compare, Exhaust, Incompleteness, Barriers };

std::string to_string(Command c);

struct RunConfig {
    Command command = Command::Run;
    int dimension = 3;
    InitialPreset preset = preset::Bump{};
    std::optional<InitialPreset> lower_preset;  ///< compare: the flow expected below
    double ell = 6.0;
    std::optional<double> r_min;                ///< default 0 (H^m, sphere) or 1 (power law)
    std::size_t nodes = 400;
    double dt = 1e-3;
    double t_final = 0.5;
    double theta = 1.0;
    GradientTreatment gradient = GradientTreatment::ImplicitLinearized;
    BoundaryMode boundary = BoundaryMode::Constructed;
    std::vector<double> ladder{3.0, 4.0, 5.0, 6.0};
    std::vector<double> domains;                ///< incompleteness; default {l/2, l}
    std::optional<double> b_flat;
    std::string output = "yamabe_out";

    double resolved_r_min() const;
    SolveConfig solve_config() const;
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Thrown by parse_config for --help; carries the formatted help text.
struct HelpRequested {
    std::string text;
};

/// "constant:1.0", "flatstatic:4", "bump", "bump:base,amp,center,width",
/// "puncturedsphere", "powerlaw:1". Throws ConfigError.
InitialPreset parse_preset(const std::string& text);

/// Parses `subcommand [flags]` (args exclude the program name). A
/// `--config FILE` of key=value lines (keys are flag names, # comments)
/// supplies values that flags on the command line override. Unknown keys and
/// malformed values raise ConfigError naming the key.
RunConfig parse_config(const std::vector<std::string>& args);

nlohmann::json to_json(const RunConfig& c);
nlohmann::json to_json(const DataBounds& b);
nlohmann::json to_json(const BarrierReport& r);
nlohmann::json to_json(const ComparisonReport& r);
nlohmann::json to_json(const ConvergenceReport& r);
nlohmann::json to_json(const CompletenessReport& r);

/// Writes `csv_path` (header t,r,u,U,R_elliptic, time-outer rows, %.17g) and,
/// when `sidecar` is not null, the same path with extension .json carrying
/// schema_version plus the sidecar's fields. Throws std::runtime_error with
/// the path on I/O failure.
void export_trajectory(const FlowTrajectory& traj, const std::filesystem::path& csv_path,
                       const nlohmann::json& sidecar = nullptr);

/// Long-format table read back from an exported CSV.
struct TrajectoryTable {
    std::vector<double> times;
    std::vector<double> radii;
    std::vector<std::vector<double>> u, U, R;  ///< [time][node]
};

TrajectoryTable import_trajectory(const std::filesystem::path& csv_path);

/// Runs one command, writes outputs and a summary to `log`; returns the exit
/// code (0 iff every requested check passes).
int execute(const RunConfig& config, std::ostream& log);

}  // namespace yamabe
