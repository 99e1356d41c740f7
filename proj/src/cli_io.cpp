#include "yamabe/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "yamabe/errors.hpp"

namespace yamabe {

using nlohmann::json;

std::string to_string(Command c) {
    switch (c) {
        case Command::Run: return "run";
        case Command::Compare: return "compare";
        case Command::Exhaust: return "exhaust";
        case Command::Incompleteness: return "incompleteness";
        case Command::Barriers: return "barriers";
    }
    return "run";
}

namespace {

const std::map<std::string, Command> kCommands = {
    {"run", Command::Run},
    {"compare", Command::Compare},
    {"exhaust", Command::Exhaust},
    {"incompleteness", Command::Incompleteness},
    {"barriers", Command::Barriers},
};

// Flags accepted on the command line and as config-file keys.
const std::set<std::string> kKeys = {
    "dimension", "preset", "lower-preset", "ell",     "r-min",   "nodes",
    "dt",        "t-final", "theta",       "gradient", "boundary", "ladder",
    "domains",   "b-flat",  "output",
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ConfigError(what + ": '" + text + "' is not a number");
    }
    if (pos != text.size()) throw ConfigError(what + ": '" + text + "' is not a number");
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item), what));
    if (out.empty()) throw ConfigError(what + ": empty list");
    return out;
}

std::vector<std::string> read_config_file(const std::string& path, std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config " + path + ":" + std::to_string(lineno) +
                              ": expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "command") {
            command = value;
            continue;
        }
        if (!kKeys.count(key)) {
            throw ConfigError("config " + path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
        args.push_back("--" + key);
        args.push_back(value);
    }
    return args;
}

}  // namespace

InitialPreset parse_preset(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto single = [&](double fallback) {
        return rest.empty() ? fallback : parse_number(rest, "preset " + name);
    };
    if (name == "constant") return preset::Constant{single(1.0)};
    if (name == "flatstatic") return preset::FlatStatic{single(1.0)};
    if (name == "powerlaw") return preset::PowerLaw{single(1.0)};
    if (name == "puncturedsphere") {
        if (!rest.empty()) throw ConfigError("preset puncturedsphere takes no parameters");
        return preset::PuncturedSphere{};
    }
    if (name == "bump") {
        preset::Bump b;
        if (!rest.empty()) {
            const auto v = parse_list(rest, "preset bump");
            if (v.size() != 4) throw ConfigError("preset bump needs base,amplitude,center,width");
            b = preset::Bump{v[0], v[1], v[2], v[3]};
        }
        return b;
    }
    throw ConfigError("preset: unknown name '" + name +
                      "' (constant, flatstatic, bump, puncturedsphere, powerlaw)");
}

double RunConfig::resolved_r_min() const {
    if (r_min) return *r_min;
    return std::holds_alternative<preset::PowerLaw>(preset) ? 1.0 : 0.0;
}

SolveConfig RunConfig::solve_config() const {
    SolveConfig c;
    c.dt = dt;
    c.t_final = t_final;
    c.theta = theta;
    c.gradient = gradient;
    return c;
}

void RunConfig::validate() const {
    if (dimension < 3) {
        throw ConfigError("dimension: must be >= 3 (got " + std::to_string(dimension) + ")");
    }
    if (nodes < 16) throw ConfigError("nodes: must be >= 16 (got " + std::to_string(nodes) + ")");
    if (!(dt > 0.0)) throw ConfigError("dt: must be positive");
    if (!(t_final > 0.0)) throw ConfigError("t-final: must be positive");
    if (!(dt <= t_final)) throw ConfigError("dt: must not exceed t-final");
    if (!(theta >= 0.5 && theta <= 1.0)) throw ConfigError("theta: must lie in [0.5, 1]");
    const double rmin = resolved_r_min();
    if (!(rmin >= 0.0)) throw ConfigError("r-min: must be >= 0");
    if (!(ell > rmin)) throw ConfigError("ell: must exceed r-min");
    if (command == Command::Compare && !lower_preset) {
        throw ConfigError("lower-preset: required by compare");
    }
    if (command == Command::Exhaust) {
        if (ladder.size() < 3) throw ConfigError("ladder: needs at least 3 radii");
        for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
            if (!(ladder[k] < ladder[k + 1])) throw ConfigError("ladder: must be strictly increasing");
        }
    }
    if (output.empty()) throw ConfigError("output: empty path");
}

RunConfig parse_config(const std::vector<std::string>& args) {
    // Pull --config out first; its values go before the command-line flags so
    // that the latter win (every option keeps its last value).
    std::vector<std::string> cli;
    std::optional<std::string> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) throw ConfigError("config: missing file name");
            config_path = args[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            cli.push_back(a);
        }
    }
    std::string command;
    std::vector<std::string> from_file;
    if (config_path) from_file = read_config_file(*config_path, command);
    if (!cli.empty() && !cli.front().empty() && cli.front()[0] != '-') {
        command = cli.front();
        cli.erase(cli.begin());
    }

    CLI::App app{"Rotationally symmetric Yamabe flow on hyperbolic and Euclidean space", "yamabe_cli"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    RunConfig rc;
    std::string preset_text = "bump";
    std::string lower_text, ladder_text, domains_text;
    std::string gradient_text = "implicit";
    std::string boundary_text = "constructed";
    double r_min = -1.0, b_flat = -1.0;
    app.add_option("--dimension", rc.dimension, "dimension m >= 3 (default 3)");
    app.add_option("--preset", preset_text,
                   "constant:c | flatstatic:b | bump[:base,amp,center,width] | puncturedsphere | "
                   "powerlaw:b (default bump)");
    app.add_option("--lower-preset", lower_text, "compare: flow expected to stay below");
    app.add_option("--ell", rc.ell, "outer radius l (default 6)");
    app.add_option("--r-min", r_min, "inner radius (default 0; 1 for powerlaw)");
    app.add_option("--nodes", rc.nodes, "mesh nodes (default 400)");
    app.add_option("--dt", rc.dt, "time step (default 1e-3)");
    app.add_option("--t-final", rc.t_final, "final time (default 0.5)");
    app.add_option("--theta", rc.theta, "theta-blend in [0.5, 1] (default 1)");
    app.add_option("--gradient", gradient_text, "implicit | explicit (default implicit)");
    app.add_option("--boundary", boundary_text, "constructed | frozen (default constructed)");
    app.add_option("--ladder", ladder_text, "exhaust: comma-separated radii (default 3,4,5,6)");
    app.add_option("--domains", domains_text, "incompleteness: comma-separated domain radii");
    app.add_option("--b-flat", b_flat, "flat scale b enabling the prop21_upper check");
    app.add_option("--output", rc.output, "output path stem (default yamabe_out)");

    std::vector<std::string> all = from_file;
    all.insert(all.end(), cli.begin(), cli.end());
    std::vector<std::string> reversed(all.rbegin(), all.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help() + "\nCommands: run compare exhaust incompleteness barriers\n"};
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    if (command.empty()) throw ConfigError("command: missing (run, compare, exhaust, incompleteness, barriers)");
    const auto it = kCommands.find(command);
    if (it == kCommands.end()) throw ConfigError("command: unknown '" + command + "'");
    rc.command = it->second;
    rc.preset = parse_preset(preset_text);
    if (!lower_text.empty()) rc.lower_preset = parse_preset(lower_text);
    if (r_min >= 0.0) rc.r_min = r_min;
    if (app.count("--r-min") && r_min < 0.0) throw ConfigError("r-min: must be >= 0");
    if (app.count("--b-flat")) {
        if (!(b_flat > 0.0)) throw ConfigError("b-flat: must be positive");
        rc.b_flat = b_flat;
    }
    if (gradient_text == "implicit") {
        rc.gradient = GradientTreatment::ImplicitLinearized;
    } else if (gradient_text == "explicit") {
        rc.gradient = GradientTreatment::Explicit;
    } else {
        throw ConfigError("gradient: expected implicit or explicit, got '" + gradient_text + "'");
    }
    if (boundary_text == "constructed") {
        rc.boundary = BoundaryMode::Constructed;
    } else if (boundary_text == "frozen") {
        rc.boundary = BoundaryMode::Frozen;
    } else {
        throw ConfigError("boundary: expected constructed or frozen, got '" + boundary_text + "'");
    }
    if (!ladder_text.empty()) rc.ladder = parse_list(ladder_text, "ladder");
    if (!domains_text.empty()) rc.domains = parse_list(domains_text, "domains");
    rc.validate();
    return rc;
}

// ---- JSON ----

json to_json(const RunConfig& c) {
    json j;
    j["command"] = to_string(c.command);
    j["dimension"] = c.dimension;
    j["preset"] = preset_name(c.preset);
    j["lower_preset"] = c.lower_preset ? json(preset_name(*c.lower_preset)) : json(nullptr);
    j["background"] = std::string(to_string(preset_background(c.preset)));
    j["ell"] = c.ell;
    j["r_min"] = c.resolved_r_min();
    j["nodes"] = c.nodes;
    j["dt"] = c.dt;
    j["t_final"] = c.t_final;
    j["theta"] = c.theta;
    j["gradient"] = c.gradient == GradientTreatment::Explicit ? "explicit" : "implicit";
    j["boundary"] = c.boundary == BoundaryMode::Frozen ? "frozen" : "constructed";
    j["ladder"] = c.ladder;
    j["domains"] = c.domains;
    j["b_flat"] = c.b_flat ? json(*c.b_flat) : json(nullptr);
    return j;
}

json to_json(const DataBounds& b) {
    return json{{"C0", b.C0},         {"K0", b.K0},         {"kappa", b.kappa},
                {"eps_floor", b.eps_floor}, {"min_u0", b.min_u0}, {"min_R0", b.min_R0}};
}

json to_json(const BarrierReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"worst_slack", c.worst_slack},
                          {"worst_node", c.worst_node},
                          {"worst_time", c.worst_time},
                          {"applicable", c.applicable},
                          {"pass", c.pass},
                          {"note", c.note}});
    }
    return json{{"tolerance", r.tolerance}, {"eps", r.eps}, {"pass", r.pass()}, {"checks", checks}};
}

json to_json(const ComparisonReport& r) {
    return json{{"ordering_violation", r.ordering_violation},
                {"worst_node", r.worst_node},
                {"worst_time", r.worst_time},
                {"initial_ordered", r.initial_ordered},
                {"label", r.label},
                {"tolerance", r.tolerance},
                {"S", r.S},
                {"s0", r.s0},
                {"cutoff", r.cutoff_spec},
                {"J_times", r.J_times},
                {"J_series", r.J_series}};
}

json to_json(const ConvergenceReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) {
        levels.push_back({{"ell", l.ell},
                          {"bounds", to_json(l.bounds)},
                          {"sandwich_lower", l.sandwich_lower},
                          {"sandwich_upper", l.sandwich_upper},
                          {"gradient_sup", l.gradient_sup},
                          {"max_halvings", l.max_halvings}});
    }
    return json{{"d", r.d},
                {"sample_times", r.sample_times},
                {"horizon", r.horizon},
                {"K0", r.K0},
                {"C0_finest_level", r.C0},
                {"inner_radius", r.inner_radius},
                {"d_non_increasing", r.d_non_increasing()},
                {"gradient_variation", r.gradient_variation()},
                {"gradient_ratio_last_to_second", r.gradient_ratio_last_to_second()},
                {"levels", levels}};
}

json to_json(const CompletenessReport& r) {
    json rows = json::array();
    for (const auto& s : r.lengths) {
        rows.push_back({{"domain", s.domain}, {"t", s.t}, {"length", s.length}, {"bound", s.bound}});
    }
    return json{{"background", std::string(to_string(r.background))},
                {"verdict", to_string(r.verdict)},
                {"base_radius", r.base_radius},
                {"bound_slack", r.bound_slack},
                {"stability", r.stability},
                {"spread", r.spread},
                {"bounds_hold", r.bounds_hold},
                {"monotone_in_domain", r.monotone_in_domain},
                {"lengths", rows}};
}

// ---- files ----

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, json j) {
    j["schema_version"] = kSchemaVersion;
    write_text(path, j.dump(2) + "\n");
}

}  // namespace

void export_trajectory(const FlowTrajectory& traj, const std::filesystem::path& csv_path,
                       const json& sidecar) {
    std::string text = "t,r,u,U,R_elliptic\n";
    if (!traj.empty()) {
        const auto& mesh = *traj.mesh;
        const double eta = mesh.eta();
        for (std::size_t k = 0; k < traj.size(); ++k) {
            const RadialField R = traj.curvature(k, Exec::Serial);
            const std::string t = fmt17(traj.times[k]);
            for (std::size_t i = 0; i < mesh.size(); ++i) {
                const double u = traj.u[k][i];
                text += t + ',' + fmt17(mesh[i]) + ',' + fmt17(u) + ',' +
                        fmt17(std::pow(u, eta)) + ',' + fmt17(R[i]) + '\n';
            }
        }
    }
    write_text(csv_path, text);
    if (!sidecar.is_null()) {
        auto json_path = csv_path;
        json_path.replace_extension(".json");
        write_json(json_path, sidecar);
    }
}

TrajectoryTable import_trajectory(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open '" + csv_path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "t,r,u,U,R_elliptic") {
        throw std::runtime_error("'" + csv_path.string() + "' lacks the t,r,u,U,R_elliptic header");
    }
    TrajectoryTable tab;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        double v[5];
        const char* p = line.c_str();
        for (int c = 0; c < 5; ++c) {
            char* end = nullptr;
            v[c] = std::strtod(p, &end);
            if (end == p || (c < 4 && *end != ',')) {
                throw std::runtime_error(csv_path.string() + ":" + std::to_string(lineno) +
                                         ": malformed row");
            }
            p = end + 1;
        }
        if (tab.times.empty() || tab.times.back() != v[0]) {
            tab.times.push_back(v[0]);
            tab.u.emplace_back();
            tab.U.emplace_back();
            tab.R.emplace_back();
        }
        if (tab.times.size() == 1) tab.radii.push_back(v[1]);
        tab.u.back().push_back(v[2]);
        tab.U.back().push_back(v[3]);
        tab.R.back().push_back(v[4]);
    }
    return tab;
}

// ---- commands ----

namespace {

struct Prepared {
    MeshPtr mesh;
    RadialField u0, R0;
    DataBounds bounds;
    BoundaryProfile profile;
};

Prepared prepare(const RunConfig& c, const InitialPreset& p) {
    Prepared out;
    out.mesh = std::make_shared<const RadialMesh>(preset_background(p), c.dimension,
                                                  c.resolved_r_min(), c.ell, c.nodes);
    out.u0 = make_initial(p, out.mesh);
    out.R0 = initial_scalar_curvature(out.u0);
    out.bounds = data_bounds(out.u0, out.R0);
    out.profile = make_profile(out.u0, out.R0, out.bounds, c.boundary);
    return out;
}

double max_discrepancy(const FlowTrajectory& t) {
    double d = 0.0;
    for (const auto& s : t.steps) d = std::max(d, s.curvature_discrepancy);
    return d;
}

int max_halvings(const FlowTrajectory& t) {
    int h = 0;
    for (const auto& s : t.steps) h = std::max(h, s.halvings);
    return h;
}

json run_summary(const FlowTrajectory& t) {
    json j{{"states", t.size()},
           {"max_curvature_discrepancy", max_discrepancy(t)},
           {"max_halvings", max_halvings(t)}};
    double min_u = std::numeric_limits<double>::infinity();
    for (const auto& u : t.u) min_u = std::min(min_u, *std::min_element(u.begin(), u.end()));
    j["min_u"] = min_u;
    j["evoR_max"] = t.size() >= 3 ? json(evoR_residual(t).max()) : json(nullptr);
    if (t.inner_value) j["inner_boundary"] = "Dirichlet, held at u0(r_min)";
    return j;
}

std::filesystem::path with_suffix(const std::string& stem, const std::string& suffix) {
    return std::filesystem::path(stem + suffix);
}

const char* verdict_word(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_run(const RunConfig& c, std::ostream& log) {
    Prepared p = prepare(c, c.preset);
    FlowTrajectory t = solve(p.u0, p.profile, c.solve_config());
    json side{{"config", to_json(c)}, {"bounds", to_json(p.bounds)}, {"diagnostics", run_summary(t)}};
    export_trajectory(t, with_suffix(c.output, ".csv"), side);
    log << "run " << preset_name(c.preset) << ": " << t.size() << " states to t = " << t.times.back()
        << ", min u = " << side["diagnostics"]["min_u"].get<double>()
        << ", max curvature discrepancy = " << max_discrepancy(t) << "\n";
    return 0;
}

int cmd_barriers(const RunConfig& c, std::ostream& log) {
    if (preset_background(c.preset) != Background::Hyperbolic) {
        throw ConfigError("preset: barriers needs a hyperbolic preset");
    }
    Prepared p = prepare(c, c.preset);
    FlowTrajectory t = solve(p.u0, p.profile, c.solve_config());
    const auto grid = uniform_grid(c.t_final, 1001);
    const double eps = std::min(p.bounds.eps_floor, admissible_boundary_eps(p.profile, grid));
    BarrierOptions opts;
    opts.eps = eps;
    opts.b_flat = c.b_flat;
    const BarrierReport rep = check_barriers(t, p.bounds, opts);
    bool ok = rep.pass();
    json side{{"config", to_json(c)}, {"bounds", to_json(p.bounds)}, {"diagnostics", run_summary(t)}};
    side["diagnostics"]["barriers"] = to_json(rep);
    if (c.boundary == BoundaryMode::Constructed) {
        const ProfileReport pr = check_profile_bounds(p.profile, p.bounds.K0, eps, grid);
        side["diagnostics"]["boundary_profile"] = {{"pass", pr.pass},
                                                   {"worst_phi_lower", pr.worst_phi_lower},
                                                   {"worst_phi_upper", pr.worst_phi_upper},
                                                   {"worst_curv_lower", pr.worst_curv_lower},
                                                   {"worst_curv_upper", pr.worst_curv_upper}};
        ok = ok && pr.pass;
        log << "boundary profile: " << verdict_word(pr.pass) << "\n";
    }
    export_trajectory(t, with_suffix(c.output, ".csv"), side);
    for (const auto& ch : rep.checks) {
        log << ch.name << ": "
            << (ch.applicable ? verdict_word(ch.pass) : "n/a") << "  worst slack " << ch.worst_slack
            << " (node " << ch.worst_node << ", t = " << ch.worst_time << ")";
        if (!ch.note.empty()) log << "  [" << ch.note << "]";
        log << "\n";
    }
    return ok ? 0 : 1;
}

int cmd_compare(const RunConfig& c, std::ostream& log) {
    if (preset_background(c.preset) != Background::Hyperbolic ||
        preset_background(*c.lower_preset) != Background::Hyperbolic) {
        throw ConfigError("preset: compare needs hyperbolic presets");
    }
    Prepared up = prepare(c, c.preset);
    Prepared lo = prepare(c, *c.lower_preset);
    lo.mesh = up.mesh;
    const SolveConfig sc = c.solve_config();
    FlowTrajectory tu = solve(up.u0, up.profile, sc);
    FlowTrajectory tl = solve(RadialField(up.mesh, lo.u0.values), lo.profile, sc);
    const ComparisonReport rep = compare_flows(tu, tl);
    const bool ok = rep.initial_ordered && rep.ordering_violation <= rep.tolerance;
    json side{{"config", to_json(c)},
              {"bounds", to_json(up.bounds)},
              {"lower_bounds", to_json(lo.bounds)},
              {"diagnostics", {{"comparison", to_json(rep)}}}};
    export_trajectory(tu, with_suffix(c.output, ".csv"), side);
    export_trajectory(tl, with_suffix(c.output, "_lower.csv"));
    const double Jmax = rep.J_series.empty()
                            ? 0.0
                            : *std::max_element(rep.J_series.begin(), rep.J_series.end());
    log << "compare " << preset_name(c.preset) << " above " << preset_name(*c.lower_preset) << ": "
        << rep.label << ", violation " << rep.ordering_violation << ", max J " << Jmax << " -> "
        << verdict_word(ok) << "\n";
    return ok ? 0 : 1;
}

int cmd_exhaust(const RunConfig& c, std::ostream& log) {
    ExhaustionPlan plan;
    plan.ladder = c.ladder;
    plan.dimension = c.dimension;
    plan.finest_nodes = c.nodes;
    plan.config = c.solve_config();
    const ExhaustionResult res = run_exhaustion(c.preset, plan);
    const auto& rep = res.report;
    bool sandwich = true;
    for (const auto& l : rep.levels) {
        sandwich = sandwich && l.sandwich_lower >= -kBarrierTolerance &&
                   l.sandwich_upper >= -kBarrierTolerance;
    }
    const bool ok = rep.d_non_increasing() && sandwich && rep.gradient_ratio_last_to_second() <= 1.1;
    json side{{"config", to_json(c)}, {"diagnostics", {{"exhaustion", to_json(rep)}}}};
    export_trajectory(res.global, with_suffix(c.output, ".csv"), side);
    log << "exhaust horizon T = " << rep.horizon << " (K0 = " << rep.K0 << ")\n";
    for (std::size_t k = 0; k < rep.d.size(); ++k) log << "  d_" << k + 1 << " = " << rep.d[k] << "\n";
    log << "  d non-increasing: " << verdict_word(rep.d_non_increasing())
        << ", sandwich: " << verdict_word(sandwich)
        << ", gradient ratio " << rep.gradient_ratio_last_to_second() << "\n";
    return ok ? 0 : 1;
}

int cmd_incompleteness(const RunConfig& c, std::ostream& log) {
    ScanPlan plan;
    plan.domains = c.domains.empty() ? std::vector<double>{0.5 * c.ell, c.ell} : c.domains;
    plan.t_samples = uniform_grid(c.t_final, 11);
    plan.dimension = c.dimension;
    plan.r_min = c.resolved_r_min();
    plan.spacing = (c.ell - plan.r_min) / static_cast<double>(c.nodes - 1);
    plan.config = c.solve_config();
    const Background bg = preset_background(c.preset);
    plan.bound_slack = bg == Background::Hyperbolic ? 1e-3 : 1e-2;
    plan.stability = 1e-2;
    const CompletenessReport rep = completeness_scan(c.preset, plan);
    const CompletenessVerdict expected = bg == Background::Hyperbolic
                                             ? CompletenessVerdict::DivergingWithDomain
                                             : CompletenessVerdict::UniformlyBounded;
    const bool ok = rep.verdict == expected;

    std::string text = "domain,t,length,bound\n";
    for (const auto& s : rep.lengths) {
        text += fmt17(s.domain) + ',' + fmt17(s.t) + ',' + fmt17(s.length) + ',' + fmt17(s.bound) + '\n';
    }
    write_text(with_suffix(c.output, "_lengths.csv"), text);
    write_json(with_suffix(c.output, ".json"),
               json{{"config", to_json(c)}, {"diagnostics", {{"completeness", to_json(rep)}}}});
    log << "incompleteness " << preset_name(c.preset) << ": verdict " << to_string(rep.verdict)
        << " (spread " << rep.spread << ", bounds " << (rep.bounds_hold ? "hold" : "violated")
        << ") -> " << verdict_word(ok) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& log) {
    config.validate();
    switch (config.command) {
        case Command::Run: return cmd_run(config, log);
        case Command::Barriers: return cmd_barriers(config, log);
        case Command::Compare: return cmd_compare(config, log);
        case Command::Exhaust: return cmd_exhaust(config, log);
        case Command::Incompleteness: return cmd_incompleteness(config, log);
    }
    return 2;
}

}  // namespace yamabe
