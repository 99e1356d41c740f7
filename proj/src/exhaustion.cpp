#include "yamabe/exhaustion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel_for.hpp"
#include "yamabe/diagnostics.hpp"
#include "yamabe/errors.hpp"

namespace yamabe {

void ExhaustionPlan::validate() const {
    if (ladder.size() < 3) throw ConfigError("exhaustion ladder needs at least 3 levels");
    for (std::size_t k = 0; k + 1 < ladder.size(); ++k) {
        if (!(ladder[k] < ladder[k + 1])) {
            throw ConfigError("exhaustion ladder must be strictly increasing");
        }
    }
    if (!(ladder.front() > 0.0)) throw ConfigError("exhaustion ladder radii must be positive");
    const double in = inner();
    if (!(in > 0.0 && in <= ladder.front())) {
        throw ConfigError("inner radius must lie in (0, l1]");
    }
    if (finest_nodes < 16) throw ConfigError("finest_nodes must be >= 16");
    if (!(horizon_factor > 0.0 && horizon_factor < 1.0)) {
        throw ConfigError("horizon_factor must lie in (0, 1)");
    }
    if (checkpoints < 1) throw ConfigError("need at least one checkpoint");
    config.validate();
}

bool ConvergenceReport::d_non_increasing() const {
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        if (d[k + 1] > d[k]) return false;
    }
    return true;
}

bool ConvergenceReport::d_strictly_decreasing() const {
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
        if (!(d[k + 1] < d[k])) return false;
    }
    return true;
}

double ConvergenceReport::gradient_variation() const {
    if (levels.empty()) return 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& l : levels) {
        lo = std::min(lo, l.gradient_sup);
        hi = std::max(hi, l.gradient_sup);
    }
    return hi > 1e-12 ? (hi - lo) / hi : 0.0;
}

double ConvergenceReport::gradient_ratio_last_to_second() const {
    if (levels.size() < 2) return 1.0;
    const double second = levels[1].gradient_sup;
    const double last = levels.back().gradient_sup;
    if (second <= 1e-12) return last <= 1e-12 ? 1.0 : std::numeric_limits<double>::infinity();
    return last / second;
}

namespace {

struct LevelData {
    MeshPtr mesh;
    RadialField u0;
    DataBounds bounds;
    BoundaryProfile profile;
};

LevelData prepare_level(const InitialPreset& preset, const ExhaustionPlan& plan, double ell,
                        double spacing) {
    LevelData L;
    L.mesh = std::make_shared<const RadialMesh>(
        RadialMesh::with_spacing(Background::Hyperbolic, plan.dimension, 0.0, ell, spacing));
    L.u0 = make_initial(preset, L.mesh);
    RadialField R0 = initial_scalar_curvature(L.u0, Exec::Serial);
    L.bounds = data_bounds(L.u0, R0);
    L.profile = make_profile(L.u0, R0, L.bounds);
    return L;
}

// Largest spacing <= l_K/(finest_nodes-1) that divides every ladder radius, so
// levels share nodes; falls back to the plain spacing when none is found.
double ladder_spacing(const std::vector<double>& ladder, std::size_t finest_nodes) {
    const std::size_t base = finest_nodes - 1;
    for (std::size_t n = base; n <= 4 * base; ++n) {
        const double h = ladder.back() / static_cast<double>(n);
        bool aligned = true;
        for (double ell : ladder) {
            const double q = ell / h;
            if (std::abs(q - std::round(q)) > 1e-9 * q) {
                aligned = false;
                break;
            }
        }
        if (aligned) return h;
    }
    return ladder.back() / static_cast<double>(base);
}

}  // namespace

ExhaustionResult run_exhaustion(const InitialPreset& preset, const ExhaustionPlan& plan) {
    plan.validate();
    if (preset_background(preset) != Background::Hyperbolic) {
        throw ConfigError("exhaustion runs on hyperbolic space only");
    }
    const std::size_t K = plan.ladder.size();
    const double spacing = ladder_spacing(plan.ladder, plan.finest_nodes);

    std::vector<LevelData> data(K);
    for (std::size_t k = 0; k < K; ++k) data[k] = prepare_level(preset, plan, plan.ladder[k], spacing);

    ConvergenceReport rep;
    rep.K0 = data.back().bounds.K0;
    rep.C0 = data.back().bounds.C0;
    rep.inner_radius = plan.inner();
    rep.horizon = plan.config.t_final;
    if (rep.K0 > 0.0) rep.horizon = std::min(rep.horizon, plan.horizon_factor / rep.K0);

    SolveConfig cfg = plan.config;
    cfg.t_final = rep.horizon;
    cfg.exec = Exec::Serial;  // parallelism is across levels
    if (cfg.dt > cfg.t_final) cfg.dt = cfg.t_final;

    ExhaustionResult out;
    out.levels.resize(K);
    detail::parallel_for(K, [&](std::size_t k) {
        try {
            out.levels[k] = solve(data[k].u0, data[k].profile, cfg);
        } catch (const std::exception& e) {
            throw SolverError("exhaustion level " + std::to_string(k + 1) + " (l = " +
                              std::to_string(plan.ladder[k]) + "): " + e.what());
        }
    });

    const double m = plan.dimension;
    for (std::size_t k = 0; k < K; ++k) {
        const auto& traj = out.levels[k];
        LevelSummary s;
        s.ell = plan.ladder[k];
        s.bounds = data[k].bounds;
        s.sandwich_lower = s.sandwich_upper = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < traj.size(); ++j) {
            const double t = traj.times[j];
            for (double v : traj.u[j]) {
                s.sandwich_lower = std::min(s.sandwich_lower, v - (m * (m - 1.0) * t + s.bounds.min_u0 / 3.0));
                s.sandwich_upper = std::min(s.sandwich_upper, m * (m - 1.0) * t + 5.0 * s.bounds.C0 / 3.0 - v);
            }
        }
        const auto w = gradient_quantity_sup(traj, 1.0, Exec::Serial);
        s.gradient_sup = *std::max_element(w.begin(), w.end());
        for (const auto& st : traj.steps) s.max_halvings = std::max(s.max_halvings, st.halvings);
        rep.levels.push_back(s);
    }

    const auto& fine_mesh = *out.levels.back().mesh;
    std::size_t n_inner = 0;
    while (n_inner < fine_mesh.size() && fine_mesh[n_inner] <= rep.inner_radius + 1e-12) ++n_inner;
    n_inner = std::max<std::size_t>(n_inner, 4);
    std::vector<std::size_t> sample_idx;
    for (std::size_t j = 1; j <= plan.checkpoints; ++j) {
        const double t = rep.horizon * static_cast<double>(j) / static_cast<double>(plan.checkpoints);
        const std::size_t idx = out.levels.front().index_at(t);
        sample_idx.push_back(idx);
        rep.sample_times.push_back(out.levels.front().times[idx]);
    }
    for (std::size_t k = 0; k + 1 < K; ++k) {
        const auto& mk = *out.levels[k].mesh;
        double d = 0.0;
        for (std::size_t idx : sample_idx) {
            const RadialField next(out.levels[k + 1].mesh, out.levels[k + 1].u[idx]);
            const auto& a = out.levels[k].u[idx];
            for (std::size_t i = 0; i < mk.size() && mk[i] <= rep.inner_radius + 1e-12; ++i) {
                d = std::max(d, std::abs(a[i] - interpolate(next, mk[i])));
            }
        }
        rep.d.push_back(d);
    }

    const auto& fine = out.levels.back();
    auto inner_mesh = std::make_shared<const RadialMesh>(
        Background::Hyperbolic, plan.dimension, 0.0, (*fine.mesh)[n_inner - 1], n_inner);
    out.global.mesh = inner_mesh;
    out.global.boundary = fine.boundary;
    out.global.times = fine.times;
    out.global.steps = fine.steps;
    for (std::size_t j = 0; j < fine.size(); ++j) {
        std::vector<double> u(fine.u[j].begin(), fine.u[j].begin() + static_cast<std::ptrdiff_t>(n_inner));
        out.global.u.push_back(std::move(u));
        // the restricted edge is an interior node of the finest level
        out.global.edge_curvature.push_back(fine.curvature(j, Exec::Serial)[n_inner - 1]);
    }
    out.report = std::move(rep);
    return out;
}

ExtendedFlow extend_time(const FlowTrajectory& flow, std::optional<double> restart_epsilon,
                         double next_horizon, const SolveConfig& config) {
    if (flow.size() < 2) throw ConfigError("extend_time needs a trajectory with >= 2 states");
    const double t_start = flow.times.front();
    const double T = flow.times.back();
    const double span = T - t_start;
    const double eps = restart_epsilon.value_or(span / 10.0);
    if (!(eps > 0.0 && eps < span / 5.0)) {
        throw ConfigError("restart epsilon must lie in (0, T/5)");
    }
    if (!(next_horizon > 0.0)) throw ConfigError("next_horizon must be positive");

    const auto& mesh = *flow.mesh;
    const int m = mesh.dimension();
    const std::size_t kr = flow.index_at(T - eps);
    if (kr == 0) throw ConfigError("restart epsilon leaves no time before the restart");

    ExtendedFlow out;
    out.restart_time = flow.times[kr];
    const CurvaturePair cp = curvature_pair(flow.state(kr - 1), flow.state(kr), config.exec);
    const RadialField R = flow.curvature(kr, config.exec);
    double sup_R = flow.edge_curvature[kr];
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        if (!flow.is_dirichlet(i)) sup_R = std::max(sup_R, cp.R_elliptic[i]);
    }
    out.K1 = std::max(0.0, sup_R);

    const auto& ur = flow.u[kr];
    double kappa = 0.0;
    for (std::size_t i = 0; i < ur.size(); ++i) {
        kappa = std::max({kappa, std::abs(R[i]), m * (m - 1.0) / ur[i]});
    }
    out.kappa1 = kappa;
    BoundaryProfile prof = restart_profile(ur.back(), flow.edge_curvature[kr], kappa, m,
                                           mesh.background());
    out.leg_length = out.K1 > 0.0 ? std::min(next_horizon, 0.9 / out.K1) : next_horizon;

    SolveConfig leg_cfg = config;
    leg_cfg.t_final = out.leg_length;
    if (leg_cfg.dt > leg_cfg.t_final) leg_cfg.dt = leg_cfg.t_final;
    FlowTrajectory leg = solve_from(flow.state(kr), prof, out.restart_time, leg_cfg);

    for (std::size_t j = 0; j < leg.size(); ++j) {
        const double t = leg.times[j];
        if (t > T + 1e-12) break;
        const std::size_t k = flow.index_at(t);
        if (std::abs(flow.times[k] - t) > 1e-9) continue;
        for (std::size_t i = 0; i < ur.size(); ++i) {
            out.overlap_sup = std::max(out.overlap_sup, std::abs(leg.u[j][i] - flow.u[k][i]));
        }
    }

    FlowTrajectory& c = out.flow;
    c.mesh = flow.mesh;
    c.boundary = prof;
    c.inner_value = flow.inner_value;
    c.times.assign(flow.times.begin(), flow.times.begin() + static_cast<std::ptrdiff_t>(kr + 1));
    c.u.assign(flow.u.begin(), flow.u.begin() + static_cast<std::ptrdiff_t>(kr + 1));
    c.edge_curvature.assign(flow.edge_curvature.begin(),
                            flow.edge_curvature.begin() + static_cast<std::ptrdiff_t>(kr + 1));
    c.steps.assign(flow.steps.begin(), flow.steps.begin() + static_cast<std::ptrdiff_t>(kr));
    c.times.insert(c.times.end(), leg.times.begin() + 1, leg.times.end());
    c.u.insert(c.u.end(), leg.u.begin() + 1, leg.u.end());
    c.edge_curvature.insert(c.edge_curvature.end(), leg.edge_curvature.begin() + 1,
                            leg.edge_curvature.end());
    c.steps.insert(c.steps.end(), leg.steps.begin(), leg.steps.end());
    return out;
}

}  // namespace yamabe
