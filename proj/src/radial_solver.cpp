#include "yamabe/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yamabe/errors.hpp"
#include "yamabe/initial_data.hpp"

namespace yamabe {

void SolveConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(t_final >= dt)) throw ConfigError("dt must not exceed t_final");
    if (!(theta >= 0.5 && theta <= 1.0)) throw ConfigError("theta must lie in [0.5, 1]");
    if (max_halvings < 0) throw ConfigError("max_halvings must be non-negative");
}

RadialField FlowState::U() const {
    RadialField out(u.mesh);
    const double e = eta();
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::pow(u[i], e);
    return out;
}

FlowState step(const FlowState& state, double phi_next, const SolveConfig& config,
               std::optional<double> inner_next) {
    const auto& mesh = *state.u.mesh;
    const double dt = config.dt;
    if (!(phi_next > 0.0)) {
        throw StepFailure(mesh.size() - 1, phi_next, state.t + dt);
    }
    RadialStencil st(mesh);
    Tridiagonal sys(mesh.size());
    StepCoefficients coeff{dt, config.theta,
                           config.gradient == GradientTreatment::ImplicitLinearized};
    kernels::assemble_step(config.exec, st, state.u.values, coeff, sys);
    const auto& u = state.u.values;
    const double inner = inner_next.value_or(u.front());
    sys.rhs.back() = phi_next - u.back();
    if (!mesh.has_origin()) sys.rhs.front() = inner - u.front();
    // solving for the increment keeps rounding noise relative to the change
    std::vector<double> v = solve_tridiagonal(sys);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += u[i];
    v.back() = phi_next;
    if (!mesh.has_origin()) v.front() = inner;
    FlowState next{RadialField(state.u.mesh, std::move(v)), state.t + dt};
    for (std::size_t i = 0; i < next.u.size(); ++i) {
        if (!(next.u[i] > 0.0) || !std::isfinite(next.u[i])) {
            throw StepFailure(i, next.u[i], next.t);
        }
    }
    return next;
}

namespace {

// Advance from `from` by `dt` with boundary data evaluated at local time
// (t - t0), splitting into halves on positivity failure.
FlowState advance(const FlowState& from, double dt, const BoundaryProfile& bnd, double t0,
                  std::optional<double> inner, const SolveConfig& config, int depth,
                  int& halvings_used) {
    SolveConfig local = config;
    local.dt = dt;
    try {
        return step(from, bnd.phi(from.t + dt - t0), local, inner);
    } catch (const StepFailure&) {
        if (depth >= config.max_halvings) throw;
    }
    halvings_used = std::max(halvings_used, depth + 1);
    FlowState mid = advance(from, 0.5 * dt, bnd, t0, inner, config, depth + 1, halvings_used);
    return advance(mid, 0.5 * dt, bnd, t0, inner, config, depth + 1, halvings_used);
}

double non_dirichlet_sup(const RadialMesh& mesh, std::span<const double> a,
                         std::span<const double> b) {
    double worst = 0.0;
    const std::size_t first = mesh.has_origin() ? 0 : 1;
    for (std::size_t i = first; i + 1 < mesh.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace

FlowTrajectory solve_from(const FlowState& start, const BoundaryProfile& boundary,
                          double boundary_time_origin, const SolveConfig& config) {
    config.validate();
    const auto& mesh = *start.u.mesh;
    const double t0 = boundary_time_origin;
    const double edge = start.u.values.back();
    const double phi0 = boundary.phi(start.t - t0);
    if (std::abs(phi0 - edge) > 1e-10 * std::max(1.0, std::abs(edge))) {
        throw ConfigError("boundary data incompatible with initial data: phi(0) = " +
                          std::to_string(phi0) + ", u0(l) = " + std::to_string(edge));
    }
    for (double v : start.u.values) {
        if (!(v > 0.0)) throw InvalidFieldError("initial conformal factor must be positive");
    }

    FlowTrajectory traj;
    traj.mesh = start.u.mesh;
    traj.boundary = boundary;
    if (!mesh.has_origin()) traj.inner_value = start.u.values.front();

    const double span = config.t_final;
    const auto nsteps = static_cast<std::size_t>(std::ceil(span / config.dt - 1e-9));
    traj.times.reserve(nsteps + 1);
    traj.u.reserve(nsteps + 1);
    traj.times.push_back(start.t);
    traj.u.push_back(start.u.values);
    traj.edge_curvature.push_back(boundary_curvature(boundary, start.t - t0));

    FlowState cur = start;
    for (std::size_t k = 1; k <= nsteps; ++k) {
        const double target = start.t + std::min(span, static_cast<double>(k) * config.dt);
        const double dt = target - cur.t;
        int halvings = 0;
        FlowState next =
            advance(cur, dt, boundary, t0, traj.inner_value, config, 0, halvings);
        next.t = target;

        StepRecord rec;
        rec.t = target;
        rec.dt = dt;
        rec.halvings = halvings;
        rec.min_u = next.u.min();
        rec.curvature_discrepancy = curvature_pair(cur, next, config.exec).discrepancy;
        traj.steps.push_back(rec);

        traj.times.push_back(target);
        traj.u.push_back(next.u.values);
        traj.edge_curvature.push_back(boundary_curvature(boundary, target - t0));
        cur = std::move(next);
    }
    return traj;
}

FlowTrajectory solve(const RadialField& u0, const BoundaryProfile& boundary,
                     const SolveConfig& config) {
    return solve_from(FlowState{u0, 0.0}, boundary, 0.0, config);
}

FlowState FlowTrajectory::state(std::size_t k) const {
    return FlowState{RadialField(mesh, u.at(k)), times.at(k)};
}

bool FlowTrajectory::is_dirichlet(std::size_t node) const noexcept {
    return node + 1 == mesh->size() || (node == 0 && !mesh->has_origin());
}

RadialField FlowTrajectory::curvature(std::size_t k, Exec ex) const {
    RadialField R = scalar_curvature(RadialField(mesh, u.at(k)), ex);
    R.values.back() = edge_curvature.at(k);
    if (!mesh->has_origin()) R.values.front() = 0.0;
    return R;
}

std::size_t FlowTrajectory::index_at(double t) const {
    if (times.empty()) throw ConfigError("empty trajectory");
    auto it = std::lower_bound(times.begin(), times.end(), t);
    if (it == times.end()) return times.size() - 1;
    auto k = static_cast<std::size_t>(it - times.begin());
    if (k > 0 && std::abs(times[k - 1] - t) <= std::abs(times[k] - t)) --k;
    return k;
}

CurvaturePair curvature_pair(const FlowState& prev, const FlowState& next, Exec ex) {
    const auto& mesh = *prev.u.mesh;
    const double dt = next.t - prev.t;
    if (!(dt > 0.0)) throw ConfigError("curvature_pair needs increasing times");
    CurvaturePair cp;
    cp.t_mid = 0.5 * (prev.t + next.t);
    cp.R_rate = RadialField(prev.u.mesh);
    RadialField mid(prev.u.mesh);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const double a = prev.u[i];
        const double b = next.u[i];
        // x = b/a - 1 and log1p keep both quantities accurate when u barely moves
        const double x = (b - a) / a;
        const double dlog = std::log1p(x);
        cp.R_rate[i] = -dlog / dt;
        // logarithmic mean (b - a) / (ln b - ln a), the midpoint for which
        // -(ln b - ln a)/dt equals -(b - a)/(dt * mid) exactly
        mid[i] = std::abs(x) > 1e-4 ? a * x / dlog : a * (1.0 + x * (0.5 - x * (1.0 / 12.0 - x / 24.0)));
    }
    cp.R_elliptic = scalar_curvature(mid, ex);
    cp.discrepancy = non_dirichlet_sup(mesh, cp.R_rate.values, cp.R_elliptic.values);
    return cp;
}

double EvoRResidual::max() const {
    return sup.empty() ? 0.0 : *std::max_element(sup.begin(), sup.end());
}

EvoRResidual evoR_residual(const FlowTrajectory& traj, Exec ex) {
    if (traj.size() < 3) throw ConfigError("evoR_residual needs at least 3 states");
    const auto& mesh = *traj.mesh;
    const double m = mesh.dimension();
    RadialStencil st(mesh);
    const std::size_t n = mesh.size();
    const std::size_t first = mesh.has_origin() ? 0 : 1;

    EvoRResidual res;
    RadialField R_prev = traj.curvature(0, ex);
    RadialField R_cur = traj.curvature(1, ex);
    std::vector<double> lapR(n), dR(n), du(n);
    for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
        RadialField R_next = traj.curvature(k + 1, ex);
        const auto& u = traj.u[k];
        kernels::laplacian(ex, st, R_cur.values, lapR);
        kernels::gradient(ex, st, R_cur.values, dR);
        kernels::gradient(ex, st, u, du);
        const double span = traj.times[k + 1] - traj.times[k - 1];
        double worst = 0.0;
        for (std::size_t i = first; i + 1 < n; ++i) {
            const double lap_g = (lapR[i] + 0.5 * (m - 2.0) * (du[i] / u[i]) * dR[i]) / u[i];
            const double r = (R_next[i] - R_prev[i]) / span - (m - 1.0) * lap_g -
                             R_prev[i] * R_next[i];
            worst = std::max(worst, std::abs(r));
        }
        res.times.push_back(traj.times[k]);
        res.sup.push_back(worst);
        R_prev = std::move(R_cur);
        R_cur = std::move(R_next);
    }
    return res;
}

}  // namespace yamabe
