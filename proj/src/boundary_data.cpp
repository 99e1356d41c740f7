#include "yamabe/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "yamabe/errors.hpp"

namespace yamabe {

double psi(double s) {
    if (s < 0.0) throw DomainError("psi is defined for s >= 0");
    if (s > 1.0) return 1.0 / 3.0;
    const double d = s - 1.0;
    return (1.0 + d * d * d) / 3.0;
}

double psi_prime(double s) {
    if (s < 0.0) throw DomainError("psi' is defined for s >= 0");
    if (s > 1.0) return 0.0;
    const double d = s - 1.0;
    return d * d;
}

double BoundaryProfile::phi(double t) const {
    if (mode == BoundaryMode::Frozen) return u0_boundary;
    return u0_boundary + rate * t + v_boundary * psi(kappa * t) / kappa;
}

double BoundaryProfile::phi_rate(double t) const {
    if (mode == BoundaryMode::Frozen) return 0.0;
    return rate + v_boundary * psi_prime(kappa * t);
}

double phi(const BoundaryProfile& p, double t) { return p.phi(t); }

BoundaryProfile make_profile(const RadialField& u0, const RadialField& R0, const DataBounds& bounds,
                             BoundaryMode mode) {
    const auto& mesh = *u0.mesh;
    const double m = mesh.dimension();
    BoundaryProfile p;
    p.m = mesh.dimension();
    p.mode = mode;
    p.kappa = bounds.kappa;
    p.rate = mesh.background() == Background::Hyperbolic ? m * (m - 1.0) : 0.0;
    p.u0_boundary = u0.values.back();
    p.v_boundary = -p.u0_boundary * R0.values.back() - p.rate;
    if (!(p.kappa > 0.0)) {
        throw ConfigError("boundary profile needs kappa > 0");
    }
    return p;
}

BoundaryProfile restart_profile(double u_l, double R_l, double kappa, int m, Background bg) {
    BoundaryProfile p;
    p.m = m;
    p.kappa = kappa;
    p.rate = bg == Background::Hyperbolic ? m * (m - 1.0) : 0.0;
    p.u0_boundary = u_l;
    p.v_boundary = -u_l * R_l - p.rate;
    return p;
}

double boundary_curvature(const BoundaryProfile& p, double t) {
    const double value = p.phi(t);
    if (!(value > 0.0)) {
        throw SolverError("boundary data phi(t) is not positive");
    }
    return -p.phi_rate(t) / value;
}

double upper_curvature_barrier(double K0, double t) {
    if (K0 == 0.0) return 0.0;
    return K0 / (1.0 - K0 * t);
}

ProfileReport check_profile_bounds(const BoundaryProfile& p, double K0, double eps,
                                   std::span<const double> t_grid) {
    ProfileReport rep;
    const double inf = std::numeric_limits<double>::infinity();
    rep.worst_phi_lower = rep.worst_phi_upper = rep.worst_curv_lower = rep.worst_curv_upper = inf;
    for (double t : t_grid) {
        ProfileCheck c;
        c.t = t;
        const double value = p.phi(t);
        const double R = boundary_curvature(p, t);
        c.phi_lower_slack = value - (p.u0_boundary / 3.0 + p.rate * t);
        c.phi_upper_slack = (5.0 * p.u0_boundary / 3.0 + p.rate * t) - value;
        c.curv_lower_slack = R + 1.0 / (t + eps);
        c.curv_upper_slack = K0 * t < 1.0 ? upper_curvature_barrier(K0, t) - R : inf;
        rep.worst_phi_lower = std::min(rep.worst_phi_lower, c.phi_lower_slack);
        rep.worst_phi_upper = std::min(rep.worst_phi_upper, c.phi_upper_slack);
        rep.worst_curv_lower = std::min(rep.worst_curv_lower, c.curv_lower_slack);
        rep.worst_curv_upper = std::min(rep.worst_curv_upper, c.curv_upper_slack);
        rep.samples.push_back(c);
    }
    rep.pass = rep.worst_phi_lower >= -kProfileTolerance &&
               rep.worst_phi_upper >= -kProfileTolerance &&
               rep.worst_curv_lower >= -kProfileTolerance &&
               rep.worst_curv_upper >= -kProfileTolerance;
    return rep;
}

double admissible_boundary_eps(const BoundaryProfile& p, std::span<const double> t_grid,
                               double cap) {
    auto min_slack = [&](double eps) {
        double worst = std::numeric_limits<double>::infinity();
        for (double t : t_grid) {
            worst = std::min(worst, boundary_curvature(p, t) + 1.0 / (t + eps));
        }
        return worst;
    };
    if (min_slack(cap) >= 0.0) return cap;
    double lo = 0.0;
    double hi = cap;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * cap; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid > 0.0 && min_slack(mid) >= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

std::vector<double> uniform_grid(double T, std::size_t count) {
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = 0.0;
        return grid;
    }
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = T * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return grid;
}

}  // namespace yamabe
