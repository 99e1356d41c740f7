#pragma once

#include <span>
#include <string>
#include <vector>

#include "yamabe/geometry.hpp"
#include "yamabe/initial_data.hpp"

namespace yamabe {

/// Cubic ramp: psi(s) = 1/3 + (s-1)^3/3 on [0,1], 1/3 afterwards.
double psi(double s);
/// psi'(s) = (s-1)^2 on [0,1], 0 afterwards.
double psi_prime(double s);

enum class BoundaryMode {
    Constructed,  ///< u0 + rate t + v psi(kappa t)/kappa
    Frozen,       ///< u0 held fixed (static-solution tests, annulus inner edge)
};

/// Dirichlet data at the outer edge r = l.
///
/// In Constructed mode the curve starts at u0(l) with slope -u0 R_{g0}(l) and
/// joins the big-bang slope `rate` = m(m-1) once kappa t >= 1. On R^m the
/// reference flow is the static flat one, so `rate` is 0 there.
struct BoundaryProfile {
    double u0_boundary = 1.0;
    double v_boundary = 0.0;
    double kappa = 1.0;
    int m = 3;
    double rate = 6.0;
    BoundaryMode mode = BoundaryMode::Constructed;

    double phi(double t) const;
    double phi_rate(double t) const;
};

/// Profile at the last node of u0 with the given bounds.
BoundaryProfile make_profile(const RadialField& u0, const RadialField& R0, const DataBounds& bounds,
                             BoundaryMode mode = BoundaryMode::Constructed);

/// Profile for restarting a flow at state u with boundary value u_l and
/// boundary curvature R_l (compatibility with the previous leg).
BoundaryProfile restart_profile(double u_l, double R_l, double kappa, int m, Background bg);

double phi(const BoundaryProfile& p, double t);

/// R on the boundary: -phi'(t)/phi(t). Throws SolverError if phi(t) <= 0.
double boundary_curvature(const BoundaryProfile& p, double t);

/// Upper curvature barrier K0/(1 - K0 t); 0 when K0 = 0.
double upper_curvature_barrier(double K0, double t);

struct ProfileCheck {
    double t = 0.0;
    double phi_lower_slack = 0.0;  ///< phi - (u0/3 + rate t)
    double phi_upper_slack = 0.0;  ///< (5u0/3 + rate t) - phi
    double curv_lower_slack = 0.0; ///< R + 1/(t + eps)
    double curv_upper_slack = 0.0; ///< K0/(1 - K0 t) - R
};

struct ProfileReport {
    std::vector<ProfileCheck> samples;
    double worst_phi_lower = 0.0;
    double worst_phi_upper = 0.0;
    double worst_curv_lower = 0.0;
    double worst_curv_upper = 0.0;
    bool pass = false;
};

inline constexpr double kProfileTolerance = 1e-12;

/// Slack of the phi sandwich and both boundary curvature bounds on t_grid.
/// Points with K0 t >= 1 skip the upper curvature bound.
ProfileReport check_profile_bounds(const BoundaryProfile& p, double K0, double eps,
                                   std::span<const double> t_grid);

/// Largest eps in (0, cap] for which -phi'/phi >= -1/(t+eps) holds on t_grid,
/// found by bisection on the minimum slack.
double admissible_boundary_eps(const BoundaryProfile& p, std::span<const double> t_grid,
                               double cap = kEpsFloorCap);

/// Uniform grid of `count` points on [0, T].
std::vector<double> uniform_grid(double T, std::size_t count);

}  // namespace yamabe
