#pragma once

#include <optional>
#include <vector>

#include "yamabe/boundary_data.hpp"
#include "yamabe/geometry.hpp"
#include "yamabe/kernels.hpp"

namespace yamabe {

enum class GradientTreatment {
    ImplicitLinearized,  ///< divergence form on u^eta, linear in u^{n+1}
    Explicit,            ///< Laplacian on u implicit, |grad u^n|^2 explicit
};

struct SolveConfig {
    double dt = 1e-3;
    double t_final = 0.5;
    GradientTreatment gradient = GradientTreatment::ImplicitLinearized;
    double theta = 1.0;
    int max_halvings = 20;
    Exec exec = default_exec();

    /// Throws ConfigError on dt <= 0, dt > t_final or theta outside [0.5, 1].
    void validate() const;
};

struct FlowState {
    RadialField u;
    double t = 0.0;

    int dimension() const { return u.mesh->dimension(); }
    double eta() const { return u.mesh->eta(); }
    /// U = u^eta
    RadialField U() const;
};

/// One semi-implicit step of
///   u_t = (m-1) [ m_bg + L u / u + (m-6)/4 |D u|^2 / u^2 ]
///       = (m-1) [ m_bg + (1/eta) u^{-eta} L(u^eta) ].
/// ImplicitLinearized uses the second form with u^{-eta} frozen and u^eta
/// linearised about u^n inside the theta-blend:
///   (u^{n+1})^eta -> (1-eta) (u^n)^eta + eta (u^n)^{eta-1} u^{n+1}. Explicit uses the first form
/// with 1/u^n frozen and |D u^n|^2 lagged. Dirichlet data phi_next at the outer
/// edge; on an annulus the inner edge takes inner_next (default: held).
/// Throws StepFailure when a node turns non-positive.
FlowState step(const FlowState& state, double phi_next, const SolveConfig& config,
               std::optional<double> inner_next = std::nullopt);

struct StepRecord {
    double t = 0.0;           ///< time reached
    double dt = 0.0;          ///< nominal step
    int halvings = 0;         ///< dt was split into 2^halvings substeps
    double min_u = 0.0;
    double curvature_discrepancy = 0.0;
};

/// Time-ordered states of one solve, with what is needed to evaluate R at the
/// Dirichlet nodes analytically.
struct FlowTrajectory {
    MeshPtr mesh;
    BoundaryProfile boundary;
    std::optional<double> inner_value;  ///< frozen inner Dirichlet value (annulus)
    std::vector<double> times;
    std::vector<std::vector<double>> u;
    std::vector<double> edge_curvature;  ///< -phi'/phi at the outer edge, per state
    std::vector<StepRecord> steps;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
    FlowState state(std::size_t k) const;
    /// Elliptic R at every interior node, -phi'/phi on the outer edge and 0 on a
    /// frozen inner edge.
    RadialField curvature(std::size_t k, Exec ex = default_exec()) const;
    /// Index of the stored state closest to time t.
    std::size_t index_at(double t) const;
    bool is_dirichlet(std::size_t node) const noexcept;
};

/// Runs problem u_t = Q[u], u = phi on the edge, u = u0 at t = 0 to t_final.
/// Requires phi(0) = u0(l) to 1e-10. A step that fails positivity is retried
/// with halved substeps up to config.max_halvings times.
FlowTrajectory solve(const RadialField& u0, const BoundaryProfile& boundary,
                     const SolveConfig& config);

/// Same, but starting from an arbitrary time t0 (restart legs).
FlowTrajectory solve_from(const FlowState& start, const BoundaryProfile& boundary,
                          double boundary_time_origin, const SolveConfig& config);

struct CurvaturePair {
    RadialField R_rate;       ///< -(ln u^{n+1} - ln u^n)/dt
    RadialField R_elliptic;   ///< spatial formula at the logarithmic mean of u^n, u^{n+1}
    double discrepancy = 0.0; ///< sup over non-Dirichlet nodes
    double t_mid = 0.0;
};

CurvaturePair curvature_pair(const FlowState& prev, const FlowState& next,
                             Exec ex = default_exec());

struct EvoRResidual {
    std::vector<double> times;  ///< centre times of the three-state stencils
    std::vector<double> sup;    ///< sup-norm residual over non-Dirichlet nodes

    double max() const;
};

/// Residual of dR/dt = (m-1) Delta_g R + R^2 on consecutive state triples:
///   (R^{n+1} - R^{n-1}) / (t_{n+1} - t_{n-1}) - (m-1) Delta_{g_n} R^n - R^{n-1} R^{n+1},
/// Delta_g f = u^{-1} (L f + (m-2)/2 <D ln u, D f>). Needs at least 3 states.
EvoRResidual evoR_residual(const FlowTrajectory& traj, Exec ex = default_exec());

}  // namespace yamabe
