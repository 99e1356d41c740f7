#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yamabe/initial_data.hpp"
#include "yamabe/radial_solver.hpp"

namespace yamabe {

inline constexpr double kBarrierTolerance = 1e-8;
inline constexpr double kComparisonTolerance = 1e-10;

struct BarrierCheck {
    std::string name;
    double worst_slack = 0.0;
    std::size_t worst_node = 0;
    double worst_time = 0.0;
    bool applicable = true;
    bool pass = true;
    std::string note;  ///< why a check is skipped, or its scope
};

struct BarrierReport {
    std::vector<BarrierCheck> checks;
    double tolerance = kBarrierTolerance;
    double eps = 0.0;  ///< eps used by the lower curvature bound

    bool pass() const;
    /// Throws std::out_of_range for an unknown name.
    const BarrierCheck& at(const std::string& name) const;
};

struct BarrierOptions {
    double tolerance = kBarrierTolerance;
    std::optional<double> eps;     ///< default: bounds.eps_floor
    std::optional<double> b_flat;  ///< enables prop21_upper
};

/// Slacks of
///   lemma14_lower  u - (m(m-1)t + min u0/3)
///   lemma14_upper  (m(m-1)t + 5 max u0/3) - u
///   lemma13_lower  R + 1/(t + eps)
///   lemma13_upper  K0/(1 - K0 t) - R       (times with K0 t < 1)
///   prop21_upper   (m(m-1)t)^eta + f^eta - u^eta,  f = b/(4cosh^4(r/2))
///   prop23_lower   u - m(m-1)t
/// at every node and stored time. R is the elliptic curvature of each state.
/// Checks whose hypotheses the run does not meet are kept with
/// applicable = false: lemma14_* and prop23_lower under frozen boundary data,
/// prop21_upper without b_flat or when u0 <= f fails.
/// Throws ConfigError for a Euclidean trajectory.
BarrierReport check_barriers(const FlowTrajectory& traj, const DataBounds& bounds,
                             const BarrierOptions& opts = {}, Exec ex = default_exec());

// ---- comparison and the area-difference functional ----

struct JParameters {
    double S = 0.0;   ///< 0 selects s0/3
    double s0 = 0.0;  ///< 0 selects ln 2
    std::size_t samples = 4001;

    /// Resolves defaults; throws ConfigError outside 0 < S <= s0/3, s0 <= ln 2.
    JParameters resolved() const;
};

/// Cutoff on the log-polar cylinder: 0 on [0,S], 1 on [s0,inf),
/// P((s-S)/(s0-S)) between, P(x) = 10x^3 - 15x^4 + 6x^5.
double cutoff(double s, double S, double s0);

/// J = int (V^{eta+1} - U^{eta+1})_+ cutoff dmu, dmu = |S^{m-1}| ds, by the
/// trapezoid rule on the common grid s. U, V are log-polar conformal factors.
double area_difference_J(std::span<const double> s, std::span<const double> U,
                         std::span<const double> V, double S, double s0, int m);

/// Log-polar factor U(s) = u(r(s)) / sinh^2 s sampled on `s`.
std::vector<double> to_log_polar(const RadialField& u, std::span<const double> s);

/// J between two radial factors at one time: uniform s-grid on
/// [S, s(first positive node)], U from `upper`, V from `lower`.
/// Throws ConfigError if S < s(l).
double area_difference_J(const RadialField& upper, const RadialField& lower,
                         const JParameters& params);

struct ComparisonReport {
    double ordering_violation = 0.0;  ///< sup (u_lower - u_upper)_+
    std::size_t worst_node = 0;
    double worst_time = 0.0;
    bool initial_ordered = true;
    std::string label;  ///< "ordered" or "unordered-initial"
    std::vector<double> J_times;
    std::vector<double> J_series;
    double S = 0.0;
    double s0 = 0.0;
    std::string cutoff_spec = "quintic 10x^3-15x^4+6x^5";
    double tolerance = kComparisonTolerance;
};

/// Orientation as in the uniqueness theorem: `upper` is g, `lower` is g~ with
/// g~(0) <= g(0). J_series is left empty on R^m. Throws ConfigError on mesh or
/// time grid mismatch.
ComparisonReport compare_flows(const FlowTrajectory& upper, const FlowTrajectory& lower,
                               const JParameters& params = {});

// ---- lengths ----

enum class CompletenessVerdict { DivergingWithDomain, UniformlyBounded, Inconclusive };

std::string to_string(CompletenessVerdict v);

struct LengthSample {
    double domain = 0.0;  ///< l or R_max
    double t = 0.0;
    double length = 0.0;
    double bound = 0.0;   ///< lower bound (hyperbolic) or upper bound (Euclidean)
};

struct CompletenessReport {
    Background background = Background::Hyperbolic;
    std::vector<LengthSample> lengths;
    CompletenessVerdict verdict = CompletenessVerdict::Inconclusive;
    double base_radius = 1.0;
    double bound_slack = 0.0;      ///< allowed miss of each per-sample bound
    double stability = 0.0;        ///< Euclidean: allowed spread across domains
    double spread = 0.0;           ///< Euclidean: max over t of length spread
    bool bounds_hold = false;
    bool monotone_in_domain = false;
};

struct ScanPlan {
    std::vector<double> domains;    ///< increasing l (or R_max)
    std::vector<double> t_samples;  ///< times to report, within config.t_final
    int dimension = 3;
    double r_min = 0.0;             ///< 0 on H^m; inner radius on R^m
    double spacing = 0.015;         ///< common mesh spacing
    SolveConfig config;
    double bound_slack = 1e-3;
    double stability = 1e-2;
};

/// Runs the preset on every domain and tabulates radial g(t)-lengths from
/// r = 1 to the edge. On H^m the bound is sqrt(m(m-1)t)(l-1) from below
/// (DivergingWithDomain when it holds and lengths grow with l). On R^m with
/// PowerLaw(b) the bound is sqrt(b)(1 - 1/R) from above (UniformlyBounded
/// when it holds and the spread across domains stays below `stability`).
CompletenessReport completeness_scan(const InitialPreset& preset, const ScanPlan& plan);

// ---- gradient quantity ----

/// Per stored time, sup over r <= l - margin of w = U^{-1/2} |U_r|^2.
/// Throws ConfigError for margin < 1 or a Euclidean trajectory.
std::vector<double> gradient_quantity_sup(const FlowTrajectory& traj, double margin = 1.0,
                                          Exec ex = default_exec());

}  // namespace yamabe
