#pragma once

#include <optional>
#include <vector>

#include "yamabe/initial_data.hpp"
#include "yamabe/radial_solver.hpp"

namespace yamabe {

/// Nested balls B_{l1} c B_{l2} c ... solved with the same radial spacing.
struct ExhaustionPlan {
    std::vector<double> ladder;          ///< strictly increasing radii, >= 3 levels
    std::optional<double> inner_radius;  ///< comparison ball; default ladder[0]
    int dimension = 3;
    std::size_t finest_nodes = 400;      ///< nodes on the largest ball (at least; see below)
    SolveConfig config;                  ///< t_final caps the horizon
    double horizon_factor = 0.9;         ///< T = factor / K0 (K0 of the finest level)
    std::size_t checkpoints = 10;        ///< uniform sample times in (0, T]

    void validate() const;
    double inner() const { return inner_radius.value_or(ladder.empty() ? 0.0 : ladder.front()); }
};

struct LevelSummary {
    double ell = 0.0;
    DataBounds bounds;
    double sandwich_lower = 0.0;  ///< min of u - (m(m-1)t + min u0/3)
    double sandwich_upper = 0.0;  ///< min of (m(m-1)t + 5 max u0/3) - u
    double gradient_sup = 0.0;    ///< max over time of sup_{B_{l-1}} U^{-1/2}|U_r|^2
    int max_halvings = 0;
};

struct ConvergenceReport {
    std::vector<LevelSummary> levels;
    std::vector<double> d;             ///< d_k = sup |u_k - u_{k+1}| on the inner ball
    std::vector<double> sample_times;
    double horizon = 0.0;
    double K0 = 0.0;                   ///< finest level
    double C0 = 0.0;                   ///< finest level's sup u0 (stand-in for sup over H)
    double inner_radius = 0.0;

    bool d_non_increasing() const;
    bool d_strictly_decreasing() const;
    /// (max - min) / max of gradient_sup over levels; 0 when all vanish
    double gradient_variation() const;
    /// gradient_sup at the last level over that at level 2
    double gradient_ratio_last_to_second() const;
};

struct ExhaustionResult {
    FlowTrajectory global;             ///< finest level restricted to the inner ball
    std::vector<FlowTrajectory> levels;
    ConvergenceReport report;
};

/// Solves the preset on every level (concurrently) with that level's own
/// boundary data and compares consecutive levels on the inner ball. Levels
/// share a spacing near l_K/(finest_nodes-1) that divides every radius, when
/// one exists, so they share nodes.
/// Throws SolverError naming the level when a level fails.
ExhaustionResult run_exhaustion(const InitialPreset& preset, const ExhaustionPlan& plan);

struct ExtendedFlow {
    FlowTrajectory flow;      ///< original up to T - eps, then the new leg
    double restart_time = 0.0;
    double K1 = 0.0;
    double kappa1 = 0.0;
    double leg_length = 0.0;
    double overlap_sup = 0.0; ///< sup |new - old| over [T - eps, T]
};

/// Restarts at T - eps with boundary data rebuilt from the restart state and
/// runs a leg of length min(next_horizon, 0.9/K1). Needs 0 < eps < T/5
/// (measured from the flow's first time). eps defaults to T/10.
ExtendedFlow extend_time(const FlowTrajectory& flow, std::optional<double> restart_epsilon,
                         double next_horizon, const SolveConfig& config);

}  // namespace yamabe
