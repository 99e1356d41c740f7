#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "yamabe/boundary_data.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/radial_solver.hpp"

using namespace yamabe;

namespace {

MeshPtr hyperbolic(int m, double ell, std::size_t n) {
    return std::make_shared<const RadialMesh>(Background::Hyperbolic, m, 0.0, ell, n);
}

FlowTrajectory run(const InitialPreset& p, const MeshPtr& mesh, const SolveConfig& cfg,
                   BoundaryMode mode = BoundaryMode::Constructed) {
    auto u0 = make_initial(p, mesh);
    auto R0 = initial_scalar_curvature(u0);
    return solve(u0, make_profile(u0, R0, data_bounds(u0, R0), mode), cfg);
}

SolveConfig cfg(double dt, double T, GradientTreatment g = GradientTreatment::ImplicitLinearized) {
    SolveConfig c;
    c.dt = dt;
    c.t_final = T;
    c.gradient = g;
    return c;
}

}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(cfg(0.0, 1.0).validate(), ConfigError);
    CHECK_THROWS_AS(cfg(2.0, 1.0).validate(), ConfigError);
    auto c = cfg(0.1, 1.0);
    c.theta = 0.3;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("constant data follows the shifted big bang") {
    for (auto g : {GradientTreatment::ImplicitLinearized, GradientTreatment::Explicit}) {
        auto traj = run(preset::Constant{1.0}, hyperbolic(3, 4.0, 120), cfg(1e-2, 0.5, g));
        CHECK(traj.times.back() == doctest::Approx(0.5));
        for (std::size_t k = 0; k < traj.size(); ++k)
            for (double v : traj.u[k]) CHECK(v == doctest::Approx(1.0 + 6.0 * traj.times[k]).epsilon(1e-10));
        CHECK(traj.u.back()[0] == doctest::Approx(4.0).epsilon(1e-10));
    }
    auto t5 = run(preset::Constant{2.0}, hyperbolic(5, 3.0, 80), cfg(1e-2, 0.2));
    CHECK(t5.u.back()[40] == doctest::Approx(2.0 + 20.0 * 0.2).epsilon(1e-10));
}

TEST_CASE("flat static data barely moves under frozen boundary data") {
    auto traj = run(preset::FlatStatic{1.0}, hyperbolic(3, 5.0, 401), cfg(1e-3, 0.2),
                    BoundaryMode::Frozen);
    double drift = 0.0;
    for (std::size_t i = 0; i < traj.u.back().size(); ++i)
        drift = std::max(drift, std::abs(traj.u.back()[i] / traj.u.front()[i] - 1.0));
    CHECK(drift < 1e-3);
}

TEST_CASE("ordered data stays ordered") {
    for (int m : {3, 7}) {
        for (auto g : {GradientTreatment::ImplicitLinearized, GradientTreatment::Explicit}) {
            auto mesh = hyperbolic(m, 4.0, 200);
            auto lo = run(preset::Bump{1.0, 0.5, 2.0, 0.5}, mesh, cfg(2e-3, 0.1, g));
            auto hi = run(preset::Bump{1.2, 1.0, 2.0, 0.5}, mesh, cfg(2e-3, 0.1, g));
            double worst = 0.0;
            for (std::size_t k = 0; k < lo.size(); ++k)
                for (std::size_t i = 0; i < mesh->size(); ++i)
                    worst = std::max(worst, lo.u[k][i] - hi.u[k][i]);
            CHECK(worst <= 1e-10);
        }
    }
}

TEST_CASE("positivity and curvature consistency") {
    auto traj = run(preset::Bump{}, hyperbolic(3, 6.0, 300), cfg(1e-3, 0.2));
    for (const auto& row : traj.u) CHECK(*std::min_element(row.begin(), row.end()) > 0.0);
    for (const auto& s : traj.steps) CHECK(s.min_u > 0.0);
    CHECK(traj.steps.back().curvature_discrepancy < 0.5);
}

TEST_CASE("curvature pair on constant data") {
    auto traj = run(preset::Constant{1.0}, hyperbolic(3, 3.0, 60), cfg(1e-2, 0.1));
    auto pair = curvature_pair(traj.state(3), traj.state(4));
    CHECK(pair.discrepancy < 1e-8);
    const double t0 = traj.times[3], t1 = traj.times[4];
    const double exact = -std::log((1 + 6 * t1) / (1 + 6 * t0)) / (t1 - t0);
    CHECK(pair.R_rate[10] == doctest::Approx(exact).epsilon(1e-12));
    CHECK_THROWS_AS(curvature_pair(traj.state(4), traj.state(3)), ConfigError);
}

TEST_CASE("evolution of R residual") {
    auto c = run(preset::Constant{1.0}, hyperbolic(3, 3.0, 60), cfg(1e-3, 0.05));
    CHECK(evoR_residual(c).max() < 1e-4);

    auto b1 = evoR_residual(run(preset::Bump{}, hyperbolic(3, 6.0, 300), cfg(2e-3, 0.1)));
    auto b2 = evoR_residual(run(preset::Bump{}, hyperbolic(3, 6.0, 300), cfg(1e-3, 0.1)));
    CHECK(b2.max() < b1.max());

    FlowTrajectory two;
    CHECK_THROWS_AS(evoR_residual(two), ConfigError);
}

TEST_CASE("round sphere shrinks at the centre") {
    auto mesh = std::make_shared<const RadialMesh>(Background::Euclidean, 3, 0.0, 4.0, 200);
    auto traj = run(preset::PuncturedSphere{}, mesh, cfg(1e-3, 0.01), BoundaryMode::Frozen);
    CHECK(traj.u.back()[0] < traj.u.front()[0]);
    // u_t = -(m-1) R u = -24 at the centre of the unit sphere
    CHECK((traj.u[1][0] - traj.u[0][0]) / traj.times[1] == doctest::Approx(-24.0).epsilon(0.02));
}

TEST_CASE("incompatible boundary data is rejected") {
    auto mesh = hyperbolic(3, 3.0, 50);
    auto u0 = make_initial(preset::Constant{1.0}, mesh);
    BoundaryProfile p;
    p.u0_boundary = 1.5;
    CHECK_THROWS_AS(solve(u0, p, cfg(1e-2, 0.1)), ConfigError);
}

TEST_CASE("trajectory accessors") {
    auto traj = run(preset::Constant{1.0}, hyperbolic(3, 3.0, 60), cfg(1e-2, 0.1));
    CHECK(traj.index_at(0.049) == 5);
    CHECK(traj.is_dirichlet(59));
    CHECK_FALSE(traj.is_dirichlet(0));
    auto R = traj.curvature(2);
    CHECK(R[0] == doctest::Approx(-6.0 / (1 + 6 * traj.times[2])).epsilon(1e-10));
    CHECK(R[59] == doctest::Approx(-6.0 / (1 + 6 * traj.times[2])).epsilon(1e-10));
}
