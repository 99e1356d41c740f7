#include <doctest.h>

#include <cmath>
#include <memory>

#include "yamabe/errors.hpp"
#include "yamabe/exhaustion.hpp"

using namespace yamabe;

namespace {

ExhaustionPlan plan(std::vector<double> ladder, double T, double dt = 1e-2) {
    ExhaustionPlan p;
    p.ladder = std::move(ladder);
    p.finest_nodes = 120;
    p.config.dt = dt;
    p.config.t_final = T;
    p.checkpoints = 5;
    return p;
}

}  // namespace

TEST_CASE("plan validation") {
    CHECK_THROWS_AS(plan({3, 4}, 0.1).validate(), ConfigError);
    CHECK_THROWS_AS(plan({3, 5, 4}, 0.1).validate(), ConfigError);
    auto p = plan({3, 4, 5}, 0.1);
    p.inner_radius = 4.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = plan({3, 4, 5}, 0.1);
    p.horizon_factor = 1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK_NOTHROW(plan({3, 4, 5}, 0.1).validate());
    CHECK_THROWS_AS(run_exhaustion(preset::PuncturedSphere{}, plan({3, 4, 5}, 0.1)), ConfigError);
}

TEST_CASE("constant data agree on every level") {
    auto res = run_exhaustion(preset::Constant{1.0}, plan({3, 4, 5, 6}, 0.1));
    const auto& rep = res.report;
    REQUIRE(rep.d.size() == 3);
    for (double d : rep.d) CHECK(d < 1e-10);
    CHECK(rep.K0 == 0.0);
    CHECK(rep.horizon == doctest::Approx(0.1));
    CHECK(rep.gradient_variation() == 0.0);
    for (const auto& lv : rep.levels) {
        CHECK(lv.sandwich_lower > 0.0);
        CHECK(lv.sandwich_upper > 0.0);
    }
    // the levels share nodes
    for (const auto& lv : res.levels) CHECK(lv.mesh->dr() == doctest::Approx(res.levels[0].mesh->dr()));
    CHECK(res.global.mesh->r_max() == doctest::Approx(3.0));
    CHECK(res.global.u.back()[0] == doctest::Approx(1.6).epsilon(1e-10));
}

TEST_CASE("bump data: level differences shrink") {
    auto p = plan({3, 4, 5, 6}, 0.2, 2e-3);
    p.finest_nodes = 300;
    auto res = run_exhaustion(preset::Bump{1.0, 1.0, 1.5, 0.5}, p);
    const auto& rep = res.report;
    CHECK(rep.d_non_increasing());
    CHECK(rep.d.front() > rep.d.back());
    CHECK(rep.horizon <= 0.2);
    CHECK(rep.gradient_ratio_last_to_second() <= 1.1);
    for (const auto& lv : rep.levels) {
        CHECK(lv.sandwich_lower >= -1e-8);
        CHECK(lv.sandwich_upper >= -1e-8);
    }
}

TEST_CASE("extending constant data in time is exact") {
    auto res = run_exhaustion(preset::Constant{1.0}, plan({3, 4, 5}, 0.1));
    SolveConfig c;
    c.dt = 1e-2;
    c.t_final = 0.1;
    auto ext = extend_time(res.levels.back(), std::nullopt, 0.2, c);
    CHECK(ext.restart_time == doctest::Approx(0.09));
    CHECK(ext.K1 < 1e-10);
    CHECK(ext.kappa1 == doctest::Approx(6.0 / 1.54).epsilon(1e-9));
    CHECK(ext.leg_length == doctest::Approx(0.2));
    CHECK(ext.overlap_sup < 1e-10);
    CHECK(ext.flow.times.back() == doctest::Approx(0.29));
    for (std::size_t k = 0; k < ext.flow.size(); ++k)
        CHECK(ext.flow.u[k][3] == doctest::Approx(1.0 + 6.0 * ext.flow.times[k]).epsilon(1e-10));

    CHECK_THROWS_AS(extend_time(res.levels.back(), 0.05, 0.2, c), ConfigError);
    CHECK_THROWS_AS(extend_time(res.levels.back(), 0.01, 0.0, c), ConfigError);
}
