#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "yamabe/diagnostics.hpp"
#include "yamabe/errors.hpp"
#include "yamabe/kernels.hpp"

using namespace yamabe;

namespace {

MeshPtr hyperbolic(int m, double ell, std::size_t n) {
    return std::make_shared<const RadialMesh>(Background::Hyperbolic, m, 0.0, ell, n);
}

SolveConfig cfg(double dt, double T) {
    SolveConfig c;
    c.dt = dt;
    c.t_final = T;
    return c;
}

struct Run {
    FlowTrajectory traj;
    DataBounds bounds;
};

Run run(const InitialPreset& p, const MeshPtr& mesh, const SolveConfig& c,
        BoundaryMode mode = BoundaryMode::Constructed) {
    auto u0 = make_initial(p, mesh);
    auto R0 = initial_scalar_curvature(u0);
    auto b = data_bounds(u0, R0);
    return {solve(u0, make_profile(u0, R0, b, mode), c), b};
}

}  // namespace

TEST_CASE("barrier slacks on constant data") {
    auto r = run(preset::Constant{1.0}, hyperbolic(3, 3.0, 60), cfg(1e-2, 0.3));
    auto rep = check_barriers(r.traj, r.bounds);
    CHECK(rep.pass());
    CHECK(rep.eps == doctest::Approx(1.0 / 6.0));
    CHECK(rep.at("lemma14_lower").worst_slack == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(rep.at("lemma14_upper").worst_slack == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(std::abs(rep.at("lemma13_lower").worst_slack) < 1e-10);
    CHECK(rep.at("prop23_lower").worst_slack == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(rep.at("prop23_lower").note == "symmetric case");
    CHECK_FALSE(rep.at("prop21_upper").applicable);
    CHECK_THROWS_AS(rep.at("nope"), std::out_of_range);
}

TEST_CASE("flat static data under the flat barrier") {
    auto r = run(preset::FlatStatic{1.0}, hyperbolic(3, 5.0, 200), cfg(1e-3, 0.1));
    BarrierOptions opts;
    opts.b_flat = 1.0;
    auto rep = check_barriers(r.traj, r.bounds, opts);
    CHECK(rep.at("prop21_upper").applicable);
    CHECK(rep.at("prop21_upper").pass);
    CHECK(rep.at("prop23_lower").pass);

    opts.b_flat = 0.5;  // u0 > f: hypothesis fails
    CHECK_FALSE(check_barriers(r.traj, r.bounds, opts).at("prop21_upper").applicable);

    auto frozen = run(preset::FlatStatic{1.0}, hyperbolic(3, 5.0, 200), cfg(1e-3, 0.1),
                      BoundaryMode::Frozen);
    auto fr = check_barriers(frozen.traj, frozen.bounds);
    CHECK_FALSE(fr.at("lemma14_lower").applicable);
    CHECK_FALSE(fr.at("prop23_lower").applicable);
}

TEST_CASE("barriers need the hyperbolic background") {
    auto mesh = std::make_shared<const RadialMesh>(Background::Euclidean, 3, 1.0, 4.0, 40);
    auto r = run(preset::PowerLaw{1.0}, mesh, cfg(1e-2, 0.05));
    CHECK_THROWS_AS(check_barriers(r.traj, r.bounds), ConfigError);
    CHECK_THROWS_AS(gradient_quantity_sup(r.traj), ConfigError);
}

TEST_CASE("cutoff and J parameters") {
    auto p = JParameters{}.resolved();
    CHECK(p.s0 == doctest::Approx(std::numbers::ln2));
    CHECK(p.S == doctest::Approx(std::numbers::ln2 / 3.0));
    CHECK_THROWS_AS((JParameters{0.5, 0.6, 100}.resolved()), ConfigError);
    CHECK_THROWS_AS((JParameters{0.1, 1.0, 100}.resolved()), ConfigError);
    CHECK(cutoff(0.1, 0.2, 0.6) == 0.0);
    CHECK(cutoff(0.7, 0.2, 0.6) == 1.0);
    CHECK(cutoff(0.4, 0.2, 0.6) == doctest::Approx(0.5));
    double prev = 0.0;
    for (double s = 0.2; s <= 0.6; s += 0.01) {
        CHECK(cutoff(s, 0.2, 0.6) >= prev);
        prev = cutoff(s, 0.2, 0.6);
    }
}

TEST_CASE("J vanishes when the lower flow is below") {
    std::vector<double> s, U, V;
    for (int i = 0; i <= 100; ++i) {
        s.push_back(0.2 + 0.01 * i);
        U.push_back(2.0 + s.back());
        V.push_back(1.0 + s.back());
    }
    CHECK(area_difference_J(s, U, V, 0.2, 0.6, 3) == 0.0);
    CHECK(area_difference_J(s, V, U, 0.2, 0.6, 3) > 0.0);
    CHECK_THROWS_AS(area_difference_J(s, U, std::vector<double>(3), 0.2, 0.6, 3), ConfigError);
}

TEST_CASE("J matches a fine quadrature for constant factors") {
    // u = 1 above, u = 2 below on H^3; V = U + 1/sinh^2 s.
    auto mesh = hyperbolic(3, 4.0, 400);
    RadialField up(mesh, 1.0), lo(mesh, 2.0);
    const JParameters p = JParameters{}.resolved();
    const double J = area_difference_J(up, lo, p);
    const double s_max = coord_s_from_r((*mesh)[1]);
    const std::size_t n = 400001;
    double sum = 0.0;
    auto f = [&](double s) {
        const double sh2 = std::sinh(s) * std::sinh(s);
        return (std::pow(2.0 / sh2, 1.25) - std::pow(1.0 / sh2, 1.25)) * cutoff(s, p.S, p.s0);
    };
    const double ds = (s_max - p.S) / (n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        sum += w * f(p.S + ds * i);
    }
    CHECK(J == doctest::Approx(sum * ds * 4.0 * std::numbers::pi).epsilon(1e-4));

    auto small = hyperbolic(3, 1.5, 100);  // S lies outside B_l
    CHECK_THROWS_AS(area_difference_J(RadialField(small, 1.0), RadialField(small, 2.0), p),
                    ConfigError);
}

TEST_CASE("comparison of flows") {
    auto mesh = hyperbolic(3, 4.0, 120);
    auto a = run(preset::Constant{1.0}, mesh, cfg(1e-2, 0.1));
    auto b = run(preset::Constant{2.0}, mesh, cfg(1e-2, 0.1));

    auto self = compare_flows(a.traj, a.traj);
    CHECK(self.ordering_violation == 0.0);
    CHECK(self.label == "ordered");
    for (double J : self.J_series) CHECK(J == 0.0);

    auto ordered = compare_flows(b.traj, a.traj);
    CHECK(ordered.initial_ordered);
    CHECK(ordered.ordering_violation == 0.0);
    CHECK(ordered.J_series.size() == a.traj.size());

    auto swapped = compare_flows(a.traj, b.traj);
    CHECK(swapped.label == "unordered-initial");
    CHECK(swapped.ordering_violation == doctest::Approx(1.0));
    CHECK(swapped.J_series.front() > 0.0);

    auto c = run(preset::Constant{1.0}, mesh, cfg(2e-2, 0.1));
    CHECK_THROWS_AS(compare_flows(a.traj, c.traj), ConfigError);
    auto d = run(preset::Constant{1.0}, hyperbolic(3, 4.0, 121), cfg(1e-2, 0.1));
    CHECK_THROWS_AS(compare_flows(a.traj, d.traj), ConfigError);
}

TEST_CASE("completeness scan") {
    ScanPlan h;
    h.domains = {2.0, 3.0};
    h.t_samples = {0.0, 0.05, 0.1};
    h.spacing = 0.05;
    h.config = cfg(1e-2, 0.1);
    auto rh = completeness_scan(preset::Constant{1.0}, h);
    CHECK(rh.verdict == CompletenessVerdict::DivergingWithDomain);
    CHECK(rh.lengths.size() == 6);
    // g(t) = (1 + 6t) g_H: length sqrt(1 + 6t)(l - 1)
    CHECK(rh.lengths.back().length == doctest::Approx(std::sqrt(1.6) * 2.0).epsilon(1e-6));

    ScanPlan e;
    e.domains = {5.0, 10.0};
    e.t_samples = {0.0, 0.05};
    e.r_min = 1.0;
    e.spacing = 0.05;
    e.config = cfg(1e-2, 0.05);
    e.stability = 0.2;
    auto re = completeness_scan(preset::PowerLaw{1.0}, e);
    CHECK(re.verdict == CompletenessVerdict::UniformlyBounded);
    CHECK(re.lengths.back().length == doctest::Approx(0.9).epsilon(1e-3));
    e.stability = 1e-2;
    CHECK(completeness_scan(preset::PowerLaw{1.0}, e).verdict == CompletenessVerdict::Inconclusive);

    h.domains = {3.0, 2.0};
    CHECK_THROWS_AS(completeness_scan(preset::Constant{1.0}, h), ConfigError);
    CHECK(to_string(CompletenessVerdict::UniformlyBounded) == "UniformlyBounded");
}

TEST_CASE("gradient quantity of the flat factor in dimension 4") {
    // U = u^{1/2} = 1 / (2 cosh^2(r/2)), w = U^{-1/2} U_r^2
    auto mesh = hyperbolic(4, 6.0, 6001);
    RadialStencil st(*mesh);
    auto u = make_initial(preset::FlatStatic{1.0}, mesh);
    std::vector<double> w(mesh->size());
    kernels::serial::gradient_quantity(st, u.values, w);
    const std::pair<double, double> expected[] = {
        {0.5, 0.0193286194343412}, {1.0, 0.0526579551143888}, {2.0, 0.0558131262327540},
        {3.0, 0.0222513110410130}, {4.0, 0.00617034971726715}};
    for (auto [r, value] : expected) {
        const auto i = static_cast<std::size_t>(std::lround(r / mesh->dr()));
        CHECK(w[i] == doctest::Approx(value).epsilon(1e-6));
    }
    CHECK(w[0] == 0.0);

    auto traj = run(preset::FlatStatic{1.0}, hyperbolic(4, 6.0, 600), cfg(1e-3, 0.01),
                    BoundaryMode::Frozen).traj;
    auto sup = gradient_quantity_sup(traj, 1.0);
    CHECK(sup.size() == traj.size());
    // max of sqrt2 sinh^2(r/2) / (4 cosh^5(r/2)) over r, at tanh^2(r/2) = 2/5
    const double th2 = 0.4;
    CHECK(sup.front() ==
          doctest::Approx(std::sqrt(2.0) / 4.0 * th2 * std::pow(1.0 - th2, 1.5)).epsilon(1e-4));
    CHECK_THROWS_AS(gradient_quantity_sup(traj, 0.5), ConfigError);
}
