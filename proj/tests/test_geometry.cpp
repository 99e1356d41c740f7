#include <doctest.h>

#include <cmath>
#include <memory>

#include "yamabe/errors.hpp"
#include "yamabe/geometry.hpp"

using namespace yamabe;

TEST_CASE("log-polar coordinate") {
    CHECK(coord_s_from_r(1.0) == doctest::Approx(0.771936832905304725).epsilon(1e-14));
    CHECK(coord_s_from_r(2.0 * std::atanh(std::exp(-1.0))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(coord_r_from_s(0.5) == doctest::Approx(1.40682911374729525).epsilon(1e-14));
    CHECK(coord_s_from_r(1e-8) > 18.0);
    for (double r : {0.01, 0.3, 1.0, 4.0, 12.0}) {
        CHECK(coord_r_from_s(coord_s_from_r(r)) == doctest::Approx(r).epsilon(1e-12));
        auto c = RadialCoordinate{r};
        CHECK(c.rho() == doctest::Approx(std::tanh(r / 2)));
        CHECK(RadialCoordinate::from_s(c.s()).r == doctest::Approx(r).epsilon(1e-12));
    }
    CHECK_THROWS_AS(coord_s_from_r(0.0), DomainError);
    CHECK_THROWS_AS(coord_r_from_s(-1.0), DomainError);
}

TEST_CASE("flat conformal factor") {
    CHECK(flat_conformal_factor(0.0, 1.0) == doctest::Approx(0.25));
    CHECK(flat_conformal_factor(0.0, 4.0) == doctest::Approx(1.0));
    CHECK(flat_conformal_factor(2.0, 1.0) == doctest::Approx(0.0440946119035336673).epsilon(1e-14));
    for (double r : {0.2, 1.0, 3.0, 7.0}) {
        CHECK(flat_conformal_factor_from_s(coord_s_from_r(r), 2.5) ==
              doctest::Approx(flat_conformal_factor(r, 2.5)).epsilon(1e-12));
        // f g_H = b g_E with g_E = h^{-2} g_H
        const double h = ball_scale_h(r);
        CHECK(flat_conformal_factor(r, 1.0) == doctest::Approx(1.0 / (h * h)).epsilon(1e-12));
    }
    CHECK(ball_scale_h(1.0) == doctest::Approx(2.54308063481524378).epsilon(1e-14));
    CHECK_THROWS(flat_conformal_factor(1.0, 0.0));
}

TEST_CASE("radial Laplacian coefficient") {
    CHECK(*radial_laplacian_coefficient(1.0, Background::Hyperbolic, 3) ==
          doctest::Approx(2.62607057099866261).epsilon(1e-14));
    CHECK(*radial_laplacian_coefficient(1.0, Background::Hyperbolic, 3) <= 4.0);
    CHECK(*radial_laplacian_coefficient(40.0, Background::Hyperbolic, 3) == doctest::Approx(2.0));
    CHECK(*radial_laplacian_coefficient(2.0, Background::Euclidean, 4) == doctest::Approx(1.5));
    CHECK_FALSE(radial_laplacian_coefficient(0.0, Background::Hyperbolic, 3).has_value());
}

TEST_CASE("area density and sphere area") {
    CHECK(area_density_ratio(2.0, 1.0, Background::Euclidean, 3) == doctest::Approx(4.0));
    CHECK(area_density_ratio(2.0, 1.0, Background::Hyperbolic, 4) ==
          doctest::Approx(std::pow(std::sinh(2.0) / std::sinh(1.0), 3)));
    // ratios stay finite far out where sinh^{m-1} overflows
    CHECK(std::isfinite(area_density_ratio(800.0, 799.0, Background::Hyperbolic, 5)));
    CHECK(sphere_area(3) == doctest::Approx(12.5663706143591730));
    CHECK(sphere_area(4) == doctest::Approx(19.7392088021787172));
}

TEST_CASE("mesh construction") {
    RadialMesh mesh(Background::Hyperbolic, 3, 0.0, 6.0, 401);
    CHECK(mesh.size() == 401);
    CHECK(mesh.dr() == doctest::Approx(0.015));
    CHECK(mesh[0] == 0.0);
    CHECK(mesh[400] == doctest::Approx(6.0));
    CHECK(mesh.has_origin());
    CHECK(mesh.eta() == doctest::Approx(0.25));
    CHECK_THROWS_AS(RadialMesh(Background::Hyperbolic, 2, 0.0, 1.0, 10), ConfigError);
    CHECK_THROWS_AS(RadialMesh(Background::Hyperbolic, 3, 1.0, 1.0, 10), ConfigError);
    CHECK_THROWS_AS(RadialMesh(Background::Hyperbolic, 3, 0.0, 1.0, 2), ConfigError);

    auto a = RadialMesh::with_spacing(Background::Hyperbolic, 3, 0.0, 3.0, 0.015);
    auto b = RadialMesh::with_spacing(Background::Hyperbolic, 3, 0.0, 6.0, 0.015);
    CHECK(a.dr() == doctest::Approx(b.dr()));
    CHECK(a[100] == doctest::Approx(b[100]));
}

TEST_CASE("radial length and interpolation") {
    auto mesh = std::make_shared<const RadialMesh>(Background::Hyperbolic, 3, 0.0, 2.0, 41);
    CHECK(radial_length(RadialField(mesh, 1.0), 0.0, 2.0) == doctest::Approx(2.0));
    CHECK(radial_length(RadialField(mesh, 4.0), 0.3, 1.7) == doctest::Approx(2.0 * 1.4));

    auto annulus = std::make_shared<const RadialMesh>(Background::Euclidean, 3, 1.0, 50.0, 4001);
    RadialField u(annulus);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::pow((*annulus)[i], -4.0);
    CHECK(radial_length(u, 1.0, 50.0) == doctest::Approx(1.0 - 1.0 / 50.0).epsilon(1e-4));

    RadialField lin(mesh);
    for (std::size_t i = 0; i < lin.size(); ++i) lin[i] = 1.0 + (*mesh)[i];
    CHECK(interpolate(lin, 0.73) == doctest::Approx(1.73));
    CHECK(interpolate(lin, -1.0) == doctest::Approx(1.0));
    CHECK(interpolate(lin, 9.0) == doctest::Approx(3.0));

    RadialField bad(mesh, 1.0);
    bad[3] = -1.0;
    CHECK_THROWS_AS(radial_length(bad, 0.0, 1.0), InvalidFieldError);
    CHECK_THROWS_AS(radial_length(RadialField(mesh, 1.0), 1.0, 3.0), DomainError);
}
