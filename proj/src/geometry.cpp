#include "yamabe/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "yamabe/errors.hpp"

namespace yamabe {

std::string_view to_string(Background bg) noexcept {
    return bg == Background::Hyperbolic ? "hyperbolic" : "euclidean";
}

double RadialCoordinate::rho() const { return std::tanh(0.5 * r); }

double RadialCoordinate::s() const { return coord_s_from_r(r); }

RadialCoordinate RadialCoordinate::from_s(double s) { return {coord_r_from_s(s)}; }

RadialMesh::RadialMesh(Background background, int dimension, double r_min, double r_max,
                       std::size_t nodes)
    : background_(background), m_(dimension), r_min_(r_min), r_max_(r_max) {
    if (dimension < 3) {
        throw ConfigError("dimension must be >= 3, got " + std::to_string(dimension));
    }
    if (!(r_min >= 0.0) || !(r_max > r_min)) {
        throw ConfigError("mesh requires 0 <= r_min < r_max");
    }
    if (nodes < 4) {
        throw ConfigError("mesh requires at least 4 nodes");
    }
    dr_ = (r_max - r_min) / static_cast<double>(nodes - 1);
    nodes_.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        nodes_[i] = r_min + static_cast<double>(i) * dr_;
    }
    nodes_.back() = r_max;
}

RadialMesh RadialMesh::with_spacing(Background background, int dimension, double r_min,
                                    double r_max, double spacing) {
    if (!(spacing > 0.0)) {
        throw ConfigError("mesh spacing must be positive");
    }
    auto intervals = static_cast<std::size_t>(std::llround((r_max - r_min) / spacing));
    return RadialMesh(background, dimension, r_min, r_max, std::max<std::size_t>(intervals, 3) + 1);
}

bool RadialMesh::same_grid(const RadialMesh& other) const noexcept {
    return background_ == other.background_ && m_ == other.m_ && nodes_ == other.nodes_;
}

RadialField::RadialField(MeshPtr m, std::vector<double> v) : mesh(std::move(m)), values(std::move(v)) {
    if (!mesh || values.size() != mesh->size()) {
        throw ConfigError("field size does not match its mesh");
    }
}

RadialField::RadialField(MeshPtr m, double fill) : mesh(std::move(m)) {
    if (!mesh) {
        throw ConfigError("field requires a mesh");
    }
    values.assign(mesh->size(), fill);
}

double RadialField::min() const { return *std::min_element(values.begin(), values.end()); }

double RadialField::max() const { return *std::max_element(values.begin(), values.end()); }

double coord_s_from_r(double r) {
    if (!(r > 0.0)) {
        throw DomainError("log-polar coordinate needs r > 0");
    }
    return -std::log(std::tanh(0.5 * r));
}

double coord_r_from_s(double s) {
    if (!(s > 0.0)) {
        throw DomainError("log-polar coordinate s must be positive");
    }
    return 2.0 * std::atanh(std::exp(-s));
}

double flat_conformal_factor(double r, double b) {
    if (r < 0.0 || !(b > 0.0)) {
        throw DomainError("flat conformal factor needs r >= 0 and b > 0");
    }
    const double c = std::cosh(0.5 * r);
    const double c2 = c * c;
    return b / (4.0 * c2 * c2);
}

double flat_conformal_factor_from_s(double s, double b) {
    if (!(s > 0.0) || !(b > 0.0)) {
        throw DomainError("flat conformal factor needs s > 0 and b > 0");
    }
    // e^{-s} sinh s = (1 - e^{-2s}) / 2
    const double x = -0.5 * std::expm1(-2.0 * s);
    return b * x * x;
}

double ball_scale_h(double r) {
    const double rho = std::tanh(0.5 * r);
    return 2.0 / (1.0 - rho * rho);
}

std::optional<double> radial_laplacian_coefficient(double r, Background bg, int m) {
    if (r < 0.0) {
        throw DomainError("radial Laplacian coefficient needs r >= 0");
    }
    if (r == 0.0) {
        return std::nullopt;
    }
    const double k = m - 1;
    return bg == Background::Hyperbolic ? k / std::tanh(r) : k / r;
}

std::optional<double> radial_laplacian_coefficient(double r, const RadialMesh& mesh) {
    return radial_laplacian_coefficient(r, mesh.background(), mesh.dimension());
}

double area_density_ratio(double a, double b, Background bg, int m) {
    if (bg == Background::Euclidean) return std::pow(a / b, m - 1);
    // sinh a / sinh b without overflow for large radii
    const double q = std::exp(a - b) * std::expm1(-2.0 * a) / std::expm1(-2.0 * b);
    return std::pow(q, m - 1);
}

double sphere_area(int m) {
    const double half = 0.5 * m;
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double interpolate(const RadialField& f, double r) {
    const auto& mesh = *f.mesh;
    if (r <= mesh.r_min()) return f.values.front();
    if (r >= mesh.r_max()) return f.values.back();
    const double x = (r - mesh.r_min()) / mesh.dr();
    auto i = std::min(static_cast<std::size_t>(x), mesh.size() - 2);
    const double w = x - static_cast<double>(i);
    return (1.0 - w) * f.values[i] + w * f.values[i + 1];
}

double radial_length(const RadialField& u, double r0, double r1) {
    const auto& mesh = *u.mesh;
    const double eps = 1e-12 * std::max(1.0, mesh.r_max());
    if (!(r0 < r1) || r0 < mesh.r_min() - eps || r1 > mesh.r_max() + eps) {
        throw DomainError("radial_length needs r_min <= r0 < r1 <= r_max");
    }
    for (double v : u.values) {
        if (!(v > 0.0)) {
            throw InvalidFieldError("radial_length needs a positive conformal factor");
        }
    }
    // Collect [r0, nodes strictly inside, r1].
    std::vector<double> rs{r0};
    for (double r : mesh.nodes()) {
        if (r > r0 + eps && r < r1 - eps) rs.push_back(r);
    }
    rs.push_back(r1);

    double length = 0.0;
    double prev = std::sqrt(interpolate(u, rs.front()));
    for (std::size_t k = 1; k < rs.size(); ++k) {
        const double cur = std::sqrt(interpolate(u, rs[k]));
        length += 0.5 * (prev + cur) * (rs[k] - rs[k - 1]);
        prev = cur;
    }
    return length;
}

}  // namespace yamabe
