#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace yamabe {

enum class Background { Hyperbolic, Euclidean };

std::string_view to_string(Background bg) noexcept;

/// Geodesic radius with its Poincare-ball and log-polar views.
///
/// rho = tanh(r/2) is the Euclidean radius in the ball model, and
/// s = -ln(tanh(r/2)) is the cylinder coordinate of the log-polar chart.
/// The origin r = 0 maps to s = +inf.
struct RadialCoordinate {
    double r = 0.0;

    double rho() const;
    double s() const;

    static RadialCoordinate from_s(double s);
};

/// Uniform radial grid on [r_min, r_max] for an m-dimensional background.
class RadialMesh {
public:
    RadialMesh(Background background, int dimension, double r_min, double r_max,
               std::size_t nodes);

    /// Mesh whose spacing is as close as possible to `spacing`; used to keep
    /// nested domains node-aligned.
    static RadialMesh with_spacing(Background background, int dimension, double r_min,
                                   double r_max, double spacing);

    Background background() const noexcept { return background_; }
    int dimension() const noexcept { return m_; }
    double r_min() const noexcept { return r_min_; }
    double r_max() const noexcept { return r_max_; }
    double dr() const noexcept { return dr_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    double operator[](std::size_t i) const noexcept { return nodes_[i]; }

    /// True when node 0 is the centre of rotation (even symmetry applies
    /// there instead of a Dirichlet condition).
    bool has_origin() const noexcept { return r_min_ == 0.0; }

    /// (m-2)/4
    double eta() const noexcept { return (m_ - 2) / 4.0; }

    bool same_grid(const RadialMesh& other) const noexcept;

private:
    Background background_;
    int m_;
    double r_min_;
    double r_max_;
    double dr_;
    std::vector<double> nodes_;
};

using MeshPtr = std::shared_ptr<const RadialMesh>;

/// Rotationally symmetric scalar sampled on a mesh (u, U = u^eta, or R).
struct RadialField {
    MeshPtr mesh;
    std::vector<double> values;

    RadialField() = default;
    RadialField(MeshPtr m, std::vector<double> v);
    explicit RadialField(MeshPtr m, double fill = 0.0);

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const noexcept { return values[i]; }
    double& operator[](std::size_t i) noexcept { return values[i]; }
    std::span<const double> view() const noexcept { return values; }

    double min() const;
    double max() const;
};

/// s = -ln(tanh(r/2)); throws DomainError for r <= 0.
double coord_s_from_r(double r);
/// r = 2 artanh(e^{-s}); throws DomainError for s <= 0.
double coord_r_from_s(double s);

/// The factor f with f g_H = b g_E in the ball model: b / (4 cosh^4(r/2)).
double flat_conformal_factor(double r, double b);
/// Same factor through the log-polar formula b (e^{-s} sinh s)^2.
double flat_conformal_factor_from_s(double s, double b);

/// h with g_E = h^{-2} g_H, i.e. h = 2 / (1 - rho^2).
double ball_scale_h(double r);

/// First-order coefficient c(r) of the radial Laplacian u_rr + c(r) u_r:
/// (m-1) coth r on H^m and (m-1)/r on R^m. Returns nullopt at r = 0, where
/// the discretization switches to the symmetric origin stencil m u_rr.
std::optional<double> radial_laplacian_coefficient(double r, Background bg, int m);
std::optional<double> radial_laplacian_coefficient(double r, const RadialMesh& mesh);

/// Radial area density A(r) with Laplacian A^{-1} (A u_r)_r: sinh^{m-1} r or
/// r^{m-1}. Ratios A(a)/A(b) are computed without forming either factor.
double area_density_ratio(double a, double b, Background bg, int m);

/// Volume of the unit (m-1)-sphere.
double sphere_area(int m);

/// Trapezoidal length of the radial ray in g = u g_background between r0 and r1.
/// Endpoints off the grid are handled by linear interpolation of u.
double radial_length(const RadialField& u, double r0, double r1);

/// Linear interpolation of a field at radius r (clamped to the mesh).
double interpolate(const RadialField& f, double r);

}  // namespace yamabe
