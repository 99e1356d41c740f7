#pragma once

// Node-wise finite-difference kernels for rotationally symmetric fields.
//
// Every kernel exists twice: a plain serial loop (the reference) and an
// OpenMP loop with identical per-node arithmetic. Both produce bit-identical
// output; tests hold them to that and the benchmark compares their speed.

#include <cstddef>
#include <span>
#include <vector>

#include "yamabe/geometry.hpp"

namespace yamabe {

enum class Exec { Serial, Parallel };

/// Default policy for library callers; Parallel when built with OpenMP.
Exec default_exec() noexcept;

/// Precomputed stencil weights of the radial Laplacian A^{-1}(A f_r)_r on one mesh.
///
/// Interior nodes use a finite-volume form
///   L f_i = [w+_i (f_{i+1} - f_i) - w-_i (f_i - f_{i-1})] / dr^2
/// where w+/w- is the ratio of face conductances 1 / int dr/A (midpoint
/// conductance on the face touching the centre) and the common scale makes
/// r^2 (R^m) or cosh r (H^m) exact. Radial harmonic functions (r^{2-m} on
/// R^m) are annihilated exactly and off-diagonals stay positive. At the centre the even reflection
/// f_{-1} = f_1 gives L f_0 = 2m (f_1 - f_0) / dr^2. Ends that are not the
/// centre use one-sided second-order differences (curvature evaluation only;
/// the solver replaces those rows by Dirichlet data).
class RadialStencil {
public:
    explicit RadialStencil(const RadialMesh& mesh);

    std::size_t size() const noexcept { return w_plus_.size(); }
    double dr() const noexcept { return dr_; }
    int dimension() const noexcept { return m_; }
    bool has_origin() const noexcept { return origin_; }
    Background background() const noexcept { return bg_; }
    double w_plus(std::size_t i) const noexcept { return w_plus_[i]; }
    double w_minus(std::size_t i) const noexcept { return w_minus_[i]; }
    /// Zeroth-order term of -u R/(m-1): m on H^m, 0 on R^m.
    double zeroth_order() const noexcept { return bg_ == Background::Hyperbolic ? m_ : 0.0; }

    double laplacian_at(std::span<const double> u, std::size_t i) const noexcept;
    double gradient_at(std::span<const double> u, std::size_t i) const noexcept;

private:
    Background bg_;
    int m_;
    double dr_;
    bool origin_;
    double c_first_ = 0.0;  // c(r) at the inner end (annulus only)
    double c_last_ = 0.0;   // c(r) at the outer end
    std::vector<double> w_plus_;
    std::vector<double> w_minus_;
};

/// Tridiagonal system in row form: lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
struct Tridiagonal {
    std::vector<double> lower, diag, upper, rhs;
    explicit Tridiagonal(std::size_t n = 0) : lower(n), diag(n), upper(n), rhs(n) {}
    std::size_t size() const noexcept { return diag.size(); }
};

/// Thomas algorithm; throws SolverError on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(const Tridiagonal& system);

/// Coefficients of one semi-implicit step; see radial_solver.hpp.
struct StepCoefficients {
    double dt = 0.0;
    double theta = 1.0;
    bool implicit_gradient = true;
};

namespace kernels {

namespace serial {
void laplacian(const RadialStencil& st, std::span<const double> u, std::span<double> out);
void gradient(const RadialStencil& st, std::span<const double> u, std::span<double> out);
/// R = -(m-1) u^{-eta-1} ((1/eta) L u^eta + m_bg u^eta) at every node.
void curvature(const RadialStencil& st, std::span<const double> u, std::span<double> out);
/// Rows of the step system for the increment u^{n+1} - u^n (right-hand side
/// dt times the explicit rate); Dirichlet rows are identity rows with rhs 0,
/// which the caller overwrites with the boundary increment.
void assemble_step(const RadialStencil& st, std::span<const double> u,
                   const StepCoefficients& c, Tridiagonal& sys);
/// w = U^{-1/2} |U_r|^2 with U = u^eta.
void gradient_quantity(const RadialStencil& st, std::span<const double> u, std::span<double> out);
}  // namespace serial

namespace parallel {
void laplacian(const RadialStencil& st, std::span<const double> u, std::span<double> out);
void gradient(const RadialStencil& st, std::span<const double> u, std::span<double> out);
void curvature(const RadialStencil& st, std::span<const double> u, std::span<double> out);
void assemble_step(const RadialStencil& st, std::span<const double> u,
                   const StepCoefficients& c, Tridiagonal& sys);
void gradient_quantity(const RadialStencil& st, std::span<const double> u, std::span<double> out);
}  // namespace parallel

void laplacian(Exec ex, const RadialStencil& st, std::span<const double> u, std::span<double> out);
void gradient(Exec ex, const RadialStencil& st, std::span<const double> u, std::span<double> out);
void curvature(Exec ex, const RadialStencil& st, std::span<const double> u, std::span<double> out);
void assemble_step(Exec ex, const RadialStencil& st, std::span<const double> u,
                   const StepCoefficients& c, Tridiagonal& sys);
void gradient_quantity(Exec ex, const RadialStencil& st, std::span<const double> u,
                       std::span<double> out);

}  // namespace kernels

}  // namespace yamabe
