#include "yamabe/kernels.hpp"

#include <array>
#include <cmath>
#include <string>

#include "yamabe/errors.hpp"

namespace yamabe {

Exec default_exec() noexcept {
#ifdef _OPENMP
    return Exec::Parallel;
#else
    return Exec::Serial;
#endif
}

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussX = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                           0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGaussW = {0.2369268850561891, 0.4786286704993665,
                                           0.5688888888888889, 0.4786286704993665,
                                           0.2369268850561891};

// int_{a}^{b} A(ref)/A(r) dr, the face resistance scaled by A(ref). Closed form
// on R^m so that r^{2-m} is annihilated to rounding.
double face_resistance(double a, double b, double ref, Background bg, int m) {
    if (bg == Background::Euclidean) {
        const double e = 2.0 - m;
        return (std::pow(a / ref, e) - std::pow(b / ref, e)) * ref / (m - 2.0);
    }
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < kGaussX.size(); ++k) {
        sum += kGaussW[k] * area_density_ratio(ref, mid + half * kGaussX[k], bg, m);
    }
    return sum * half;
}

}  // namespace

RadialStencil::RadialStencil(const RadialMesh& mesh)
    : bg_(mesh.background()), m_(mesh.dimension()), dr_(mesh.dr()), origin_(mesh.has_origin()) {
    const std::size_t n = mesh.size();
    w_plus_.assign(n, 0.0);
    w_minus_.assign(n, 0.0);
    const double h2 = dr_ * dr_;
    // Even test function with a known Laplacian: r^2 on R^m, cosh r on H^m.
    const bool flat = bg_ == Background::Euclidean;
    auto q = [&](double r) { return flat ? r * r : std::cosh(r); };
    auto lap_q = [&](double r) { return flat ? 2.0 * m_ : m_ * std::cosh(r); };
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r = mesh[i];
        const double k_plus = 1.0 / face_resistance(r, mesh[i + 1], r, bg_, m_);
        // 1/A is not integrable at the centre; midpoint conductance instead
        const double k_minus = (i == 1 && origin_)
                                   ? area_density_ratio(0.5 * dr_, r, bg_, m_) / dr_
                                   : 1.0 / face_resistance(mesh[i - 1], r, r, bg_, m_);
        // Conductance ratio keeps harmonic functions exact; the common scale
        // makes q exact as well (it replaces the cell volume).
        const double flux = k_plus * (q(mesh[i + 1]) - q(r)) - k_minus * (q(r) - q(mesh[i - 1]));
        if (!(flux > 0.0)) {
            throw SolverError("degenerate Laplacian stencil at node " + std::to_string(i));
        }
        const double scale = h2 * lap_q(r) / flux;
        w_plus_[i] = scale * k_plus;
        w_minus_[i] = scale * k_minus;
    }
    if (!origin_) {
        c_first_ = *radial_laplacian_coefficient(mesh[0], bg_, m_);
    }
    c_last_ = *radial_laplacian_coefficient(mesh[n - 1], bg_, m_);
}

double RadialStencil::laplacian_at(std::span<const double> u, std::size_t i) const noexcept {
    const std::size_t last = u.size() - 1;
    const double h2 = dr_ * dr_;
    if (i == 0) {
        if (origin_) {
            return 2.0 * m_ * (u[1] - u[0]) / h2;
        }
        const double urr = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / h2;
        const double ur = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dr_);
        return urr + c_first_ * ur;
    }
    if (i == last) {
        const double urr = (2.0 * u[i] - 5.0 * u[i - 1] + 4.0 * u[i - 2] - u[i - 3]) / h2;
        const double ur = (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * dr_);
        return urr + c_last_ * ur;
    }
    return (w_plus_[i] * (u[i + 1] - u[i]) - w_minus_[i] * (u[i] - u[i - 1])) / h2;
}

double RadialStencil::gradient_at(std::span<const double> u, std::size_t i) const noexcept {
    const std::size_t last = u.size() - 1;
    if (i == 0) {
        if (origin_) return 0.0;
        return (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dr_);
    }
    if (i == last) {
        return (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * dr_);
    }
    return (u[i + 1] - u[i - 1]) / (2.0 * dr_);
}

std::vector<double> solve_tridiagonal(const Tridiagonal& sys) {
    const std::size_t n = sys.size();
    std::vector<double> c(n), d(n), x(n);
    double pivot = sys.diag[0];
    if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
        throw SolverError("singular tridiagonal system at row 0");
    }
    c[0] = sys.upper[0] / pivot;
    d[0] = sys.rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
        pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
        if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot)) {
            throw SolverError("singular tridiagonal system at row " + std::to_string(i));
        }
        c[i] = sys.upper[i] / pivot;
        d[i] = (sys.rhs[i] - sys.lower[i] * d[i - 1]) / pivot;
    }
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

namespace kernels {

namespace {

// U = u^eta at every node; the loop itself is the caller's.
inline double power_node(std::span<const double> u, double eta, std::size_t i) {
    return std::pow(u[i], eta);
}

inline double eta_of(const RadialStencil& st) { return (st.dimension() - 2) / 4.0; }

inline double curvature_node(const RadialStencil& st, std::span<const double> u,
                             std::span<const double> U, std::size_t i) {
    const double m = st.dimension();
    const double eta = eta_of(st);
    const double ui = u[i];
    const double src = st.laplacian_at(U, i) / eta + st.zeroth_order() * U[i];
    return -(m - 1.0) * src / (U[i] * ui);
}

inline double gradient_quantity_node(const RadialStencil& st, std::span<const double> u,
                                     std::size_t i) {
    const double eta = eta_of(st);
    const double ui = u[i];
    const double U = std::pow(ui, eta);
    const double Ur = eta * std::pow(ui, eta - 1.0) * st.gradient_at(u, i);
    return Ur * Ur / std::sqrt(U);
}

// Implicit rows discretise (1/eta) u^{-eta} L(u^eta) with u^eta linearised about
// u_n: (u^{n+1})^eta ~ (1 - eta) U + eta p u^{n+1}, p = U/u_n. Scaling column j
// by 1/p_j leaves a diagonally dominant Z-matrix, so the system is an M-matrix
// at any dt; a steady state of L U + eta m_bg U = 0 is a fixed point.
inline void assemble_row(const RadialStencil& st, std::span<const double> u,
                         std::span<const double> U, const StepCoefficients& sc,
                         Tridiagonal& sys, std::size_t i) {
    const std::size_t last = u.size() - 1;
    const double ui = u[i];
    if ((i == 0 && !st.has_origin()) || i == last) {
        sys.lower[i] = 0.0;
        sys.upper[i] = 0.0;
        sys.diag[i] = 1.0;
        sys.rhs[i] = 0.0;
        return;
    }
    const double m = st.dimension();
    const double h2 = st.dr() * st.dr();
    double lp, lm;
    if (i == 0) {
        lp = 2.0 * m / h2;
        lm = 0.0;
    } else {
        lp = st.w_plus(i) / h2;
        lm = st.w_minus(i) / h2;
    }
    const double th = sc.theta;
    if (sc.implicit_gradient) {
        const double eta = eta_of(st);
        const double c = sc.dt * (m - 1.0) / U[i];
        const double pm = i == 0 ? 0.0 : U[i - 1] / u[i - 1];
        const double pp = U[i + 1] / u[i + 1];
        sys.lower[i] = -c * th * lm * pm;
        sys.upper[i] = -c * th * lp * pp;
        sys.diag[i] = 1.0 + c * th * (lp + lm) * (U[i] / ui);
        // increment form: rhs - A u^n collapses to dt times the explicit rate
        const double lapU = st.laplacian_at(U, i);
        sys.rhs[i] = sc.dt * (m - 1.0) * (st.zeroth_order() + lapU / (eta * U[i]));
        return;
    }
    const double k = (m - 6.0) / 4.0;
    const double c = sc.dt * (m - 1.0) / ui;
    const double du = st.gradient_at(u, i);
    const double lap = st.laplacian_at(u, i);
    sys.lower[i] = -c * th * lm;
    sys.upper[i] = -c * th * lp;
    sys.diag[i] = 1.0 + c * th * (lp + lm);
    const double source = st.zeroth_order() + lap / ui + k * du * du / (ui * ui);
    sys.rhs[i] = sc.dt * (m - 1.0) * source;
}

}  // namespace

namespace serial {

void laplacian(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = st.laplacian_at(u, i);
}

void gradient(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = st.gradient_at(u, i);
}

void curvature(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    std::vector<double> U(u.size());
    const double eta = eta_of(st);
    for (std::size_t i = 0; i < u.size(); ++i) U[i] = power_node(u, eta, i);
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = curvature_node(st, u, U, i);
}

void assemble_step(const RadialStencil& st, std::span<const double> u,
                   const StepCoefficients& c, Tridiagonal& sys) {
    std::vector<double> U(u.size());
    const double eta = eta_of(st);
    for (std::size_t i = 0; i < u.size(); ++i) U[i] = power_node(u, eta, i);
    for (std::size_t i = 0; i < u.size(); ++i) assemble_row(st, u, U, c, sys, i);
}

void gradient_quantity(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    for (std::size_t i = 0; i < u.size(); ++i) out[i] = gradient_quantity_node(st, u, i);
}

}  // namespace serial

namespace parallel {

void laplacian(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = st.laplacian_at(u, i);
}

void gradient(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = st.gradient_at(u, i);
}

void curvature(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
    std::vector<double> U(u.size());
    const double eta = eta_of(st);
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) U[i] = power_node(u, eta, i);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = curvature_node(st, u, U, i);
    }
}

void assemble_step(const RadialStencil& st, std::span<const double> u,
                   const StepCoefficients& c, Tridiagonal& sys) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
    std::vector<double> U(u.size());
    const double eta = eta_of(st);
#pragma omp parallel
    {
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) U[i] = power_node(u, eta, i);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i) assemble_row(st, u, U, c, sys, i);
    }
}

void gradient_quantity(const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = gradient_quantity_node(st, u, i);
}

}  // namespace parallel

void laplacian(Exec ex, const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    ex == Exec::Parallel ? parallel::laplacian(st, u, out) : serial::laplacian(st, u, out);
}

void gradient(Exec ex, const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    ex == Exec::Parallel ? parallel::gradient(st, u, out) : serial::gradient(st, u, out);
}

void curvature(Exec ex, const RadialStencil& st, std::span<const double> u, std::span<double> out) {
    ex == Exec::Parallel ? parallel::curvature(st, u, out) : serial::curvature(st, u, out);
}

void assemble_step(Exec ex, const RadialStencil& st, std::span<const double> u,
                   const StepCoefficients& c, Tridiagonal& sys) {
    ex == Exec::Parallel ? parallel::assemble_step(st, u, c, sys)
                         : serial::assemble_step(st, u, c, sys);
}

void gradient_quantity(Exec ex, const RadialStencil& st, std::span<const double> u,
                       std::span<double> out) {
    ex == Exec::Parallel ? parallel::gradient_quantity(st, u, out)
                         : serial::gradient_quantity(st, u, out);
}

}  // namespace kernels

}  // namespace yamabe
