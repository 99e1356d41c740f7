#include "yamabe/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("preset parameter '") + what + "' must be positive");
    }
}

}  // namespace

Background preset_background(const InitialPreset& p) {
    return std::visit(overloaded{
                          [](const preset::PuncturedSphere&) { return Background::Euclidean; },
                          [](const preset::PowerLaw&) { return Background::Euclidean; },
                          [](const auto&) { return Background::Hyperbolic; },
                      },
                      p);
}

std::string preset_name(const InitialPreset& p) {
    std::ostringstream os;
    os.precision(17);
    std::visit(overloaded{
                   [&](const preset::Constant& q) { os << "constant:" << q.c; },
                   [&](const preset::FlatStatic& q) { os << "flatstatic:" << q.b; },
                   [&](const preset::Bump& q) {
                       os << "bump:" << q.base << ',' << q.amplitude << ',' << q.center << ','
                          << q.width;
                   },
                   [&](const preset::PuncturedSphere&) { os << "puncturedsphere"; },
                   [&](const preset::PowerLaw& q) { os << "powerlaw:" << q.b; },
               },
               p);
    return os.str();
}

RadialField make_initial(const InitialPreset& p, const MeshPtr& mesh) {
    if (preset_background(p) != mesh->background()) {
        throw ConfigError("preset " + preset_name(p) + " requires a " +
                          std::string(to_string(preset_background(p))) + " mesh");
    }
    RadialField u(mesh);
    const auto nodes = mesh->nodes();
    std::visit(overloaded{
                   [&](const preset::Constant& q) {
                       require_positive(q.c, "c");
                       std::fill(u.values.begin(), u.values.end(), q.c);
                   },
                   [&](const preset::FlatStatic& q) {
                       require_positive(q.b, "b");
                       for (std::size_t i = 0; i < nodes.size(); ++i)
                           u[i] = flat_conformal_factor(nodes[i], q.b);
                   },
                   [&](const preset::Bump& q) {
                       require_positive(q.base, "base");
                       require_positive(q.amplitude, "amplitude");
                       require_positive(q.center, "center");
                       require_positive(q.width, "width");
                       for (std::size_t i = 0; i < nodes.size(); ++i) {
                           const double x = (nodes[i] - q.center) / q.width;
                           u[i] = q.base + q.amplitude * std::exp(-x * x);
                       }
                   },
                   [&](const preset::PuncturedSphere&) {
                       for (std::size_t i = 0; i < nodes.size(); ++i) {
                           const double d = 1.0 + nodes[i] * nodes[i];
                           u[i] = 4.0 / (d * d);
                       }
                   },
                   [&](const preset::PowerLaw& q) {
                       require_positive(q.b, "b");
                       if (mesh->r_min() < kPowerLawMinRadius) {
                           throw ConfigError("powerlaw preset needs r_min >= 0.1");
                       }
                       for (std::size_t i = 0; i < nodes.size(); ++i) {
                           const double r2 = nodes[i] * nodes[i];
                           u[i] = q.b / (r2 * r2);
                       }
                   },
               },
               p);
    return u;
}

RadialField scalar_curvature(const RadialField& u, Exec ex) {
    RadialStencil st(*u.mesh);
    RadialField R(u.mesh);
    kernels::curvature(ex, st, u.values, R.values);
    return R;
}

RadialField initial_scalar_curvature(const RadialField& u0, Exec ex) {
    for (std::size_t i = 0; i < u0.size(); ++i) {
        if (!(u0[i] > 0.0) || !std::isfinite(u0[i])) {
            throw InvalidFieldError("initial conformal factor must be positive (node " +
                                    std::to_string(i) + ")");
        }
    }
    return scalar_curvature(u0, ex);
}

DataBounds data_bounds(const RadialField& u0, const RadialField& R0) {
    if (u0.mesh != R0.mesh && !u0.mesh->same_grid(*R0.mesh)) {
        throw ConfigError("data_bounds: fields live on different meshes");
    }
    const double m = u0.mesh->dimension();
    DataBounds b;
    b.C0 = u0.max();
    b.min_u0 = u0.min();
    b.min_R0 = R0.min();
    b.K0 = std::max(0.0, R0.max());
    double kappa = 0.0;
    for (std::size_t i = 0; i < u0.size(); ++i) {
        kappa = std::max({kappa, std::abs(R0[i]), m * (m - 1.0) / u0[i]});
    }
    b.kappa = kappa;
    b.eps_floor = std::min(kEpsFloorCap, 1.0 / std::max(1e-12, -b.min_R0));
    return b;
}

}  // namespace yamabe
