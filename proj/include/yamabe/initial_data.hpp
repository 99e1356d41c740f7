#pragma once

#include <string>
#include <variant>

#include "yamabe/geometry.hpp"
#include "yamabe/kernels.hpp"

namespace yamabe {

namespace preset {
/// u0 = c; the shifted big-bang flow c + m(m-1)t is an exact solution on H^m.
struct Constant {
    double c = 1.0;
};
/// u0 = b / (4 cosh^4(r/2)), i.e. u0 g_H = b g_E: static and flat.
struct FlatStatic {
    double b = 1.0;
};
/// u0 = base + amplitude exp(-(r - center)^2 / width^2).
struct Bump {
    double base = 1.0;
    double amplitude = 1.0;
    double center = 2.0;
    double width = 0.5;
};
/// Round sphere pushed to R^m by stereographic projection: 4 / (1 + r^2)^2.
struct PuncturedSphere {};
/// u0 = b r^{-4} on R^m (needs r_min >= 0.1).
struct PowerLaw {
    double b = 1.0;
};
}  // namespace preset

using InitialPreset =
    std::variant<preset::Constant, preset::FlatStatic, preset::Bump, preset::PuncturedSphere,
                 preset::PowerLaw>;

/// Background the preset is defined on.
Background preset_background(const InitialPreset& p);
std::string preset_name(const InitialPreset& p);

/// Smallest inner radius admitted for PowerLaw meshes.
inline constexpr double kPowerLawMinRadius = 0.1;

/// Upper cap for the reported lower-curvature time shift eps.
inline constexpr double kEpsFloorCap = 10.0;

RadialField make_initial(const InitialPreset& preset, const MeshPtr& mesh);

/// R of g = u g_background with the discrete radial operators:
///   R = -(m-1) u^{-eta-1} ((1/eta) L u^eta + m_bg u^eta),
/// m_bg = m on H^m and 0 on R^m. The implicit time stepper uses the same L.
RadialField scalar_curvature(const RadialField& u, Exec ex = default_exec());

/// R_{g0} of the initial factor; throws InvalidFieldError unless u0 > 0.
RadialField initial_scalar_curvature(const RadialField& u0, Exec ex = default_exec());

struct DataBounds {
    double C0 = 0.0;         ///< sup u0
    double K0 = 0.0;         ///< max(0, sup R_{g0})
    double kappa = 0.0;      ///< max over the closed ball of max{|R_{g0}|, m(m-1)/u0}
    double eps_floor = 0.0;  ///< eps with R_{g0} >= -1/eps, capped at kEpsFloorCap
    double min_u0 = 0.0;
    double min_R0 = 0.0;
};

DataBounds data_bounds(const RadialField& u0, const RadialField& R0);

}  // namespace yamabe
