#include "yamabe/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parallel_for.hpp"
#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tracker {
    BarrierCheck check;
    explicit Tracker(std::string name) {
        check.name = std::move(name);
        check.worst_slack = kInf;
    }
    void observe(double slack, std::size_t node, double t) {
        if (slack < check.worst_slack) {
            check.worst_slack = slack;
            check.worst_node = node;
            check.worst_time = t;
        }
    }
};

void skip(Tracker& tr, std::string note) {
    tr.check.applicable = false;
    tr.check.note = std::move(note);
    tr.check.worst_slack = 0.0;
}

}  // namespace

bool BarrierReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const BarrierCheck& c) { return !c.applicable || c.pass; });
}

const BarrierCheck& BarrierReport::at(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no barrier check named " + name);
}

BarrierReport check_barriers(const FlowTrajectory& traj, const DataBounds& bounds,
                             const BarrierOptions& opts, Exec ex) {
    const auto& mesh = *traj.mesh;
    if (mesh.background() != Background::Hyperbolic) {
        throw ConfigError("check_barriers needs a hyperbolic trajectory");
    }
    const double m = mesh.dimension();
    const double eta = mesh.eta();
    const double big_bang = m * (m - 1.0);
    const double eps = opts.eps.value_or(bounds.eps_floor);
    const bool frozen = traj.boundary.mode == BoundaryMode::Frozen;

    Tracker l14lo("lemma14_lower"), l14up("lemma14_upper"), l13lo("lemma13_lower"),
        l13up("lemma13_upper"), p21("prop21_upper"), p23("prop23_lower");
    p23.check.note = "symmetric case";

    bool prop21_on = opts.b_flat.has_value();
    std::vector<double> flat(mesh.size());
    if (prop21_on) {
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            flat[i] = flat_conformal_factor(mesh[i], *opts.b_flat);
            if (traj.u.front()[i] > flat[i] * (1.0 + 1e-12)) prop21_on = false;
        }
        if (!prop21_on) skip(p21, "initial data not below b g_E");
    } else {
        skip(p21, "no flat scale supplied");
    }

    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.times[k];
        const auto& u = traj.u[k];
        const RadialField R = traj.curvature(k, ex);
        const bool upper_on = bounds.K0 * t < 1.0;
        const double Rmax = upper_curvature_barrier(bounds.K0, t);
        for (std::size_t i = 0; i < u.size(); ++i) {
            l14lo.observe(u[i] - (big_bang * t + bounds.min_u0 / 3.0), i, t);
            l14up.observe(big_bang * t + 5.0 * bounds.C0 / 3.0 - u[i], i, t);
            l13lo.observe(R[i] + 1.0 / (t + eps), i, t);
            if (upper_on) l13up.observe(Rmax - R[i], i, t);
            if (prop21_on) {
                const double bound = std::pow(big_bang * t, eta) + std::pow(flat[i], eta);
                p21.observe(bound - std::pow(u[i], eta), i, t);
            }
            p23.observe(u[i] - big_bang * t, i, t);
        }
    }
    if (frozen) {
        skip(l14lo, "not applicable: frozen boundary data");
        skip(l14up, "not applicable: frozen boundary data");
        skip(p23, "not applicable: frozen boundary data");
    }

    BarrierReport rep;
    rep.tolerance = opts.tolerance;
    rep.eps = eps;
    for (Tracker* tr : {&l14lo, &l14up, &l13lo, &l13up, &p21, &p23}) {
        if (tr->check.worst_slack == kInf) tr->check.worst_slack = 0.0;
        tr->check.pass = !tr->check.applicable || tr->check.worst_slack >= -opts.tolerance;
        rep.checks.push_back(tr->check);
    }
    return rep;
}

JParameters JParameters::resolved() const {
    JParameters p = *this;
    if (p.s0 == 0.0) p.s0 = std::numbers::ln2;
    if (p.S == 0.0) p.S = p.s0 / 3.0;
    const double slack = 1e-15;
    if (!(p.s0 <= std::numbers::ln2 + slack)) throw ConfigError("J needs s0 <= ln 2");
    if (!(p.S > 0.0 && p.S <= p.s0 / 3.0 + slack)) throw ConfigError("J needs 0 < S <= s0/3");
    if (p.samples < 3) throw ConfigError("J needs at least 3 samples");
    return p;
}

double cutoff(double s, double S, double s0) {
    if (s <= S) return 0.0;
    if (s >= s0) return 1.0;
    const double x = (s - S) / (s0 - S);
    return x * x * x * (10.0 - 15.0 * x + 6.0 * x * x);
}

double area_difference_J(std::span<const double> s, std::span<const double> U,
                         std::span<const double> V, double S, double s0, int m) {
    if (s.size() != U.size() || s.size() != V.size()) {
        throw ConfigError("area_difference_J: grid and fields differ in length");
    }
    const double e1 = (m - 2) / 4.0 + 1.0;
    auto integrand = [&](std::size_t i) {
        const double d = std::pow(V[i], e1) - std::pow(U[i], e1);
        return d > 0.0 ? d * cutoff(s[i], S, s0) : 0.0;
    };
    double sum = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        sum += 0.5 * (integrand(i - 1) + integrand(i)) * (s[i] - s[i - 1]);
    }
    return sphere_area(m) * sum;
}

std::vector<double> to_log_polar(const RadialField& u, std::span<const double> s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double sh = std::sinh(s[i]);
        out[i] = interpolate(u, coord_r_from_s(s[i])) / (sh * sh);
    }
    return out;
}

double area_difference_J(const RadialField& upper, const RadialField& lower,
                         const JParameters& params) {
    const JParameters p = params.resolved();
    const auto& mesh = *upper.mesh;
    if (!mesh.same_grid(*lower.mesh)) throw ConfigError("J: fields on different meshes");
    const double s_edge = coord_s_from_r(mesh.r_max());
    if (p.S < s_edge) {
        throw ConfigError("J: S = " + std::to_string(p.S) + " lies outside the domain (s(l) = " +
                          std::to_string(s_edge) + ")");
    }
    const double r_inner = mesh.has_origin() ? mesh[1] : mesh.r_min();
    const double s_max = coord_s_from_r(r_inner);
    std::vector<double> s(p.samples);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = p.S + (s_max - p.S) * static_cast<double>(i) / static_cast<double>(s.size() - 1);
    }
    return area_difference_J(s, to_log_polar(upper, s), to_log_polar(lower, s), p.S, p.s0,
                             mesh.dimension());
}

ComparisonReport compare_flows(const FlowTrajectory& upper, const FlowTrajectory& lower,
                               const JParameters& params) {
    if (!upper.mesh->same_grid(*lower.mesh)) {
        throw ConfigError("compare_flows: trajectories live on different meshes");
    }
    if (upper.size() != lower.size()) {
        throw ConfigError("compare_flows: time grids differ in length");
    }
    for (std::size_t k = 0; k < upper.size(); ++k) {
        if (std::abs(upper.times[k] - lower.times[k]) > 1e-12 * std::max(1.0, upper.times[k])) {
            throw ConfigError("compare_flows: time grids differ at index " + std::to_string(k));
        }
    }
    const JParameters p = params.resolved();
    ComparisonReport rep;
    rep.S = p.S;
    rep.s0 = p.s0;
    for (std::size_t i = 0; i < upper.mesh->size(); ++i) {
        if (lower.u.front()[i] > upper.u.front()[i]) rep.initial_ordered = false;
    }
    rep.label = rep.initial_ordered ? "ordered" : "unordered-initial";
    for (std::size_t k = 0; k < upper.size(); ++k) {
        const auto& a = upper.u[k];
        const auto& b = lower.u[k];
        for (std::size_t i = 0; i < a.size(); ++i) {
            const double v = b[i] - a[i];
            if (v > rep.ordering_violation) {
                rep.ordering_violation = v;
                rep.worst_node = i;
                rep.worst_time = upper.times[k];
            }
        }
    }
    if (upper.mesh->background() != Background::Hyperbolic) return rep;  // J lives on H^m
    rep.J_times = upper.times;
    rep.J_series.assign(upper.size(), 0.0);
    detail::parallel_for(upper.size(), [&](std::size_t k) {
        rep.J_series[k] = area_difference_J(RadialField(upper.mesh, upper.u[k]),
                                            RadialField(lower.mesh, lower.u[k]), p);
    });
    return rep;
}

std::string to_string(CompletenessVerdict v) {
    switch (v) {
        case CompletenessVerdict::DivergingWithDomain: return "DivergingWithDomain";
        case CompletenessVerdict::UniformlyBounded: return "UniformlyBounded";
        case CompletenessVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

CompletenessReport completeness_scan(const InitialPreset& preset, const ScanPlan& plan) {
    if (plan.domains.empty() || plan.t_samples.empty()) {
        throw ConfigError("completeness_scan needs domains and time samples");
    }
    if (!std::is_sorted(plan.domains.begin(), plan.domains.end()) ||
        std::adjacent_find(plan.domains.begin(), plan.domains.end()) != plan.domains.end()) {
        throw ConfigError("completeness_scan domains must be strictly increasing");
    }
    const Background bg = preset_background(preset);
    const double base = 1.0;
    const double t_end = *std::max_element(plan.t_samples.begin(), plan.t_samples.end());
    SolveConfig cfg = plan.config;
    cfg.t_final = std::max(t_end, cfg.dt);

    const std::size_t nd = plan.domains.size();
    std::vector<FlowTrajectory> runs(nd);
    detail::parallel_for(nd, [&](std::size_t d) {
        auto mesh = std::make_shared<const RadialMesh>(RadialMesh::with_spacing(
            bg, plan.dimension, plan.r_min, plan.domains[d], plan.spacing));
        if (mesh->r_min() > base || mesh->r_max() <= base) {
            throw ConfigError("completeness_scan needs r_min <= 1 < domain");
        }
        RadialField u0 = make_initial(preset, mesh);
        RadialField R0 = initial_scalar_curvature(u0, Exec::Serial);
        DataBounds b = data_bounds(u0, R0);
        SolveConfig local = cfg;
        local.exec = Exec::Serial;
        runs[d] = solve(u0, make_profile(u0, R0, b), local);
    });

    CompletenessReport rep;
    rep.background = bg;
    rep.base_radius = base;
    const double m = plan.dimension;
    const auto* power = std::get_if<preset::PowerLaw>(&preset);
    rep.bound_slack = plan.bound_slack;
    rep.stability = plan.stability;
    rep.bounds_hold = true;
    rep.monotone_in_domain = true;

    for (double t : plan.t_samples) {
        double lo = kInf, hi = -kInf, prev = -kInf;
        for (std::size_t d = 0; d < nd; ++d) {
            const auto& traj = runs[d];
            const std::size_t k = traj.index_at(t);
            LengthSample row;
            row.domain = plan.domains[d];
            row.t = traj.times[k];
            row.length = radial_length(RadialField(traj.mesh, traj.u[k]), base, traj.mesh->r_max());
            if (bg == Background::Hyperbolic) {
                row.bound = std::sqrt(m * (m - 1.0) * row.t) * (row.domain - base);
                if (row.length < row.bound - plan.bound_slack) rep.bounds_hold = false;
                if (row.t > 0.0 && !(row.length > prev)) rep.monotone_in_domain = false;
            } else {
                row.bound = power ? std::sqrt(power->b) * (1.0 - base / row.domain) : kInf;
                if (row.length > row.bound + plan.bound_slack) rep.bounds_hold = false;
                if (row.length < prev) rep.monotone_in_domain = false;
            }
            prev = row.length;
            lo = std::min(lo, row.length);
            hi = std::max(hi, row.length);
            rep.lengths.push_back(row);
        }
        rep.spread = std::max(rep.spread, hi - lo);
    }

    if (bg == Background::Hyperbolic) {
        if (rep.bounds_hold && rep.monotone_in_domain) {
            rep.verdict = CompletenessVerdict::DivergingWithDomain;
        }
    } else if (power && rep.bounds_hold && rep.spread < plan.stability) {
        rep.verdict = CompletenessVerdict::UniformlyBounded;
    }
    return rep;
}

std::vector<double> gradient_quantity_sup(const FlowTrajectory& traj, double margin, Exec ex) {
    const auto& mesh = *traj.mesh;
    if (mesh.background() != Background::Hyperbolic) {
        throw ConfigError("gradient_quantity_sup needs a hyperbolic trajectory");
    }
    if (!(margin >= 1.0)) throw ConfigError("gradient_quantity_sup needs margin >= 1");
    const double r_cut = mesh.r_max() - margin;
    RadialStencil st(mesh);
    std::vector<double> w(mesh.size());
    std::vector<double> out;
    out.reserve(traj.size());
    for (const auto& u : traj.u) {
        kernels::gradient_quantity(ex, st, u, w);
        double sup = 0.0;
        for (std::size_t i = 0; i < mesh.size() && mesh[i] <= r_cut + 1e-12; ++i) {
            sup = std::max(sup, w[i]);
        }
        out.push_back(sup);
    }
    return out;
}

}  // namespace yamabe
