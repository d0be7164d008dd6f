#ifndef LYMPHFLOW_PDE_HPP
#define LYMPHFLOW_PDE_HPP

/**
 * @file pde.hpp
 * @brief Reduced vessel-flow solvers.
 *
 * Two models are covered. The leading-order radius equation (scaled
 * variables, quasi-static flow)
 *
 *   R R_t = (1/16) ( R^4 ( tau phi'(R) R_x - sigma R_x R_xx - sigma R R_xxx ) )_x
 *
 * is marched in the conservative variable u = R^2: the bracket is exactly
 * the pressure gradient of p = tau phi(R) - sigma R R_xx, so the scheme
 * computes cell pressures and differences them at faces,
 * u_t = (1/8)(R^4 p_x)_x. The averaged area-flux system (dimensional)
 *
 *   A_t + Q_x = 0
 *   Q_t + alpha (U Q)_x = -(A/rho) p_x + 2 pi nu psi'(1) Q / A,
 *
 * with p = G phi(R/R0) - T R R_xx and U = Q/A, uses a first-order
 * finite-volume discretization with a Rusanov flux for the convective part
 * and pointwise sources. The friction coefficient carries the factor pi
 * that the substitution Q = U A produces from the per-R^2 momentum balance;
 * with the parabolic profile (psi'(1) = -4) the steady pressure-driven state
 * then reproduces the classical throughput Q = -p_x pi R^4 / (8 rho nu).
 *
 * Both solvers step explicitly under conservative stability bounds and halt
 * with an error rather than produce nonpositive R or A.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <variant>
#include <vector>

#include "lymphflow/constitutive.hpp"
#include "lymphflow/errors.hpp"
#include "lymphflow/numerics.hpp"

namespace lymphflow {

// ---------------------------------------------------------------------------
// Valve boundary descriptions.
// ---------------------------------------------------------------------------

enum class ValveSide { Inlet, Outlet };

struct HeavisideActivation {};

struct SigmoidActivation {
    double steepness = 1.0;
};

using ValveActivation = std::variant<HeavisideActivation, SigmoidActivation>;

/// Piecewise-linear lookup of an externally produced signal, clamped at the
/// ends. Used to drive calcium-triggered valves from a concentration trace.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> v;

    double at(double time) const {
        if (t.empty() || t.size() != v.size()) {
            throw std::invalid_argument("TimeSeries: empty or mismatched samples");
        }
        if (time <= t.front()) return v.front();
        if (time >= t.back()) return v.back();
        const auto it = std::upper_bound(t.begin(), t.end(), time);
        const std::size_t i = static_cast<std::size_t>(it - t.begin());
        const double w = (time - t[i - 1]) / (t[i] - t[i - 1]);
        return v[i - 1] + w * (v[i] - v[i - 1]);
    }
};

/// Opens when the pressure drop across the valve exceeds the threshold.
struct PressureDropTrigger {
    double threshold = 0.0;  ///< [Pa]
};

/// Closes (contracts) when the calcium concentration exceeds the threshold:
/// R = r_minus + (r_plus - r_minus)(1 - f(C - C0)).
struct CalciumTrigger {
    double threshold = 0.0;
    TimeSeries series;
};

using ValveTrigger = std::variant<PressureDropTrigger, CalciumTrigger>;

struct ValveBC {
    ValveSide side = ValveSide::Inlet;
    double r_minus = 0.0;  ///< closed radius [m]
    double r_plus = 0.0;   ///< open radius [m]
    ValveActivation activation = HeavisideActivation{};
    ValveTrigger trigger = PressureDropTrigger{};
    /// Reservoir pressure on the far side of the valve [Pa]; supplies both
    /// the Delta p of the pressure trigger and the ghost pressure.
    double p_external = 0.0;
};

inline void validate(const ValveBC& bc) {
    if (!(bc.r_minus > 0.0) || !(bc.r_plus > bc.r_minus)) {
        throw std::invalid_argument("valve: need 0 < r_minus < r_plus");
    }
    if (const auto* s = std::get_if<SigmoidActivation>(&bc.activation)) {
        if (!(s->steepness > 0.0)) {
            throw std::invalid_argument("valve: sigmoid steepness must be positive");
        }
    }
}

namespace detail {

inline double activation_eval(const ValveActivation& act, double x) {
    if (std::holds_alternative<HeavisideActivation>(act)) {
        if (x > 0.0) return 1.0;
        if (x < 0.0) return 0.0;
        return 0.5;
    }
    const double s = std::get<SigmoidActivation>(act).steepness;
    return 1.0 / (1.0 + std::exp(-s * x));
}

}  // namespace detail

/**
 * @brief Valve radius for a given trigger value.
 *
 * Pressure trigger: R = r_minus + (r_plus - r_minus) f(dp - threshold),
 * nondecreasing in dp. Calcium trigger: R = r_minus + (r_plus - r_minus)
 * (1 - f(C - threshold)), nonincreasing in C.
 */
inline double valve_radius(const ValveBC& bc, double trigger_value) {
    validate(bc);
    if (std::holds_alternative<PressureDropTrigger>(bc.trigger)) {
        const double x = trigger_value - std::get<PressureDropTrigger>(bc.trigger).threshold;
        return bc.r_minus + (bc.r_plus - bc.r_minus) * detail::activation_eval(bc.activation, x);
    }
    const double x = trigger_value - std::get<CalciumTrigger>(bc.trigger).threshold;
    return bc.r_minus +
           (bc.r_plus - bc.r_minus) * (1.0 - detail::activation_eval(bc.activation, x));
}

// ---------------------------------------------------------------------------
// Leading-order radius solver (scaled variables).
// ---------------------------------------------------------------------------

struct LeadingOrderConfig {
    int cells = 200;
    double domain_length = 1.0;
    double tau = 1.0;    ///< wall-response coefficient
    double sigma = 0.0;  ///< tension coefficient; 0 drops the 4th-order term
    PressureLaw law = PowerLawCoeffs{1.0};
    double dt_safety = 0.1;
    double sample_interval = 0.0;  ///< 0: keep only initial and final frames
    long long max_steps = 200'000'000;
};

/// Radius is held at the boundary value while the boundary-face flux is
/// closed with the prescribed pressure gradient; px = 0 on both sides gives
/// the zero-flux (mass-conserving) problem.
struct LeadingOrderBC {
    double r_left = 1.0;
    double r_right = 1.0;
    double px_left = 0.0;
    double px_right = 0.0;
};

struct RadiusFrame {
    double t = 0.0;
    std::vector<double> r;
};

struct LeadingOrderResult {
    std::vector<double> x;  ///< cell centers
    std::vector<RadiusFrame> frames;
    /// Time integrals of the boundary-face fluxes F = R^4 p_x. By the flux
    /// form, the change of int R^2 dx over the run equals
    /// (flux_time_integral_right - flux_time_integral_left) / 8.
    double flux_time_integral_left = 0.0;
    double flux_time_integral_right = 0.0;
    long long steps = 0;
};

inline void validate(const LeadingOrderConfig& cfg) {
    if (cfg.cells < 4 || !(cfg.domain_length > 0.0) || !(cfg.dt_safety > 0.0) ||
        cfg.sigma < 0.0 || cfg.tau < 0.0) {
        throw std::invalid_argument("leading-order config: invalid sizes or coefficients");
    }
    validate(cfg.law);
}

inline LeadingOrderResult solve_leading_order(const std::vector<double>& initial_r,
                                              const LeadingOrderBC& bc,
                                              const LeadingOrderConfig& cfg, double t_end) {
    validate(cfg);
    const std::size_t n = static_cast<std::size_t>(cfg.cells);
    if (initial_r.size() != n) {
        throw std::invalid_argument("solve_leading_order: initial profile size != cells");
    }
    for (double r : initial_r) {
        if (!(r > 0.0)) {
            throw std::invalid_argument("solve_leading_order: initial radius must be positive");
        }
    }
    if (!(bc.r_left > 0.0 && bc.r_right > 0.0)) {
        throw std::invalid_argument("solve_leading_order: boundary radii must be positive");
    }
    if (!(t_end >= 0.0)) {
        throw std::invalid_argument("solve_leading_order: t_end must be nonnegative");
    }

    const double dx = cfg.domain_length / static_cast<double>(n);
    LeadingOrderResult result;
    result.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.x[i] = (static_cast<double>(i) + 0.5) * dx;
    }

    std::vector<double> u(n);  // u = R^2
    std::vector<double> r(initial_r);
    for (std::size_t i = 0; i < n; ++i) u[i] = r[i] * r[i];

    std::vector<double> pressure(n);
    std::vector<double> face_flux(n + 1);

    double t = 0.0;
    result.frames.push_back({t, r});
    double next_sample = cfg.sample_interval > 0.0 ? cfg.sample_interval : t_end;

    auto compute_pressure = [&]() {
        const double inv_dx2 = 1.0 / (dx * dx);
        for (std::size_t i = 0; i < n; ++i) {
            double p = cfg.tau * phi_eval(cfg.law, r[i]);
            if (cfg.sigma > 0.0) {
                const double rl = (i == 0) ? 2.0 * bc.r_left - r[0] : r[i - 1];
                const double rr = (i + 1 == n) ? 2.0 * bc.r_right - r[n - 1] : r[i + 1];
                const double rxx = (rl - 2.0 * r[i] + rr) * inv_dx2;
                p -= cfg.sigma * r[i] * rxx;
            }
            pressure[i] = p;
        }
    };

    auto stable_dt = [&]() {
        double diff_coef = 0.0;
        double hyper_coef = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r4 = u[i] * u[i];
            diff_coef = std::max(diff_coef, cfg.tau * r4 * phi_deriv(cfg.law, r[i]));
            hyper_coef = std::max(hyper_coef, cfg.sigma * r4);
        }
        double dt = std::numeric_limits<double>::infinity();
        if (diff_coef > 0.0) dt = std::min(dt, cfg.dt_safety * dx * dx / diff_coef);
        if (hyper_coef > 0.0) dt = std::min(dt, cfg.dt_safety * dx * dx * dx * dx / hyper_coef);
        return dt;
    };

    long long step = 0;
    while (t < t_end) {
        if (step >= cfg.max_steps) {
            throw numerical_error("solve_leading_order: step budget exhausted");
        }
        compute_pressure();
        double dt = stable_dt();
        if (!std::isfinite(dt)) {
            // nothing can evolve (tau phi' and sigma both vanish); jump ahead
            dt = t_end - t;
        }
        bool sample_hit = false;
        if (t + dt >= t_end) {
            dt = t_end - t;
        } else if (cfg.sample_interval > 0.0 && t + dt >= next_sample) {
            dt = next_sample - t;
            sample_hit = true;
        }
        if (!(dt > 0.0) || dt < 1e-15 * std::max(1.0, t_end)) {
            throw numerical_error("solve_leading_order: step underflow (stability bound "
                                  "collapsed)");
        }

        face_flux[0] = std::pow(bc.r_left, 4) * bc.px_left;
        face_flux[n] = std::pow(bc.r_right, 4) * bc.px_right;
        for (std::size_t j = 1; j < n; ++j) {
            const double r4 = 0.5 * (u[j - 1] * u[j - 1] + u[j] * u[j]);
            face_flux[j] = r4 * (pressure[j] - pressure[j - 1]) / dx;
        }
        result.flux_time_integral_left += face_flux[0] * dt;
        result.flux_time_integral_right += face_flux[n] * dt;
        const double scale = dt / (8.0 * dx);
        for (std::size_t i = 0; i < n; ++i) {
            u[i] += scale * (face_flux[i + 1] - face_flux[i]);
            if (!(u[i] > 0.0)) {
                std::ostringstream oss;
                oss << "solve_leading_order: wall collapse at t = " << t + dt << ", cell " << i
                    << " (R^2 = " << u[i] << ")";
                throw numerical_error(oss.str());
            }
            r[i] = std::sqrt(u[i]);
        }
        t += dt;
        ++step;

        if (sample_hit) {
            result.frames.push_back({t, r});
            next_sample += cfg.sample_interval;
        }
    }
    if (result.frames.back().t != t_end) {
        result.frames.push_back({t_end, r});
    }
    result.steps = step;
    return result;
}

// ---------------------------------------------------------------------------
// Averaged area-flux solver (dimensional variables).
// ---------------------------------------------------------------------------

struct VesselConfig {
    double length = 3.0e-3;         ///< [m]
    double rho = 998.0;             ///< [kg/m^3]
    double nu = 1.0e-3 / 998.0;     ///< [m^2/s]
    double G = 196.522;             ///< stretching pressure amplitude [Pa]
    double T = 75.415;              ///< tension coefficient, enters p as -T R R_xx [Pa/m]
    double R0 = 4.9959e-5;          ///< reference radius [m]
    PressureLaw law = PowerLawCoeffs{1.0};
    VelocityProfile profile = PowerLawProfile{2.0};
    bool include_tension = true;    ///< lymphangion default; arteries/veins drop it
};

inline void validate(const VesselConfig& v) {
    if (!(v.length > 0.0 && v.rho > 0.0 && v.nu > 0.0 && v.G > 0.0 && v.R0 > 0.0) ||
        (v.include_tension && !(v.T >= 0.0))) {
        throw std::invalid_argument("vessel config: nonpositive quantity");
    }
    validate(v.law);
    validate(v.profile);
}

/// Plain reservoir pressure behind an open end.
struct PressureBC {
    double p_external = 0.0;  ///< [Pa] relative to the rest pressure p0
};

using EndBC = std::variant<PressureBC, ValveBC>;

struct AveragedConfig {
    int cells = 200;
    VesselConfig vessel;
    double cfl = 0.4;
    double sample_interval = 0.0;
    long long max_steps = 200'000'000;
};

struct AreaFluxFrame {
    double t = 0.0;
    std::vector<double> a;
    std::vector<double> q;
};

struct ValveEventLog {
    double t = 0.0;
    ValveSide side = ValveSide::Inlet;
    bool open = false;
    double radius = 0.0;
};

struct AveragedResult {
    std::vector<double> x;
    std::vector<AreaFluxFrame> frames;
    std::vector<ValveEventLog> valve_events;
    double inflow_volume = 0.0;   ///< integral of the inlet-face area flux
    double outflow_volume = 0.0;  ///< integral of the outlet-face area flux
    long long steps = 0;
};

namespace detail {

/// Radius ratio z solving G phi(z) = p, bracketed on a log grid and polished
/// by Newton steps to machine precision.
inline double invert_pressure_law(const PressureLaw& law, double G, double p) {
    auto f = [&](double z) { return G * phi_eval(law, z) - p; };
    double lo = 1e-3;
    double flo = f(lo);
    double hi = lo;
    double fhi = flo;
    bool bracketed = false;
    for (int k = 0; k < 60; ++k) {
        hi = lo * 1.26;  // ~ x2 every 3 steps
        fhi = f(hi);
        if (flo == 0.0) return lo;
        if ((flo > 0.0) != (fhi > 0.0)) {
            bracketed = true;
            break;
        }
        lo = hi;
        flo = fhi;
    }
    if (!bracketed) {
        throw numerical_error("invert_pressure_law: no radius ratio matches the requested "
                              "pressure");
    }
    double z = solve_bracketed(f, lo, hi, flo, fhi, 1e-12);
    for (int k = 0; k < 3; ++k) {
        const double d = G * phi_deriv(law, z);
        if (d == 0.0) break;
        z -= f(z) / d;
    }
    return z;
}

}  // namespace detail

/**
 * @brief Advances the averaged (A, Q) system with Rusanov fluxes and
 *        pointwise sources.
 *
 * End conditions: a PressureBC pins the ghost state to the reservoir
 * pressure; a ValveBC prescribes the boundary radius through the activation
 * function, re-evaluated every step, with open/close transitions logged.
 */
inline AveragedResult solve_averaged(const std::vector<double>& initial_a,
                                     const std::vector<double>& initial_q, const EndBC& left,
                                     const EndBC& right, const AveragedConfig& cfg,
                                     double t_end) {
    validate(cfg.vessel);
    const std::size_t n = static_cast<std::size_t>(cfg.cells);
    if (cfg.cells < 4) {
        throw std::invalid_argument("solve_averaged: need at least 4 cells");
    }
    if (initial_a.size() != n || initial_q.size() != n) {
        throw std::invalid_argument("solve_averaged: initial field size != cells");
    }
    for (double a : initial_a) {
        if (!(a > 0.0)) {
            throw std::invalid_argument("solve_averaged: initial area must be positive");
        }
    }
    if (!(cfg.cfl > 0.0 && cfg.cfl < 1.0)) {
        throw std::invalid_argument("solve_averaged: cfl must lie in (0, 1)");
    }
    if (const auto* v = std::get_if<ValveBC>(&left)) validate(*v);
    if (const auto* v = std::get_if<ValveBC>(&right)) validate(*v);

    const VesselConfig& vessel = cfg.vessel;
    const double dx = vessel.length / static_cast<double>(n);
    const double shape_alpha = shape_factor(vessel.profile);
    const double wall_slope = profile_wall_slope(vessel.profile);  // psi'(1) < 0
    const double pi = 3.14159265358979323846;

    AveragedResult result;
    result.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        result.x[i] = (static_cast<double>(i) + 0.5) * dx;
    }

    std::vector<double> a(initial_a);
    std::vector<double> q(initial_q);
    std::vector<double> pres(n + 2);   // ghost | cells | ghost
    std::vector<double> rad(n + 2);
    std::vector<double> flux_a(n + 1);
    std::vector<double> flux_q(n + 1);

    auto radius_of = [&](double area) { return std::sqrt(area / pi); };
    auto wave_speed = [&](double area) {
        const double z = radius_of(area) / vessel.R0;
        const double dpdz = vessel.G * phi_deriv(vessel.law, z);
        return std::sqrt(std::max(0.0, 0.5 * z * dpdz / vessel.rho));
    };

    struct GhostState {
        double area;
        double flux;
        double pressure;
    };

    // valve bookkeeping
    bool valve_state_known[2] = {false, false};
    bool valve_open[2] = {false, false};

    auto end_state = [&](const EndBC& bc, bool left_side, double t) -> GhostState {
        const std::size_t adj = left_side ? 0 : n - 1;
        if (const auto* pb = std::get_if<PressureBC>(&bc)) {
            const double z = detail::invert_pressure_law(vessel.law, vessel.G, pb->p_external);
            const double area = pi * (z * vessel.R0) * (z * vessel.R0);
            return {area, q[adj], pb->p_external};
        }
        const auto& vb = std::get<ValveBC>(bc);
        double trigger_value;
        if (std::holds_alternative<PressureDropTrigger>(vb.trigger)) {
            const double z_adj = radius_of(a[adj]) / vessel.R0;
            const double p_adj = vessel.G * phi_eval(vessel.law, z_adj);
            trigger_value = left_side ? vb.p_external - p_adj : p_adj - vb.p_external;
        } else {
            trigger_value = std::get<CalciumTrigger>(vb.trigger).series.at(t);
        }
        const double r_valve = valve_radius(vb, trigger_value);

        const int slot = left_side ? 0 : 1;
        const bool open_now = r_valve > 0.5 * (vb.r_minus + vb.r_plus);
        if (!valve_state_known[slot] || open_now != valve_open[slot]) {
            result.valve_events.push_back({t, vb.side, open_now, r_valve});
            valve_state_known[slot] = true;
            valve_open[slot] = open_now;
        }

        // Blend between reservoir coupling (fully open) and a reflecting
        // wall (fully closed) by the open area fraction. The wall limit
        // mirrors the state with reversed flux, which zeroes the face flux.
        const double w = std::clamp((r_valve * r_valve - vb.r_minus * vb.r_minus) /
                                        (vb.r_plus * vb.r_plus - vb.r_minus * vb.r_minus),
                                    0.0, 1.0);
        const double z_res = detail::invert_pressure_law(vessel.law, vessel.G, vb.p_external);
        const double a_res = pi * (z_res * vessel.R0) * (z_res * vessel.R0);
        const double z_adj = radius_of(a[adj]) / vessel.R0;
        const double p_adj = vessel.G * phi_eval(vessel.law, z_adj);
        return {w * a_res + (1.0 - w) * a[adj],
                w * q[adj] + (1.0 - w) * (-q[adj]),
                w * vb.p_external + (1.0 - w) * p_adj};
    };

    double t = 0.0;
    result.frames.push_back({t, a, q});
    double next_sample = cfg.sample_interval > 0.0 ? cfg.sample_interval : t_end;

    long long step = 0;
    while (t < t_end) {
        if (step >= cfg.max_steps) {
            throw numerical_error("solve_averaged: step budget exhausted");
        }
        const GhostState gl = end_state(left, true, t);
        const GhostState gr = end_state(right, false, t);

        // radii and pressures with ghosts
        rad[0] = radius_of(gl.area);
        rad[n + 1] = radius_of(gr.area);
        for (std::size_t i = 0; i < n; ++i) rad[i + 1] = radius_of(a[i]);
        pres[0] = gl.pressure;
        pres[n + 1] = gr.pressure;
        const double inv_dx2 = 1.0 / (dx * dx);
        for (std::size_t i = 0; i < n; ++i) {
            double p = vessel.G * phi_eval(vessel.law, rad[i + 1] / vessel.R0);
            if (vessel.include_tension && vessel.T > 0.0) {
                const double rxx = (rad[i] - 2.0 * rad[i + 1] + rad[i + 2]) * inv_dx2;
                p -= vessel.T * rad[i + 1] * rxx;
            }
            pres[i + 1] = p;
        }

        // stability bound
        double max_signal = 0.0;
        double min_friction_time = std::numeric_limits<double>::infinity();
        const double fric_coef = 2.0 * pi * vessel.nu * std::abs(wall_slope);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = q[i] / a[i];
            max_signal = std::max(max_signal, shape_alpha * std::abs(u) + wave_speed(a[i]));
            if (fric_coef > 0.0) {
                min_friction_time = std::min(min_friction_time, a[i] / fric_coef);
            }
        }
        double dt = std::numeric_limits<double>::infinity();
        if (max_signal > 0.0) dt = std::min(dt, cfg.cfl * dx / max_signal);
        if (std::isfinite(min_friction_time)) dt = std::min(dt, 0.5 * min_friction_time);
        if (!std::isfinite(dt)) dt = t_end - t;
        bool sample_hit = false;
        if (t + dt >= t_end) {
            dt = t_end - t;
        } else if (cfg.sample_interval > 0.0 && t + dt >= next_sample) {
            dt = next_sample - t;
            sample_hit = true;
        }
        if (!(dt > 0.0) || dt < 1e-18 * std::max(1.0, t_end)) {
            throw numerical_error("solve_averaged: step underflow (CFL bound collapsed)");
        }

        // Rusanov fluxes at faces 0..n; face j sits between L = cell j-1
        // (or left ghost) and R = cell j (or right ghost)
        for (std::size_t j = 0; j <= n; ++j) {
            const double al = (j == 0) ? gl.area : a[j - 1];
            const double ql = (j == 0) ? gl.flux : q[j - 1];
            const double ar = (j == n) ? gr.area : a[j];
            const double qr = (j == n) ? gr.flux : q[j];
            const double ul = ql / al;
            const double ur = qr / ar;
            const double s = std::max(shape_alpha * std::abs(ul) + wave_speed(al),
                                      shape_alpha * std::abs(ur) + wave_speed(ar));
            flux_a[j] = 0.5 * (ql + qr) - 0.5 * s * (ar - al);
            flux_q[j] = 0.5 * (shape_alpha * (ul * ql + ur * qr)) - 0.5 * s * (qr - ql);
        }
        result.inflow_volume += flux_a[0] * dt;
        result.outflow_volume += flux_a[n] * dt;

        for (std::size_t i = 0; i < n; ++i) {
            const double px = (pres[i + 2] - pres[i]) / (2.0 * dx);
            const double source_q =
                -(a[i] / vessel.rho) * px + 2.0 * pi * vessel.nu * wall_slope * q[i] / a[i];
            a[i] += dt / dx * (flux_a[i] - flux_a[i + 1]);
            q[i] += dt / dx * (flux_q[i] - flux_q[i + 1]) + dt * source_q;
            if (!(a[i] > 0.0)) {
                std::ostringstream oss;
                oss << "solve_averaged: collapse (A <= 0) at t = " << t + dt << ", cell " << i;
                throw numerical_error(oss.str());
            }
        }
        t += dt;
        ++step;

        if (sample_hit) {
            result.frames.push_back({t, a, q});
            next_sample += cfg.sample_interval;
        }
    }
    if (result.frames.back().t != t_end) {
        result.frames.push_back({t_end, a, q});
    }
    result.steps = step;
    return result;
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_PDE_HPP
