#ifndef LYMPHFLOW_PARAMS_HPP
#define LYMPHFLOW_PARAMS_HPP

/**
 * @file params.hpp
 * @brief Dimensional parameter sets for the Ca2+/NO valve kinetics and for
 *        the slender-vessel flow scales, together with the reductions that
 *        produce the dimensionless groups used everywhere else.
 */

#include <cmath>
#include <stdexcept>
#include <string>

namespace lymphflow {

/**
 * @brief Dimensional rate constants and geometry of the Ca2+/NO kinetics.
 *
 * Rates are in 1/s and stresses in Pa. `radius` and `r_crit` are ratios of
 * the reference radius R0, so both are dimensionless. `k_no_plus` is kept as
 * a dimensionless production coefficient: that is the only reading that
 * leaves the NO production term with units of 1/s after division by the
 * reference stress. Concentrations are in model units; `c_shear` and
 * `c_thresh` share the same (unspecified) unit, so only their ratio matters.
 *
 * Defaults are the bundled reference set for a collecting lymphatic vessel.
 */
struct PhysicalParams {
    double k_no_minus = 75.1;       ///< NO degradation rate [1/s]
    double k_no_plus = 20.0;        ///< NO production coefficient [-]
    double k_ca_minus = 375.9;      ///< Ca2+ degradation rate [1/s]
    double k_ca_plus = 2.5;         ///< Ca2+ production rate [1/s]
    double m = 0.5;                 ///< NO inhibition coefficient [-]
    double radius = 1.0;            ///< vessel radius as a ratio of R0 [-]
    double r_crit = 0.77;           ///< stretch-activation radius as a ratio of R0 [-]
    double tau_ref = 0.1;           ///< shear stress activating NO production [Pa]
    double tau_xx = 1.0;            ///< wall shear stress [Pa]
    double c_shear = 0.1;           ///< Ca2+ level activating the shear mechanism
    double c_thresh = 0.1;          ///< Ca2+ level activating calcium-gated channels
    double stretch_exponent = 11.0; ///< k in the stretch activation S(z) = z^k
};

/// The four dimensionless oscillator constants plus the threshold ratio
/// theta = c_thresh / c_shear that locates the second switching level.
struct NondimParams {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double zeta = 0.0;
    double theta = 1.0;
};

/// Dimensionless groups of the lubrication reduction.
struct ScaleSet {
    double epsilon = 0.0;        ///< aspect ratio R0/L
    double reynolds = 0.0;       ///< Re = L Vx / nu
    double pressure_scale = 0.0; ///< viscous pressure scale rho Vx^2 / (eps^2 Re) [Pa]
    double tube_number = 0.0;    ///< tau = eps^2 Re G / (rho Vx^2)
    double sigma = 0.0;          ///< scaled tension term eps^4 / Ca
    double capillary = 0.0;      ///< Ca = rho nu Vx / (T L)
};

/// Dimensional vessel quantities feeding the scale computation.
struct VesselDims {
    double R0 = 0.0;  ///< reference radius [m]
    double L = 0.0;   ///< vessel length [m]
    double Vx = 0.0;  ///< axial velocity scale [m/s]
    double rho = 0.0; ///< fluid density [kg/m^3]
    double nu = 0.0;  ///< kinematic viscosity [m^2/s]
    double G = 0.0;   ///< stretching pressure amplitude [Pa]
    double T = 0.0;   ///< tube tension coefficient [Pa]
};

namespace detail {

inline void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("parameter validation: ") + field +
                                    " must be strictly positive");
    }
}

inline void require_nonnegative(double v, const char* field) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string("parameter validation: ") + field +
                                    " must be nonnegative");
    }
}

}  // namespace detail

/// Validates a kinetics parameter set. Quantities that end up in a
/// denominator must be strictly positive; production-side coefficients may
/// be zero (switching a mechanism off is meaningful).
inline void validate(const PhysicalParams& p) {
    detail::require_positive(p.k_no_minus, "k_no_minus");
    detail::require_positive(p.k_ca_minus, "k_ca_minus");
    detail::require_positive(p.c_shear, "c_shear");
    detail::require_positive(p.tau_ref, "tau_ref");
    detail::require_positive(p.r_crit, "r_crit");
    detail::require_positive(p.stretch_exponent, "stretch_exponent");
    detail::require_nonnegative(p.k_no_plus, "k_no_plus");
    detail::require_nonnegative(p.k_ca_plus, "k_ca_plus");
    detail::require_nonnegative(p.m, "m");
    detail::require_nonnegative(p.radius, "radius");
    detail::require_nonnegative(p.tau_xx, "tau_xx");
    detail::require_nonnegative(p.c_thresh, "c_thresh");
}

/// Strict validation for parameter sets driving the oscillator dynamics.
inline void validate(const NondimParams& p) {
    detail::require_positive(p.alpha, "alpha");
    detail::require_positive(p.beta, "beta");
    detail::require_positive(p.gamma, "gamma");
    detail::require_positive(p.zeta, "zeta");
    detail::require_positive(p.theta, "theta");
}

/// Stretch-activated channel response S(radius / r_crit) = (radius/r_crit)^k.
inline double stretch_activation(const PhysicalParams& p) {
    return std::pow(p.radius / p.r_crit, p.stretch_exponent);
}

/**
 * @brief Reduces the kinetics to the four oscillator constants.
 *
 * alpha = k_ca_minus / k_no_minus
 * beta  = k_ca_plus (1 + S(radius/r_crit)) / (k_no_minus c_shear)
 * gamma = 10 k_ca_plus / (k_no_minus c_shear)
 * zeta  = k_no_plus m (tau_xx / tau_ref) / k_no_minus
 * theta = c_thresh / c_shear
 */
inline NondimParams nondimensionalize(const PhysicalParams& p) {
    validate(p);
    NondimParams nd;
    nd.alpha = p.k_ca_minus / p.k_no_minus;
    nd.beta = p.k_ca_plus * (1.0 + stretch_activation(p)) / (p.k_no_minus * p.c_shear);
    nd.gamma = 10.0 * p.k_ca_plus / (p.k_no_minus * p.c_shear);
    nd.zeta = p.k_no_plus * p.m * (p.tau_xx / p.tau_ref) / p.k_no_minus;
    nd.theta = p.c_thresh / p.c_shear;
    return nd;
}

/// Published reference values of the oscillator constants, kept for the
/// consistency check below.
struct ReferenceNondimConstants {
    double alpha = 5.01;
    double beta = 6.23;
    double gamma = 3.33;
    double zeta = 1.07;
};

/// Signed residuals of a computed parameter set against the published
/// reference constants. Recomputing zeta from the bundled kinetics gives
/// 100/75.1 = 1.332, which does not reproduce the published 1.07; the
/// residual is reported rather than silently forcing either number.
struct ReferenceResiduals {
    double d_alpha = 0.0;
    double d_beta = 0.0;
    double d_gamma = 0.0;
    double d_zeta = 0.0;
};

inline ReferenceResiduals reference_residuals(const NondimParams& nd,
                                           const ReferenceNondimConstants& ref = {}) {
    return {nd.alpha - ref.alpha, nd.beta - ref.beta, nd.gamma - ref.gamma, nd.zeta - ref.zeta};
}

/**
 * @brief Wall shear stress of a pressure-driven parabolic flow,
 *        sigma = -R dp / (2 L).
 *
 * @param delta_p pressure difference over the segment [Pa]
 * @param radius  vessel radius [m]
 * @param length  segment length [m]
 */
inline double shear_stress(double delta_p, double radius, double length) {
    if (!(length > 0.0)) {
        throw std::domain_error("shear_stress: length must be positive");
    }
    return -radius * delta_p / (2.0 * length);
}

/**
 * @brief Lubrication scale groups for a slender vessel.
 *
 * epsilon = R0/L, Re = L Vx/nu, P = rho Vx^2/(eps^2 Re),
 * tau = eps^2 Re G/(rho Vx^2), Ca = rho nu Vx/(T L), sigma = eps^4/Ca.
 */
inline ScaleSet lubrication_scales(const VesselDims& v) {
    detail::require_positive(v.R0, "R0");
    detail::require_positive(v.L, "L");
    detail::require_positive(v.Vx, "Vx");
    detail::require_positive(v.rho, "rho");
    detail::require_positive(v.nu, "nu");
    detail::require_positive(v.G, "G");
    detail::require_positive(v.T, "T");
    ScaleSet s;
    s.epsilon = v.R0 / v.L;
    s.reynolds = v.L * v.Vx / v.nu;
    const double eps2_re = s.epsilon * s.epsilon * s.reynolds;
    s.pressure_scale = v.rho * v.Vx * v.Vx / eps2_re;
    s.tube_number = eps2_re * v.G / (v.rho * v.Vx * v.Vx);
    s.capillary = v.rho * v.nu * v.Vx / (v.T * v.L);
    s.sigma = std::pow(s.epsilon, 4) / s.capillary;
    return s;
}

// ---------------------------------------------------------------------------
// Bundled vessel presets. Artery and vein use midpoints of the usual
// physiological ranges with a nominal tension (tension is normally neglected
// for those vessels); the lymphangion preset is solved from the scale
// formulas so that tau = 32.7, sigma = 3.48e-3, Ca = 2.21e-5.
// ---------------------------------------------------------------------------

inline VesselDims artery_preset() {
    return {8.0e-3, 200.0e-3, 0.1195, 1060.0, 4.5e-3 / 1060.0, 12070.0, 1000.0};
}

inline VesselDims vein_preset() {
    return {4.4e-3, 300.0e-3, 0.043, 1060.0, 4.5e-3 / 1060.0, 1000.0, 1000.0};
}

inline VesselDims lymphangion_preset() {
    return {4.9959e-5, 3.0e-3, 5.0e-3, 998.0, 1.0e-3 / 998.0, 196.522, 75.415};
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_PARAMS_HPP
