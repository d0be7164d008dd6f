#ifndef LYMPHFLOW_CONSTITUTIVE_HPP
#define LYMPHFLOW_CONSTITUTIVE_HPP

/**
 * @file constitutive.hpp
 * @brief Pressure-radius response laws phi(z), axial velocity profiles
 *        psi(r/R), and the shape factor closing the averaged momentum flux.
 */

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

#include "lymphflow/numerics.hpp"

namespace lymphflow {

// ---------------------------------------------------------------------------
// Pressure-radius laws. z is the radius ratio R/R0.
// ---------------------------------------------------------------------------

/// phi(z) = z^gamma_exp - 1, the empirical power-law wall response.
struct PowerLawCoeffs {
    double gamma_exp = 1.0;
};

/// phi(z) = p0 (exp(sp (z - z0)) + a z^-3 - b). The exponential captures the
/// stiffening at large radius, the z^-3 term dominates near collapse.
struct RahbarCoeffs {
    double p0 = 1.0;
    double sp = 1.0;
    double z0 = 1.0;
    double a = 1.0;
    double b = 1.0;
};

/// phi(z) = g / (z0 - lambda z) - a z^-3 + b, a reciprocal alternative to the
/// exponential stiffening. Undefined at z = z0 / lambda.
struct ReciprocalCoeffs {
    double g = 1.0;
    double z0 = 1.0;
    double lambda = 1.0;
    double a = 1.0;
    double b = 1.0;
};

enum class LawKind { PowerLaw, Rahbar, Reciprocal };

using PressureLaw = std::variant<PowerLawCoeffs, RahbarCoeffs, ReciprocalCoeffs>;

inline LawKind law_kind(const PressureLaw& law) {
    return static_cast<LawKind>(law.index());
}

inline const char* law_name(LawKind k) {
    switch (k) {
        case LawKind::PowerLaw: return "power";
        case LawKind::Rahbar: return "rahbar";
        case LawKind::Reciprocal: return "reciprocal";
    }
    return "?";
}

inline void validate(const PressureLaw& law) {
    if (const auto* p = std::get_if<PowerLawCoeffs>(&law)) {
        if (!(p->gamma_exp > 0.0)) {
            throw std::invalid_argument("power law: gamma_exp must be positive");
        }
    }
}

namespace detail {

inline void check_z(double z) {
    if (!(z > 0.0)) {
        throw std::domain_error("pressure law: radius ratio z must be positive");
    }
}

inline double reciprocal_denom(const ReciprocalCoeffs& c, double z) {
    const double denom = c.z0 - c.lambda * z;
    if (denom == 0.0 || !std::isfinite(1.0 / denom)) {
        throw std::domain_error("reciprocal law: singular at z = z0/lambda");
    }
    return denom;
}

}  // namespace detail

/// Evaluates phi(z) for any law variant.
inline double phi_eval(const PressureLaw& law, double z) {
    detail::check_z(z);
    validate(law);
    return std::visit(
        [z](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PowerLawCoeffs>) {
                return std::pow(z, c.gamma_exp) - 1.0;
            } else if constexpr (std::is_same_v<T, RahbarCoeffs>) {
                return c.p0 * (std::exp(c.sp * (z - c.z0)) + c.a / (z * z * z) - c.b);
            } else {
                return c.g / detail::reciprocal_denom(c, z) - c.a / (z * z * z) + c.b;
            }
        },
        law);
}

/// Analytic derivative d(phi)/dz.
inline double phi_deriv(const PressureLaw& law, double z) {
    detail::check_z(z);
    validate(law);
    return std::visit(
        [z](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PowerLawCoeffs>) {
                return c.gamma_exp * std::pow(z, c.gamma_exp - 1.0);
            } else if constexpr (std::is_same_v<T, RahbarCoeffs>) {
                return c.p0 * (c.sp * std::exp(c.sp * (z - c.z0)) - 3.0 * c.a / (z * z * z * z));
            } else {
                const double denom = detail::reciprocal_denom(c, z);
                return c.g * c.lambda / (denom * denom) + 3.0 * c.a / (z * z * z * z);
            }
        },
        law);
}

// ---------------------------------------------------------------------------
// Velocity profiles u = u_bar * psi(r/R). The normalization
// int_0^1 psi(z) z dz = 1/2 pins the cross-sectional average to u_bar.
// ---------------------------------------------------------------------------

/// psi(z) = (2+g)/g (1 - z^g); g = 2 is the parabolic (Poiseuille) profile.
struct PowerLawProfile {
    double gamma_exp = 2.0;
};

/// Arbitrary profile shape supplied as a callable on [0, 1].
struct CustomProfile {
    std::function<double(double)> psi;
};

using VelocityProfile = std::variant<PowerLawProfile, CustomProfile>;

inline double profile_eval(const VelocityProfile& profile, double z) {
    return std::visit(
        [z](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, PowerLawProfile>) {
                return (2.0 + p.gamma_exp) / p.gamma_exp * (1.0 - std::pow(z, p.gamma_exp));
            } else {
                return p.psi(z);
            }
        },
        profile);
}

/// Checks the normalization int psi z dz = 1/2 (to 1e-10) and the no-slip
/// condition psi(1) = 0 for custom shapes. The axis condition psi'(0) = 0
/// holds automatically for power-law exponents above one and is not enforced
/// (the g = 1 profile is a legitimate, kinked member of the family).
inline void validate(const VelocityProfile& profile) {
    if (const auto* p = std::get_if<PowerLawProfile>(&profile)) {
        if (!(p->gamma_exp > 0.0)) {
            throw std::invalid_argument("velocity profile: gamma_exp must be positive");
        }
        return;
    }
    const auto& c = std::get<CustomProfile>(profile);
    if (!c.psi) {
        throw std::invalid_argument("velocity profile: missing psi callable");
    }
    const double norm = adaptive_simpson([&](double z) { return c.psi(z) * z; }, 0.0, 1.0, 1e-12);
    if (std::abs(norm - 0.5) > 1e-10) {
        throw std::invalid_argument("velocity profile: int psi(z) z dz = " + std::to_string(norm) +
                                    ", expected 1/2");
    }
    if (std::abs(c.psi(1.0)) > 1e-9) {
        throw std::invalid_argument("velocity profile: psi(1) must vanish (no slip)");
    }
}

/**
 * @brief Momentum shape factor alpha = 4 int_0^1 psi(z)^2 z dz.
 *
 * Power-law profiles use the closed form 2(2+g)/(1+g); custom shapes are
 * integrated numerically (adaptive Simpson, 1e-12 absolute).
 * Poiseuille (g = 2) gives 8/3.
 */
inline double shape_factor(const VelocityProfile& profile) {
    validate(profile);
    if (const auto* p = std::get_if<PowerLawProfile>(&profile)) {
        return 2.0 * (2.0 + p->gamma_exp) / (1.0 + p->gamma_exp);
    }
    const auto& c = std::get<CustomProfile>(profile);
    return 4.0 * adaptive_simpson([&](double z) { return c.psi(z) * c.psi(z) * z; }, 0.0, 1.0,
                                  1e-12);
}

/// Wall slope psi'(1), the coefficient of the averaged friction term.
/// Power-law: psi'(1) = -(2+g), so the parabolic profile gives -4.
inline double profile_wall_slope(const VelocityProfile& profile) {
    validate(profile);
    if (const auto* p = std::get_if<PowerLawProfile>(&profile)) {
        return -(2.0 + p->gamma_exp);
    }
    const auto& c = std::get<CustomProfile>(profile);
    // one-sided 2nd-order difference at z = 1
    const double h = 1e-6;
    return (3.0 * c.psi(1.0) - 4.0 * c.psi(1.0 - h) + c.psi(1.0 - 2.0 * h)) / (2.0 * h);
}

/// Axial velocity of the pressure-driven parabolic flow,
/// u(r) = -(p_x / 4) R^2 (1 - (r/R)^2).
inline double poiseuille_velocity(double r, double R, double p_x) {
    if (!(R > 0.0)) {
        throw std::domain_error("poiseuille_velocity: R must be positive");
    }
    if (r < 0.0 || r > R) {
        throw std::domain_error("poiseuille_velocity: r must lie in [0, R]");
    }
    const double rr = r / R;
    return -0.25 * p_x * R * R * (1.0 - rr * rr);
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_CONSTITUTIVE_HPP
