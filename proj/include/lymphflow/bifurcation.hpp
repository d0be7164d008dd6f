#ifndef LYMPHFLOW_BIFURCATION_HPP
#define LYMPHFLOW_BIFURCATION_HPP

/**
 * @file bifurcation.hpp
 * @brief Boundary-equilibrium bifurcation certificates with beta as the
 *        bifurcation parameter, the persistence / non-smooth-fold
 *        discriminant, and (beta, gamma) regime maps.
 *
 * A boundary equilibrium bifurcation of field F_i at mu* requires a point x*
 * with (1) F_i(x*) = 0 but F_j(x*) != 0, (2) H(x*) = 0, (3) an invertible
 * Jacobian F_{i,x}(x*), and (4) a nonzero transversality value
 * H_mu - H_x F_{i,x}^{-1} F_{i,mu}. With mu = beta the two fields hit the
 * line at beta* = alpha (F1) and beta* = alpha(zeta+1) - gamma (F2).
 *
 * The branch structure at the F1 event is decided by the sign of
 * C^T N^{-1} E = zeta - gamma/alpha: positive means the regular equilibrium
 * hands over to a pseudo-equilibrium (persistence), negative means both
 * collide and vanish (non-smooth fold).
 */

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lymphflow/cycle.hpp"
#include "lymphflow/filippov.hpp"
#include "lymphflow/params.hpp"

namespace lymphflow {

struct BebCertificate {
    FieldId field = FieldId::F1;
    double beta_star = 0.0;
    State x_star;
    bool equilibrium_isolated = false;  ///< F_i(x*) = 0 and F_j(x*) != 0
    bool on_manifold = false;           ///< H(x*) = 0
    bool jacobian_invertible = false;   ///< det F_{i,x}(x*) != 0
    bool transversal = false;           ///< transversality value != 0
    double jacobian_det = 0.0;
    double transversality_value = 0.0;
    Velocity other_field_value;  ///< F_j(x*), recorded for the certificate

    bool valid() const {
        return equilibrium_isolated && on_manifold && jacobian_invertible && transversal;
    }
};

namespace detail {

struct Mat2 {
    // row-major 2x2
    double a11, a12, a21, a22;

    double det() const { return a11 * a22 - a12 * a21; }

    Mat2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }

    std::array<double, 2> apply(const std::array<double, 2>& v) const {
        return {a11 * v[0] + a12 * v[1], a21 * v[0] + a22 * v[1]};
    }
};

/// Jacobian of either field; both share it because F2 - F1 is constant.
inline Mat2 field_jacobian(const State& x, const NondimParams& p) {
    return {-1.0, 0.0, -p.alpha * x.c, -p.alpha * (x.n + 1.0)};
}

inline BebCertificate make_certificate(const NondimParams& p, FieldId field) {
    BebCertificate cert;
    cert.field = field;

    NondimParams at = p;
    if (field == FieldId::F1) {
        cert.beta_star = p.alpha;
        at.beta = cert.beta_star;
        cert.x_star = {0.0, at.beta / at.alpha};
    } else {
        cert.beta_star = p.alpha * (p.zeta + 1.0) - p.gamma;
        at.beta = cert.beta_star;
        cert.x_star = {p.zeta, (at.beta + at.gamma) / (at.alpha * (at.zeta + 1.0))};
    }

    const Velocity own = field_rhs(cert.x_star, at, field);
    const Velocity other =
        field_rhs(cert.x_star, at, field == FieldId::F1 ? FieldId::F2 : FieldId::F1);
    cert.other_field_value = other;
    const double own_norm = std::hypot(own.dn, own.dc);
    const double other_norm = std::hypot(other.dn, other.dc);
    const double scale = std::max({1.0, std::abs(at.beta), std::abs(at.gamma), std::abs(at.zeta)});
    cert.equilibrium_isolated = own_norm <= 1e-12 * scale && other_norm > 1e-12 * scale;
    cert.on_manifold = std::abs(cert.x_star.c - 1.0) <= 1e-12;

    const Mat2 jac = field_jacobian(cert.x_star, at);
    cert.jacobian_det = jac.det();
    cert.jacobian_invertible = std::abs(cert.jacobian_det) > 1e-12 * scale;

    // transversality: H_mu - H_x N^{-1} M with H_x = (0, 1), M = dF/dbeta = (0, 1)
    const auto ninv_m = jac.inverse().apply({0.0, 1.0});
    cert.transversality_value = 0.0 - ninv_m[1];
    cert.transversal = cert.transversality_value != 0.0;
    return cert;
}

}  // namespace detail

/// Certificate for the F1 boundary equilibrium bifurcation at beta* = alpha,
/// x* = (0, 1). The transversality value is 1/alpha.
inline BebCertificate beb_f1(const NondimParams& p) {
    detail::require_single_manifold(p);
    return detail::make_certificate(p, FieldId::F1);
}

/// Certificate for the F2 boundary equilibrium bifurcation at
/// beta* = alpha(zeta+1) - gamma, x* = (zeta, 1). The transversality value
/// is 1/(alpha(zeta+1)).
inline BebCertificate beb_f2(const NondimParams& p) {
    detail::require_single_manifold(p);
    return detail::make_certificate(p, FieldId::F2);
}

enum class BebType { Persistence, NonsmoothFold, Degenerate };

struct BebClassification {
    BebType type = BebType::Degenerate;
    double discriminant = 0.0;        ///< C^T N^{-1} E, assembled numerically
    double discriminant_closed = 0.0; ///< zeta - gamma/alpha
    double det_n = 0.0;
    double d_minus_ctninvm = 0.0;     ///< D - C^T N^{-1} M, premise of the theorem
};

/**
 * @brief Persistence / non-smooth-fold classification of the F1 boundary
 *        equilibrium bifurcation.
 *
 * Assembles N = F_{1,x}(x*), M = F_{1,mu}, C = H_x, D = H_mu, E = (F2-F1)(x*)
 * and evaluates C^T N^{-1} E; the closed form zeta - gamma/alpha is reported
 * alongside. A vanishing discriminant (gamma = alpha zeta) is reported as
 * Degenerate, never silently binned.
 */
inline BebClassification classify_beb(const NondimParams& p) {
    detail::require_single_manifold(p);
    BebClassification out;

    NondimParams at = p;
    at.beta = p.alpha;  // F1 event
    const State x_star{0.0, 1.0};
    const detail::Mat2 jac = detail::field_jacobian(x_star, at);
    out.det_n = jac.det();
    const detail::Mat2 inv = jac.inverse();

    const auto ninv_m = inv.apply({0.0, 1.0});
    out.d_minus_ctninvm = 0.0 - ninv_m[1];

    const Velocity e = {f2(x_star, at).dn - f1(x_star, at).dn,
                        f2(x_star, at).dc - f1(x_star, at).dc};
    const auto ninv_e = inv.apply({e.dn, e.dc});
    out.discriminant = ninv_e[1];
    out.discriminant_closed = p.zeta - p.gamma / p.alpha;

    const double scale = std::max({1.0, std::abs(p.zeta), std::abs(p.gamma / p.alpha)});
    if (std::abs(out.det_n) <= 1e-12 * scale || out.d_minus_ctninvm == 0.0) {
        throw numerical_error("classify_beb: nondegeneracy premises violated");
    }
    if (std::abs(out.discriminant) <= 1e-12 * scale) {
        out.type = BebType::Degenerate;
    } else if (out.discriminant > 0.0) {
        out.type = BebType::Persistence;
    } else {
        out.type = BebType::NonsmoothFold;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Regime labelling over the (beta, gamma) plane.
// ---------------------------------------------------------------------------

enum class EqLabel { Regular, Virtual, Boundary };

enum class PseudoLabel { Admissible, Virtual, Undefined };

struct RegimeLabel {
    EqLabel eq_f1 = EqLabel::Regular;
    EqLabel eq_f2 = EqLabel::Regular;
    PseudoLabel pseudo = PseudoLabel::Undefined;
    bool oscillatory = false;  ///< true only when both equilibria are virtual
};

inline EqLabel to_label(EquilibriumStatus s) {
    switch (s) {
        case EquilibriumStatus::Admissible: return EqLabel::Regular;
        case EquilibriumStatus::Virtual: return EqLabel::Virtual;
        case EquilibriumStatus::Boundary: return EqLabel::Boundary;
    }
    return EqLabel::Regular;
}

inline RegimeLabel regime(const NondimParams& p) {
    const auto eqs = equilibria(p);
    RegimeLabel label;
    label.eq_f1 = to_label(eqs[0].status);
    label.eq_f2 = to_label(eqs[1].status);
    const auto ps = pseudo_equilibrium(p);
    if (!ps) {
        label.pseudo = PseudoLabel::Undefined;
    } else {
        label.pseudo = ps->admissible ? PseudoLabel::Admissible : PseudoLabel::Virtual;
    }
    label.oscillatory = oscillation_conditions(p).oscillatory;
    return label;
}

struct RegimePoint {
    double beta = 0.0;
    double gamma = 0.0;
    RegimeLabel label;
};

/// Labels a beta sweep at fixed gamma.
inline std::vector<RegimePoint> sweep_beta(const NondimParams& base, double beta_lo,
                                           double beta_hi, int count) {
    if (count < 2 || !(beta_hi > beta_lo) || !(beta_lo > 0.0)) {
        throw std::invalid_argument("sweep_beta: need beta_hi > beta_lo > 0 and count >= 2");
    }
    std::vector<RegimePoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        NondimParams p = base;
        p.beta = beta_lo + (beta_hi - beta_lo) * i / (count - 1);
        out.push_back({p.beta, p.gamma, regime(p)});
    }
    return out;
}

/// Labels a full (beta, gamma) grid, row-major in gamma then beta.
inline std::vector<RegimePoint> sweep_grid(const NondimParams& base, double beta_lo,
                                           double beta_hi, int beta_count, double gamma_lo,
                                           double gamma_hi, int gamma_count) {
    if (beta_count < 2 || gamma_count < 2 || !(beta_hi > beta_lo) || !(gamma_hi > gamma_lo) ||
        !(beta_lo > 0.0) || !(gamma_lo > 0.0)) {
        throw std::invalid_argument("sweep_grid: invalid ranges");
    }
    std::vector<RegimePoint> out;
    out.reserve(static_cast<std::size_t>(beta_count) * static_cast<std::size_t>(gamma_count));
    for (int j = 0; j < gamma_count; ++j) {
        NondimParams p = base;
        p.gamma = gamma_lo + (gamma_hi - gamma_lo) * j / (gamma_count - 1);
        for (int i = 0; i < beta_count; ++i) {
            p.beta = beta_lo + (beta_hi - beta_lo) * i / (beta_count - 1);
            out.push_back({p.beta, p.gamma, regime(p)});
        }
    }
    return out;
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_BIFURCATION_HPP
