#ifndef LYMPHFLOW_FILIPPOV_HPP
#define LYMPHFLOW_FILIPPOV_HPP

/**
 * @file filippov.hpp
 * @brief The two smooth vector fields of the Ca2+/NO oscillator, the
 *        switching line C = 1, and the classification machinery built on
 *        Lie derivatives of H(N, C) = C - 1: boundary regions, tangent
 *        points, equilibria, and the pseudo-equilibrium of the sliding flow.
 *
 * State convention: x = (N, C) in the nonnegative quadrant. Field F1 governs
 * C < 1 (both switched source terms off), F2 governs C > 1 (both on):
 *
 *   F1(x) = (-N,          -alpha (N+1) C + beta)
 *   F2(x) = (-N + zeta,   -alpha (N+1) C + beta + gamma)
 *
 * The analysis layer requires theta = 1 (a single switching line); the
 * integrator handles theta != 1 separately, without classification support.
 */

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lymphflow/params.hpp"

namespace lymphflow {

/// Phase-plane point (N, C).
struct State {
    double n = 0.0;
    double c = 0.0;
};

/// Phase-plane velocity (dN/dt, dC/dt).
struct Velocity {
    double dn = 0.0;
    double dc = 0.0;
};

enum class FieldId { F1, F2 };

namespace detail {

inline void require_single_manifold(const NondimParams& p) {
    validate(p);
    if (p.theta != 1.0) {
        throw std::invalid_argument(
            "unsupported configuration: boundary classification requires theta = 1 "
            "(c_thresh = c_shear); use the two-threshold integrator for theta != 1");
    }
}

}  // namespace detail

inline Velocity f1(const State& x, const NondimParams& p) {
    return {-x.n, -p.alpha * (x.n + 1.0) * x.c + p.beta};
}

inline Velocity f2(const State& x, const NondimParams& p) {
    return {-x.n + p.zeta, -p.alpha * (x.n + 1.0) * x.c + p.beta + p.gamma};
}

inline Velocity field_rhs(const State& x, const NondimParams& p, FieldId field) {
    return field == FieldId::F1 ? f1(x, p) : f2(x, p);
}

/// First Lie derivative F.H = <grad H, F> with H = C - 1; since
/// grad H = (0, 1) this is just the C-component of the field.
inline double lie1(const State& x, const NondimParams& p, FieldId field) {
    const double base = -p.alpha * (x.n + 1.0) * x.c + p.beta;
    return field == FieldId::F1 ? base : base + p.gamma;
}

/// Second Lie derivative F^2.H = <grad(F.H), F>.
///
/// F1: a^2 N^2 C + 2 a^2 N C + a N C + a^2 C - a b N - a b
/// F2: a^2 N^2 C + 2 a^2 N C + a N C + a^2 C - a z C - a(b+g) N - a(b+g)
///
/// At the tangent points these collapse to simple parameter combinations:
/// F1^2.H(S1) = beta - alpha and F2^2.H(S2) = beta + gamma - alpha (zeta + 1).
inline double lie2(const State& x, const NondimParams& p, FieldId field) {
    const double a = p.alpha;
    const double n = x.n;
    const double c = x.c;
    const double common = a * a * n * n * c + 2.0 * a * a * n * c + a * n * c + a * a * c;
    if (field == FieldId::F1) {
        return common - a * p.beta * n - a * p.beta;
    }
    const double bg = p.beta + p.gamma;
    return common - a * p.zeta * c - a * bg * n - a * bg;
}

// ---------------------------------------------------------------------------
// Boundary classification along the switching line C = 1.
// ---------------------------------------------------------------------------

enum class SegmentKind { Crossing, AttractingSliding, RepellingSliding };

struct BoundarySegment {
    double n_lo = 0.0;
    double n_hi = 0.0;
    SegmentKind kind = SegmentKind::Crossing;
};

enum class Visibility { Visible, Invisible };

/// Quadratic tangency of one field with the switching line. A tangency is
/// visible for a field when the grazing arc stays inside that field's own
/// half plane (F1: second Lie derivative negative; F2: positive).
struct TangentPoint {
    State location;
    Visibility vis_f1 = Visibility::Invisible;
    Visibility vis_f2 = Visibility::Invisible;
    double lie2_f1 = 0.0;
    double lie2_f2 = 0.0;
};

struct BoundaryClassification {
    std::vector<BoundarySegment> segments;      ///< ordered, disjoint intervals in N
    std::vector<TangentPoint> tangent_points;   ///< separating tangencies with N >= 0
};

/// Tangent points of the two fields on C = 1 restricted to N >= 0:
/// S1 = (beta/alpha - 1, 1) where F1 grazes, S2 = ((beta+gamma)/alpha - 1, 1)
/// where F2 grazes.
inline std::vector<TangentPoint> tangent_points(const NondimParams& p) {
    detail::require_single_manifold(p);
    std::vector<TangentPoint> pts;
    const double n1 = p.beta / p.alpha - 1.0;
    const double n2 = (p.beta + p.gamma) / p.alpha - 1.0;
    for (double n : {n1, n2}) {
        if (n < 0.0) continue;
        TangentPoint tp;
        tp.location = {n, 1.0};
        tp.lie2_f1 = lie2(tp.location, p, FieldId::F1);
        tp.lie2_f2 = lie2(tp.location, p, FieldId::F2);
        tp.vis_f1 = tp.lie2_f1 < 0.0 ? Visibility::Visible : Visibility::Invisible;
        tp.vis_f2 = tp.lie2_f2 > 0.0 ? Visibility::Visible : Visibility::Invisible;
        pts.push_back(tp);
    }
    return pts;
}

/**
 * @brief Partition of the switching line over N in [0, n_max).
 *
 * On C = 1 the Lie derivatives reduce to beta - alpha(N+1) and
 * beta + gamma - alpha(N+1), so the sign pattern changes only at
 * N = beta/alpha - 1 and N = (beta+gamma)/alpha - 1. Between those breaks
 * the line is crossing (equal signs) or repelling sliding (F1 down, F2 up);
 * attracting sliding cannot occur because the two derivatives differ by the
 * positive constant gamma.
 *
 * @param n_max right edge of the reported window; defaults to zeta + 1,
 *              which covers every structurally relevant N.
 */
inline BoundaryClassification classify_boundary(const NondimParams& p, double n_max = -1.0) {
    detail::require_single_manifold(p);
    if (n_max <= 0.0) {
        n_max = p.zeta + 1.0;
    }
    BoundaryClassification result;
    result.tangent_points = tangent_points(p);

    const double n1 = p.beta / p.alpha - 1.0;
    const double n2 = (p.beta + p.gamma) / p.alpha - 1.0;

    std::vector<double> breaks;
    for (double n : {n1, n2}) {
        if (n > 0.0 && n < n_max) breaks.push_back(n);
    }

    double lo = 0.0;
    auto push = [&](double hi) {
        if (hi <= lo) return;
        const double mid = 0.5 * (lo + hi);
        const double l1 = p.beta - p.alpha * (mid + 1.0);
        const double l2 = l1 + p.gamma;
        SegmentKind kind;
        if (l1 * l2 > 0.0) {
            kind = SegmentKind::Crossing;
        } else if (l1 < 0.0 && l2 > 0.0) {
            kind = SegmentKind::RepellingSliding;
        } else {
            kind = SegmentKind::AttractingSliding;  // unreachable for gamma > 0
        }
        result.segments.push_back({lo, hi, kind});
        lo = hi;
    };
    for (double b : breaks) push(b);
    push(n_max);
    return result;
}

// ---------------------------------------------------------------------------
// Equilibria.
// ---------------------------------------------------------------------------

/// Admissible: the equilibrium lies in its own field's half plane. Virtual:
/// it lies on the other side. Boundary: it sits exactly on C = 1.
enum class EquilibriumStatus { Admissible, Virtual, Boundary };

enum class NodeType { StableNode, StableDegenerateNode, Other };

struct EquilibriumReport {
    State point;
    FieldId field = FieldId::F1;
    EquilibriumStatus status = EquilibriumStatus::Admissible;
    std::array<double, 2> eigenvalues{0.0, 0.0};  ///< sorted ascending
    NodeType node_type = NodeType::StableNode;
};

namespace detail {

inline EquilibriumStatus status_from_comparison(double lhs, double rhs, bool admissible_if_less) {
    if (lhs == rhs) return EquilibriumStatus::Boundary;
    const bool less = lhs < rhs;
    return (less == admissible_if_less) ? EquilibriumStatus::Admissible
                                        : EquilibriumStatus::Virtual;
}

}  // namespace detail

/**
 * @brief The two smooth-field equilibria with stability data.
 *
 * F1 rests at (0, beta/alpha) with eigenvalues {-1, -alpha}; it is admissible
 * iff beta < alpha. F2 rests at (zeta, (beta+gamma)/(alpha(zeta+1))) with
 * eigenvalues {-1, -alpha(zeta+1)}; admissible iff beta > alpha(zeta+1) -
 * gamma. Coincident eigenvalues degrade the stable node to a degenerate one.
 */
inline std::vector<EquilibriumReport> equilibria(const NondimParams& p) {
    detail::require_single_manifold(p);
    std::vector<EquilibriumReport> reports(2);

    EquilibriumReport& lower = reports[0];
    lower.field = FieldId::F1;
    lower.point = {0.0, p.beta / p.alpha};
    lower.status = detail::status_from_comparison(p.beta, p.alpha, /*admissible_if_less=*/true);
    lower.eigenvalues = {std::min(-1.0, -p.alpha), std::max(-1.0, -p.alpha)};
    lower.node_type =
        p.alpha == 1.0 ? NodeType::StableDegenerateNode : NodeType::StableNode;

    EquilibriumReport& upper = reports[1];
    upper.field = FieldId::F2;
    const double rate = p.alpha * (p.zeta + 1.0);
    upper.point = {p.zeta, (p.beta + p.gamma) / rate};
    upper.status =
        detail::status_from_comparison(p.beta, rate - p.gamma, /*admissible_if_less=*/false);
    upper.eigenvalues = {std::min(-1.0, -rate), std::max(-1.0, -rate)};
    upper.node_type = rate == 1.0 ? NodeType::StableDegenerateNode : NodeType::StableNode;

    return reports;
}

/**
 * @brief Rest point of the sliding flow on C = 1.
 *
 * Writing the sliding field as F1 + alpha_p (F2 - F1) with the convex weight
 * chosen to cancel the C-component gives
 *
 *   P_ps = (zeta (alpha - beta) / (gamma - alpha zeta), 1),
 *   alpha_p = (alpha - beta) / (gamma - alpha zeta),
 *
 * admissible iff 0 < alpha_p < 1. Undefined when gamma = alpha zeta.
 */
struct PseudoEquilibrium {
    State point;
    double alpha_p = 0.0;
    bool admissible = false;
    double sliding_eigenvalue = 0.0;  ///< d/dN of the sliding N-dynamics
};

inline std::optional<PseudoEquilibrium> pseudo_equilibrium(const NondimParams& p) {
    detail::require_single_manifold(p);
    const double denom = p.gamma - p.alpha * p.zeta;
    if (denom == 0.0) {
        return std::nullopt;
    }
    PseudoEquilibrium ps;
    ps.alpha_p = (p.alpha - p.beta) / denom;
    ps.point = {p.zeta * ps.alpha_p, 1.0};
    ps.admissible = ps.alpha_p > 0.0 && ps.alpha_p < 1.0;
    // sliding N-dynamics: N' = -N + zeta (alpha (N+1) - beta) / gamma
    ps.sliding_eigenvalue = -1.0 + p.zeta * p.alpha / p.gamma;
    return ps;
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_FILIPPOV_HPP
