#ifndef LYMPHFLOW_CYCLE_HPP
#define LYMPHFLOW_CYCLE_HPP

/**
 * @file cycle.hpp
 * @brief Closed-form flow maps across the switching line, the induced return
 *        map on C = 1, and the limit-cycle fixed point and period.
 *
 * Along an F1 arc N decays as N0 e^{-t}, so C can be written as a function
 * of N. With C(N0) = 1 the solution is
 *
 *   C-(N) = (N/N0)^a e^{a(N-N0)} (1 + b e^{aN0} int_{N/N0}^1 s^{-a-1} e^{-aN0 s} ds),
 *
 * a = alpha, b = beta. The integrand is integrable only in combination with
 * the (N/N0)^a prefactor, so the quadrature is performed after the
 * logarithmic substitution s = e^{-w}, which absorbs the prefactor into the
 * integrand and tames the endpoint blow-up:
 *
 *   C-(N) = e^{a(N-N0)} [ e^{-aW} + b J ],
 *   J = int_0^W exp( a (w - W) + a N0 (1 - e^{-w}) ) dw,   W = ln(N0/N),
 *
 * a smooth bounded profile over a short interval for every N in (0, N0].
 * The F2 arc (N -> zeta) has the same structure with k = alpha (zeta + 1),
 * span = zeta - N0 and V = ln(span / (zeta - N)):
 *
 *   C+(N) = e^{a(N-N0)} [ e^{-kV} + (b+g) int_0^V
 *                          exp( k (v - V) - a span (1 - e^{-v}) ) dv ].
 *
 * Both forms reproduce their removable-singularity limits: C- -> beta/alpha
 * as N -> 0+ and C+ -> (beta+gamma)/(alpha(zeta+1)) as N -> zeta-.
 */

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lymphflow/errors.hpp"
#include "lymphflow/filippov.hpp"
#include "lymphflow/numerics.hpp"
#include "lymphflow/params.hpp"

namespace lymphflow {

namespace cycle_detail {

constexpr double kSingularityGuard = 1e-8;  ///< N-distance below which limits are returned
constexpr double kQuadTol = 1e-12;
constexpr double kRootTol = 1e-12;

}  // namespace cycle_detail

struct OscillationCheck {
    bool oscillatory = false;
    double margin_lower = 0.0;  ///< beta/alpha - 1 (> 0 required)
    double margin_upper = 0.0;  ///< 1 - (beta+gamma)/(alpha(zeta+1)) (> 0 required)
};

/// Both smooth equilibria virtual: beta/alpha > 1 and
/// (beta+gamma)/(alpha(zeta+1)) < 1. The margins quantify the slack.
inline OscillationCheck oscillation_conditions(const NondimParams& p) {
    detail::require_single_manifold(p);
    OscillationCheck chk;
    chk.margin_lower = p.beta / p.alpha - 1.0;
    chk.margin_upper = 1.0 - (p.beta + p.gamma) / (p.alpha * (p.zeta + 1.0));
    chk.oscillatory = chk.margin_lower > 0.0 && chk.margin_upper > 0.0;
    return chk;
}

/**
 * @brief C along the F1 arc started at (n0, 1), evaluated at N = n <= n0.
 *
 * Below the singularity guard the limit beta/alpha is returned.
 * @throws std::domain_error for n > n0 or nonpositive n0.
 */
inline double flow_minus(double n, double n0, const NondimParams& p) {
    detail::require_single_manifold(p);
    if (!(n0 > 0.0)) {
        throw std::domain_error("flow_minus: n0 must be positive");
    }
    if (n > n0) {
        throw std::domain_error("flow_minus: the lower flow moves N downward (need n <= n0)");
    }
    if (n < 0.0) {
        throw std::domain_error("flow_minus: n must be nonnegative");
    }
    const double a = p.alpha;
    if (n < cycle_detail::kSingularityGuard) {
        return p.beta / a;
    }
    if (n == n0) {
        return 1.0;
    }
    const double big_w = std::log(n0 / n);
    const double integral = integrate_gk(
        [a, n0, big_w](double w) {
            return std::exp(a * (w - big_w) + a * n0 * (1.0 - std::exp(-w)));
        },
        0.0, big_w, cycle_detail::kQuadTol);
    return std::exp(a * (n - n0)) * (std::exp(-a * big_w) + p.beta * integral);
}

/**
 * @brief C along the F2 arc started at (n0, 1), evaluated at N = n in
 *        [n0, zeta). Within the guard of zeta the limit
 *        (beta+gamma)/(alpha(zeta+1)) is returned.
 */
inline double flow_plus(double n, double n0, const NondimParams& p) {
    detail::require_single_manifold(p);
    if (!(n0 >= 0.0 && n0 < p.zeta)) {
        throw std::domain_error("flow_plus: n0 must lie in [0, zeta)");
    }
    if (n < n0) {
        throw std::domain_error("flow_plus: the upper flow moves N upward (need n >= n0)");
    }
    if (n >= p.zeta) {
        throw std::domain_error("flow_plus: n must stay below zeta");
    }
    const double a = p.alpha;
    const double k = a * (p.zeta + 1.0);
    if (p.zeta - n < cycle_detail::kSingularityGuard) {
        return (p.beta + p.gamma) / k;
    }
    if (n == n0) {
        return 1.0;
    }
    const double span = p.zeta - n0;
    const double big_v = std::log(span / (p.zeta - n));
    const double integral = integrate_gk(
        [a, k, span, big_v](double v) {
            return std::exp(k * (v - big_v) - a * span * (1.0 - std::exp(-v)));
        },
        0.0, big_v, cycle_detail::kQuadTol);
    return std::exp(a * (n - n0)) * (std::exp(-k * big_v) + (p.beta + p.gamma) * integral);
}

namespace cycle_detail {

struct HalfMapResult {
    double n_half = 0.0;
    double n_next = 0.0;
};

/// One full return: follow C- from (n, 1) down to its re-crossing n_half in
/// (0, beta/alpha - 1), then C+ from (n_half, 1) up to its re-crossing
/// n_next in ((beta+gamma)/alpha - 1, zeta).
inline HalfMapResult poincare_step(double n, const NondimParams& p) {
    const OscillationCheck chk = oscillation_conditions(p);
    if (!chk.oscillatory) {
        throw std::invalid_argument("poincare_map: oscillation conditions violated "
                                    "(beta/alpha > 1 and (beta+gamma)/(alpha(zeta+1)) < 1 "
                                    "required)");
    }
    const double n_upper_break = (p.beta + p.gamma) / p.alpha - 1.0;
    if (!(n > n_upper_break && n < p.zeta)) {
        std::ostringstream oss;
        oss << "poincare_map: n must lie in ((beta+gamma)/alpha - 1, zeta) = ("
            << n_upper_break << ", " << p.zeta << "), got " << n;
        throw std::domain_error(oss.str());
    }

    // down-arc root: C-(x; n) = 1 on (0, beta/alpha - 1)
    const double lower_break = p.beta / p.alpha - 1.0;
    const double a1 = kSingularityGuard;
    const double b1 = lower_break;
    if (!(b1 > a1)) {
        throw numerical_error("poincare_map: beta/alpha - 1 is below the singularity guard; "
                              "the margin is too small to resolve");
    }
    const double fa1 = flow_minus(a1, n, p) - 1.0;   // ~ beta/alpha - 1 > 0
    const double fb1 = flow_minus(b1, n, p) - 1.0;   // the arc minimum, < 0
    if (!(fa1 > 0.0 && fb1 < 0.0)) {
        std::ostringstream oss;
        oss << "poincare_map: lost bracket on the lower arc from n = " << n
            << " (C-(" << a1 << ") - 1 = " << fa1 << ", C-(" << b1 << ") - 1 = " << fb1 << ")";
        throw numerical_error(oss.str());
    }
    HalfMapResult out;
    out.n_half = solve_bracketed([&](double x) { return flow_minus(x, n, p) - 1.0; }, a1, b1,
                                 fa1, fb1, kRootTol);

    // up-arc root: C+(x; n_half) = 1 on ((beta+gamma)/alpha - 1, zeta)
    const double inset = 1e-9 * p.zeta;
    const double a2 = n_upper_break + inset;
    const double b2 = p.zeta - inset;
    const double fa2 = flow_plus(a2, out.n_half, p) - 1.0;  // arc maximum, > 0
    const double fb2 = flow_plus(b2, out.n_half, p) - 1.0;  // ~ limit - 1 < 0
    if (!(fa2 > 0.0 && fb2 < 0.0)) {
        std::ostringstream oss;
        oss << "poincare_map: lost bracket on the upper arc from n_half = " << out.n_half
            << " (C+(" << a2 << ") - 1 = " << fa2 << ", C+(" << b2 << ") - 1 = " << fb2 << ")";
        throw numerical_error(oss.str());
    }
    out.n_next = solve_bracketed([&](double x) { return flow_plus(x, out.n_half, p) - 1.0; },
                                 a2, b2, fa2, fb2, kRootTol);
    return out;
}

}  // namespace cycle_detail

/// The return map on the cross-section C = 1 (right branch to right branch).
inline double poincare_map(double n, const NondimParams& p) {
    return cycle_detail::poincare_step(n, p).n_next;
}

struct CycleReport {
    double n_star = 0.0;   ///< fixed point of the return map (right branch)
    double n_half = 0.0;   ///< conjugate crossing on the left branch
    double period = 0.0;   ///< nondimensional period of the closed orbit
    int iterations = 0;    ///< bisection iterations spent on the fixed point
    double residual = 0.0; ///< |F(n_star) - n_star|
};

/**
 * @brief Fixed point of the return map by bisection on F(N) - N over the
 *        invariant interval ((beta+gamma)/alpha - 1, zeta).
 *
 * The period follows from the exact N-dynamics: time ln(n_star/n_half) down
 * the F1 arc plus ln((zeta-n_half)/(zeta-n_star)) up the F2 arc.
 *
 * @throws std::invalid_argument when the oscillation conditions fail.
 * @throws numerical_error when no sign change exists on the bracket.
 */
inline CycleReport find_limit_cycle(const NondimParams& p, double tol = 1e-10) {
    const OscillationCheck chk = oscillation_conditions(p);
    if (!chk.oscillatory) {
        throw std::invalid_argument("find_limit_cycle: oscillation conditions violated");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("find_limit_cycle: tol must be positive");
    }
    const double inset = 1e-9 * p.zeta;
    double lo = (p.beta + p.gamma) / p.alpha - 1.0 + inset;
    double hi = p.zeta - inset;
    auto g = [&](double x) { return poincare_map(x, p) - x; };
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) {
        // already a fixed point; fall through with a degenerate bracket
        hi = lo;
    } else if (!(glo > 0.0 && ghi < 0.0)) {
        std::ostringstream oss;
        oss << "find_limit_cycle: no sign change on the invariant interval (g(" << lo
            << ") = " << glo << ", g(" << hi << ") = " << ghi << ")";
        throw numerical_error(oss.str());
    }

    CycleReport report;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        ++report.iterations;
        if (gm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (gm > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    report.n_star = 0.5 * (lo + hi);

    const auto step = cycle_detail::poincare_step(report.n_star, p);
    report.n_half = step.n_half;
    report.residual = std::abs(step.n_next - report.n_star);
    report.period = std::log(report.n_star / report.n_half) +
                    std::log((p.zeta - report.n_half) / (p.zeta - report.n_star));
    return report;
}

/// Sign-change brackets of F(N) - N over the invariant interval, sampled on
/// a uniform grid. find_limit_cycle reports the first fixed point; scanning
/// surfaces any further sign changes (none are expected for this map, but
/// uniqueness is not assumed).
inline std::vector<std::pair<double, double>> fixed_point_brackets(const NondimParams& p,
                                                                   int samples = 64) {
    if (samples < 2) {
        throw std::invalid_argument("fixed_point_brackets: need at least two samples");
    }
    const OscillationCheck chk = oscillation_conditions(p);
    if (!chk.oscillatory) {
        throw std::invalid_argument("fixed_point_brackets: oscillation conditions violated");
    }
    const double inset = 1e-9 * p.zeta;
    const double lo = (p.beta + p.gamma) / p.alpha - 1.0 + inset;
    const double hi = p.zeta - inset;
    std::vector<std::pair<double, double>> brackets;
    double prev_n = lo;
    double prev_g = poincare_map(prev_n, p) - prev_n;
    for (int i = 1; i < samples; ++i) {
        const double n = lo + (hi - lo) * i / (samples - 1);
        const double g = poincare_map(n, p) - n;
        if (prev_g == 0.0 || (prev_g > 0.0) != (g > 0.0)) {
            brackets.emplace_back(prev_n, n);
        }
        prev_n = n;
        prev_g = g;
    }
    return brackets;
}

/// Samples the closed orbit as a polyline: the F1 arc from (n_star, 1) down
/// to (n_half, 1), then the F2 arc back up. Useful for plotting.
inline std::vector<State> cycle_polyline(const CycleReport& cycle, const NondimParams& p,
                                         int points_per_arc = 200) {
    if (points_per_arc < 2) {
        throw std::invalid_argument("cycle_polyline: need at least two points per arc");
    }
    std::vector<State> poly;
    poly.reserve(2 * points_per_arc + 2);
    const double span = cycle.n_star - cycle.n_half;
    for (int i = 0; i <= points_per_arc; ++i) {
        const double n = cycle.n_star - span * i / points_per_arc;
        poly.push_back({n, flow_minus(n, cycle.n_star, p)});
    }
    for (int i = 0; i <= points_per_arc; ++i) {
        const double n = cycle.n_half + span * i / points_per_arc;
        poly.push_back({n, flow_plus(n, cycle.n_half, p)});
    }
    return poly;
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_CYCLE_HPP
