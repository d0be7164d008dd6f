#ifndef LYMPHFLOW_NUMERICS_HPP
#define LYMPHFLOW_NUMERICS_HPP

/**
 * @file numerics.hpp
 * @brief Small numerical building blocks shared across the library:
 *        adaptive quadrature, bracketed scalar root finding, and a dense
 *        linear solve for the least-squares normal equations.
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lymphflow/errors.hpp"

namespace lymphflow {

namespace detail {

// 15-point Kronrod extension of 7-point Gauss on [-1, 1] (QUADPACK qk15).
// Odd-indexed abscissae are the embedded Gauss nodes.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
void gk15_panel(F& f, double a, double b, double& kronrod, double& err, double& l1) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double resk = 0.0;
    double resg = 0.0;
    double resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kGk15Nodes[i];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        resk += kGk15Weights[i] * (f1 + f2);
        resabs += kGk15Weights[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) {
            resg += kG7Weights[i / 2] * (f1 + f2);
        }
    }
    const double fc = f(mid);
    resk += kGk15Weights[7] * fc;
    resabs += kGk15Weights[7] * std::abs(fc);
    resg += kG7Weights[3] * fc;
    kronrod = resk * half;
    err = std::abs((resk - resg) * half);
    l1 = resabs * half;
}

template <typename F>
double gk15_adaptive(F& f, double a, double b, double tol, int depth) {
    double value, err, l1;
    gk15_panel(f, a, b, value, err, l1);
    // accept on tolerance or at the roundoff floor of the panel
    if (err <= tol || err <= 1e-14 * l1) {
        return value;
    }
    if (depth <= 0) {
        throw numerical_error("integrate_gk: requested tolerance not reached "
                              "(subdivision limit)");
    }
    const double mid = 0.5 * (a + b);
    const double half_tol = std::max(0.5 * tol, 1e-300);
    return gk15_adaptive(f, a, mid, half_tol, depth - 1) +
           gk15_adaptive(f, mid, b, half_tol, depth - 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b] to an
/// absolute tolerance. Panels whose Gauss/Kronrod discrepancy exceeds their
/// tolerance share are bisected; the discrepancy is a strong overestimate of
/// the Kronrod error on smooth integrands, so the result is conservative.
template <typename F>
double integrate_gk(F&& f, double a, double b, double abs_tol = 1e-12) {
    if (!(a <= b)) {
        throw std::invalid_argument("integrate_gk: interval must satisfy a <= b");
    }
    if (a == b) {
        return 0.0;
    }
    return detail::gk15_adaptive(f, a, b, abs_tol, 60);
}

namespace detail {

template <typename F>
double adaptive_simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) {
        throw numerical_error("adaptive_simpson: recursion limit reached");
    }
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson integration of f over [a, b] to an absolute tolerance.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-12) {
    if (a == b) {
        return 0.0;
    }
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, 60);
}

/// Root of f on a bracket [a, b] with f(a) and f(b) of opposite sign.
///
/// Plain bisection narrows the bracket to 1e-4, after which secant steps
/// (clipped to the bracket, falling back to bisection when they degenerate)
/// finish the job. Stops when the bracket width drops below x_tol.
template <typename F>
double solve_bracketed(F&& f, double a, double b, double fa, double fb, double x_tol = 1e-12) {
    if (!(a < b)) {
        throw std::invalid_argument("solve_bracketed: need a < b");
    }
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw numerical_error("solve_bracketed: endpoints do not bracket a root");
    }
    const double secant_threshold = 1e-4;
    for (int iter = 0; iter < 400; ++iter) {
        const double width = b - a;
        if (width <= x_tol) {
            break;
        }
        double x;
        if (width > secant_threshold || fb == fa) {
            x = 0.5 * (a + b);
        } else {
            x = b - fb * (b - a) / (fb - fa);
            // keep strictly inside the bracket; otherwise bisect
            const double margin = 0.01 * width;
            if (!(x > a + margin && x < b - margin)) {
                x = 0.5 * (a + b);
            }
        }
        const double fx = f(x);
        if (fx == 0.0) {
            return x;
        }
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return 0.5 * (a + b);
}

/// In-place Gaussian elimination with partial pivoting; A is n x n row-major,
/// rhs has n entries and receives the solution. Throws on a singular pivot.
inline void solve_dense(std::vector<double>& A, std::vector<double>& rhs, std::size_t n) {
    if (A.size() != n * n || rhs.size() != n) {
        throw std::invalid_argument("solve_dense: dimension mismatch");
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(A[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(A[r * n + col]);
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best < 1e-300) {
            throw numerical_error("solve_dense: singular matrix");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(A[pivot * n + c], A[col * n + c]);
            }
            std::swap(rhs[pivot], rhs[col]);
        }
        const double inv = 1.0 / A[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = A[r * n + col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) {
                A[r * n + c] -= factor * A[col * n + c];
            }
            rhs[r] -= factor * rhs[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double acc = rhs[i];
        for (std::size_t c = i + 1; c < n; ++c) {
            acc -= A[i * n + c] * rhs[c];
        }
        rhs[i] = acc / A[i * n + i];
    }
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_NUMERICS_HPP
