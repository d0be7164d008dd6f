#ifndef LYMPHFLOW_FIT_HPP
#define LYMPHFLOW_FIT_HPP

/**
 * @file fit.hpp
 * @brief Least-squares fitting of pressure-radius laws to (z, p) data with a
 *        damped Gauss-Newton iteration.
 *
 * The exponential and reciprocal laws both carry an exact one-parameter
 * amplitude redundancy (rescaling p0 can be absorbed by the remaining
 * coefficients without changing the curve). The damping keeps the iteration
 * well behaved on that flat direction, and FitOptions::fixed lets callers pin
 * a coefficient to remove the redundancy when unique coefficients matter.
 */

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lymphflow/constitutive.hpp"
#include "lymphflow/errors.hpp"
#include "lymphflow/numerics.hpp"

namespace lymphflow {

struct FitPoint {
    double z = 0.0;
    double p = 0.0;
};

struct FitOptions {
    double damping_init = 1e-3;    ///< initial Levenberg damping
    double damping_factor = 10.0;  ///< multiplicative damping update
    double damping_max = 1e12;
    double fd_step_rel = 1e-7;     ///< relative forward-difference step
    int max_iterations = 200;
    double step_tol = 1e-12;       ///< stop when the accepted step is this small
    double gradient_tol = 1e-12;   ///< stop when the gradient inf-norm is this small
    std::vector<std::size_t> fixed;  ///< coefficient indices held at their init value
};

struct FitReport {
    double residual_norm = 0.0;  ///< sqrt(sum of squared residuals) at the result
    int iterations = 0;          ///< accepted Gauss-Newton steps
    bool converged = false;
    std::vector<double> residual_history;  ///< residual norm after each accepted step
};

struct FitResult {
    PressureLaw law;
    FitReport report;
};

namespace detail {

inline std::vector<double> law_coefficients(const PressureLaw& law) {
    if (const auto* p = std::get_if<PowerLawCoeffs>(&law)) {
        return {p->gamma_exp};
    }
    if (const auto* r = std::get_if<RahbarCoeffs>(&law)) {
        return {r->p0, r->sp, r->z0, r->a, r->b};
    }
    const auto& c = std::get<ReciprocalCoeffs>(law);
    return {c.g, c.z0, c.lambda, c.a, c.b};
}

inline PressureLaw law_from_coefficients(LawKind kind, const std::vector<double>& c) {
    switch (kind) {
        case LawKind::PowerLaw: return PowerLawCoeffs{c[0]};
        case LawKind::Rahbar: return RahbarCoeffs{c[0], c[1], c[2], c[3], c[4]};
        case LawKind::Reciprocal: return ReciprocalCoeffs{c[0], c[1], c[2], c[3], c[4]};
    }
    throw std::invalid_argument("unknown law kind");
}

inline const char* coefficient_name(LawKind kind, std::size_t i) {
    static const char* power[] = {"gamma_exp"};
    static const char* rahbar[] = {"p0", "sp", "z0", "a", "b"};
    static const char* reciprocal[] = {"g", "z0", "lambda", "a", "b"};
    switch (kind) {
        case LawKind::PowerLaw: return power[i];
        case LawKind::Rahbar: return rahbar[i];
        case LawKind::Reciprocal: return reciprocal[i];
    }
    return "?";
}

inline double fit_ssq(const std::vector<FitPoint>& data, LawKind kind,
                      const std::vector<double>& c, std::vector<double>* residuals) {
    const PressureLaw law = law_from_coefficients(kind, c);
    double ssq = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double r = phi_eval(law, data[i].z) - data[i].p;
        if (residuals) (*residuals)[i] = r;
        ssq += r * r;
    }
    return ssq;
}

}  // namespace detail

/// Raised when the damping schedule is exhausted before reaching a minimum;
/// carries the best iterate found so far.
class fit_failure : public numerical_error {
  public:
    fit_failure(const std::string& what, FitResult best)
        : numerical_error(what), best_result(std::move(best)) {}
    FitResult best_result;
};

/**
 * @brief Fits a pressure law to (z, p) samples by damped Gauss-Newton.
 *
 * The Jacobian is assembled by forward differences. A trial step solves
 * (J^T J + damping * diag(J^T J)) dc = -J^T r; accepted steps shrink the
 * damping, rejected ones grow it, so the residual norm never increases
 * between accepted iterates.
 *
 * @throws std::invalid_argument if there are fewer points than free
 *         coefficients or the initial guess is outside the law's domain.
 * @throws fit_failure if the damping limit is reached without convergence.
 */
inline FitResult fit_pressure_law(const std::vector<FitPoint>& data, LawKind kind,
                                  const PressureLaw& init, const FitOptions& opts = {}) {
    if (law_kind(init) != kind) {
        throw std::invalid_argument("fit_pressure_law: init variant does not match requested law");
    }
    std::vector<double> coeffs = detail::law_coefficients(init);
    const std::size_t n_coeff = coeffs.size();

    std::vector<bool> is_fixed(n_coeff, false);
    for (std::size_t idx : opts.fixed) {
        if (idx >= n_coeff) {
            throw std::invalid_argument("fit_pressure_law: fixed index out of range");
        }
        is_fixed[idx] = true;
    }
    std::vector<std::size_t> free_idx;
    for (std::size_t j = 0; j < n_coeff; ++j) {
        if (!is_fixed[j]) free_idx.push_back(j);
    }
    const std::size_t n_free = free_idx.size();
    if (data.size() < n_free || n_free == 0) {
        throw std::invalid_argument("fit_pressure_law: need at least as many data points as free "
                                    "coefficients");
    }
    for (const auto& pt : data) {
        if (!(pt.z > 0.0)) {
            throw std::invalid_argument("fit_pressure_law: data requires z > 0");
        }
    }

    const std::size_t m = data.size();
    std::vector<double> residuals(m);
    double ssq = detail::fit_ssq(data, kind, coeffs, &residuals);  // validates init domain

    FitReport report;
    report.residual_history.push_back(std::sqrt(ssq));

    std::vector<double> jac(m * n_free);
    std::vector<double> trial(n_coeff);
    std::vector<double> trial_res(m);
    double damping = opts.damping_init;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        // forward-difference Jacobian over the free coefficients
        for (std::size_t jc = 0; jc < n_free; ++jc) {
            const std::size_t j = free_idx[jc];
            const double h = opts.fd_step_rel * std::max(1.0, std::abs(coeffs[j]));
            trial = coeffs;
            trial[j] += h;
            detail::fit_ssq(data, kind, trial, &trial_res);
            for (std::size_t i = 0; i < m; ++i) {
                jac[i * n_free + jc] = (trial_res[i] - residuals[i]) / h;
            }
        }

        // normal equations
        std::vector<double> jtj(n_free * n_free, 0.0);
        std::vector<double> jtr(n_free, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t a = 0; a < n_free; ++a) {
                const double ja = jac[i * n_free + a];
                jtr[a] += ja * residuals[i];
                for (std::size_t b = a; b < n_free; ++b) {
                    jtj[a * n_free + b] += ja * jac[i * n_free + b];
                }
            }
        }
        for (std::size_t a = 0; a < n_free; ++a) {
            for (std::size_t b = 0; b < a; ++b) {
                jtj[a * n_free + b] = jtj[b * n_free + a];
            }
        }

        double grad_inf = 0.0;
        for (double g : jtr) grad_inf = std::max(grad_inf, std::abs(g));
        if (grad_inf <= opts.gradient_tol || ssq == 0.0) {
            report.converged = true;
            break;
        }

        // try increasingly damped steps until one decreases the residual
        bool accepted = false;
        double best_trial_ssq = std::numeric_limits<double>::infinity();
        while (damping <= opts.damping_max) {
            std::vector<double> lhs = jtj;
            std::vector<double> rhs(n_free);
            for (std::size_t a = 0; a < n_free; ++a) {
                const double d = std::max(jtj[a * n_free + a], 1e-30);
                lhs[a * n_free + a] += damping * d;
                rhs[a] = -jtr[a];
            }
            bool solved = true;
            try {
                solve_dense(lhs, rhs, n_free);
            } catch (const numerical_error&) {
                solved = false;
            }
            if (solved) {
                trial = coeffs;
                double step_norm = 0.0;
                for (std::size_t a = 0; a < n_free; ++a) {
                    trial[free_idx[a]] += rhs[a];
                    step_norm = std::max(step_norm, std::abs(rhs[a]));
                }
                double trial_ssq;
                bool in_domain = true;
                try {
                    trial_ssq = detail::fit_ssq(data, kind, trial, &trial_res);
                } catch (const std::exception&) {
                    in_domain = false;
                    trial_ssq = 0.0;
                }
                if (in_domain && std::isfinite(trial_ssq)) {
                    best_trial_ssq = std::min(best_trial_ssq, trial_ssq);
                }
                if (in_domain && std::isfinite(trial_ssq) && trial_ssq < ssq) {
                    coeffs = trial;
                    residuals = trial_res;
                    ssq = trial_ssq;
                    ++report.iterations;
                    report.residual_history.push_back(std::sqrt(ssq));
                    damping = std::max(damping / opts.damping_factor, 1e-14);
                    accepted = true;
                    if (step_norm <= opts.step_tol) {
                        report.converged = true;
                    }
                    break;
                }
            }
            damping *= opts.damping_factor;
        }
        if (report.converged) break;
        if (!accepted) {
            // No damping level can improve the residual by more than rounding:
            // the iterate is stationary (typical for noisy data at the
            // minimum). Anything else is a genuine failure.
            if (best_trial_ssq >= ssq * (1.0 - 1e-12) && std::isfinite(best_trial_ssq)) {
                report.converged = true;
                break;
            }
            report.residual_norm = std::sqrt(ssq);
            FitResult best{detail::law_from_coefficients(kind, coeffs), report};
            throw fit_failure("fit_pressure_law: damping limit reached without progress "
                              "(residual " + std::to_string(report.residual_norm) + ")",
                              std::move(best));
        }
    }

    report.residual_norm = std::sqrt(ssq);
    return {detail::law_from_coefficients(kind, coeffs), report};
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_FIT_HPP
