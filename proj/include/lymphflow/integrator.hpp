#ifndef LYMPHFLOW_INTEGRATOR_HPP
#define LYMPHFLOW_INTEGRATOR_HPP

/**
 * @file integrator.hpp
 * @brief Event-detecting time integration of the non-smooth oscillator.
 *
 * The smooth pieces are advanced with an embedded Dormand-Prince 5(4) pair
 * (dense output); switching-line contacts are located by bisection on the
 * continuous step interpolant and resolved by the Filippov region logic.
 * This direct simulation doubles as the brute-force oracle for the
 * closed-form return map built in cycle.hpp.
 */

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lymphflow/errors.hpp"
#include "lymphflow/filippov.hpp"
#include "lymphflow/params.hpp"

namespace lymphflow {

enum class EventKind { CrossUp, CrossDown, TangencyGraze, SlidingEntry, SlidingExit };

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::CrossUp;
    State state;
    int manifold = 0;  ///< 0: C = 1, 1: C = theta (two-threshold runs only)
};

/// One accepted integration point. `region` packs the switched source flags:
/// bit 0 set when the gamma source is on (C above its level), bit 1 set when
/// the zeta source is on. In a single-threshold run region is 0 (field F1)
/// or 3 (field F2).
struct Sample {
    double t = 0.0;
    State state;
    int region = 0;
};

inline FieldId sample_field(const Sample& s) {
    return (s.region & 1) ? FieldId::F2 : FieldId::F1;
}

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<Event> events;
};

struct IntegratorConfig {
    double step = 1e-3;       ///< initial step size
    double rel_tol = 1e-9;
    double abs_tol = 1e-11;
    double event_tol = 1e-10;  ///< allowed |C - level| at reported events
    double max_time = 50.0;
};

inline void validate(const IntegratorConfig& cfg) {
    if (!(cfg.step > 0.0 && cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0 && cfg.event_tol > 0.0 &&
          cfg.max_time > 0.0)) {
        throw std::invalid_argument("integrator config: all entries must be positive");
    }
    if (!(cfg.event_tol < cfg.abs_tol * 1e3)) {
        throw std::invalid_argument("integrator config: event_tol must be below 1e3 * abs_tol");
    }
}

/**
 * @brief Filippov sliding field on the switching line C = 1.
 *
 * Returns F1 + lambda (F2 - F1) with lambda = -F1.H / (F2.H - F1.H), the
 * convex weight that cancels the C-component exactly. At the
 * pseudo-equilibrium the result vanishes.
 */
inline Velocity sliding_field(const State& x, const NondimParams& p) {
    detail::require_single_manifold(p);
    if (std::abs(x.c - 1.0) > 1e-9) {
        throw std::domain_error("sliding_field: state must lie on the switching line C = 1");
    }
    const double l1 = lie1(x, p, FieldId::F1);
    const double l2 = lie1(x, p, FieldId::F2);
    const double d = l2 - l1;
    if (d == 0.0) {
        throw numerical_error("sliding_field: degenerate convex combination (F2.H equals F1.H)");
    }
    const double lambda = -l1 / d;
    const Velocity v1 = f1(x, p);
    const Velocity v2 = f2(x, p);
    return {v1.dn + lambda * (v2.dn - v1.dn), v1.dc + lambda * (v2.dc - v1.dc)};
}

namespace detail {

using OdeState = std::array<double, 2>;  // {N, C}

struct Manifold {
    double level = 1.0;
    bool toggles_gamma = false;
    bool toggles_zeta = false;
    int id = 0;
};

struct SourceFlags {
    bool gamma_on = false;
    bool zeta_on = false;
    int region() const { return (gamma_on ? 1 : 0) | (zeta_on ? 2 : 0); }
};

class SwitchedSystem {
  public:
    SwitchedSystem(const NondimParams& p, SourceFlags* flags) : p_(p), flags_(flags) {}

    void operator()(const OdeState& x, OdeState& dxdt, double /*t*/) const {
        const double n = x[0];
        const double c = x[1];
        dxdt[0] = -n + (flags_->zeta_on ? p_.zeta : 0.0);
        dxdt[1] = -p_.alpha * (n + 1.0) * c + p_.beta + (flags_->gamma_on ? p_.gamma : 0.0);
    }

  private:
    NondimParams p_;
    SourceFlags* flags_;
};

/// Event location/switching engine shared by the one- and two-threshold runs.
class EventEngine {
  public:
    EventEngine(const NondimParams& p, const IntegratorConfig& cfg,
                std::vector<Manifold> manifolds, bool classify_regions)
        : p_(p), cfg_(cfg), manifolds_(std::move(manifolds)),
          classify_regions_(classify_regions) {}

    Trajectory run(const State& x0) {
        validate(cfg_);
        if (x0.n < 0.0 || x0.c < 0.0) {
            throw std::domain_error("simulate: initial state must lie in the closed "
                                    "nonnegative quadrant");
        }
        Trajectory traj;
        SourceFlags flags = initial_flags(x0);
        std::vector<int> sides(manifolds_.size());
        for (std::size_t k = 0; k < manifolds_.size(); ++k) {
            sides[k] = flag_side(flags, manifolds_[k]);
        }

        SwitchedSystem system(p_, &flags);
        auto stepper = boost::numeric::odeint::make_dense_output(
            cfg_.abs_tol, cfg_.rel_tol,
            boost::numeric::odeint::runge_kutta_dopri5<OdeState>());

        OdeState x{x0.n, x0.c};
        double t = 0.0;
        stepper.initialize(x, t, cfg_.step);
        traj.samples.push_back({t, {x[0], x[1]}, flags.region()});

        const std::size_t max_steps = 20'000'000;
        for (std::size_t step_count = 0;; ++step_count) {
            if (step_count >= max_steps) {
                throw numerical_error("simulate: step budget exhausted");
            }
            const auto interval = stepper.do_step(system);
            const double t0 = interval.first;
            const double t1 = interval.second;
            if (!(t1 > t0) || (t1 - t0) < 1e-14 * std::max(1.0, std::abs(t1))) {
                std::ostringstream oss;
                oss << "simulate: step underflow near t = " << t0 << " at state (N = " << x[0]
                    << ", C = " << x[1] << ")";
                throw numerical_error(oss.str());
            }

            // earliest switching-line contact inside (t0, t1], if any
            double t_event = 0.0;
            std::size_t k_event = 0;
            bool have_event = locate_event(stepper, t0, std::min(t1, cfg_.max_time), sides,
                                           t_event, k_event);

            if (have_event) {
                OdeState xe;
                stepper.calc_state(t_event, xe);
                xe[1] = manifolds_[k_event].level;  // snap onto the line
                clamp_nonnegative(xe);
                handle_event(t_event, xe, k_event, flags, sides, traj);
                stepper.initialize(xe, t_event,
                                   suggested_restart_dt(stepper.current_time_step(), t_event));
                traj.samples.push_back({t_event, {xe[0], xe[1]}, flags.region()});
                continue;
            }

            if (t1 >= cfg_.max_time) {
                if (traj.samples.back().t < cfg_.max_time) {
                    OdeState xf;
                    stepper.calc_state(cfg_.max_time, xf);
                    clamp_nonnegative(xf);
                    traj.samples.push_back({cfg_.max_time, {xf[0], xf[1]}, flags.region()});
                }
                break;
            }

            OdeState xc = stepper.current_state();
            if (needs_clamp(xc)) {
                clamp_nonnegative(xc);
                stepper.initialize(xc, t1, stepper.current_time_step());
            }
            traj.samples.push_back({t1, {xc[0], xc[1]}, flags.region()});
        }
        return traj;
    }

  private:
    template <typename Stepper>
    bool locate_event(Stepper& stepper, double t0, double t1, const std::vector<int>& sides,
                      double& t_event, std::size_t& k_event) const {
        bool found = false;
        for (std::size_t k = 0; k < manifolds_.size(); ++k) {
            double te;
            if (scan_manifold(stepper, t0, t1, manifolds_[k].level, sides[k], te)) {
                if (!found || te < t_event) {
                    found = true;
                    t_event = te;
                    k_event = k;
                }
            }
        }
        return found;
    }

    /// Scans the dense interpolant for the first strict sign change of
    /// C - level relative to the current side, refining it by bisection to
    /// 1e-12 in time.
    template <typename Stepper>
    bool scan_manifold(Stepper& stepper, double t0, double t1, double level, int side,
                       double& t_event) const {
        if (!(t1 > t0)) return false;
        OdeState tmp;
        auto h = [&](double t) {
            stepper.calc_state(t, tmp);
            return tmp[1] - level;
        };
        const int checkpoints = 8;
        double ta = t0;
        for (int j = 1; j <= checkpoints; ++j) {
            const double tb = t0 + (t1 - t0) * j / checkpoints;
            const double hb = h(tb);
            // strict sign change only; a state resting exactly on the line
            // (boundary equilibrium) is not a crossing
            if (hb != 0.0 && (hb > 0.0) != (side > 0)) {
                // bisection: ta retains the current side (or the line itself)
                double lo = ta;
                double hi = tb;
                const double ttol = 1e-12 * std::max(1.0, std::abs(t1));
                while (hi - lo > ttol) {
                    const double mid = 0.5 * (lo + hi);
                    const double hm = h(mid);
                    if (hm != 0.0 && (hm > 0.0) == (side > 0)) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                t_event = 0.5 * (lo + hi);
                return true;
            }
            ta = tb;
        }
        return false;
    }

    void handle_event(double t, OdeState& xe, std::size_t k, SourceFlags& flags,
                      std::vector<int>& sides, Trajectory& traj) {
        const Manifold& mf = manifolds_[k];
        const State s{xe[0], xe[1]};
        if (std::abs(s.c - mf.level) > cfg_.event_tol) {
            throw numerical_error("simulate: event resolution failed (|C - level| above "
                                  "event_tol)");
        }
        const bool heading_up = sides[k] < 0;

        if (classify_regions_ && repelling_contact(s)) {
            // Non-generic contact with the repelling segment: keep the
            // incoming field and record the graze.
            traj.events.push_back({t, EventKind::TangencyGraze, s, mf.id});
            return;
        }

        traj.events.push_back({t, heading_up ? EventKind::CrossUp : EventKind::CrossDown, s,
                               mf.id});
        if (mf.toggles_gamma) flags.gamma_on = heading_up;
        if (mf.toggles_zeta) flags.zeta_on = heading_up;
        sides[k] = heading_up ? 1 : -1;
        // refresh sides of any other manifold sharing the same level
        for (std::size_t j = 0; j < manifolds_.size(); ++j) {
            if (j == k) continue;
            const double d = s.c - manifolds_[j].level;
            if (d > 0.0) sides[j] = 1;
            else if (d < 0.0) sides[j] = -1;
        }
    }

    /// True when the contact point lies strictly inside the repelling
    /// sliding interval of the single switching line.
    bool repelling_contact(const State& s) const {
        const double l1 = lie1(s, p_, FieldId::F1);
        const double l2 = lie1(s, p_, FieldId::F2);
        return l1 < 0.0 && l2 > 0.0;
    }

    SourceFlags initial_flags(const State& x0) const {
        SourceFlags flags;
        for (const Manifold& mf : manifolds_) {
            bool above;
            const double d = x0.c - mf.level;
            if (d > cfg_.event_tol) {
                above = true;
            } else if (d < -cfg_.event_tol) {
                above = false;
            } else if (classify_regions_) {
                // on-line start: crossing contacts follow the common flow
                // direction, anything else starts with the lower field
                const double l1 = lie1({x0.n, mf.level}, p_, FieldId::F1);
                const double l2 = lie1({x0.n, mf.level}, p_, FieldId::F2);
                above = l1 > 0.0 && l2 > 0.0;
            } else {
                above = d > 0.0;
            }
            if (mf.toggles_gamma) flags.gamma_on = above;
            if (mf.toggles_zeta) flags.zeta_on = above;
        }
        return flags;
    }

    int flag_side(const SourceFlags& flags, const Manifold& mf) const {
        const bool above = mf.toggles_gamma ? flags.gamma_on : flags.zeta_on;
        return above ? 1 : -1;
    }

    bool needs_clamp(const OdeState& x) const {
        return (x[0] < 0.0 && x[0] >= -cfg_.abs_tol) || (x[1] < 0.0 && x[1] >= -cfg_.abs_tol);
    }

    void clamp_nonnegative(OdeState& x) const {
        for (double& v : x) {
            if (v < 0.0 && v >= -cfg_.abs_tol) v = 0.0;
        }
    }

    double suggested_restart_dt(double last_dt, double t) const {
        const double remaining = cfg_.max_time - t;
        double dt = std::min(std::abs(last_dt), remaining);
        return std::max(dt, 1e-12);
    }

    NondimParams p_;
    IntegratorConfig cfg_;
    std::vector<Manifold> manifolds_;
    bool classify_regions_;
};

}  // namespace detail

/**
 * @brief Integrates the single-threshold system: field F1 below C = 1,
 *        field F2 above, with crossings switched at located events.
 *
 * Contacts landing on the repelling sliding segment keep the incoming field
 * and are logged as TangencyGraze (deterministic tie-break for a
 * measure-zero case). Coordinates dipping below zero by at most abs_tol are
 * clamped back to zero.
 */
inline Trajectory simulate(const State& x0, const NondimParams& p, const IntegratorConfig& cfg) {
    detail::require_single_manifold(p);
    detail::EventEngine engine(p, cfg, {{1.0, true, true, 0}}, /*classify_regions=*/true);
    return engine.run(x0);
}

/**
 * @brief Integrates the general two-threshold system: the gamma source
 *        switches on the line C = 1 and the zeta source on C = theta.
 *
 * For theta = 1 the two lines coincide and the run reduces to simulate().
 * No sliding-region classification is attempted for theta != 1; every
 * located contact is treated as a transversal crossing of its line (the
 * C-dynamics never reverse across either line, so this is exact).
 */
inline Trajectory simulate_two_threshold(const State& x0, const NondimParams& p,
                                         const IntegratorConfig& cfg) {
    validate(p);
    std::vector<detail::Manifold> manifolds;
    if (p.theta == 1.0) {
        return simulate(x0, p, cfg);
    }
    manifolds.push_back({1.0, true, false, 0});
    manifolds.push_back({p.theta, false, true, 1});
    detail::EventEngine engine(p, cfg, std::move(manifolds), /*classify_regions=*/false);
    return engine.run(x0);
}

}  // namespace lymphflow

#endif  // LYMPHFLOW_INTEGRATOR_HPP
