#include <catch2/catch_amalgamated.hpp>

#include <boost/numeric/odeint.hpp>

#include "lymphflow/cycle.hpp"
#include "lymphflow/integrator.hpp"

#include <array>
#include <cmath>

using namespace lymphflow;

namespace {

NondimParams reference_params() {
    return {5.01, 6.23, 3.33, 1.07, 1.0};
}

/// Independent oracle: integrate dC/dN directly (the flow written as an ODE
/// in N) with a high-accuracy adaptive stepper. Field selects which source
/// terms are active.
double ode_flow_oracle(double n_target, double n0, const NondimParams& p, FieldId field) {
    using OdeState = std::array<double, 1>;
    auto rhs = [&](const OdeState& c, OdeState& dcdn, double n) {
        const double num = -p.alpha * (n + 1.0) * c[0] + p.beta +
                           (field == FieldId::F2 ? p.gamma : 0.0);
        const double den = field == FieldId::F2 ? (p.zeta - n) : -n;
        dcdn[0] = num / den;
    };
    OdeState c{1.0};
    auto stepper = boost::numeric::odeint::make_controlled(
        1e-13, 1e-13, boost::numeric::odeint::runge_kutta_fehlberg78<OdeState>());
    const double dn = (n_target - n0) / 256.0;
    boost::numeric::odeint::integrate_adaptive(stepper, rhs, c, n0, n_target, dn);
    return c[0];
}

}  // namespace

TEST_CASE("flows start at the section") {
    const NondimParams p = reference_params();
    CHECK(flow_minus(0.9, 0.9, p) == 1.0);
    CHECK(flow_plus(0.5, 0.5, p) == 1.0);
}

TEST_CASE("flow domains") {
    const NondimParams p = reference_params();
    CHECK_THROWS_AS(flow_minus(1.0, 0.9, p), std::domain_error);
    CHECK_THROWS_AS(flow_minus(-0.1, 0.9, p), std::domain_error);
    CHECK_THROWS_AS(flow_plus(0.4, 0.5, p), std::domain_error);
    CHECK_THROWS_AS(flow_plus(1.07, 0.5, p), std::domain_error);
}

TEST_CASE("removable singularity limits") {
    const NondimParams p = reference_params();
    SECTION("lower flow approaches beta/alpha at the origin") {
        const double limit = p.beta / p.alpha;
        double prev_err = 1.0;
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const double err = std::abs(flow_minus(eps, 1.0, p) - limit);
            CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(prev_err < 1e-5);
        // inside the guard the limit itself is returned
        CHECK(flow_minus(1e-9, 1.0, p) == limit);
        // just above the guard the quadrature lands within 1e-6 of it
        CHECK(std::abs(flow_minus(2e-8, 1.0, p) - limit) < 1e-6);
    }
    SECTION("upper flow approaches (beta+gamma)/(alpha(zeta+1)) at zeta") {
        const double limit = (p.beta + p.gamma) / (p.alpha * (p.zeta + 1.0));
        double prev_err = 1.0;
        for (double eps : {1e-2, 1e-4, 1e-6}) {
            const double err = std::abs(flow_plus(p.zeta - eps, 0.2, p) - limit);
            CHECK(err < prev_err);
            prev_err = err;
        }
        CHECK(flow_plus(p.zeta - 1e-9, 0.2, p) == limit);
        CHECK(std::abs(flow_plus(p.zeta - 2e-8, 0.2, p) - limit) < 1e-6);
    }
}

TEST_CASE("closed-form flows agree with direct ODE integration") {
    const NondimParams p = reference_params();
    SECTION("lower flow at 50 interior points") {
        const double n0 = 1.0;
        for (int i = 1; i <= 50; ++i) {
            const double n = n0 * i / 51.0;
            const double closed = flow_minus(n, n0, p);
            const double oracle = ode_flow_oracle(n, n0, p, FieldId::F1);
            CHECK(closed == Catch::Approx(oracle).margin(1e-7));
        }
    }
    SECTION("upper flow at 50 interior points") {
        const double n0 = 0.2;
        for (int i = 1; i <= 50; ++i) {
            const double n = n0 + (p.zeta - 1e-3 - n0) * i / 51.0;
            const double closed = flow_plus(n, n0, p);
            const double oracle = ode_flow_oracle(n, n0, p, FieldId::F2);
            CHECK(closed == Catch::Approx(oracle).margin(1e-7));
        }
    }
    SECTION("time-domain simulation cross-check at N = 0.5") {
        // F1 carries (1, 1) downward; N(t) = e^{-t} passes 0.5 at t = ln 2
        using OdeState = std::array<double, 2>;
        auto rhs = [&](const OdeState& x, OdeState& dxdt, double) {
            dxdt[0] = -x[0];
            dxdt[1] = -p.alpha * (x[0] + 1.0) * x[1] + p.beta;
        };
        OdeState x{1.0, 1.0};
        auto stepper = boost::numeric::odeint::make_controlled(
            1e-13, 1e-13, boost::numeric::odeint::runge_kutta_fehlberg78<OdeState>());
        boost::numeric::odeint::integrate_adaptive(stepper, rhs, x, 0.0, std::log(2.0), 1e-4);
        CHECK(x[0] == Catch::Approx(0.5).margin(1e-12));
        CHECK(flow_minus(0.5, 1.0, p) == Catch::Approx(x[1]).margin(1e-7));
    }
}

TEST_CASE("oscillation conditions") {
    const OscillationCheck ref = oscillation_conditions(reference_params());
    CHECK(ref.oscillatory);
    CHECK(ref.margin_lower == Catch::Approx(0.2435).margin(1e-3));
    CHECK(ref.margin_upper == Catch::Approx(0.0782).margin(1e-3));

    // boundaries are excluded
    NondimParams b1 = reference_params();
    b1.beta = b1.alpha;
    CHECK_FALSE(oscillation_conditions(b1).oscillatory);
    NondimParams b2 = reference_params();
    b2.beta = b2.alpha * (b2.zeta + 1.0) - b2.gamma;
    CHECK_FALSE(oscillation_conditions(b2).oscillatory);
}

TEST_CASE("return map properties at the reference parameters") {
    const NondimParams p = reference_params();
    const double lo = (p.beta + p.gamma) / p.alpha - 1.0;

    SECTION("the invariant interval maps into itself") {
        for (int i = 0; i < 100; ++i) {
            const double n = lo + (p.zeta - lo) * (i + 0.5) / 100.0;
            const double image = poincare_map(n, p);
            CHECK(image > lo);
            CHECK(image < p.zeta);
        }
    }
    SECTION("iterates converge monotonically from the right edge") {
        const CycleReport cycle = find_limit_cycle(p);
        double n = p.zeta * (1.0 - 1e-3);
        double prev_gap = std::abs(n - cycle.n_star);
        for (int i = 0; i < 8; ++i) {
            n = poincare_map(n, p);
            const double gap = std::abs(n - cycle.n_star);
            // strict contraction until the solver noise floor
            if (prev_gap > 1e-10) {
                CHECK(gap < prev_gap);
            }
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-9);
    }
    SECTION("contraction near the fixed point") {
        const CycleReport cycle = find_limit_cycle(p);
        for (double offset : {1e-2, -1e-2, 5e-3, -5e-3}) {
            const double n = cycle.n_star + offset;
            CHECK(std::abs(poincare_map(n, p) - cycle.n_star) < std::abs(n - cycle.n_star));
        }
    }
    SECTION("out-of-domain input rejected") {
        CHECK_THROWS_AS(poincare_map(lo - 1e-3, p), std::domain_error);
        CHECK_THROWS_AS(poincare_map(p.zeta + 1e-3, p), std::domain_error);
    }
}

TEST_CASE("limit cycle report") {
    const NondimParams p = reference_params();
    const CycleReport cycle = find_limit_cycle(p, 1e-10);

    // frozen values, independently confirmed by long event-detecting runs
    CHECK(cycle.n_star == Catch::Approx(0.9253123720009).margin(1e-9));
    CHECK(cycle.n_half == Catch::Approx(0.2058983443870).margin(1e-9));
    CHECK(cycle.period == Catch::Approx(3.2898620967271).margin(1e-8));

    CHECK(cycle.residual <= 1e-9);
    CHECK(cycle.n_star > (p.beta + p.gamma) / p.alpha - 1.0);
    CHECK(cycle.n_star < p.zeta);
    CHECK(cycle.n_half > 0.0);
    CHECK(cycle.n_half < p.beta / p.alpha - 1.0);
    CHECK(cycle.period > 0.0);

    SECTION("period equals the inter-event time measured by the integrator") {
        IntegratorConfig cfg;
        cfg.max_time = 40.0;
        const Trajectory traj = simulate({1.0, 1.0 + 1e-6}, p, cfg);
        std::vector<double> down_times;
        for (const auto& e : traj.events) {
            if (e.kind == EventKind::CrossDown) down_times.push_back(e.t);
        }
        REQUIRE(down_times.size() >= 2);
        const double measured = down_times.back() - down_times[down_times.size() - 2];
        CHECK(cycle.period == Catch::Approx(measured).epsilon(1e-5));
    }
}

TEST_CASE("limit cycle guards") {
    NondimParams damped = reference_params();
    damped.beta = damped.alpha * 0.5;  // lower rest point admissible
    CHECK_THROWS_AS(find_limit_cycle(damped), std::invalid_argument);
}

TEST_CASE("fixed-point scan finds exactly the reported cycle") {
    const NondimParams p = reference_params();
    const CycleReport cycle = find_limit_cycle(p);
    const auto brackets = fixed_point_brackets(p, 48);
    REQUIRE(brackets.size() == 1);
    CHECK(brackets[0].first <= cycle.n_star);
    CHECK(brackets[0].second >= cycle.n_star);
}

TEST_CASE("cycle polyline closes on the section") {
    const NondimParams p = reference_params();
    const CycleReport cycle = find_limit_cycle(p);
    const auto poly = cycle_polyline(cycle, p, 100);
    REQUIRE(poly.size() == 202);
    CHECK(poly.front().n == Catch::Approx(cycle.n_star));
    CHECK(poly.front().c == Catch::Approx(1.0).margin(1e-9));
    CHECK(poly.back().n == Catch::Approx(cycle.n_star).margin(1e-9));
    CHECK(poly.back().c == Catch::Approx(1.0).margin(1e-6));
    for (const auto& s : poly) {
        CHECK(s.c > 0.0);
        CHECK(s.n >= 0.0);
    }
}
