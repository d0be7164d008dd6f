#include <catch2/catch_amalgamated.hpp>

#include "lymphflow/constitutive.hpp"
#include "lymphflow/fit.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace lymphflow;

TEST_CASE("pressure law values") {
    CHECK(phi_eval(PowerLawCoeffs{1.0}, 1.0) == 0.0);
    CHECK(phi_eval(PowerLawCoeffs{2.0}, 2.0) == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(phi_eval(RahbarCoeffs{1.0, 1.0, 1.0, 1.0, 1.0}, 1.0) ==
          Catch::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(phi_eval(PowerLawCoeffs{1.0}, 0.0), std::domain_error);
    CHECK_THROWS_AS(phi_eval(PowerLawCoeffs{-1.0}, 1.0), std::invalid_argument);
    // reciprocal law pole at z = z0/lambda
    CHECK_THROWS_AS(phi_eval(ReciprocalCoeffs{1.0, 2.0, 1.0, 0.5, 0.2}, 2.0), std::domain_error);
}

TEST_CASE("analytic derivative matches central differences") {
    const std::vector<PressureLaw> laws = {
        PowerLawCoeffs{1.7},
        RahbarCoeffs{2.0, 3.0, 1.0, 0.5, 1.5},
        ReciprocalCoeffs{0.8, 2.5, 1.0, 0.4, 0.3},
    };
    for (const auto& law : laws) {
        for (double z = 0.4; z <= 1.8; z += 0.1) {
            const double h = 1e-6 * z;
            const double fd = (phi_eval(law, z + h) - phi_eval(law, z - h)) / (2.0 * h);
            const double an = phi_deriv(law, z);
            CHECK(an == Catch::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("parabolic pipe flow") {
    CHECK(poiseuille_velocity(1.0, 1.0, -4.0) == 0.0);
    CHECK(poiseuille_velocity(0.0, 1.0, -4.0) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(poiseuille_velocity(0.3, 1.0, 0.0) == 0.0);
    CHECK_THROWS_AS(poiseuille_velocity(1.1, 1.0, -4.0), std::domain_error);
}

TEST_CASE("shape factor closed form and quadrature agree") {
    CHECK(shape_factor(PowerLawProfile{2.0}) == 8.0 / 3.0);
    CHECK(shape_factor(PowerLawProfile{1e6}) == Catch::Approx(2.0).epsilon(1e-5));

    for (double g : {1.0, 2.0, 5.0, 9.0}) {
        const auto psi = [g](double z) {
            return (2.0 + g) / g * (1.0 - std::pow(z, g));
        };
        const double numeric = shape_factor(CustomProfile{psi});
        const double closed = shape_factor(PowerLawProfile{g});
        CHECK(numeric == Catch::Approx(closed).margin(1e-8));
    }
}

TEST_CASE("profile normalization pins the cross-sectional average") {
    for (double g : {1.0, 2.0, 5.0, 9.0}) {
        const VelocityProfile profile = PowerLawProfile{g};
        const double avg = adaptive_simpson(
            [&](double z) { return profile_eval(profile, z) * 2.0 * z; }, 0.0, 1.0, 1e-13);
        CHECK(avg == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("custom profile validation") {
    // not normalized: int psi z dz = 3/4 instead of 1/2
    CHECK_THROWS_AS(shape_factor(CustomProfile{[](double z) { return 3.0 * (1.0 - z * z); }}),
                    std::invalid_argument);
    // slip at the wall
    CHECK_THROWS_AS(shape_factor(CustomProfile{[](double) { return 1.0; }}),
                    std::invalid_argument);
}

TEST_CASE("wall slope of the velocity profile") {
    CHECK(profile_wall_slope(PowerLawProfile{2.0}) == -4.0);
    const auto psi = [](double z) { return 2.0 * (1.0 - z * z); };
    CHECK(profile_wall_slope(CustomProfile{psi}) == Catch::Approx(-4.0).margin(1e-5));
}

namespace {

std::vector<FitPoint> sample_law(const PressureLaw& law, int count) {
    std::vector<FitPoint> data;
    data.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double z = 0.5 + 1.0 * i / (count - 1);
        data.push_back({z, phi_eval(law, z)});
    }
    return data;
}

}  // namespace

TEST_CASE("fit recovers generating coefficients") {
    SECTION("exponential stiffening law, amplitude pinned") {
        const RahbarCoeffs truth{2.0, 3.0, 1.0, 0.5, 1.5};
        const auto data = sample_law(truth, 50);
        RahbarCoeffs init{truth.p0, truth.sp * 1.1, truth.z0 * 0.9, truth.a * 1.1,
                          truth.b * 0.9};
        FitOptions opts;
        opts.fixed = {0};  // p0 carries the amplitude redundancy
        const FitResult res = fit_pressure_law(data, LawKind::Rahbar, init, opts);
        const auto& c = std::get<RahbarCoeffs>(res.law);
        CHECK(c.sp == Catch::Approx(truth.sp).epsilon(1e-6));
        CHECK(c.z0 == Catch::Approx(truth.z0).epsilon(1e-6));
        CHECK(c.a == Catch::Approx(truth.a).epsilon(1e-6));
        CHECK(c.b == Catch::Approx(truth.b).epsilon(1e-6));
        CHECK(res.report.residual_norm < 1e-10);
    }
    SECTION("reciprocal law, pole reference pinned") {
        const ReciprocalCoeffs truth{0.8, 2.5, 1.0, 0.4, 0.3};
        const auto data = sample_law(truth, 50);
        ReciprocalCoeffs init{truth.g * 1.1, truth.z0, truth.lambda * 0.9, truth.a * 1.1,
                              truth.b * 0.9};
        FitOptions opts;
        opts.fixed = {1};  // z0 carries the scale redundancy
        const FitResult res = fit_pressure_law(data, LawKind::Reciprocal, init, opts);
        const auto& c = std::get<ReciprocalCoeffs>(res.law);
        CHECK(c.g == Catch::Approx(truth.g).epsilon(1e-6));
        CHECK(c.lambda == Catch::Approx(truth.lambda).epsilon(1e-6));
        CHECK(c.a == Catch::Approx(truth.a).epsilon(1e-6));
        CHECK(c.b == Catch::Approx(truth.b).epsilon(1e-6));
    }
    SECTION("power law from a cold start") {
        const PowerLawCoeffs truth{2.7};
        const auto data = sample_law(truth, 50);
        const FitResult res = fit_pressure_law(data, LawKind::PowerLaw, PowerLawCoeffs{1.0});
        CHECK(std::get<PowerLawCoeffs>(res.law).gamma_exp ==
              Catch::Approx(truth.gamma_exp).epsilon(1e-8));
    }
}

TEST_CASE("fit edge cases") {
    const RahbarCoeffs truth{2.0, 3.0, 1.0, 0.5, 1.5};
    const auto data = sample_law(truth, 50);

    SECTION("zero residual at init returns immediately") {
        const FitResult res = fit_pressure_law(data, LawKind::Rahbar, truth);
        CHECK(res.report.iterations == 0);
        CHECK(res.report.converged);
        const auto& c = std::get<RahbarCoeffs>(res.law);
        CHECK(c.sp == truth.sp);
        CHECK(c.b == truth.b);
    }
    SECTION("underdetermined data rejected") {
        const std::vector<FitPoint> tiny(data.begin(), data.begin() + 3);
        CHECK_THROWS_AS(fit_pressure_law(tiny, LawKind::Rahbar, truth), std::invalid_argument);
    }
    SECTION("residual history never increases") {
        RahbarCoeffs init{2.0, 3.6, 0.8, 0.65, 1.2};
        FitOptions opts;
        opts.fixed = {0};
        const FitResult res = fit_pressure_law(data, LawKind::Rahbar, init, opts);
        const auto& hist = res.report.residual_history;
        REQUIRE(hist.size() > 1);
        for (std::size_t i = 1; i < hist.size(); ++i) {
            CHECK(hist[i] <= hist[i - 1]);
        }
    }
    SECTION("noisy data: fit is at least as good as the generator") {
        std::mt19937 rng(7);
        std::normal_distribution<double> noise(0.0, 0.01);
        auto noisy = data;
        for (auto& pt : noisy) pt.p += noise(rng);
        RahbarCoeffs init{2.0, 3.3, 0.9, 0.55, 1.35};
        FitOptions opts;
        opts.fixed = {0};
        const FitResult res = fit_pressure_law(noisy, LawKind::Rahbar, init, opts);
        double truth_ssq = 0.0;
        for (const auto& pt : noisy) {
            const double r = phi_eval(PressureLaw{truth}, pt.z) - pt.p;
            truth_ssq += r * r;
        }
        CHECK(res.report.residual_norm * res.report.residual_norm <= truth_ssq + 1e-12);
    }
}
