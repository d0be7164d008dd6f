#include <catch2/catch_amalgamated.hpp>

#include "lymphflow/bifurcation.hpp"

#include <random>
#include <string>
#include <vector>

using namespace lymphflow;

namespace {

NondimParams base_params(double alpha, double zeta, double gamma) {
    NondimParams p;
    p.alpha = alpha;
    p.zeta = zeta;
    p.gamma = gamma;
    p.beta = 1.0;
    return p;
}

/// Run-length-compressed (eq_f1, eq_f2) sequence over a beta grid, skipping
/// the measure-zero boundary labels a grid point may land on.
std::vector<std::string> regime_sequence(const NondimParams& base, double beta_lo,
                                         double beta_hi, int count) {
    std::vector<std::string> seq;
    for (const auto& pt : sweep_beta(base, beta_lo, beta_hi, count)) {
        if (pt.label.eq_f1 == EqLabel::Boundary || pt.label.eq_f2 == EqLabel::Boundary) {
            continue;
        }
        std::string code;
        code += pt.label.eq_f1 == EqLabel::Regular ? 'R' : 'V';
        code += pt.label.eq_f2 == EqLabel::Regular ? 'R' : 'V';
        if (seq.empty() || seq.back() != code) seq.push_back(code);
    }
    return seq;
}

}  // namespace

TEST_CASE("boundary-event certificates") {
    const NondimParams p{0.3, 1.0, 0.5, 2.0, 1.0};

    SECTION("lower field") {
        const BebCertificate cert = beb_f1(p);
        CHECK(cert.valid());
        CHECK(cert.beta_star == 0.3);
        CHECK(cert.x_star.n == 0.0);
        CHECK(cert.x_star.c == 1.0);
        CHECK(cert.jacobian_det == Catch::Approx(0.3).epsilon(1e-14));
        CHECK(cert.transversality_value == Catch::Approx(1.0 / 0.3).epsilon(1e-12));
        // the opposite field stays away from zero: F2(x*) = (zeta, gamma)
        CHECK(cert.other_field_value.dn == Catch::Approx(2.0).epsilon(1e-14));
        CHECK(cert.other_field_value.dc == Catch::Approx(0.5).epsilon(1e-14));
    }
    SECTION("upper field") {
        const BebCertificate cert = beb_f2(p);
        CHECK(cert.valid());
        CHECK(cert.beta_star == Catch::Approx(0.3 * 3.0 - 0.5).epsilon(1e-14));
        CHECK(cert.x_star.n == 2.0);
        CHECK(cert.jacobian_det == Catch::Approx(0.9).epsilon(1e-12));
        CHECK(cert.transversality_value == Catch::Approx(1.0 / 0.9).epsilon(1e-12));
        // F1(x*) = (-zeta, -gamma)
        CHECK(cert.other_field_value.dn == Catch::Approx(-2.0).epsilon(1e-12));
        CHECK(cert.other_field_value.dc == Catch::Approx(-0.5).epsilon(1e-12));
    }
    SECTION("hand-evaluated determinant") {
        NondimParams q{2.0, 1.0, 1.0, 1.0, 1.0};
        CHECK(beb_f1(q).jacobian_det == Catch::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("persistence versus non-smooth fold") {
    CHECK(classify_beb(base_params(0.3, 2.0, 0.5)).type == BebType::Persistence);
    CHECK(classify_beb(base_params(0.3, 2.0, 0.8)).type == BebType::NonsmoothFold);
    CHECK(classify_beb(base_params(0.3, 2.0, 0.6)).type == BebType::Degenerate);
}

TEST_CASE("discriminant assembled from matrices matches the closed form") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int k = 0; k < 500; ++k) {
        const NondimParams p{u(rng), u(rng), u(rng), u(rng), 1.0};
        const BebClassification cls = classify_beb(p);
        CHECK(cls.discriminant ==
              Catch::Approx(cls.discriminant_closed).margin(1e-12 * (1.0 + std::abs(p.zeta))));
        CHECK(cls.det_n == Catch::Approx(p.alpha).epsilon(1e-12));
        CHECK(cls.d_minus_ctninvm == Catch::Approx(1.0 / p.alpha).epsilon(1e-12));
    }
}

TEST_CASE("regime labels") {
    auto at_beta = [](NondimParams p, double beta) {
        p.beta = beta;
        return p;
    };
    SECTION("small beta below the fold line: lower regular, upper virtual") {
        const RegimeLabel label = regime(at_beta(base_params(0.3, 2.0, 0.5), 0.1));
        CHECK(label.eq_f1 == EqLabel::Regular);
        CHECK(label.eq_f2 == EqLabel::Virtual);
        CHECK_FALSE(label.oscillatory);
    }
    SECTION("intermediate beta: both virtual, oscillatory") {
        const RegimeLabel label = regime(at_beta(base_params(0.3, 2.0, 0.5), 0.35));
        CHECK(label.eq_f1 == EqLabel::Virtual);
        CHECK(label.eq_f2 == EqLabel::Virtual);
        CHECK(label.oscillatory);
    }
    SECTION("gamma above alpha(zeta+1): both regular at small beta") {
        const RegimeLabel label = regime(at_beta(base_params(0.3, 2.0, 1.0), 0.1));
        CHECK(label.eq_f1 == EqLabel::Regular);
        CHECK(label.eq_f2 == EqLabel::Regular);
    }
}

TEST_CASE("boundary lines are labelled exactly") {
    NondimParams p = base_params(0.3, 2.0, 0.5);
    p.beta = p.alpha;  // the F1 line
    CHECK(regime(p).eq_f1 == EqLabel::Boundary);
    p.beta = p.alpha * (p.zeta + 1.0) - p.gamma;  // the F2 line
    CHECK(regime(p).eq_f2 == EqLabel::Boundary);
}

TEST_CASE("oscillatory labels imply two virtual equilibria") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int k = 0; k < 500; ++k) {
        const NondimParams p{u(rng), u(rng), u(rng), u(rng), 1.0};
        const RegimeLabel label = regime(p);
        if (label.oscillatory) {
            CHECK(label.eq_f1 == EqLabel::Virtual);
            CHECK(label.eq_f2 == EqLabel::Virtual);
        }
    }
}

TEST_CASE("beta sweeps narrate the four gamma regimes") {
    // alpha = 0.3, zeta = 2: the lower line is beta = 0.3, the upper line is
    // beta = 0.9 - gamma.
    using Seq = std::vector<std::string>;
    SECTION("gamma below alpha zeta") {
        CHECK(regime_sequence(base_params(0.3, 2.0, 0.5), 0.05, 1.2, 400) ==
              Seq{"RV", "VV", "VR"});
    }
    SECTION("gamma at alpha zeta: both lines coincide") {
        CHECK(regime_sequence(base_params(0.3, 2.0, 0.6), 0.05, 1.2, 400) == Seq{"RV", "VR"});
    }
    SECTION("gamma between alpha zeta and alpha(zeta+1)") {
        CHECK(regime_sequence(base_params(0.3, 2.0, 0.8), 0.05, 1.2, 400) ==
              Seq{"RV", "RR", "VR"});
    }
    SECTION("gamma above alpha(zeta+1)") {
        CHECK(regime_sequence(base_params(0.3, 2.0, 1.0), 0.05, 1.2, 400) == Seq{"RR", "VR"});
    }
}

TEST_CASE("grid sweep covers the plane") {
    const auto grid = sweep_grid(base_params(0.3, 2.0, 0.5), 0.05, 1.2, 21, 0.05, 1.2, 11);
    CHECK(grid.size() == 21u * 11u);
    CHECK(grid.front().gamma == 0.05);
    CHECK(grid.back().gamma == 1.2);
    CHECK_THROWS_AS(sweep_grid(base_params(0.3, 2.0, 0.5), 1.2, 0.05, 21, 0.05, 1.2, 11),
                    std::invalid_argument);
}
