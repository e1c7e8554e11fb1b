#include <catch_amalgamated.hpp>

#include "mimoic/fixtures.hpp"
#include "mimoic/verify.hpp"

using namespace mimoic;
using Catch::Approx;

TEST_CASE("aoc_bounds on example 1", "[verify]") {
    const AocBounds b = aoc_bounds(fixtures::example1_siso());
    // hand evaluation of both expressions
    const double head = std::log2(1 + 2025 + 9);
    CHECK(b.b_aoc == Approx(head + std::log2(1 + 2025.0 / 626) + std::log2(1 + 9 + 900.0 / 626)));
    CHECK(b.b_etw == Approx(head + std::log2(2 + 2025.0 / 625) + std::log2(1 + 625 + 900.0 / 9) - 3));
    CHECK(b.b_aoc < b.b_etw - 0.1);
    CHECK(b.b_aoc == Approx(16.59).margin(0.01));
    CHECK(b.b_etw == Approx(19.88).margin(0.01));
}

TEST_CASE("aoc comparison identity", "[verify][property]") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> db(0.0, 50.0);
    int checked = 0;
    for (int t = 0; t < 2000; ++t) {
        SisoParams p{std::pow(10, db(gen) / 10), std::pow(10, db(gen) / 10), std::pow(10, db(gen) / 10),
                     std::pow(10, db(gen) / 10)};
        if (!(p.inr1 < p.snr2 && p.inr2 < p.snr1)) {
            CHECK_THROWS_AS(aoc_bounds(p), NotWeakIC);
            continue;
        }
        const AocBounds b = aoc_bounds(p);
        CHECK(b.b_aoc < b.b_etw + std::log2(1 + p.inr1) - std::log2(1 + p.inr2) + 3);
        ++checked;
        if (std::abs(p.inr1 - p.inr2) < 1e-12) CHECK(b.b_aoc >= b.b_etw - 3);
    }
    CHECK(checked > 100);
    // symmetric interference
    for (double inr : {1.0, 10.0, 100.0}) {
        const AocBounds b = aoc_bounds({1e4, 1e4, inr, inr});
        CHECK(b.b_aoc >= b.b_etw - 3);
    }
}

TEST_CASE("aoc_bounds guards", "[verify]") {
    CHECK_THROWS_AS(aoc_bounds({100, 100, 1, 0}), NotWeakIC);
    CHECK_THROWS_AS(aoc_bounds({100, 100, 1e-13, 1}), NotWeakIC);
    CHECK_THROWS_AS(aoc_bounds({10, 100, 1, 20}), NotWeakIC);
    CHECK_THROWS_AS(aoc_bounds({-1, 100, 1, 1}), PreconditionViolation);
}

TEST_CASE("conditional entropy check", "[verify]") {
    const ChannelConfig ex2 = fixtures::example2().channel;
    const auto i2 = HermitianMatrix::identity(2);
    const auto z2 = HermitianMatrix::zero(2);
    CHECK(check_cond_entropy_bound(ex2, i2, i2) >= -kDefaultTolerance.eq);

    const double at_zero = check_cond_entropy_bound(ex2, z2, z2);
    const HermitianMatrix k1 = k_matrix(ex2, User::k1);
    const double bound =
        logdet2(eye_plus(ex2.rho[2] * outer_gram(ex2.h21) + ex2.rho[0] * sandwich(ex2.h11, k1)));
    CHECK(at_zero == Approx(bound));

    ChannelConfig p2p = ex2;
    p2p.h12.setZero();
    p2p.h21.setZero();
    CHECK(check_cond_entropy_bound(p2p, i2, i2) == Approx(0.0).margin(kDefaultTolerance.eq));

    CMatrix big = CMatrix::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(check_cond_entropy_bound(ex2, HermitianMatrix(big), i2), PSDViolation);
    CHECK_THROWS_AS(check_cond_entropy_bound(ex2, HermitianMatrix::identity(3), i2), DimensionMismatch);
}

TEST_CASE("order lemma", "[verify]") {
    std::mt19937_64 gen(1);
    const HermitianMatrix g = random_psd(3, gen);
    const HermitianMatrix a = random_psd(3, gen);
    CHECK(check_order_lemma(g, g, a, 2.0) == Approx(0.0).margin(1e-12));
    const double m0 = check_order_lemma(HermitianMatrix::zero(3), g, a, 2.0);
    const HermitianMatrix inner = inv_hpd(eye_plus(2.0 * sandwich(g.matrix(), a)));
    CHECK(m0 == Approx(min_eigenvalue(sandwich(g.matrix(), inner))).margin(1e-12));
    CHECK(m0 >= -kDefaultTolerance.psd);
    CHECK_THROWS_AS(check_order_lemma(g, HermitianMatrix::zero(3), a, 1.0), PreconditionViolation);
    CHECK_THROWS_AS(check_order_lemma(g, g, a, -1.0), PreconditionViolation);
}

TEST_CASE("order lemma fails for a non-commuting pair", "[verify]") {
    // G2 - G1 = diag(1, 0) is PSD, but G2^2 - G1^2 is not, which the pi -> 0 limit exposes
    CMatrix g1(2, 2), g2(2, 2), a(2, 2);
    g1 << 1, 1, 1, 1;
    g2 << 2, 1, 1, 1;
    a << 1, 0, 0, 1;
    const HermitianMatrix G1(g1), G2(g2);
    REQUIRE(psd_leq(G1, G2));
    CHECK(check_order_lemma(G1, G2, HermitianMatrix(a), 1e-3) < -0.1);
    const VerificationReport rep = order_lemma_suite(300, 6);
    CHECK_FALSE(rep.passed());
}

TEST_CASE("random_psd is normalized", "[verify]") {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 100; ++t) {
        const HermitianMatrix g = random_psd(1 + t % 4, gen);
        const auto ev = eigenvalues(g);
        CHECK(ev.minCoeff() >= -1e-12);
        CHECK(ev.maxCoeff() <= 1.0 + 1e-12);
        CHECK(ev.maxCoeff() > 0.0);
    }
}

TEST_CASE("lemma suites", "[verify][property]") {
    const VerificationReport ce = cond_entropy_suite(300, 5);
    CHECK(ce.trials == 300);
    CHECK(ce.passed());
    CHECK(ce.worst_margin >= -1e-7);
    const VerificationReport unit = order_lemma_suite(300, 6, {}, OrderLemmaDraw::UnitUpper);
    CHECK(unit.passed());
    const VerificationReport tau = tau_suite(300, 7);
    CHECK(tau.passed());
}

TEST_CASE("certify_theorems is deterministic and thread independent", "[verify]") {
    CertifyOptions one;
    one.threads = 1;
    CertifyOptions many;
    many.threads = 4;
    const auto a = certify_theorems({2, 2, 2, 2}, 30, 42, one);
    const auto b = certify_theorems({2, 2, 2, 2}, 30, 42, many);
    CHECK(a.trials == 30);
    CHECK(a.failures.size() == b.failures.size());
    for (std::size_t k = 0; k < a.failures.size(); ++k) {
        CHECK(a.failures[k].seed == b.failures[k].seed);
        CHECK(a.failures[k].detail == b.failures[k].detail);
    }
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.stats == b.stats);
}

TEST_CASE("certify_theorems reciprocity and containment hold", "[verify]") {
    const auto rep = certify_theorems({2, 3, 2, 2}, 50, 9);
    CHECK(rep.stats.at("reciprocity_failures") == 0);
    CHECK(rep.stats.at("containment_failures") == 0);
    CHECK(rep.stats.at("reciprocity_max_delta") <= kDefaultTolerance.eq);
}

TEST_CASE("certify_theorems detects shrunken gap constants", "[verify]") {
    CertifyOptions opt;
    opt.gap_scale = 0.5;
    const auto rep = certify_theorems({2, 2, 2, 2}, 50, 1, opt);
    CHECK_FALSE(rep.passed());
    CHECK(rep.stats.at("gap_ra_unclipped_failures") > 0);
}
