#include <catch_amalgamated.hpp>

#include "mimoic/fixtures.hpp"
#include "mimoic/ratesplit.hpp"

using namespace mimoic;
using Catch::Approx;

namespace {

// Direct re-check of all fourteen constraints against the mutual informations.
double oracle_slack(const MutualInfoSet& m, const SubRateTuple& t) {
    double s = std::min({t.r1u, t.r1w, t.r2u, t.r2w});
    const auto side = [&](const ReceiverInfo& r, double iu, double iw, double jw) {
        s = std::min({s, r.priv - iu, r.ownpub - iw, r.crosspub - jw, r.full - iu - iw, r.mix - iu - jw,
                      r.pubs - iw - jw, r.all - iu - iw - jw});
    };
    side(m.rx1, t.r1u, t.r1w, t.r2w);
    side(m.rx2, t.r2u, t.r2w, t.r1w);
    return s;
}

}  // namespace

TEST_CASE("subrate polytope layout", "[ratesplit]") {
    const ChannelConfig ex2 = fixtures::example2().channel;
    const MutualInfoSet m = mutual_infos(ex2, simple_split(ex2));
    const SubRatePolytope p = subrate_polytope(m);
    REQUIRE(p.constraints.size() == 14);
    for (const auto& c : p.constraints) {
        CHECK(std::isfinite(c.rhs));
        for (int a : c.coef) CHECK((a == 0 || a == 1));
    }
    CHECK(p.constraints[0].coef == std::array<int, 4>{1, 0, 0, 0});
    CHECK(p.constraints[0].rhs == m.rx1.priv);
    CHECK(p.constraints[2].coef == std::array<int, 4>{0, 0, 0, 1});
    CHECK(p.constraints[13].coef == std::array<int, 4>{0, 1, 1, 1});
    CHECK(p.margin({}) >= -1e-12);
}

TEST_CASE("silenced public message", "[ratesplit]") {
    const ChannelConfig ex2 = fixtures::example2().channel;
    const SubRatePolytope p = subrate_polytope(ex2, split_no_common(ex2, User::k1));
    CHECK(p.constraints[1].rhs == Approx(0.0).margin(1e-12));
    CHECK(p.margin({0, 0.01, 0, 0}) < 0);

    const ChannelConfig zero = make_channel({1, 1, 1, 1}, CMatrix::Zero(1, 1), CMatrix::Zero(1, 1),
                                            CMatrix::Zero(1, 1), CMatrix::Zero(1, 1), {0, 0, 0, 0});
    const SubRatePolytope pz = subrate_polytope(zero, simple_split(zero));
    for (const auto& c : pz.constraints) CHECK(c.rhs == Approx(0.0).margin(1e-12));
}

TEST_CASE("solve_subrates", "[ratesplit]") {
    const ChannelConfig ex2 = fixtures::example2().channel;
    const SubRateSolution z = solve_subrates(ex2, {0, 0});
    CHECK(z.scheme == SchemeChoice::Simple);
    CHECK(z.rates.as_array() == std::array<double, 4>{0, 0, 0, 0});

    const MutualInfoSet m = mutual_infos(ex2, simple_split(ex2));
    for (const auto& v : vertices(region_ge(ex2, simple_split(ex2)))) {
        const SubRateSolution s = solve_subrates(ex2, v);
        CHECK(s.scheme == SchemeChoice::Simple);
        CHECK(s.rates.sums().r1 == Approx(v.r1).margin(1e-12));
        CHECK(s.rates.sums().r2 == Approx(v.r2).margin(1e-12));
        CHECK(oracle_slack(m, s.rates) >= -kDefaultTolerance.geom);
    }

    const HkBounds hk = hk_bounds(m);
    const RatePair a{hk.b + 0.5, 0.5};
    const SubRateSolution s = solve_subrates(ex2, a);
    CHECK(s.scheme == SchemeChoice::NoCommon1);
    CHECK(s.rates.r1w == 0.0);
    CHECK(s.rates.r1u == Approx(a.r1));
    const MutualInfoSet nc = mutual_infos(ex2, split_no_common(ex2, User::k1));
    CHECK(oracle_slack(nc, s.rates) >= -kDefaultTolerance.geom);

    CHECK_THROWS_AS(solve_subrates(ex2, {hk.a + 1, 0}), NotInR2);
}

TEST_CASE("sub-rate splits along the R2 boundary", "[ratesplit][property]") {
    const Dims shapes[] = {{1, 1, 1, 1}, {1, 2, 1, 2}, {2, 2, 2, 2}, {2, 3, 2, 2}, {3, 2, 2, 3}};
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const ChannelConfig ch = random_channel(shapes[seed % 5], {0, 40}, 500 + seed);
        for (const RatePair& p : boundary_points(region_r2(ch), 12)) {
            const SubRateSolution s = solve_subrates(ch, p);
            CHECK(std::abs(s.rates.sums().r1 - p.r1) <= kDefaultTolerance.geom);
            CHECK(std::abs(s.rates.sums().r2 - p.r2) <= kDefaultTolerance.geom);
            const MutualInfoSet m = mutual_infos(ch, split_for(ch, s.scheme));
            CHECK(oracle_slack(m, s.rates) >= -kDefaultTolerance.geom);
            if (s.scheme == SchemeChoice::NoCommon1) CHECK(s.rates.r1w == 0.0);
            if (s.scheme == SchemeChoice::NoCommon2) CHECK(s.rates.r2w == 0.0);
        }
    }
}
