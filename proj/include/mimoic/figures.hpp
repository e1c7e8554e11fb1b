#pragma once

// Curve data for the example figures: one named vertex list per curve.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mimoic/bounds.hpp"
#include "mimoic/fixtures.hpp"
#include "mimoic/geometry.hpp"
#include "mimoic/schemes.hpp"
#include "mimoic/verify.hpp"

namespace mimoic::figures {

struct Curve {
    std::string name;
    std::vector<RatePair> points;
};

/// SISO split that puts the private power of user i at the noise floor of the
/// other receiver: K_iu = min(1, 1 / (rho_ij |H_ij|^2)).
inline CovarianceSplit siso_noise_floor_split(const ChannelConfig& ch) {
    if (!(ch.dims == Dims{1, 1, 1, 1})) throw DimensionMismatch("noise-floor split needs a SISO channel");
    const auto part = [&](User i) {
        const double inr = ch.snr(i, other(i)) * std::norm(ch.link(i, other(i))(0, 0));
        const double u = inr > 1.0 ? 1.0 / inr : 1.0;
        CMatrix ku(1, 1), kw(1, 1);
        ku(0, 0) = u;
        kw(0, 0) = 1.0 - u;
        return std::pair{HermitianMatrix(ku), HermitianMatrix(kw)};
    };
    auto [k1u, k1w] = part(User::k1);
    auto [k2u, k2w] = part(User::k2);
    return {k1u, k1w, k2u, k2w};
}

/// Outer region with its (2,1) face replaced by `b21`.
inline RateRegion2D with_21_bound(const RateBoundSet& b, double b21) {
    RateRegion2D r;
    r.add(1, 0, b.b1).add(0, 1, b.b2).add(1, 1, b.sum_rate()).add(2, 1, b21).add(1, 2, b.b7);
    return r;
}

/// Example 1: the outer region, the noise-floor HK region, the region cut by
/// the competing (2R1+R2) value, and a point S achievable yet outside that cut.
inline std::vector<Curve> figure2() {
    const ChannelConfig ch = fixtures::example1().channel;
    const RateBoundSet b = outer_bound(ch);
    const AocBounds ab = aoc_bounds(fixtures::example1_siso());
    const RateRegion2D etw = region_ge(ch, siso_noise_floor_split(ch));
    const RateRegion2D cut = with_21_bound(b, ab.b_aoc);

    std::vector<RatePair> s;
    double best = -1.0;
    for (const auto& v : vertices(etw)) {
        const double score = 2 * v.r1 + v.r2;
        if (!contains(cut, v) && score > best) {
            best = score;
            s = {v};
        }
    }
    return {{"fig2_outer", vertices(outer_region(b))},
            {"fig2_etw_region", vertices(etw)},
            {"fig2_aoc_region", vertices(cut)},
            {"fig2_point_s", s}};
}

inline std::vector<Curve> figure3() {
    const ChannelConfig ch = fixtures::example2().channel;
    return {{"fig3_outer", vertices(outer_region(ch))}, {"fig3_ge_simple", vertices(region_ge(ch, simple_split(ch)))}};
}

/// Point A: a vertex of the no-common-1 region that lies in R2 but violates (b).
inline std::vector<Curve> figure4() {
    const ChannelConfig ch = fixtures::example2().channel;
    const HkBounds hk = hk_bounds(mutual_infos(ch, simple_split(ch)));
    const RateRegion2D r2 = region_r2(hk);
    const RateRegion2D nc1 = region_ge(ch, split_no_common(ch, User::k1));
    std::vector<RatePair> a;
    for (const auto& v : vertices(nc1)) {
        if (contains(r2, v) && common_violations(hk, v).b && (a.empty() || v.r2 > a[0].r2)) a = {v};
    }
    return {{"fig4_ge_simple", vertices(region_ge(ch, simple_split(ch)))},
            {"fig4_ge_nocommon1", vertices(nc1)},
            {"fig4_r2", vertices(r2)},
            {"fig4_point_a", a}};
}

/// Component regions, their time-sharing hull, R2, and a component vertex outside R2.
inline std::vector<Curve> figure6() {
    const ChannelConfig ch = fixtures::example2().channel;
    const auto parts = component_regions(ch);
    const RateRegion2D r2 = region_r2(ch);
    std::vector<RatePair> a;
    for (std::size_t k = 1; k < parts.size() && a.empty(); ++k) {
        for (const auto& v : vertices(parts[k])) {
            if (!contains(r2, v)) {
                a = {v};
                break;
            }
        }
    }
    return {{"fig6a_ge_simple", vertices(parts[0])},
            {"fig6a_ge_nocommon1", vertices(parts[1])},
            {"fig6a_ge_nocommon2", vertices(parts[2])},
            {"fig6b_r2", vertices(r2)},
            {"fig6b_ts_hull", hull_union(parts)},
            {"fig6b_point_a", a}};
}

inline std::vector<Curve> all() {
    std::vector<Curve> out;
    for (auto&& part : {figure2(), figure3(), figure4(), figure6()}) out.insert(out.end(), part.begin(), part.end());
    return out;
}

}  // namespace mimoic::figures
