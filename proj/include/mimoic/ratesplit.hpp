#pragma once

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "mimoic/geometry.hpp"
#include "mimoic/schemes.hpp"

namespace mimoic {

/// Sub-rates of the private (u) and public (w) messages.
struct SubRateTuple {
    double r1u = 0, r1w = 0, r2u = 0, r2w = 0;

    [[nodiscard]] std::array<double, 4> as_array() const { return {r1u, r1w, r2u, r2w}; }
    [[nodiscard]] RatePair sums() const { return {r1u + r1w, r2u + r2w}; }
};

/// coef . (r1u, r1w, r2u, r2w) <= rhs
struct SubRateConstraint {
    std::array<int, 4> coef{};
    double rhs = 0.0;
};

/// Seven constraints per receiver; receiver 1's come first.
struct SubRatePolytope {
    std::vector<SubRateConstraint> constraints;

    /// Slack of the tightest constraint, including nonnegativity.
    [[nodiscard]] double margin(const SubRateTuple& t) const {
        const auto x = t.as_array();
        double m = *std::min_element(x.begin(), x.end());
        for (const auto& c : constraints) {
            double lhs = 0.0;
            for (int k = 0; k < 4; ++k) lhs += c.coef[k] * x[k];
            m = std::min(m, c.rhs - lhs);
        }
        return m;
    }
};

inline SubRatePolytope subrate_polytope(const MutualInfoSet& m) {
    SubRatePolytope p;
    for (User i : {User::k1, User::k2}) {
        const ReceiverInfo& r = m.at(i);
        // positions of r_iu, r_iw, r_jw in (r1u, r1w, r2u, r2w)
        const int iu = i == User::k1 ? 0 : 2;
        const int iw = iu + 1;
        const int jw = i == User::k1 ? 3 : 1;
        const auto row = [&](std::initializer_list<int> on, double rhs) {
            SubRateConstraint c;
            for (int k : on) c.coef[k] = 1;
            c.rhs = rhs;
            p.constraints.push_back(c);
        };
        row({iu}, r.priv);
        row({iw}, r.ownpub);
        row({jw}, r.crosspub);
        row({iu, iw}, r.full);
        row({iu, jw}, r.mix);
        row({iw, jw}, r.pubs);
        row({iu, iw, jw}, r.all);
    }
    return p;
}

inline SubRatePolytope subrate_polytope(const ChannelConfig& ch, const CovarianceSplit& split,
                                        const ToleranceProfile& tol = kDefaultTolerance) {
    return subrate_polytope(mutual_infos(ch, split, tol));
}

struct SubRateSolution {
    SchemeChoice scheme = SchemeChoice::Simple;
    SubRateTuple rates;
};

/// Sub-rates for a target in R2 whose pairwise sums equal the target.
///
/// The scheme comes from select_scheme. Substituting r_iw = R_i - r_iu leaves a
/// polygon in (r1u, r2u) inside the box [0, R1] x [0, R2]; the lexicographically
/// smallest vertex is returned.
inline SubRateSolution solve_subrates(const ChannelConfig& ch, const RatePair& target,
                                      const ToleranceProfile& tol = kDefaultTolerance) {
    const HkBounds simple = hk_bounds(mutual_infos(ch, simple_split(ch, tol), tol));
    const SchemeChoice scheme = select_scheme(simple, target, tol);
    const SubRatePolytope poly = subrate_polytope(ch, split_for(ch, scheme, tol), tol);

    const double R1 = std::max(target.r1, 0.0);
    const double R2 = std::max(target.r2, 0.0);
    std::vector<detail::HalfPlane> hs{{-1, 0, 0}, {1, 0, R1}, {0, -1, 0}, {0, 1, R2}};
    for (const auto& c : poly.constraints) {
        const auto& a = c.coef;
        hs.push_back({double(a[0] - a[1]), double(a[2] - a[3]), c.rhs - a[1] * R1 - a[3] * R2});
    }
    const auto pts = detail::feasible_intersections(hs, tol.geom);
    if (pts.empty()) {
        throw InfeasibleSplit("no sub-rate split for (" + std::to_string(R1) + ", " + std::to_string(R2) + ") under " +
                              std::string(to_string(scheme)));
    }
    const RatePair best = pts.front();  // dedup output is lexicographically sorted

    const auto split_rate = [&](double total, double priv, double& u, double& w) {
        u = std::clamp(priv, 0.0, total);
        w = total - u;
        if (w < tol.eq) {
            u = total;
            w = 0.0;
        } else if (u < tol.eq) {
            u = 0.0;
            w = total;
        }
    };
    SubRateSolution sol{scheme, {}};
    split_rate(R1, best.r1, sol.rates.r1u, sol.rates.r1w);
    split_rate(R2, best.r2, sol.rates.r2u, sol.rates.r2w);
    if (poly.margin(sol.rates) < -tol.geom) {
        throw InfeasibleSplit("sub-rate split violates its polytope by " + std::to_string(-poly.margin(sol.rates)));
    }
    return sol;
}

}  // namespace mimoic
