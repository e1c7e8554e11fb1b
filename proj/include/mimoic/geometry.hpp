#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "mimoic/matrix.hpp"

namespace mimoic {

struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;

    friend bool operator==(const RatePair&, const RatePair&) = default;
};

/// a1*R1 + a2*R2 <= rhs
struct RateConstraint {
    int a1 = 0;
    int a2 = 0;
    double rhs = 0.0;
};

/// Downward-closed convex polygon in the nonnegative quadrant, described by
/// constraints with coefficient pairs (1,0), (0,1), (1,1), (2,1) or (1,2).
class RateRegion2D {
public:
    RateRegion2D() = default;

    /// Adds a constraint. rhs values in [-tol.geom, 0) are clamped to 0.
    RateRegion2D& add(int a1, int a2, double rhs, const ToleranceProfile& tol = kDefaultTolerance) {
        if (!allowed(a1, a2)) {
            throw PreconditionViolation("coefficient pair (" + std::to_string(a1) + "," + std::to_string(a2) +
                                        ") is not allowed");
        }
        if (!std::isfinite(rhs)) throw PreconditionViolation("constraint rhs must be finite");
        if (rhs < 0.0) {
            if (rhs < -tol.geom) throw PreconditionViolation("constraint rhs " + std::to_string(rhs) + " < 0");
            rhs = 0.0;
        }
        constraints_.push_back({a1, a2, rhs});
        return *this;
    }

    [[nodiscard]] const std::vector<RateConstraint>& constraints() const { return constraints_; }

    /// Tightest rhs among constraints with the given coefficients, if any.
    [[nodiscard]] std::optional<double> bound(int a1, int a2) const {
        std::optional<double> best;
        for (const auto& c : constraints_) {
            if (c.a1 == a1 && c.a2 == a2) best = best ? std::min(*best, c.rhs) : c.rhs;
        }
        return best;
    }

    static bool allowed(int a1, int a2) {
        return (a1 == 1 && a2 == 0) || (a1 == 0 && a2 == 1) || (a1 == 1 && a2 == 1) || (a1 == 2 && a2 == 1) ||
               (a1 == 1 && a2 == 2);
    }

private:
    std::vector<RateConstraint> constraints_;
};

namespace detail {

/// a*x + b*y <= c with arbitrary real coefficients.
struct HalfPlane {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

inline bool satisfies(const std::vector<HalfPlane>& hs, double x, double y, double slack) {
    return std::all_of(hs.begin(), hs.end(), [&](const HalfPlane& h) { return h.a * x + h.b * y <= h.c + slack; });
}

/// Sorts lexicographically and drops points within `tol` (max-norm) of an
/// earlier kept point, so the lexicographically smallest representative wins.
inline std::vector<RatePair> dedup(std::vector<RatePair> pts, double tol) {
    std::sort(pts.begin(), pts.end(),
              [](const RatePair& p, const RatePair& q) { return p.r1 < q.r1 || (p.r1 == q.r1 && p.r2 < q.r2); });
    std::vector<RatePair> out;
    for (const auto& p : pts) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const RatePair& q) {
            return std::abs(p.r1 - q.r1) <= tol && std::abs(p.r2 - q.r2) <= tol;
        });
        if (!dup) out.push_back(p);
    }
    return out;
}

/// Feasible pairwise intersections of the half-plane boundaries, deduplicated.
inline std::vector<RatePair> feasible_intersections(const std::vector<HalfPlane>& hs, double tol) {
    std::vector<RatePair> pts;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            const double det = hs[i].a * hs[j].b - hs[j].a * hs[i].b;
            if (std::abs(det) < 1e-14) continue;
            const double x = (hs[i].c * hs[j].b - hs[j].c * hs[i].b) / det;
            const double y = (hs[i].a * hs[j].c - hs[j].a * hs[i].c) / det;
            if (satisfies(hs, x, y, tol)) pts.push_back({x, y});
        }
    }
    return dedup(std::move(pts), tol);
}

inline double cross(const RatePair& o, const RatePair& a, const RatePair& b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

/// Monotone chain, counterclockwise from the lexicographically smallest point.
/// Turns flatter than `sin_tol` are treated as collinear and dropped.
inline std::vector<RatePair> convex_hull(std::vector<RatePair> pts, double sin_tol) {
    std::sort(pts.begin(), pts.end(),
              [](const RatePair& p, const RatePair& q) { return p.r1 < q.r1 || (p.r1 == q.r1 && p.r2 < q.r2); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    const auto left_turn = [&](const RatePair& o, const RatePair& a, const RatePair& b) {
        const double la = std::hypot(a.r1 - o.r1, a.r2 - o.r2);
        const double lb = std::hypot(b.r1 - o.r1, b.r2 - o.r2);
        return cross(o, a, b) > sin_tol * la * lb;
    };
    std::vector<RatePair> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && !left_turn(h[k - 2], h[k - 1], p)) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && !left_turn(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

inline std::vector<HalfPlane> half_planes(const RateRegion2D& region) {
    std::vector<HalfPlane> hs{{-1.0, 0.0, 0.0}, {0.0, -1.0, 0.0}};
    for (const auto& c : region.constraints()) hs.push_back({double(c.a1), double(c.a2), c.rhs});
    return hs;
}

}  // namespace detail

/// Slack of the tightest constraint at p (negative when p is outside).
inline double region_margin(const RateRegion2D& region, const RatePair& p) {
    double m = std::min(p.r1, p.r2);
    for (const auto& c : region.constraints()) m = std::min(m, c.rhs - (c.a1 * p.r1 + c.a2 * p.r2));
    return m;
}

inline bool contains(const RateRegion2D& region, const RatePair& p, const ToleranceProfile& tol = kDefaultTolerance) {
    return region_margin(region, p) >= -tol.geom;
}

/// Extreme points: (0, max R2) first, then along the Pareto boundary with
/// increasing R1 to (max R1, 0), then the origin.
inline std::vector<RatePair> vertices(const RateRegion2D& region, const ToleranceProfile& tol = kDefaultTolerance) {
    auto pts = detail::feasible_intersections(detail::half_planes(region), tol.geom);
    for (auto& p : pts) {
        p.r1 = std::max(p.r1, 0.0);
        p.r2 = std::max(p.r2, 0.0);
    }
    pts.push_back({0.0, 0.0});
    auto hull = detail::convex_hull(detail::dedup(std::move(pts), tol.geom), tol.eq);
    std::vector<RatePair> out;
    for (const auto& p : hull) {
        if (p.r1 > tol.geom || p.r2 > tol.geom) out.push_back(p);
    }
    std::sort(out.begin(), out.end(),
              [](const RatePair& p, const RatePair& q) { return p.r1 < q.r1 || (p.r1 == q.r1 && p.r2 > q.r2); });
    out.push_back({0.0, 0.0});
    return out;
}

/// True iff every vertex of `inner` lies in `outer`.
inline bool region_subset(const RateRegion2D& inner, const RateRegion2D& outer,
                          const ToleranceProfile& tol = kDefaultTolerance) {
    const auto vs = vertices(inner, tol);
    return std::all_of(vs.begin(), vs.end(), [&](const RatePair& v) { return contains(outer, v, tol); });
}

/// Worst margin of `inner` over the outer vertices shifted down by (g1, g2) and clipped at 0.
inline double gap_margin(const RateRegion2D& outer, const RateRegion2D& inner, double g1, double g2,
                         const ToleranceProfile& tol = kDefaultTolerance) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices(outer, tol)) {
        const RatePair s{std::max(v.r1 - g1, 0.0), std::max(v.r2 - g2, 0.0)};
        worst = std::min(worst, region_margin(inner, s));
    }
    return worst;
}

/// Shifting every vertex of `outer` by (g1, g2), clipped at 0, lands in `inner`.
/// Vertices suffice: the shift is coordinatewise convex and `inner` is convex and
/// downward-closed.
inline bool gap_certified(const RateRegion2D& outer, const RateRegion2D& inner, double g1, double g2,
                          const ToleranceProfile& tol = kDefaultTolerance) {
    return gap_margin(outer, inner, g1, g2, tol) >= -tol.geom;
}

/// Counterclockwise convex hull of all vertices of all regions, starting at the origin.
inline std::vector<RatePair> hull_union(const std::vector<RateRegion2D>& regions,
                                        const ToleranceProfile& tol = kDefaultTolerance) {
    if (regions.empty()) throw PreconditionViolation("hull_union needs at least one region");
    std::vector<RatePair> pts;
    for (const auto& r : regions) {
        const auto vs = vertices(r, tol);
        pts.insert(pts.end(), vs.begin(), vs.end());
    }
    return detail::convex_hull(detail::dedup(std::move(pts), tol.geom), tol.eq);
}

/// Membership in a counterclockwise convex polygon, with distance slack tol.geom.
inline bool hull_contains(const std::vector<RatePair>& hull, const RatePair& p,
                          const ToleranceProfile& tol = kDefaultTolerance) {
    if (hull.empty()) return false;
    if (hull.size() == 1) {
        return std::abs(p.r1 - hull[0].r1) <= tol.geom && std::abs(p.r2 - hull[0].r2) <= tol.geom;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const RatePair& a = hull[i];
        const RatePair& b = hull[(i + 1) % hull.size()];
        const double len = std::hypot(b.r1 - a.r1, b.r2 - a.r2);
        if (len == 0.0) continue;
        if (detail::cross(a, b, p) / len < -tol.geom) return false;
    }
    return true;
}

/// `count` points spread by arc length along the Pareto boundary from
/// (0, max R2) to (max R1, 0), both ends included.
inline std::vector<RatePair> boundary_points(const RateRegion2D& region, int count,
                                             const ToleranceProfile& tol = kDefaultTolerance) {
    auto vs = vertices(region, tol);
    vs.pop_back();
    if (vs.empty() || count <= 0) return std::vector<RatePair>(std::max(count, 0), RatePair{});
    if (vs.size() == 1 || count == 1) return std::vector<RatePair>(count, vs.front());
    std::vector<double> cum{0.0};
    for (std::size_t i = 1; i < vs.size(); ++i) {
        cum.push_back(cum.back() + std::hypot(vs[i].r1 - vs[i - 1].r1, vs[i].r2 - vs[i - 1].r2));
    }
    std::vector<RatePair> out;
    for (int k = 0; k < count; ++k) {
        const double s = cum.back() * k / (count - 1);
        std::size_t i = 1;
        while (i + 1 < vs.size() && cum[i] < s) ++i;
        const double seg = cum[i] - cum[i - 1];
        const double t = seg > 0.0 ? std::clamp((s - cum[i - 1]) / seg, 0.0, 1.0) : 0.0;
        out.push_back({vs[i - 1].r1 + t * (vs[i].r1 - vs[i - 1].r1), vs[i - 1].r2 + t * (vs[i].r2 - vs[i - 1].r2)});
    }
    return out;
}

/// CSV with header `R1,R2`, six decimals, LF line endings. Coordinates are
/// truncated toward zero so emitted points stay inside downward-closed regions.
inline void write_csv(std::ostream& os, const std::vector<RatePair>& pts) {
    const auto trunc6 = [](double x) { return x <= 0.0 ? 0.0 : std::floor(x * 1e6 + 1e-7) / 1e6; };
    os << "R1,R2\n";
    char buf[96];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f\n", trunc6(p.r1), trunc6(p.r2));
        os << buf;
    }
}

/// Inverse of write_csv.
inline std::vector<RatePair> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "R1,R2") throw ParseError("CSV must start with the header R1,R2");
    std::vector<RatePair> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("CSV row without a comma: " + line);
        try {
            out.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::exception&) {
            throw ParseError("CSV row is not numeric: " + line);
        }
    }
    return out;
}

}  // namespace mimoic
