#pragma once

#include <array>
#include <string>
#include <string_view>

#include "mimoic/bounds.hpp"
#include "mimoic/channel.hpp"
#include "mimoic/geometry.hpp"

namespace mimoic {

/// Private (u) and public (w) transmit covariances of both users.
struct CovarianceSplit {
    HermitianMatrix k1u, k1w, k2u, k2w;

    [[nodiscard]] const HermitianMatrix& u(User i) const { return i == User::k1 ? k1u : k2u; }
    [[nodiscard]] const HermitianMatrix& w(User i) const { return i == User::k1 ? k1w : k2w; }

    void validate(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) const {
        for (User i : {User::k1, User::k2}) {
            const int m = ch.dims.tx(i);
            if (u(i).dim() != m || w(i).dim() != m) {
                throw DimensionMismatch("split covariances of user " + std::to_string(int(i)) + " must be " +
                                        std::to_string(m) + "x" + std::to_string(m));
            }
            if (!is_psd(u(i), tol) || !is_psd(w(i), tol)) throw PSDViolation("split covariance is not PSD");
            if ((u(i) + w(i)).trace() > 1.0 + tol.eq) throw PSDViolation("split exceeds the power budget");
        }
    }
};

/// K_iu = K_i / M_i, K_iw = (I - K_i) / M_i.
inline CovarianceSplit simple_split(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) {
    const auto part = [&](User i) {
        const HermitianMatrix k = k_matrix(ch, i, tol);
        const double scale = 1.0 / ch.dims.tx(i);
        return std::pair{scale * k, scale * (HermitianMatrix::identity(k.dim()) - k)};
    };
    auto [k1u, k1w] = part(User::k1);
    auto [k2u, k2w] = part(User::k2);
    return {k1u, k1w, k2u, k2w};
}

/// User i puts all power on its private message; the other user keeps the simple split.
inline CovarianceSplit split_no_common(const ChannelConfig& ch, User i,
                                       const ToleranceProfile& tol = kDefaultTolerance) {
    CovarianceSplit s = simple_split(ch, tol);
    const int m = ch.dims.tx(i);
    HermitianMatrix& ku = i == User::k1 ? s.k1u : s.k2u;
    HermitianMatrix& kw = i == User::k1 ? s.k1w : s.k2w;
    ku = (1.0 / m) * HermitianMatrix::identity(m);
    kw = HermitianMatrix::zero(m);
    return s;
}

/// Mutual-information terms seen at one receiver i (j the other user).
struct ReceiverInfo {
    double priv = 0;      // I(X_i; Y_i | W_i, W_j)
    double ownpub = 0;    // I(W_i; Y_i | U_i, W_j)
    double crosspub = 0;  // I(W_j; Y_i | X_i)
    double full = 0;      // I(X_i; Y_i | W_j)
    double mix = 0;       // I(X_i, W_j; Y_i | W_i)
    double pubs = 0;      // I(W_i, W_j; Y_i | U_i)
    double all = 0;       // I(X_i, W_j; Y_i)
};

struct MutualInfoSet {
    ReceiverInfo rx1, rx2;
    double tau12 = 0;  // private interference of user 1 at receiver 2
    double tau21 = 0;  // private interference of user 2 at receiver 1

    [[nodiscard]] const ReceiverInfo& at(User rx) const { return rx == User::k1 ? rx1 : rx2; }
    [[nodiscard]] double tau_into(User rx) const { return rx == User::k1 ? tau21 : tau12; }
};

namespace detail {

inline ReceiverInfo receiver_info(const ChannelConfig& ch, const CovarianceSplit& s, User i, double& tau,
                                  const ToleranceProfile& tol) {
    const User j = other(i);
    const CMatrix& hii = ch.link(i, i);
    const CMatrix& hji = ch.link(j, i);
    const double rii = ch.snr(i, i);
    const double rji = ch.snr(j, i);
    const int n = ch.dims.rx(i);
    const HermitianMatrix ident = HermitianMatrix::identity(n);

    const HermitianMatrix own_u = rii * sandwich(hii, s.u(i));
    const HermitianMatrix own_w = rii * sandwich(hii, s.w(i));
    const HermitianMatrix own_x = rii * sandwich(hii, s.u(i) + s.w(i));
    const HermitianMatrix int_u = rji * sandwich(hji, s.u(j));
    const HermitianMatrix int_x = rji * sandwich(hji, s.u(j) + s.w(j));
    const auto ld = [&](const HermitianMatrix& a) { return logdet2(ident + a, tol); };

    tau = ld(int_u);
    ReceiverInfo r;
    r.priv = ld(own_u + int_u) - tau;
    r.ownpub = ld(own_w + int_u) - tau;
    r.crosspub = ld(int_x) - tau;
    r.full = ld(own_x + int_u) - tau;
    r.mix = ld(int_x + own_u) - tau;
    r.pubs = ld(int_x + own_w) - tau;
    r.all = ld(int_x + own_x) - tau;
    return r;
}

}  // namespace detail

inline MutualInfoSet mutual_infos(const ChannelConfig& ch, const CovarianceSplit& split,
                                  const ToleranceProfile& tol = kDefaultTolerance) {
    ch.validate();
    split.validate(ch, tol);
    MutualInfoSet m;
    m.rx1 = detail::receiver_info(ch, split, User::k1, m.tau21, tol);
    m.rx2 = detail::receiver_info(ch, split, User::k2, m.tau12, tol);
    return m;
}

/// Right-hand sides of the nine HK constraints, labelled (a)..(i):
/// R1 <= a, b; R2 <= c, d; R1+R2 <= e, f, g; 2R1+R2 <= h; R1+2R2 <= i.
struct HkBounds {
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, g = 0, h = 0, i = 0;
};

inline HkBounds hk_bounds(const MutualInfoSet& m) {
    const ReceiverInfo& x = m.rx1;
    const ReceiverInfo& y = m.rx2;
    HkBounds k;
    k.a = x.full;
    k.b = x.priv + y.crosspub;
    k.c = y.full;
    k.d = y.priv + x.crosspub;
    k.e = y.all + x.priv;
    k.f = x.all + y.priv;
    k.g = x.mix + y.mix;
    k.h = x.all + x.priv + y.mix;
    k.i = y.all + y.priv + x.mix;
    return k;
}

inline RateRegion2D region_ge(const ChannelConfig& ch, const CovarianceSplit& split,
                              const ToleranceProfile& tol = kDefaultTolerance) {
    const HkBounds k = hk_bounds(mutual_infos(ch, split, tol));
    RateRegion2D r;
    r.add(1, 0, k.a, tol).add(1, 0, k.b, tol).add(0, 1, k.c, tol).add(0, 1, k.d, tol);
    r.add(1, 1, k.e, tol).add(1, 1, k.f, tol).add(1, 1, k.g, tol).add(2, 1, k.h, tol).add(1, 2, k.i, tol);
    return r;
}

/// HK region of the simple split without constraints (b) and (d).
inline RateRegion2D region_r2(const HkBounds& k, const ToleranceProfile& tol = kDefaultTolerance) {
    RateRegion2D r;
    r.add(1, 0, k.a, tol).add(0, 1, k.c, tol);
    r.add(1, 1, k.e, tol).add(1, 1, k.f, tol).add(1, 1, k.g, tol).add(2, 1, k.h, tol).add(1, 2, k.i, tol);
    return r;
}

inline RateRegion2D region_r2(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) {
    return region_r2(hk_bounds(mutual_infos(ch, simple_split(ch, tol), tol)), tol);
}

/// Outer-bound constraints reduced by the per-user constants g1, g2, each clipped at 0.
inline RateRegion2D shifted_outer_region(const RateBoundSet& b, double g1, double g2,
                                         const ToleranceProfile& tol = kDefaultTolerance) {
    const auto pos = [](double x) { return std::max(x, 0.0); };
    RateRegion2D r;
    r.add(1, 0, pos(b.b1 - g1), tol).add(0, 1, pos(b.b2 - g2), tol);
    r.add(1, 1, pos(b.b3 - g1 - g2), tol).add(1, 1, pos(b.b4 - g1 - g2), tol).add(1, 1, pos(b.b5 - g1 - g2), tol);
    r.add(2, 1, pos(b.b6 - 2 * g1 - g2), tol).add(1, 2, pos(b.b7 - g1 - 2 * g2), tol);
    return r;
}

inline RateRegion2D region_ra(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) {
    const GapConstants g = gap_constants(ch);
    return shifted_outer_region(outer_bound(ch, tol), g.n1, g.n2, tol);
}

inline RateRegion2D region_ra_star(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) {
    const GapConstants g = gap_constants(ch);
    return shifted_outer_region(outer_bound(ch, tol), g.n1_star, g.n2_star, tol);
}

enum class SchemeChoice { Simple, NoCommon1, NoCommon2 };

inline std::string_view to_string(SchemeChoice s) {
    switch (s) {
        case SchemeChoice::Simple: return "Simple";
        case SchemeChoice::NoCommon1: return "NoCommon1";
        case SchemeChoice::NoCommon2: return "NoCommon2";
    }
    return "?";
}

inline CovarianceSplit split_for(const ChannelConfig& ch, SchemeChoice s,
                                 const ToleranceProfile& tol = kDefaultTolerance) {
    switch (s) {
        case SchemeChoice::NoCommon1: return split_no_common(ch, User::k1, tol);
        case SchemeChoice::NoCommon2: return split_no_common(ch, User::k2, tol);
        case SchemeChoice::Simple: break;
    }
    return simple_split(ch, tol);
}

/// Which of constraints (b) and (d) a target violates by more than tol.geom.
struct CommonViolations {
    bool b = false;
    bool d = false;
};

inline CommonViolations common_violations(const HkBounds& k, const RatePair& t,
                                          const ToleranceProfile& tol = kDefaultTolerance) {
    return {t.r1 > k.b + tol.geom, t.r2 > k.d + tol.geom};
}

inline SchemeChoice select_scheme(const HkBounds& simple, const RatePair& target,
                                  const ToleranceProfile& tol = kDefaultTolerance) {
    if (!contains(region_r2(simple, tol), target, tol)) {
        throw NotInR2("target (" + std::to_string(target.r1) + ", " + std::to_string(target.r2) +
                      ") is outside R2");
    }
    const CommonViolations v = common_violations(simple, target, tol);
    if (v.b) return SchemeChoice::NoCommon1;
    if (v.d) return SchemeChoice::NoCommon2;
    return SchemeChoice::Simple;
}

inline SchemeChoice select_scheme(const ChannelConfig& ch, const RatePair& target,
                                  const ToleranceProfile& tol = kDefaultTolerance) {
    return select_scheme(hk_bounds(mutual_infos(ch, simple_split(ch, tol), tol)), target, tol);
}

/// Component regions whose time-sharing hull is compared against R2.
inline std::vector<RateRegion2D> component_regions(const ChannelConfig& ch,
                                                   const ToleranceProfile& tol = kDefaultTolerance) {
    return {region_ge(ch, simple_split(ch, tol), tol), region_ge(ch, split_no_common(ch, User::k1, tol), tol),
            region_ge(ch, split_no_common(ch, User::k2, tol), tol)};
}

}  // namespace mimoic
