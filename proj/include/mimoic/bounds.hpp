#pragma once

#include <algorithm>
#include <array>

#include "mimoic/channel.hpp"
#include "mimoic/geometry.hpp"

namespace mimoic {

/// b1, b2 bound R1, R2; b3, b4, b5 bound R1+R2; b6 bounds 2R1+R2; b7 bounds R1+2R2.
struct RateBoundSet {
    double b1 = 0, b2 = 0, b3 = 0, b4 = 0, b5 = 0, b6 = 0, b7 = 0;

    [[nodiscard]] std::array<double, 7> as_array() const { return {b1, b2, b3, b4, b5, b6, b7}; }
    [[nodiscard]] double sum_rate() const { return std::min({b3, b4, b5}); }
};

namespace detail {

/// log2 det(I + sum of rho * H K H^H); K = identity when omitted.
struct Term {
    double rho;
    const CMatrix* h;
    const HermitianMatrix* k = nullptr;
};

inline double ld_terms(int dim, std::initializer_list<Term> terms, const ToleranceProfile& tol) {
    HermitianMatrix acc = HermitianMatrix::identity(dim);
    for (const auto& t : terms) {
        acc += t.rho * (t.k ? sandwich(*t.h, *t.k) : outer_gram(*t.h));
    }
    return logdet2(acc, tol);
}

}  // namespace detail

inline RateBoundSet outer_bound(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) {
    ch.validate();
    const auto& [r11, r12, r21, r22] = ch.rho;
    const HermitianMatrix k1 = k_matrix(ch, User::k1, tol);
    const HermitianMatrix k2 = k_matrix(ch, User::k2, tol);
    const int n1 = ch.dims.n1;
    const int n2 = ch.dims.n2;
    using detail::ld_terms;

    // receiver-side pieces shared by several bounds
    const double rx1_full = ld_terms(n1, {{r21, &ch.h21}, {r11, &ch.h11}}, tol);
    const double rx2_full = ld_terms(n2, {{r12, &ch.h12}, {r22, &ch.h22}}, tol);
    const double rx1_own_k = ld_terms(n1, {{r11, &ch.h11, &k1}}, tol);
    const double rx2_own_k = ld_terms(n2, {{r22, &ch.h22, &k2}}, tol);
    const double rx1_mix = ld_terms(n1, {{r21, &ch.h21}, {r11, &ch.h11, &k1}}, tol);
    const double rx2_mix = ld_terms(n2, {{r12, &ch.h12}, {r22, &ch.h22, &k2}}, tol);

    RateBoundSet b;
    b.b1 = ld_terms(n1, {{r11, &ch.h11}}, tol);
    b.b2 = ld_terms(n2, {{r22, &ch.h22}}, tol);
    b.b3 = rx2_full + rx1_own_k;
    b.b4 = rx1_full + rx2_own_k;
    b.b5 = rx1_mix + rx2_mix;
    b.b6 = rx1_full + rx1_own_k + rx2_mix;
    b.b7 = rx2_full + rx2_own_k + rx1_mix;
    return b;
}

inline RateRegion2D outer_region(const RateBoundSet& b, const ToleranceProfile& tol = kDefaultTolerance) {
    RateRegion2D r;
    r.add(1, 0, b.b1, tol).add(0, 1, b.b2, tol).add(1, 1, b.sum_rate(), tol).add(2, 1, b.b6, tol).add(1, 2, b.b7, tol);
    return r;
}

inline RateRegion2D outer_region(const ChannelConfig& ch, const ToleranceProfile& tol = kDefaultTolerance) {
    return outer_region(outer_bound(ch, tol), tol);
}

}  // namespace mimoic
