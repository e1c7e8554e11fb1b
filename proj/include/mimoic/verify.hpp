#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mimoic/bounds.hpp"
#include "mimoic/channel.hpp"
#include "mimoic/geometry.hpp"
#include "mimoic/ratesplit.hpp"
#include "mimoic/schemes.hpp"

namespace mimoic {

/// Linear-scale SISO parameters: snr_i of the direct links, inr_i the
/// interference power seen at receiver i.
struct SisoParams {
    double snr1 = 0, snr2 = 0, inr1 = 0, inr2 = 0;
};

struct AocBounds {
    double b_aoc = 0;
    double b_etw = 0;
};

/// The two competing (2R1+R2) expressions for a weak SISO IC.
inline AocBounds aoc_bounds(const SisoParams& p) {
    for (double v : {p.snr1, p.snr2, p.inr1, p.inr2}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw PreconditionViolation("SISO parameters must be finite and >= 0");
    }
    if (p.inr1 < 1e-12 || p.inr2 < 1e-12) throw NotWeakIC("interference power below 1e-12");
    if (!(p.inr1 < p.snr2 && p.inr2 < p.snr1)) throw NotWeakIC("need inr1 < snr2 and inr2 < snr1");
    AocBounds b;
    const double head = std::log2(1 + p.snr1 + p.inr1);
    b.b_aoc = head + std::log2(1 + p.snr1 / (1 + p.inr2)) + std::log2(1 + p.inr1 + p.snr2 / (1 + p.inr2));
    b.b_etw = head + std::log2(2 + p.snr1 / p.inr2) + std::log2(1 + p.inr2 + p.snr2 / p.inr1) - 3.0;
    return b;
}

namespace detail {

inline void require_unit_psd(const HermitianMatrix& q, int dim, const ToleranceProfile& tol, const char* name) {
    if (q.dim() != dim) throw DimensionMismatch(std::string(name) + " has the wrong dimension");
    if (!is_psd(q, tol) || !psd_leq(q, HermitianMatrix::identity(dim), tol)) {
        throw PSDViolation(std::string(name) + " must satisfy 0 <= Q <= I");
    }
}

}  // namespace detail

/// Gaussian h(Y1 | S1) with S1 the receiver-2 view of user 1 alone, compared
/// against log det(I + rho21 H21 H21^H + rho11 H11 K1 H11^H). Returns bound - value.
inline double check_cond_entropy_bound(const ChannelConfig& ch, const HermitianMatrix& q1, const HermitianMatrix& q2,
                                       const ToleranceProfile& tol = kDefaultTolerance) {
    ch.validate();
    detail::require_unit_psd(q1, ch.dims.m1, tol, "Q1");
    detail::require_unit_psd(q2, ch.dims.m2, tol, "Q2");
    const auto& [r11, r12, r21, r22] = ch.rho;
    (void)r22;
    const int n1 = ch.dims.n1;
    const int n2 = ch.dims.n2;

    const CMatrix s_cov = (r12 * sandwich(ch.h12, q1)).matrix() + CMatrix::Identity(n2, n2);
    const CMatrix y_cov =
        (r11 * sandwich(ch.h11, q1) + r21 * sandwich(ch.h21, q2)).matrix() + CMatrix::Identity(n1, n1);
    const CMatrix cross = std::sqrt(r12 * r11) * ch.h12 * q1.matrix() * ch.h11.adjoint();
    CMatrix joint(n2 + n1, n2 + n1);
    joint.topLeftCorner(n2, n2) = s_cov;
    joint.topRightCorner(n2, n1) = cross;
    joint.bottomLeftCorner(n1, n2) = cross.adjoint();
    joint.bottomRightCorner(n1, n1) = y_cov;

    const double value = logdet2(HermitianMatrix::hermitized(joint), tol) - logdet2(HermitianMatrix::hermitized(s_cov), tol);
    const HermitianMatrix k1 = k_matrix(ch, User::k1, tol);
    const double bound =
        logdet2(eye_plus(r21 * outer_gram(ch.h21) + r11 * sandwich(ch.h11, k1)), tol);
    return bound - value;
}

/// Smallest eigenvalue of G2 (I + pi G2 A G2)^{-1} G2 - G1 (I + pi G1 A G1)^{-1} G1.
inline double check_order_lemma(const HermitianMatrix& g1, const HermitianMatrix& g2, const HermitianMatrix& a,
                                double pi, const ToleranceProfile& tol = kDefaultTolerance) {
    if (g1.dim() != g2.dim() || g1.dim() != a.dim()) throw DimensionMismatch("order lemma operands differ in size");
    if (!(pi >= 0.0) || !std::isfinite(pi)) throw PreconditionViolation("pi must be finite and >= 0");
    if (!is_psd(g1, tol) || !psd_leq(g1, g2, tol)) throw PreconditionViolation("need 0 <= G1 <= G2");
    if (!is_psd(a, tol)) throw PreconditionViolation("A must be PSD");
    const auto term = [&](const HermitianMatrix& g) {
        const HermitianMatrix inner = inv_hpd(eye_plus(pi * sandwich(g.matrix(), a)), tol);
        return sandwich(g.matrix(), inner);
    };
    return min_eigenvalue(term(g2) - term(g1));
}

/// X X^H / ||X X^H||_2 * u with X complex Gaussian and u ~ U(0, 1].
inline HermitianMatrix random_psd(int dim, std::mt19937_64& gen) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    CMatrix x(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const double re = normal(gen);
            const double im = normal(gen);
            x(r, c) = Complex(re, im) / std::sqrt(2.0);
        }
    }
    const HermitianMatrix g = outer_gram(x);
    const double top = eigenvalues(g)(dim - 1);
    const double u = 1.0 - uniform(gen);
    return top > 0.0 ? (u / top) * g : HermitianMatrix::zero(dim);
}

struct TrialFailure {
    std::uint64_t seed = 0;
    std::string detail;
};

struct VerificationReport {
    std::string name;
    int trials = 0;
    std::vector<TrialFailure> failures;
    double worst_margin = std::numeric_limits<double>::infinity();
    /// Named counters and extra margins, e.g. per-check failure counts.
    std::map<std::string, double> stats;

    [[nodiscard]] bool passed() const { return failures.empty(); }

    void merge(const VerificationReport& other) {
        trials += other.trials;
        failures.insert(failures.end(), other.failures.begin(), other.failures.end());
        worst_margin = std::min(worst_margin, other.worst_margin);
        for (const auto& [k, v] : other.stats) stats[k] += v;
    }
};

/// Runs body(trial_index, trial_seed, report) for every trial on a pool of
/// threads, then merges the per-trial reports in trial order.
template <class Body>
VerificationReport run_trials(const std::string& name, int trials, std::uint64_t seed, Body body,
                              unsigned threads = 0) {
    std::mt19937_64 seeder(seed);
    std::vector<std::uint64_t> seeds(std::max(trials, 0));
    for (auto& s : seeds) s = seeder();
    std::vector<VerificationReport> parts(seeds.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(seeds.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t t = w; t < seeds.size(); t += threads) {
                    parts[t].trials = 1;
                    try {
                        body(static_cast<int>(t), seeds[t], parts[t]);
                    } catch (const std::exception& e) {
                        parts[t].failures.push_back({seeds[t], std::string("exception: ") + e.what()});
                    }
                }
            });
        }
    }
    VerificationReport out;
    out.name = name;
    for (const auto& p : parts) out.merge(p);
    return out;
}

struct CertifyOptions {
    DbRange rho_db{0.0, 40.0};
    /// Multiplies the claimed gap constants only; regions always use the true ones.
    double gap_scale = 1.0;
    unsigned threads = 0;
    ToleranceProfile tol = kDefaultTolerance;
};

namespace detail {

/// Worst shifted-vertex margin over outer vertices where both coordinates
/// exceed their shift, i.e. where no clipping at 0 happens.
inline double unclipped_gap_margin(const RateRegion2D& outer, const RateRegion2D& inner, double g1, double g2,
                                   const ToleranceProfile& tol) {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& v : vertices(outer, tol)) {
        if (v.r1 < g1 || v.r2 < g2) continue;
        worst = std::min(worst, region_margin(inner, {v.r1 - g1, v.r2 - g2}));
    }
    return worst;
}

inline void count(VerificationReport& r, const std::string& key, bool failed) {
    r.stats[key] += failed ? 1.0 : 0.0;
}

}  // namespace detail

/// One channel's worth of gap, reciprocity and containment checks.
inline void certify_channel(const ChannelConfig& ch, std::uint64_t seed, const CertifyOptions& opt,
                            VerificationReport& rep) {
    const ToleranceProfile& tol = opt.tol;
    const GapConstants g = gap_constants(ch);
    const RateBoundSet b = outer_bound(ch, tol);
    const RateRegion2D outer = outer_region(b, tol);
    const RateRegion2D ra = shifted_outer_region(b, g.n1, g.n2, tol);
    const RateRegion2D ra_star = shifted_outer_region(b, g.n1_star, g.n2_star, tol);
    const RateRegion2D r2 = region_r2(ch, tol);
    const RateRegion2D ge = region_ge(ch, simple_split(ch, tol), tol);
    const double s = opt.gap_scale;

    const auto fail = [&](const std::string& what) { rep.failures.push_back({seed, what}); };

    const double m_ra = gap_margin(outer, ra, s * g.n1, s * g.n2, tol);
    const double m_ra_star = gap_margin(outer, ra_star, s * g.n1_star, s * g.n2_star, tol);
    rep.worst_margin = std::min({rep.worst_margin, m_ra, m_ra_star});
    detail::count(rep, "gap_ra_failures", m_ra < -tol.geom);
    detail::count(rep, "gap_ra_star_failures", m_ra_star < -tol.geom);
    if (m_ra < -tol.geom) fail("gap R_a margin " + std::to_string(m_ra));
    if (m_ra_star < -tol.geom) fail("gap R_a* margin " + std::to_string(m_ra_star));

    // diagnostics for the gap checks, not counted as failures
    detail::count(rep, "gap_ra_unclipped_failures",
                  detail::unclipped_gap_margin(outer, ra, s * g.n1, s * g.n2, tol) < -tol.geom);
    detail::count(rep, "gap_ra_star_unclipped_failures",
                  detail::unclipped_gap_margin(outer, ra_star, s * g.n1_star, s * g.n2_star, tol) < -tol.geom);
    detail::count(rep, "gap_ge_failures", !gap_certified(outer, ge, s * g.n1, s * g.n2, tol));
    detail::count(rep, "gap_r2_star_failures", !gap_certified(outer, r2, s * g.n1_star, s * g.n2_star, tol));

    const RateBoundSet rb = outer_bound(reciprocal(ch), tol);
    const std::array<double, 7> want{b.b1, b.b2, b.b4, b.b3, b.b5, b.b6, b.b7};
    const auto got = rb.as_array();
    double recip = 0.0;
    for (std::size_t k = 0; k < 7; ++k) recip = std::max(recip, std::abs(got[k] - want[k]));
    rep.stats["reciprocity_max_delta"] = std::max(rep.stats["reciprocity_max_delta"], recip);
    detail::count(rep, "reciprocity_failures", recip > tol.eq);
    if (recip > tol.eq) fail("reciprocity delta " + std::to_string(recip));

    const bool chain = region_subset(ra, ra_star, tol) && region_subset(ra_star, r2, tol) &&
                       region_subset(r2, outer, tol) && region_subset(ge, r2, tol);
    detail::count(rep, "containment_failures", !chain);
    if (!chain) fail("containment chain broken");
}

/// Gap certification against R_a and R_a*, reciprocity pairing and the
/// containment chain over seeded random channels of one shape.
inline VerificationReport certify_theorems(const Dims& dims, int trials, std::uint64_t seed,
                                           const CertifyOptions& opt = {}) {
    opt.tol.validate();
    return run_trials(
        "certify_theorems", trials, seed,
        [&](int, std::uint64_t s, VerificationReport& rep) {
            certify_channel(random_channel(dims, opt.rho_db, s), s, opt, rep);
        },
        opt.threads);
}

/// Solves sub-rates for `points` boundary points of R2 on each random channel.
inline VerificationReport ratesplit_suite(const Dims& dims, int trials, int points, std::uint64_t seed,
                                          const CertifyOptions& opt = {}) {
    const ToleranceProfile& tol = opt.tol;
    return run_trials(
        "ratesplit_suite", trials, seed,
        [&](int, std::uint64_t s, VerificationReport& rep) {
            const ChannelConfig ch = random_channel(dims, opt.rho_db, s);
            const HkBounds hk = hk_bounds(mutual_infos(ch, simple_split(ch, tol), tol));
            const RateRegion2D r2 = region_r2(hk, tol);
            for (const RatePair& p : boundary_points(r2, points, tol)) {
                const std::string at = " at (" + std::to_string(p.r1) + ", " + std::to_string(p.r2) + ")";
                const CommonViolations v = common_violations(hk, p, tol);
                if (v.b && v.d) {
                    rep.failures.push_back({s, "(b) and (d) both violated" + at});
                    continue;
                }
                try {
                    const SubRateSolution sol = solve_subrates(ch, p, tol);
                    const RatePair sum = sol.rates.sums();
                    const double err = std::max(std::abs(sum.r1 - p.r1), std::abs(sum.r2 - p.r2));
                    rep.worst_margin = std::min(rep.worst_margin, -err);
                    if (err > tol.geom) rep.failures.push_back({s, "sum mismatch " + std::to_string(err) + at});
                    const double leak = sol.scheme == SchemeChoice::NoCommon1   ? sol.rates.r1w
                                        : sol.scheme == SchemeChoice::NoCommon2 ? sol.rates.r2w
                                                                                : 0.0;
                    if (std::abs(leak) > tol.geom) {
                        rep.failures.push_back({s, "silenced user has public rate " + std::to_string(leak) + at});
                    }
                    rep.stats[std::string("scheme_") + std::string(to_string(sol.scheme))] += 1.0;
                } catch (const Error& e) {
                    rep.failures.push_back({s, std::string(e.what()) + at});
                }
            }
        },
        opt.threads);
}

/// Random unit-bounded PSD covariances for the conditional-entropy check.
inline VerificationReport cond_entropy_suite(int trials, std::uint64_t seed, const CertifyOptions& opt = {}) {
    return run_trials(
        "cond_entropy_suite", trials, seed,
        [&](int, std::uint64_t s, VerificationReport& rep) {
            std::mt19937_64 gen(s);
            std::uniform_int_distribution<int> dim(1, 3);
            const Dims d{dim(gen), dim(gen), dim(gen), dim(gen)};
            const ChannelConfig ch = random_channel(d, opt.rho_db, gen());
            const double margin =
                check_cond_entropy_bound(ch, random_psd(d.m1, gen), random_psd(d.m2, gen), opt.tol);
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < -opt.tol.eq) rep.failures.push_back({s, "margin " + std::to_string(margin)});
        },
        opt.threads);
}

/// How order-lemma instances are drawn. `Perturbation`: G2 = G1 + random PSD.
/// `UnitUpper`: G2 = I and G1 = Q^{1/2} with 0 <= Q <= I.
enum class OrderLemmaDraw { Perturbation, UnitUpper };

namespace detail {

inline HermitianMatrix psd_sqrt(const HermitianMatrix& q) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(q.matrix());
    const Eigen::VectorXcd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>();
    return HermitianMatrix::hermitized(es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint());
}

}  // namespace detail

inline VerificationReport order_lemma_suite(int trials, std::uint64_t seed, const CertifyOptions& opt = {},
                                            OrderLemmaDraw draw = OrderLemmaDraw::Perturbation) {
    return run_trials(
        "order_lemma_suite", trials, seed,
        [&](int, std::uint64_t s, VerificationReport& rep) {
            std::mt19937_64 gen(s);
            const int n = std::uniform_int_distribution<int>(1, 4)(gen);
            const HermitianMatrix base = random_psd(n, gen);
            const HermitianMatrix g1 = draw == OrderLemmaDraw::UnitUpper ? detail::psd_sqrt(base) : base;
            const HermitianMatrix g2 =
                draw == OrderLemmaDraw::UnitUpper ? HermitianMatrix::identity(n) : g1 + random_psd(n, gen);
            const HermitianMatrix a = random_psd(n, gen);
            const double pi = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 4.0)(gen));
            const double margin = check_order_lemma(g1, g2, a, pi, opt.tol);
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < -opt.tol.eq) rep.failures.push_back({s, "margin " + std::to_string(margin)});
        },
        opt.threads);
}

/// tau_ij <= m_hat_ij and the below-noise-floor property of the simple split.
inline VerificationReport tau_suite(int trials, std::uint64_t seed, const CertifyOptions& opt = {}) {
    return run_trials(
        "tau_suite", trials, seed,
        [&](int, std::uint64_t s, VerificationReport& rep) {
            std::mt19937_64 gen(s);
            std::uniform_int_distribution<int> dim(1, 4);
            const Dims d{dim(gen), dim(gen), dim(gen), dim(gen)};
            const ChannelConfig ch = random_channel(d, opt.rho_db, gen());
            const MutualInfoSet m = mutual_infos(ch, simple_split(ch, opt.tol), opt.tol);
            const GapConstants g = gap_constants(ch);
            const double m12 = g.m_hat[0][1] - m.tau12;
            const double m21 = g.m_hat[1][0] - m.tau21;
            rep.worst_margin = std::min({rep.worst_margin, m12, m21});
            if (std::min(m12, m21) < -opt.tol.eq) {
                rep.failures.push_back({s, "tau exceeds m_hat by " + std::to_string(-std::min(m12, m21))});
            }
        },
        opt.threads);
}

}  // namespace mimoic
