#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "mimoic/matrix.hpp"

namespace mimoic {

enum class User : int { k1 = 1, k2 = 2 };

constexpr User other(User u) { return u == User::k1 ? User::k2 : User::k1; }
constexpr int index(User u) { return static_cast<int>(u) - 1; }

/// Antenna counts (M1, N1, M2, N2): Tx_i has M_i antennas, Rx_i has N_i.
struct Dims {
    int m1 = 1;
    int n1 = 1;
    int m2 = 1;
    int n2 = 1;

    [[nodiscard]] int tx(User u) const { return u == User::k1 ? m1 : m2; }
    [[nodiscard]] int rx(User u) const { return u == User::k1 ? n1 : n2; }

    friend bool operator==(const Dims&, const Dims&) = default;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// The 2-user MIMO interference channel.
///
/// `h[i][j]` maps Tx_(i+1)'s antennas to Rx_(j+1) and is N_(j+1) x M_(i+1).
/// `rho` is linear-scale [rho11, rho12, rho21, rho22]; no power normalization is
/// applied to the matrices.
struct ChannelConfig {
    Dims dims;
    CMatrix h11, h12, h21, h22;
    std::array<double, 4> rho{1.0, 1.0, 1.0, 1.0};

    [[nodiscard]] const CMatrix& link(User from, User to) const {
        if (from == User::k1) return to == User::k1 ? h11 : h12;
        return to == User::k1 ? h21 : h22;
    }
    [[nodiscard]] double snr(User from, User to) const { return rho[2 * index(from) + index(to)]; }

    void validate() const {
        const auto check = [](const CMatrix& h, int rows, int cols, const char* name) {
            if (h.rows() != rows || h.cols() != cols) {
                throw DimensionMismatch(std::string(name) + " is " + std::to_string(h.rows()) + "x" +
                                        std::to_string(h.cols()) + ", expected " + std::to_string(rows) + "x" +
                                        std::to_string(cols));
            }
        };
        for (int d : {dims.m1, dims.n1, dims.m2, dims.n2}) {
            if (d < 1 || d > kMaxDim) throw DimensionMismatch("antenna count " + std::to_string(d) + " out of range");
        }
        check(h11, dims.n1, dims.m1, "H11");
        check(h12, dims.n2, dims.m1, "H12");
        check(h21, dims.n1, dims.m2, "H21");
        check(h22, dims.n2, dims.m2, "H22");
        for (double r : rho) {
            if (!(r >= 0.0) || !std::isfinite(r)) throw PreconditionViolation("rho entries must be finite and >= 0");
        }
    }
};

/// Builds a channel from dB SNR/INRs, storing rho = 10^(dB/10).
inline ChannelConfig make_channel(const Dims& dims, CMatrix h11, CMatrix h12, CMatrix h21, CMatrix h22,
                                  const std::array<double, 4>& rho_db) {
    ChannelConfig ch{dims, std::move(h11), std::move(h12), std::move(h21), std::move(h22), {}};
    for (std::size_t k = 0; k < 4; ++k) {
        if (!std::isfinite(rho_db[k])) throw PreconditionViolation("rho_db entries must be finite");
        ch.rho[k] = db_to_linear(rho_db[k]);
    }
    ch.validate();
    return ch;
}

/// K_i = (I + rho_ij H_ij^H H_ij)^{-1}, j the other user.
inline HermitianMatrix k_matrix(const ChannelConfig& ch, User i, const ToleranceProfile& tol = kDefaultTolerance) {
    const User j = other(i);
    return inv_hpd(eye_plus(ch.snr(i, j) * inner_gram(ch.link(i, j))), tol);
}

/// Channel with transmitter and receiver roles interchanged.
inline ChannelConfig reciprocal(const ChannelConfig& ch) {
    ChannelConfig r;
    r.dims = Dims{ch.dims.n1, ch.dims.m1, ch.dims.n2, ch.dims.m2};
    r.h11 = ch.h11.transpose();
    r.h12 = ch.h21.transpose();
    r.h21 = ch.h12.transpose();
    r.h22 = ch.h22.transpose();
    r.rho = {ch.rho[0], ch.rho[2], ch.rho[1], ch.rho[3]};
    return r;
}

/// Gap constants of the forward and reverse channel, plus their ingredients.
/// Index [i][j] is user (i+1) to user (j+1).
struct GapConstants {
    double n1 = 0, n2 = 0;
    double n1_star = 0, n2_star = 0;
    double m1_star = 0, m2_star = 0;
    std::array<std::array<int, 2>, 2> m{};
    std::array<std::array<double, 2>, 2> m_hat{};
    std::array<std::array<double, 2>, 2> m_tilde{};
    int M_x = 0, M_s = 0, N_x = 0, N_s = 0;

    [[nodiscard]] double n(User u) const { return u == User::k1 ? n1 : n2; }
    [[nodiscard]] double n_star(User u) const { return u == User::k1 ? n1_star : n2_star; }
    [[nodiscard]] double m_star(User u) const { return u == User::k1 ? m1_star : m2_star; }
};

inline GapConstants gap_constants(const Dims& d) {
    GapConstants g;
    g.M_x = std::max(d.m1, d.m2);
    g.M_s = d.m1 + d.m2;
    g.N_x = std::max(d.n1, d.n2);
    g.N_s = d.n1 + d.n2;
    for (User i : {User::k1, User::k2}) {
        for (User j : {User::k1, User::k2}) {
            const int mi = d.tx(i);
            const int nj = d.rx(j);
            const int mij = std::min(mi, nj);
            g.m[index(i)][index(j)] = mij;
            g.m_hat[index(i)][index(j)] = mij * std::log2(static_cast<double>(mi + 1) / mi);
            g.m_tilde[index(i)][index(j)] = mij * std::log2(static_cast<double>(nj + 1) / nj);
        }
    }
    const auto at = [](const auto& tbl, User i, User j) { return tbl[index(i)][index(j)]; };
    for (User i : {User::k1, User::k2}) {
        const User j = other(i);
        const double mi = d.tx(i);
        const double shared = std::min(d.rx(i), g.M_s) * std::log2(static_cast<double>(g.M_x));
        const double own = at(g.m, i, i) * std::log2(mi) + at(g.m, i, j) * std::log2(mi + 1.0);
        const double n = std::max(own, shared) + at(g.m_hat, j, i);
        const double n_star = shared + at(g.m_hat, j, i);
        const double m_star =
            std::min(d.tx(i), g.N_s) * std::log2(static_cast<double>(g.N_x)) + at(g.m_tilde, i, j);
        (i == User::k1 ? g.n1 : g.n2) = n;
        (i == User::k1 ? g.n1_star : g.n2_star) = n_star;
        (i == User::k1 ? g.m1_star : g.m2_star) = m_star;
    }
    return g;
}

inline GapConstants gap_constants(const ChannelConfig& ch) { return gap_constants(ch.dims); }

struct DbRange {
    double lo = 0.0;
    double hi = 40.0;
};

/// Seeded channel with i.i.d. CN(0,1) entries and rho_db ~ U[lo, hi].
/// Same seed and arguments give a bit-identical channel on the same toolchain.
inline ChannelConfig random_channel(const Dims& dims, DbRange range, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(range.lo, range.hi);
    const double scale = 1.0 / std::sqrt(2.0);
    const auto draw = [&](int rows, int cols) {
        CMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                const double re = normal(gen);
                const double im = normal(gen);
                m(r, c) = Complex(re * scale, im * scale);
            }
        }
        return m;
    };
    CMatrix h11 = draw(dims.n1, dims.m1);
    CMatrix h12 = draw(dims.n2, dims.m1);
    CMatrix h21 = draw(dims.n1, dims.m2);
    CMatrix h22 = draw(dims.n2, dims.m2);
    std::array<double, 4> db{};
    for (double& v : db) v = range.lo == range.hi ? range.lo : uniform(gen);
    return make_channel(dims, std::move(h11), std::move(h12), std::move(h21), std::move(h22), db);
}

}  // namespace mimoic
