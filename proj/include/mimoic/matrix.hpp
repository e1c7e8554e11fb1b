#pragma once

// Small complex Hermitian kernel. Every log-det, inverse and PSD-order test in
// the toolkit goes through here, so the tolerance policy lives here too.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>

#include "mimoic/errors.hpp"

namespace mimoic {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxDim = 16;

/// Numerical tolerances shared by all modules.
///
/// `herm`  absolute Hermitian-symmetry slack accepted on construction.
/// `psd`   eigenvalues above `-psd` count as nonnegative; logdet/inverse need
///         every eigenvalue strictly above `psd`.
/// `eq`    slack for comparing scalar bounds (bits).
/// `geom`  slack for rate-region membership and vertex coincidence.
struct ToleranceProfile {
    double herm = 1e-10;
    double psd = 1e-9;
    double eq = 1e-7;
    double geom = 1e-6;

    void validate() const {
        if (!(herm > 0 && psd > 0 && eq > 0 && geom > 0)) {
            throw PreconditionViolation("tolerances must be strictly positive");
        }
        if (geom < eq) {
            throw PreconditionViolation("tol_geom must be >= tol_eq");
        }
    }
};

inline constexpr ToleranceProfile kDefaultTolerance{};

namespace detail {

inline void check_dim(Eigen::Index rows, Eigen::Index cols) {
    if (rows != cols) {
        throw DimensionMismatch("Hermitian matrix must be square, got " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
    if (rows < 1 || rows > kMaxDim) {
        throw DimensionMismatch("matrix dimension " + std::to_string(rows) + " outside [1, " +
                                std::to_string(kMaxDim) + "]");
    }
}

inline CMatrix symmetrize(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace detail

/// Square complex matrix equal to its conjugate transpose (within tol.herm),
/// stored in exactly Hermitian form.
class HermitianMatrix {
public:
    /// Validates symmetry and stores (m + m^H)/2.
    explicit HermitianMatrix(const CMatrix& m, const ToleranceProfile& tol = kDefaultTolerance) {
        detail::check_dim(m.rows(), m.cols());
        const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
        if (asym > tol.herm) {
            throw PSDViolation("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
        }
        m_ = detail::symmetrize(m);
    }

    /// Re-Hermitizes the result of a product chain without a symmetry check.
    static HermitianMatrix hermitized(const CMatrix& m) {
        detail::check_dim(m.rows(), m.cols());
        HermitianMatrix h;
        h.m_ = detail::symmetrize(m);
        return h;
    }

    static HermitianMatrix identity(int n) { return hermitized(CMatrix::Identity(n, n)); }
    static HermitianMatrix zero(int n) { return hermitized(CMatrix::Zero(n, n)); }

    [[nodiscard]] int dim() const { return static_cast<int>(m_.rows()); }
    [[nodiscard]] const CMatrix& matrix() const { return m_; }
    [[nodiscard]] Complex operator()(int r, int c) const { return m_(r, c); }
    [[nodiscard]] double trace() const { return m_.trace().real(); }

    HermitianMatrix& operator+=(const HermitianMatrix& rhs) {
        require_same_dim(rhs);
        m_ += rhs.m_;
        return *this;
    }
    HermitianMatrix& operator-=(const HermitianMatrix& rhs) {
        require_same_dim(rhs);
        m_ -= rhs.m_;
        return *this;
    }
    HermitianMatrix& operator*=(double s) {
        m_ *= s;
        return *this;
    }

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

private:
    HermitianMatrix() = default;

    void require_same_dim(const HermitianMatrix& rhs) const {
        if (rhs.dim() != dim()) {
            throw DimensionMismatch("Hermitian operands of dim " + std::to_string(dim()) + " and " +
                                    std::to_string(rhs.dim()));
        }
    }

    CMatrix m_;
};

/// H K H^H, re-Hermitized.
inline HermitianMatrix sandwich(const CMatrix& h, const HermitianMatrix& k) {
    if (h.cols() != k.dim()) {
        throw DimensionMismatch("sandwich: H has " + std::to_string(h.cols()) + " columns, K has dim " +
                                std::to_string(k.dim()));
    }
    return HermitianMatrix::hermitized(h * k.matrix() * h.adjoint());
}

/// H H^H
inline HermitianMatrix outer_gram(const CMatrix& h) { return HermitianMatrix::hermitized(h * h.adjoint()); }

/// H^H H
inline HermitianMatrix inner_gram(const CMatrix& h) { return HermitianMatrix::hermitized(h.adjoint() * h); }

/// Ascending eigenvalues from the Hermitian solver.
inline Eigen::VectorXd eigenvalues(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double min_eigenvalue(const HermitianMatrix& a) { return eigenvalues(a)(0); }

inline bool is_psd(const HermitianMatrix& a, const ToleranceProfile& tol = kDefaultTolerance) {
    return min_eigenvalue(a) >= -tol.psd;
}

/// log2 det(A) for Hermitian positive definite A.
inline double logdet2(const HermitianMatrix& a, const ToleranceProfile& tol = kDefaultTolerance) {
    const Eigen::VectorXd ev = eigenvalues(a);
    if (ev(0) <= tol.psd) {
        throw NotPositiveDefinite("logdet2: smallest eigenvalue " + std::to_string(ev(0)));
    }
    double acc = 0.0;
    for (Eigen::Index k = 0; k < ev.size(); ++k) acc += std::log2(ev(k));
    return acc;
}

/// Inverse of a Hermitian positive definite matrix, returned in Hermitian form.
inline HermitianMatrix inv_hpd(const HermitianMatrix& a, const ToleranceProfile& tol = kDefaultTolerance) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
    const Eigen::VectorXd& ev = es.eigenvalues();
    if (ev(0) <= tol.psd) {
        throw NotPositiveDefinite("inv_hpd: smallest eigenvalue " + std::to_string(ev(0)));
    }
    const CMatrix& v = es.eigenvectors();
    const Eigen::VectorXcd inv = ev.cwiseInverse().cast<Complex>();
    return HermitianMatrix::hermitized(v * inv.asDiagonal() * v.adjoint());
}

/// A ⪯ B in the Loewner order: smallest eigenvalue of B - A is >= -tol.psd.
inline bool psd_leq(const HermitianMatrix& a, const HermitianMatrix& b,
                    const ToleranceProfile& tol = kDefaultTolerance) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("psd_leq: dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    return min_eigenvalue(b - a) >= -tol.psd;
}

/// I + A
inline HermitianMatrix eye_plus(const HermitianMatrix& a) { return HermitianMatrix::identity(a.dim()) + a; }

}  // namespace mimoic
