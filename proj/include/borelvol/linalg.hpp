#pragma once

// Small-matrix linear algebra helpers shared by the flag and cocycle code.
// Everything here works on dense complex matrices of dimension at most a
// few dozen, so pivoted QR is the workhorse and accuracy beats asymptotics.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace borelvol {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Rank decisions: singular values (or pivoted-QR diagonals) below
// rank_tol * largest are treated as zero.
inline constexpr double rank_tol = 1e-9;

// Subspace / flag equality threshold on projector gaps.
inline constexpr double eq_tol = 1e-8;

// A rank decision is only trusted when the spectrum stays out of a guard
// band around rank_tol; values inside it mean the configuration is too
// close to degenerate for the answer to be meaningful.
struct conditioning_error : std::runtime_error {
    explicit conditioning_error(const std::string& what)
        : std::runtime_error(what) {}
};

struct recovery_error : std::runtime_error {
    explicit recovery_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Orthonormal column basis of col(A) plus its orthogonal complement.
// cols(q) == ambient dimension; the first `rank` columns span col(A).
struct OrthoSplit {
    Mat q;     // unitary, ambient x ambient
    int rank;  // trusted rank of A

    Mat range() const { return q.leftCols(rank); }
    Mat complement() const { return q.rightCols(q.rows() - rank); }
};

namespace detail {

// Guard band around the rank threshold; diagonals of the pivoted QR factor
// falling inside it make the rank decision unreliable.
inline constexpr double guard_lo = 1e-2;
inline constexpr double guard_hi = 1e+2;

inline int decide_rank(const Eigen::VectorXd& mags, bool strict) {
    if (mags.size() == 0) return 0;
    const double top = mags(0);
    if (top == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < mags.size(); ++i) {
        const double rel = mags(i) / top;
        if (strict && rel > rank_tol * guard_lo && rel < rank_tol * guard_hi)
            throw conditioning_error("ill-conditioned configuration: rank decision inside guard band");
        if (rel > rank_tol) r = static_cast<int>(i) + 1;
    }
    return r;
}

}  // namespace detail

// Pivoted-QR orthonormalization. With strict=true a spectrum too close to
// the rank threshold raises conditioning_error instead of guessing.
inline OrthoSplit ortho_split(const Mat& a, bool strict = true) {
    const auto rows = a.rows();
    if (a.cols() == 0) {
        OrthoSplit s;
        s.q = Mat::Identity(rows, rows);
        s.rank = 0;
        return s;
    }
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    Eigen::VectorXd diag(std::min(a.rows(), a.cols()));
    for (Eigen::Index i = 0; i < diag.size(); ++i)
        diag(i) = std::abs(qr.matrixR()(i, i));
    OrthoSplit s;
    s.rank = detail::decide_rank(diag, strict);
    s.q = qr.householderQ() * Mat::Identity(rows, rows);
    return s;
}

inline int numeric_rank(const Mat& a, bool strict = true) {
    if (a.cols() == 0 || a.rows() == 0) return 0;
    Eigen::ColPivHouseholderQR<Mat> qr(a);
    Eigen::VectorXd diag(std::min(a.rows(), a.cols()));
    for (Eigen::Index i = 0; i < diag.size(); ++i)
        diag(i) = std::abs(qr.matrixR()(i, i));
    return detail::decide_rank(diag, strict);
}

// Orthogonal projector onto col(A).
inline Mat projector(const Mat& a) {
    OrthoSplit s = ortho_split(a, false);
    Mat r = s.range();
    return r * r.adjoint();
}

// Operator-norm distance between the projectors onto col(A) and col(B);
// equals the sine of the largest principal angle for equal dimensions.
inline double projector_gap(const Mat& a, const Mat& b) {
    Mat d = projector(a) - projector(b);
    return d.operatorNorm();
}

inline double frobenius(const Mat& a) { return a.norm(); }

// Matrix exponential by scaling and squaring on a Taylor core; ample for the
// well-scaled generators used here.
inline Mat expm(const Mat& x) {
    const int n = static_cast<int>(x.rows());
    int s = 0;
    double nrm = x.norm();
    while (nrm > 0.25) {
        nrm *= 0.5;
        ++s;
    }
    const Mat y = x / std::pow(2.0, s);
    Mat term = Mat::Identity(n, n), acc = Mat::Identity(n, n);
    for (int k = 1; k < 40; ++k) {
        term = (term * y / static_cast<double>(k)).eval();
        acc += term;
        if (term.norm() < 1e-18 * acc.norm()) break;
    }
    for (int i = 0; i < s; ++i) acc = (acc * acc).eval();
    return acc;
}

// Exponential of a skew-Hermitian matrix through the spectral decomposition
// of iS; exactly unitary up to roundoff.
inline Mat expm_skew(const Mat& s) {
    const int n = static_cast<int>(s.rows());
    Eigen::SelfAdjointEigenSolver<Mat> es(cplx(0.0, 1.0) * s);
    Vec ph(n);
    for (int i = 0; i < n; ++i)
        ph(i) = std::polar(1.0, -es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace borelvol
