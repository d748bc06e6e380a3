#pragma once

// Complete flags of C^n with adapted bases, decorations, and the projector
// metric used throughout: distance of two flags is the worst projector gap
// over the proper steps.

#include <cstdint>
#include <random>
#include <vector>

#include "borelvol/linalg.hpp"

namespace borelvol {

namespace detail {

// splitmix64: cheap, well-mixed derivation of per-task seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline cplx gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng);
    const double im = g(rng);
    return cplx(re, im);
}

}  // namespace detail

// Complete flag 0 < F^1 < ... < F^n = C^n: column i spans F^i together with
// its predecessors.  The basis matrix must be numerically nonsingular.
class Flag {
  public:
    Flag() = default;
    explicit Flag(Mat basis) : basis_(std::move(basis)) {
        if (basis_.rows() != basis_.cols() || basis_.rows() < 1)
            throw std::invalid_argument("flag basis must be square");
        Eigen::JacobiSVD<Mat> svd(basis_);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= rank_tol * sv(0))
            throw conditioning_error("ill-conditioned configuration: flag basis is numerically singular");
    }

    int n() const { return static_cast<int>(basis_.rows()); }
    const Mat& basis() const { return basis_; }

    // Basis of the step F^i, 0 <= i <= n.
    Mat step(int i) const { return basis_.leftCols(i); }

    // Same flag, orthonormal adapted basis (QR preserves every step).
    Flag orthonormalized() const {
        Eigen::HouseholderQR<Mat> qr(basis_);
        Mat q = qr.householderQ() * Mat::Identity(n(), n());
        // keep orientation deterministic: positive diagonal of R
        Mat r = q.adjoint() * basis_;
        for (int i = 0; i < n(); ++i) {
            const cplx d = r(i, i);
            if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
        }
        Flag f;
        f.basis_ = std::move(q);
        return f;
    }

    Flag transformed(const Mat& g) const { return Flag(g * basis_); }

    Flag conjugated() const {
        Flag f;
        f.basis_ = basis_.conjugate();
        return f;
    }

  private:
    Mat basis_;
};

// Max projector gap over the proper steps; a metric with values in [0,1].
inline double flag_distance(const Flag& f, const Flag& g) {
    if (f.n() != g.n())
        throw std::invalid_argument("flag distance needs equal ambient dimension");
    const Mat qf = f.orthonormalized().basis();
    const Mat qg = g.orthonormalized().basis();
    double worst = 0.0;
    for (int i = 1; i < f.n(); ++i) {
        const Mat pf = qf.leftCols(i) * qf.leftCols(i).adjoint();
        const Mat pg = qg.leftCols(i) * qg.leftCols(i).adjoint();
        worst = std::max(worst, (pf - pg).operatorNorm());
    }
    return worst;
}

inline bool flags_equal(const Flag& f, const Flag& g, double tol = eq_tol) {
    return flag_distance(f, g) <= tol;
}

// Decorated flag: v^i lies in F^i but outside F^{i-1}.  Decorations are the
// columns of `vectors`.
struct AffineFlag {
    Flag flag;
    Mat vectors;

    int n() const { return flag.n(); }
    Vec decoration(int i) const { return vectors.col(i - 1); }  // 1-indexed
};

// Deterministic random decoration: mixes the orthonormalized basis columns
// with a coefficient of modulus in [1/2, 3/2] on the new direction, so the
// "outside F^{i-1}" margin is guaranteed.
inline AffineFlag decorate(const Flag& f, std::uint64_t seed) {
    const int n = f.n();
    std::mt19937_64 rng(detail::mix_seed(seed, 0xdecau));
    std::uniform_real_distribution<double> mag(0.5, 1.5);
    std::uniform_real_distribution<double> ang(0.0, 6.283185307179586);
    const Mat q = f.orthonormalized().basis();
    Mat v(n, n);
    for (int i = 0; i < n; ++i) {
        Vec w = Vec::Zero(n);
        for (int j = 0; j < i; ++j) w += 0.5 * detail::gaussian(rng) * q.col(j);
        w += std::polar(mag(rng), ang(rng)) * q.col(i);
        v.col(i) = w;
    }
    return AffineFlag{f, std::move(v)};
}

// Every selection of steps, one per flag, with total dimension at most n
// must span a subspace of exactly that dimension.
inline bool general_position(const std::vector<Flag>& flags) {
    if (flags.empty()) return true;
    const int n = flags[0].n();
    const int m = static_cast<int>(flags.size());
    std::vector<int> j(m, 0);
    for (;;) {
        int total = 0;
        for (int i = 0; i < m; ++i) total += j[i];
        if (total > 0 && total <= n) {
            Mat cols(n, total);
            int at = 0;
            for (int i = 0; i < m; ++i) {
                if (j[i] == 0) continue;
                cols.middleCols(at, j[i]) = flags[i].step(j[i]);
                at += j[i];
            }
            if (numeric_rank(cols, false) != total) return false;
        }
        int k = 0;
        while (k < m && j[k] == n - 1) j[k++] = 0;
        if (k == m) break;
        ++j[k];
    }
    return true;
}

}  // namespace borelvol
