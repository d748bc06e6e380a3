#pragma once

// Seeded random generators for points, matrices, and flags.  All sampling in
// the library and the tests funnels through these so runs are reproducible.

#include <cstdint>
#include <random>

#include "borelvol/flag.hpp"
#include "borelvol/projective.hpp"

namespace borelvol {

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(engine);
    }
    double gauss() {
        std::normal_distribution<double> d(0.0, 1.0);
        return d(engine);
    }
    cplx cgauss() {
        const double re = gauss();
        const double im = gauss();
        return cplx(re, im);
    }

    // chordal-uniform point on the projective line
    ProjectivePoint point() {
        const cplx a = cgauss(), b = cgauss();
        if (std::abs(a) == 0.0 && std::abs(b) == 0.0) return ProjectivePoint::from_value(cplx(1.0));
        return ProjectivePoint(a, b);
    }

    Mat matrix(int rows, int cols) {
        Mat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = cgauss();
        return m;
    }

    // Ginibre matrix conditioned to be flag-safe
    Flag flag(int n) {
        for (;;) {
            try {
                return Flag(matrix(n, n));
            } catch (const conditioning_error&) {
            }
        }
    }

    Mat unitary(int n) {
        Mat a = matrix(n, n);
        Eigen::HouseholderQR<Mat> qr(a);
        Mat q = qr.householderQ() * Mat::Identity(n, n);
        Mat r = q.adjoint() * a;
        for (int i = 0; i < n; ++i) {
            const cplx d = r(i, i);
            if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
        }
        return q;
    }

    Mat invertible(int n) {
        for (;;) {
            Mat a = matrix(n, n);
            Eigen::JacobiSVD<Mat> svd(a);
            const auto& sv = svd.singularValues();
            if (sv(n - 1) > 1e-3 * sv(0)) return a;
        }
    }

    // unit Frobenius norm skew-Hermitian matrix
    Mat skew_hermitian(int n) {
        Mat a = matrix(n, n);
        Mat s = 0.5 * (a - a.adjoint());
        return s / s.norm();
    }

    // traceless matrix for drift generators
    Mat traceless(int n) {
        Mat a = matrix(n, n);
        a -= (a.trace() / static_cast<double>(n)) * Mat::Identity(n, n);
        return a;
    }
};

}  // namespace borelvol
