#pragma once

// Points of the complex projective line as homogeneous coordinate pairs.
// Infinity is [1:0]; the chordal metric makes it an ordinary point.

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "borelvol/linalg.hpp"

namespace borelvol {

struct ProjectivePoint {
    cplx x{0.0, 0.0};  // homogeneous numerator
    cplx y{1.0, 0.0};  // homogeneous denominator, [1:0] = infinity

    ProjectivePoint() = default;
    ProjectivePoint(cplx hx, cplx hy) : x(hx), y(hy) {
        if (std::abs(x) == 0.0 && std::abs(y) == 0.0)
            throw std::invalid_argument("projective point needs a nonzero representative");
    }

    static ProjectivePoint infinity() { return ProjectivePoint(cplx(1.0), cplx(0.0)); }
    static ProjectivePoint from_value(cplx z) { return ProjectivePoint(z, cplx(1.0)); }

    bool is_infinity(double tol = 1e-12) const {
        return std::abs(y) <= tol * std::abs(x);
    }

    // Finite value x/y; throws at infinity.
    cplx value(double tol = 1e-12) const {
        if (is_infinity(tol))
            throw std::domain_error("projective point at infinity has no finite value");
        return x / y;
    }

    // Unit-norm representative with the first coordinate above threshold
    // rotated to the positive real axis.
    ProjectivePoint canonical() const {
        const double nrm = std::sqrt(std::norm(x) + std::norm(y));
        cplx cx = x / nrm, cy = y / nrm;
        const cplx ref = (std::abs(cx) > 1e-12) ? cx : cy;
        const cplx phase = std::conj(ref) / std::abs(ref);
        return ProjectivePoint(cx * phase, cy * phase);
    }
};

// sin of the angle between the two lines in C^2; a metric with values in [0,1].
inline double chordal(const ProjectivePoint& p, const ProjectivePoint& q) {
    const double np = std::sqrt(std::norm(p.x) + std::norm(p.y));
    const double nq = std::sqrt(std::norm(q.x) + std::norm(q.y));
    return std::abs(p.x * q.y - q.x * p.y) / (np * nq);
}

inline bool projectively_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                               double tol = 1e-9) {
    return chordal(p, q) <= tol;
}

// 2x2 Hermitian projector onto the line; canonical (phase-free) coordinates
// for hashing and deduplication.
inline Eigen::Matrix2cd line_projector(const ProjectivePoint& p) {
    Eigen::Vector2cd v;
    v << p.x, p.y;
    v.normalize();
    return v * v.adjoint();
}

}  // namespace borelvol
