#pragma once

// Ideal tetrahedra on the projective line: cross-ratio, signed volume, and
// the extended volume of a spanned class of four vectors.

#include <array>
#include <cmath>

#include "borelvol/dilog.hpp"
#include "borelvol/projective.hpp"

namespace borelvol {

using TetConfig = std::array<ProjectivePoint, 4>;

// Cross-ratio (z3-z0)(z2-z1) / ((z3-z1)(z2-z0)) computed projectively, so
// vertices at infinity need no special casing.  Returned as a point of the
// projective line; a fully degenerate configuration collapses to 0.
inline ProjectivePoint cross_ratio(const TetConfig& t) {
    const auto det = [](const ProjectivePoint& p, const ProjectivePoint& q) {
        return p.x * q.y - q.x * p.y;
    };
    const cplx num = det(t[3], t[0]) * det(t[2], t[1]);
    const cplx den = det(t[3], t[1]) * det(t[2], t[0]);
    if (std::abs(num) == 0.0 && std::abs(den) == 0.0)
        return ProjectivePoint(cplx(0.0), cplx(1.0));
    return ProjectivePoint(num, den);
}

// Signed hyperbolic volume of the ideal tetrahedron with the given vertices.
// Alternating under vertex permutations, invariant under Moebius maps,
// |value| <= nu3 with equality exactly at the regular ideal tetrahedra.
inline double ideal_volume(const TetConfig& t) {
    return bloch_wigner(cross_ratio(t));
}

// A GL(m)-class of four spanning vectors in C^m.  Only m = 2 carries volume.
struct SpannedClass {
    int m = 0;
    Mat vectors;  // m x 4

    // relative threshold below which a vector counts as zero
    static constexpr double zero_tol = 1e-9;
};

// Extended volume: zero unless m = 2 and all four vectors are genuinely
// nonzero, in which case the vectors are read as points of the projective
// line.
inline double class_volume(const SpannedClass& c) {
    if (c.m != 2) return 0.0;
    double top = 0.0;
    for (int i = 0; i < 4; ++i) top = std::max(top, c.vectors.col(i).norm());
    if (top == 0.0) return 0.0;
    TetConfig t;
    for (int i = 0; i < 4; ++i) {
        if (c.vectors.col(i).norm() <= SpannedClass::zero_tol * top) return 0.0;
        t[i] = ProjectivePoint(c.vectors(0, i), c.vectors(1, i));
    }
    return ideal_volume(t);
}

}  // namespace borelvol
