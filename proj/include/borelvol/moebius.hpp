#pragma once

// Extended Moebius transformations: a 2x2 determinant-normalized matrix plus
// an orientation flag.  (m, +) acts as z -> m.z, (m, -) as z -> m.conj(z).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "borelvol/projective.hpp"

namespace borelvol {

struct ExtendedMoebius {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    bool antiholomorphic = false;

    static ExtendedMoebius identity() { return {}; }

    static ExtendedMoebius holomorphic(const Eigen::Matrix2cd& a) {
        return ExtendedMoebius{normalized(a), false};
    }
    static ExtendedMoebius antiholo(const Eigen::Matrix2cd& a) {
        return ExtendedMoebius{normalized(a), true};
    }

    static Eigen::Matrix2cd normalized(const Eigen::Matrix2cd& a) {
        const cplx det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        if (std::abs(det) < 1e-14)
            throw std::invalid_argument("moebius matrix is singular");
        return a / std::sqrt(det);
    }

    ProjectivePoint apply(const ProjectivePoint& p) const {
        const cplx x = antiholomorphic ? std::conj(p.x) : p.x;
        const cplx y = antiholomorphic ? std::conj(p.y) : p.y;
        return ProjectivePoint(m(0, 0) * x + m(0, 1) * y,
                               m(1, 0) * x + m(1, 1) * y);
    }

    // Right-to-left composition: (this o other)(z) = this(other(z)).
    ExtendedMoebius compose(const ExtendedMoebius& o) const {
        ExtendedMoebius r;
        r.m = antiholomorphic ? (m * o.m.conjugate()).eval() : (m * o.m).eval();
        r.antiholomorphic = antiholomorphic != o.antiholomorphic;
        return r;
    }

    ExtendedMoebius inverse() const {
        Eigen::Matrix2cd inv;
        inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);  // adjugate of det-1 matrix
        if (!antiholomorphic) return ExtendedMoebius{inv, false};
        return ExtendedMoebius{inv.conjugate(), true};
    }
};

inline ExtendedMoebius operator*(const ExtendedMoebius& a, const ExtendedMoebius& b) {
    return a.compose(b);
}

// The vertex set (0, 1, exp(i pi/3), inf) of the regular ideal tetrahedron.
inline std::array<ProjectivePoint, 4> base_tetrahedron() {
    return {ProjectivePoint::from_value(cplx(0.0)),
            ProjectivePoint::from_value(cplx(1.0)),
            ProjectivePoint::from_value(std::polar(1.0, std::numbers::pi / 3.0)),
            ProjectivePoint::infinity()};
}

// Reflections in the four faces of the base tetrahedron, listed by the
// vertices the face contains: (0,1,inf), (0,w,inf), (1,w,inf), (0,1,w).
inline std::array<ExtendedMoebius, 4> base_reflections() {
    using std::numbers::pi;
    std::array<ExtendedMoebius, 4> r;
    Eigen::Matrix2cd m;

    m << 1.0, 0.0, 0.0, 1.0;  // z -> conj(z)
    r[0] = ExtendedMoebius::antiholo(m);

    m << std::polar(1.0, 2.0 * pi / 3.0), 0.0, 0.0, 1.0;  // rotate the conjugate
    r[1] = ExtendedMoebius::antiholo(m);

    const cplx u = std::polar(1.0, 4.0 * pi / 3.0);  // z -> 1 + u (conj(z) - 1)
    m << u, 1.0 - u, 0.0, 1.0;
    r[2] = ExtendedMoebius::antiholo(m);

    // inversion in the circle through 0, 1, w: center c, radius^2 = 1/3
    const cplx c(0.5, std::sqrt(3.0) / 6.0);
    m << c, cplx(1.0 / 3.0) - c * std::conj(c), 1.0, -std::conj(c);
    r[3] = ExtendedMoebius::antiholo(m);

    return r;
}

// Moebius map sending (p, q, r) to (0, 1, inf).
inline ExtendedMoebius moebius_to_standard(const ProjectivePoint& p,
                                           const ProjectivePoint& q,
                                           const ProjectivePoint& r) {
    if (chordal(p, q) < 1e-12 || chordal(q, r) < 1e-12 || chordal(p, r) < 1e-12)
        throw std::invalid_argument("moebius through coincident points");
    const auto det = [](const ProjectivePoint& u, const ProjectivePoint& v) {
        return u.x * v.y - v.x * u.y;
    };
    const cplx dqr = det(q, r), dqp = det(q, p);
    Eigen::Matrix2cd m;
    m << dqr * p.y, -dqr * p.x, dqp * r.y, -dqp * r.x;
    return ExtendedMoebius::holomorphic(m);
}

// The doubling map conjugated to fix (t0, t1): g^{-1} diag(sqrt 2, 1/sqrt 2) g
// with g the unique Moebius sending (t0, t1, t2) to (inf, 0, 1).  Independent
// of the choice of third vertex; orientation preserving.
inline ExtendedMoebius dilation_element(const std::array<ProjectivePoint, 4>& t) {
    const ExtendedMoebius g = moebius_to_standard(t[1], t[2], t[0]);
    Eigen::Matrix2cd mu2;
    mu2 << std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd gi = g.inverse().m;
    return ExtendedMoebius::holomorphic(gi * mu2 * g.m);
}

}  // namespace borelvol
