#pragma once

// Complex dilogarithm and the Bloch-Wigner function D.
//
// D(z) = Im Li2(z) + arg(1-z) log|z| is real analytic away from 0, 1, inf,
// vanishes on the real axis, and measures the signed volume of the ideal
// hyperbolic tetrahedron with cross-ratio z.

#include <cmath>
#include <complex>
#include <numbers>

#include "borelvol/projective.hpp"

namespace borelvol {

namespace detail {

// Li2 power series, valid for |z| <= 1/2.
inline cplx dilog_series(cplx z) {
    cplx term = z, acc = z;
    for (int k = 2; k < 64; ++k) {
        term *= z;
        const cplx add = term / static_cast<double>(k * k);
        acc += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(acc))) break;
    }
    return acc;
}

// Accelerated series in u = -log(1-z): Li2(z) = sum B_k u^{k+1} / (k+1)!.
// Converges like (|u|/2pi)^k; used on the annulus 1/2 < |z| <= 1, Re z <= 1/2
// that the power series cannot reach.
inline cplx dilog_log_series(cplx z) {
    static const double bern[] = {
        // B_0, B_1, B_2, B_4, ..., B_34 (odd ones past B_1 vanish)
        1.0, -0.5,
        1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
        -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
        -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0,
        8553103.0 / 6.0, -23749461029.0 / 870.0, 8615841276005.0 / 14322.0,
        -7709321041217.0 / 510.0, 2577687858367.0 / 6.0};
    const cplx u = -std::log(1.0 - z);
    const cplx u2 = u * u;
    cplx acc = u + bern[1] * u2 / 2.0;
    cplx pw = u2 * u;       // u^{k+1} for k = 2
    double fact = 6.0;      // (k+1)! for k = 2
    for (int i = 2; i < 19; ++i) {
        const cplx add = bern[i] * pw / fact;
        acc += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(acc))) break;
        const int k = 2 * i;  // next even index
        pw *= u2;
        fact *= static_cast<double>(k) * static_cast<double>(k + 1);
    }
    return acc;
}

}  // namespace detail

// Principal-branch Li2.  Inversion and reflection move the argument into
// {|z| <= 1, Re z <= 1/2}; the power series covers |z| <= 1/2 and the
// log-accelerated series the rest of that region.
inline cplx dilog(cplx z) {
    constexpr double pi = std::numbers::pi;
    const double pi2_6 = pi * pi / 6.0;
    if (z == cplx(0.0)) return cplx(0.0);
    if (z == cplx(1.0)) return cplx(pi2_6);

    cplx shift(0.0);
    double sign = 1.0;
    if (std::abs(z) > 1.0) {
        const cplx lz = std::log(-z);
        shift += -pi2_6 - 0.5 * lz * lz;
        sign = -sign;
        z = 1.0 / z;
    }
    if (z.real() > 0.5) {
        shift += sign * (pi2_6 - std::log(z) * std::log(1.0 - z));
        sign = -sign;
        z = 1.0 - z;
    }
    const cplx core = (std::abs(z) <= 0.5) ? detail::dilog_series(z)
                                           : detail::dilog_log_series(z);
    return shift + sign * core;
}

// Bloch-Wigner function.  Exactly zero on the real axis and at infinity.
inline double bloch_wigner(cplx z) {
    if (z.imag() == 0.0) return 0.0;
    const double mod = std::abs(z);
    if (mod == 0.0) return 0.0;
    return dilog(z).imag() + std::arg(1.0 - z) * std::log(mod);
}

inline double bloch_wigner(const ProjectivePoint& p) {
    if (p.is_infinity()) return 0.0;
    return bloch_wigner(p.value());
}

// Volume of the regular ideal tetrahedron: the maximum of |D|.
inline double nu3() {
    static const double v = bloch_wigner(std::polar(1.0, std::numbers::pi / 3.0));
    return v;
}

}  // namespace borelvol
