#pragma once

// The Veronese embedding of the projective line into the flag variety of C^n
// (osculating flags of the rational normal curve) and the matching
// irreducible representation of PSL(2,C) on binomially weighted monomials.
//
// The coefficient action is chosen so that the embedding is equivariant:
// irreducible_rep(A) . veronese_flag(p) = veronese_flag(A . p), exactly, for
// the basis below.  Antiholomorphic maps act by entrywise conjugation first.

#include <array>
#include <cmath>
#include <vector>

#include "borelvol/combinatorics.hpp"
#include "borelvol/flag.hpp"
#include "borelvol/moebius.hpp"
#include "borelvol/optimize.hpp"

namespace borelvol {

// Determinant-normalized element of PSL(n,C); the residual n-th root of
// unity ambiguity is handled by projective_distance.
struct GroupElement {
    Mat m;

    GroupElement() = default;
    explicit GroupElement(Mat a) : m(std::move(a)) {
        const int n = static_cast<int>(m.rows());
        const cplx det = Eigen::FullPivLU<Mat>(m).determinant();
        if (std::abs(det) < 1e-14)
            throw std::invalid_argument("group element must be invertible");
        m /= std::pow(det, 1.0 / n);
    }

    int n() const { return static_cast<int>(m.rows()); }
    GroupElement inverse() const { return GroupElement(m.inverse().eval()); }
};

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return GroupElement((a.m * b.m).eval());
}

// Frobenius distance between projective classes: minimized over the n-th
// roots of unity that determinant normalization leaves undetermined.
inline double projective_distance(const GroupElement& a, const GroupElement& b) {
    const int n = a.n();
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / n);
        best = std::min(best, (a.m - w * b.m).norm());
    }
    return best;
}

namespace detail {

// integer power by repeated multiplication; ipow(0, 0) = 1 as needed here
inline cplx ipow(cplx z, int e) {
    cplx r(1.0);
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

// Columns: the k-shifted degree-i binomial vectors of p = [x:y], for
// k = 0..n-1-i.  They span the (n-i)-dimensional Veronese subspace.
inline Mat shifted_binomials(const ProjectivePoint& p, int n, int i) {
    const ProjectivePoint c = p.canonical();
    Vec b(i + 1);
    for (int j = 0; j <= i; ++j)
        b(j) = binom(i, j) * ipow(c.x, i - j) * ipow(c.y, j);
    Mat w = Mat::Zero(n, n - i);
    for (int k = 0; k <= n - 1 - i; ++k) w.block(k, k, i + 1, 1) = b;
    return w;
}

}  // namespace detail

// Osculating flag of the rational normal curve at p.  The adapted basis is
// orthonormal, built step by step with a pivoted projection so the
// construction stays stable for p near the coordinate points.
inline Flag veronese_flag(const ProjectivePoint& p, int n) {
    if (n < 1) throw std::invalid_argument("veronese_flag needs n >= 1");
    Mat q(n, n);
    int have = 0;
    for (int m = 1; m <= n; ++m) {
        const Mat w = detail::shifted_binomials(p, n, n - m);
        Mat resid = w;
        if (have > 0)
            resid -= q.leftCols(have) * (q.leftCols(have).adjoint() * w);
        int best = 0;
        double bestn = resid.col(0).norm();
        for (int c = 1; c < resid.cols(); ++c) {
            const double nn = resid.col(c).norm();
            if (nn > bestn) {
                bestn = nn;
                best = c;
            }
        }
        if (bestn < 1e-13)
            throw conditioning_error("ill-conditioned configuration: veronese step collapsed");
        q.col(have++) = resid.col(best) / bestn;
    }
    return Flag(q);
}

inline Flag veronese_flag(cplx z, int n) {
    return veronese_flag(ProjectivePoint::from_value(z), n);
}

// Symmetric-power representation on degree n-1 forms in the binomially
// weighted monomial basis v_i = C(n-1,i) x^{n-1-i} y^i.  Maps diag(l, 1/l)
// to diag(l^{n-1}, l^{n-3}, ..., l^{1-n}); determinant renormalized.
inline GroupElement irreducible_rep(const Eigen::Matrix2cd& a2, int n) {
    const Eigen::Matrix2cd a = ExtendedMoebius::normalized(a2);
    const int d = n - 1;
    Mat m(n, n);
    for (int i = 0; i < n; ++i) {
        // expand (a00 x + a01 y)^(d-i) (a10 x + a11 y)^i; coeffs[t] is the
        // coefficient of x^(deg-t) y^t
        std::vector<cplx> coeffs{1.0};
        const auto mul = [&coeffs](cplx alpha, cplx beta) {
            std::vector<cplx> nxt(coeffs.size() + 1, cplx(0.0));
            for (size_t t = 0; t < coeffs.size(); ++t) {
                nxt[t] += alpha * coeffs[t];
                nxt[t + 1] += beta * coeffs[t];
            }
            coeffs = std::move(nxt);
        };
        for (int r = 0; r < d - i; ++r) mul(a(0, 0), a(0, 1));
        for (int r = 0; r < i; ++r) mul(a(1, 0), a(1, 1));
        for (int j = 0; j < n; ++j)
            m(i, j) = binom(d, i) * coeffs[j] / binom(d, j);
    }
    return GroupElement(std::move(m));
}

inline GroupElement irreducible_rep(const ExtendedMoebius& r, int n) {
    return irreducible_rep(r.m, n);
}

inline Flag act_on_flag(const GroupElement& g, const Flag& f) {
    return f.transformed(g.m);
}

// Extended action on flags: antiholomorphic maps conjugate the adapted basis
// entrywise before the representation acts.
inline Flag act_extended(const ExtendedMoebius& r, const Flag& f) {
    const GroupElement rep = irreducible_rep(r, f.n());
    const Flag base = r.antiholomorphic ? f.conjugated() : f;
    return base.transformed(rep.m);
}

struct VeronesePointFit {
    ProjectivePoint point;
    double residual;
};

namespace detail {

inline ProjectivePoint chart_point(const ProjectivePoint& c, double u, double v) {
    // orthogonal direction to the unit representative
    const cplx w(u, v);
    return ProjectivePoint(c.x + w * (-std::conj(c.y)), c.y + w * std::conj(c.x));
}

}  // namespace detail

// Nearest point on the Veronese curve in the flag metric: coarse spherical
// grid, then simplex refinement in a chart around the leading candidates.
inline VeronesePointFit veronese_point_recover(const Flag& f, int grid = 400) {
    const int n = f.n();
    const auto score = [&](const ProjectivePoint& p) {
        return flag_distance(veronese_flag(p, n), f);
    };

    std::vector<ProjectivePoint> cands;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < grid; ++k) {
        const double z = 1.0 - 2.0 * (k + 0.5) / grid;
        const double theta = std::acos(z);
        const double phi = golden * k;
        cands.emplace_back(cplx(std::cos(theta / 2.0)),
                           std::polar(std::sin(theta / 2.0), phi));
    }
    // direct read of the curve point from the first adapted basis column
    const Vec w0 = f.orthonormalized().basis().col(0);
    int bestj = 0;
    double bestp = 0.0;
    for (int j = 0; j + 1 < n; ++j) {
        const double pr = std::abs(w0(j)) * std::abs(w0(j + 1));
        if (pr > bestp) {
            bestp = pr;
            bestj = j;
        }
    }
    if (bestp > 1e-20)
        cands.emplace_back(w0(bestj) * binom(n - 1, bestj + 1),
                           w0(bestj + 1) * binom(n - 1, bestj));

    std::vector<std::pair<double, ProjectivePoint>> ranked;
    ranked.reserve(cands.size());
    for (const auto& p : cands) ranked.emplace_back(score(p), p);
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    VeronesePointFit best{ranked[0].second, ranked[0].first};
    const int refine = std::min<int>(3, static_cast<int>(ranked.size()));
    for (int r = 0; r < refine; ++r) {
        const ProjectivePoint c = ranked[r].second.canonical();
        const Objective obj = [&](const RealVec& uv) {
            return score(detail::chart_point(c, uv(0), uv(1)));
        };
        RealVec x0 = RealVec::Zero(2);
        const SimplexResult res =
            nelder_mead_restarted(obj, x0, 0.05, 900, 1e-13);
        if (res.value < best.residual) {
            best.residual = res.value;
            best.point = detail::chart_point(c, res.x(0), res.x(1)).canonical();
        }
    }
    return best;
}

}  // namespace borelvol
