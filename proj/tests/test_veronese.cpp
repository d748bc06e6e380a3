// Veronese flags, the symmetric power representation, and point recovery.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "borelvol/moebius.hpp"
#include "borelvol/random.hpp"
#include "borelvol/veronese.hpp"
#include "borelvol/volume.hpp"

using namespace borelvol;

namespace {
ProjectivePoint apply2(const Eigen::Matrix2cd& m, const ProjectivePoint& p) {
    return ProjectivePoint(m(0, 0) * p.x + m(0, 1) * p.y,
                           m(1, 0) * p.x + m(1, 1) * p.y);
}
}  // namespace

TEST_CASE("coordinate points give the standard and reversed flags", "[veronese]") {
    for (int n : {2, 3, 4, 6}) {
        const Flag at_inf = veronese_flag(ProjectivePoint::infinity(), n);
        CHECK(flag_distance(at_inf, Flag(Mat::Identity(n, n))) < 1e-12);
        Mat rev = Mat::Zero(n, n);
        for (int i = 0; i < n; ++i) rev(n - 1 - i, i) = 1.0;
        const Flag at_zero = veronese_flag(ProjectivePoint::from_value(cplx(0.0)), n);
        CHECK(flag_distance(at_zero, Flag(rev)) < 1e-12);
    }
}

TEST_CASE("the line at 1 is the binomial vector", "[veronese]") {
    const int n = 5;
    const Flag f = veronese_flag(ProjectivePoint::from_value(cplx(1.0)), n);
    Vec b(n);
    for (int j = 0; j < n; ++j) b(j) = binom(n - 1, j);
    b.normalize();
    const Vec q = f.orthonormalized().basis().col(0);
    const cplx phase = q.dot(b);
    CHECK((b - q * phase).norm() < 1e-12);
}

TEST_CASE("representation of the unipotent matrix", "[veronese]") {
    Eigen::Matrix2cd u;
    u << 1, 1, 0, 1;
    const GroupElement g = irreducible_rep(u, 3);
    Mat expected(3, 3);
    expected << 1, 1, 1, 0, 1, 2, 0, 0, 1;
    CHECK((g.m - expected).norm() < 1e-14);
}

TEST_CASE("representation of diagonal matrices", "[veronese]") {
    Rng rng(41);
    for (int n : {2, 3, 5}) {
        const cplx l = rng.cgauss();
        if (std::abs(l) < 0.3) continue;
        Eigen::Matrix2cd d2 = Eigen::Matrix2cd::Zero();
        d2(0, 0) = l;
        d2(1, 1) = 1.0 / l;  // unit determinant
        const GroupElement g = irreducible_rep(d2, n);
        for (int i = 0; i < n; ++i) {
            const cplx want = std::pow(l, n - 1 - i) * std::pow(1.0 / l, i);
            CHECK(std::abs(g.m(i, i) - want) < 1e-10 * std::abs(want));
        }
    }
}

TEST_CASE("representation is a projective homomorphism", "[veronese]") {
    Rng rng(42);
    for (int n : {2, 3, 4}) {
        for (int i = 0; i < 30; ++i) {
            Eigen::Matrix2cd a, b;
            a << rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss();
            b << rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss();
            if (std::abs(a.determinant()) < 1e-2 ||
                std::abs(b.determinant()) < 1e-2)
                continue;
            const GroupElement lhs = irreducible_rep(Eigen::Matrix2cd(a * b), n);
            const GroupElement rhs = irreducible_rep(a, n) * irreducible_rep(b, n);
            CHECK(projective_distance(lhs, rhs) < 1e-10);
        }
    }
}

TEST_CASE("group elements are determinant normalized", "[veronese]") {
    Rng rng(43);
    const GroupElement g(rng.invertible(4));
    CHECK(std::abs(g.m.determinant() - cplx(1.0)) < 1e-12);
    CHECK(projective_distance(g * g.inverse(), GroupElement(Mat::Identity(4, 4))) <
          1e-12);
    // scalar multiples by n-th roots of unity are projectively zero distance
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 4.0);
    CHECK(projective_distance(g, GroupElement((w * g.m).eval())) < 1e-12);
}

TEST_CASE("equivariance under the representation", "[veronese]") {
    Rng rng(44);
    for (int n : {2, 3, 4}) {
        for (int i = 0; i < 25; ++i) {
            Eigen::Matrix2cd a;
            a << rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss();
            if (std::abs(a.determinant()) < 1e-2) continue;
            const ProjectivePoint p = rng.point();
            const Flag lhs = act_on_flag(irreducible_rep(a, n), veronese_flag(p, n));
            const Flag rhs = veronese_flag(apply2(a, p), n);
            CHECK(flag_distance(lhs, rhs) < 1e-9);
        }
        // coordinate points under a triangular matrix
        Eigen::Matrix2cd t;
        t << 2.0, 1.0, 0.0, 0.5;
        const ProjectivePoint inf = ProjectivePoint::infinity();
        CHECK(flag_distance(act_on_flag(irreducible_rep(t, n), veronese_flag(inf, n)),
                            veronese_flag(inf, n)) < 1e-10);
    }
}

TEST_CASE("equivariance extends to antiholomorphic elements", "[veronese]") {
    const int n = 3;
    for (const ExtendedMoebius& r : base_reflections()) {
        const TetConfig t = base_tetrahedron();
        for (int i = 0; i < 4; ++i) {
            const Flag lhs = act_extended(r, veronese_flag(t[i], n));
            const Flag rhs = veronese_flag(r.apply(t[i]), n);
            CHECK(flag_distance(lhs, rhs) < 1e-10);
        }
    }
}

TEST_CASE("point recovery inverts the embedding", "[veronese]") {
    Rng rng(45);
    for (int n : {2, 3, 4}) {
        for (int i = 0; i < 8; ++i) {
            const ProjectivePoint p = rng.point();
            const VeronesePointFit fit = veronese_point_recover(veronese_flag(p, n));
            CHECK(chordal(fit.point, p) < 1e-6);
            CHECK(fit.residual < 1e-8);
        }
        for (const ProjectivePoint& p :
             {ProjectivePoint::infinity(), ProjectivePoint::from_value(cplx(0.0)),
              ProjectivePoint::from_value(cplx(1e-7, 1e-8))}) {
            const VeronesePointFit fit = veronese_point_recover(veronese_flag(p, n));
            CHECK(chordal(fit.point, p) < 1e-6);
        }
    }
}
