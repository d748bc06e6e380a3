// Extended Moebius group, the base reflections, the dilation, and the
// breadth-first orbit of the base tetrahedron.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <set>

#include "borelvol/dilog.hpp"
#include "borelvol/moebius.hpp"
#include "borelvol/random.hpp"
#include "borelvol/tessellation.hpp"
#include "borelvol/volume.hpp"

using namespace borelvol;

namespace {
ProjectivePoint pt(cplx z) { return ProjectivePoint::from_value(z); }

bool same_action(const ExtendedMoebius& a, const ExtendedMoebius& b, Rng& rng) {
    if (a.antiholomorphic != b.antiholomorphic) return false;
    for (int i = 0; i < 5; ++i) {
        const ProjectivePoint p = rng.point();
        if (chordal(a.apply(p), b.apply(p)) > 1e-11) return false;
    }
    return true;
}
}  // namespace

TEST_CASE("composition matches pointwise application", "[moebius]") {
    Rng rng(61);
    for (int i = 0; i < 60; ++i) {
        Eigen::Matrix2cd ma, mb;
        ma << rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss();
        mb << rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss();
        if (std::abs(ma.determinant()) < 1e-2 ||
            std::abs(mb.determinant()) < 1e-2)
            continue;
        const ExtendedMoebius a = (i % 2 == 0) ? ExtendedMoebius::holomorphic(ma)
                                               : ExtendedMoebius::antiholo(ma);
        const ExtendedMoebius b = (i % 3 == 0) ? ExtendedMoebius::holomorphic(mb)
                                               : ExtendedMoebius::antiholo(mb);
        const ExtendedMoebius ab = a * b;
        for (int k = 0; k < 4; ++k) {
            const ProjectivePoint p = rng.point();
            CHECK(chordal(ab.apply(p), a.apply(b.apply(p))) < 1e-11);
        }
        // inverse composes to the identity
        const ExtendedMoebius e = a * a.inverse();
        const ProjectivePoint q = rng.point();
        CHECK(chordal(e.apply(q), q) < 1e-11);
    }
}

TEST_CASE("associativity on random triples", "[moebius]") {
    Rng rng(62);
    for (int i = 0; i < 40; ++i) {
        Eigen::Matrix2cd m[3];
        ExtendedMoebius g[3];
        for (int k = 0; k < 3; ++k) {
            m[k] << rng.cgauss(), rng.cgauss(), rng.cgauss(), rng.cgauss();
            g[k] = (rng.uniform() < 0.5) ? ExtendedMoebius::holomorphic(m[k])
                                         : ExtendedMoebius::antiholo(m[k]);
        }
        CHECK(same_action((g[0] * g[1]) * g[2], g[0] * (g[1] * g[2]), rng));
    }
}

TEST_CASE("base reflections fix their faces and are involutions", "[moebius]") {
    const TetConfig t = base_tetrahedron();
    const auto refl = base_reflections();
    const int faces[4][3] = {{0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {0, 1, 2}};
    Rng rng(63);
    for (int i = 0; i < 4; ++i) {
        CHECK(refl[i].antiholomorphic);
        for (int v : faces[i])
            CHECK(chordal(refl[i].apply(t[v]), t[v]) < 1e-12);
        for (int k = 0; k < 10; ++k) {
            const ProjectivePoint p = rng.point();
            CHECK(chordal(refl[i].apply(refl[i].apply(p)), p) < 1e-12);
        }
    }
    // named images
    const cplx w = std::polar(1.0, std::numbers::pi / 3.0);
    CHECK(chordal(refl[0].apply(pt(w)), pt(std::conj(w))) < 1e-13);
    CHECK(chordal(refl[3].apply(ProjectivePoint::infinity()),
                  pt(cplx(0.5, std::sqrt(3.0) / 6.0))) < 1e-13);
    CHECK(std::abs(cplx(0.5, std::sqrt(3.0) / 6.0) - (cplx(3.0, std::sqrt(3.0)) / 6.0)) <
          1e-15);
}

TEST_CASE("each reflection maps the base cell to a distinct negative cell",
          "[moebius]") {
    const TetConfig t = base_tetrahedron();
    for (const ExtendedMoebius& r : base_reflections()) {
        TetConfig s;
        for (int i = 0; i < 4; ++i) s[i] = r.apply(t[i]);
        CHECK(std::abs(ideal_volume(s) + nu3()) < 1e-12);
    }
}

TEST_CASE("dilation in standard position doubles", "[moebius]") {
    const std::array<ProjectivePoint, 4> t{ProjectivePoint::infinity(), pt(cplx(0.0)),
                                           pt(cplx(1.0)), pt(cplx(5.0, 1.0))};
    const ExtendedMoebius mu = dilation_element(t);
    CHECK_FALSE(mu.antiholomorphic);
    CHECK(chordal(mu.apply(pt(cplx(3.0))), pt(cplx(6.0))) < 1e-12);
    CHECK(chordal(mu.apply(pt(cplx(-1.0, 2.0))), pt(cplx(-2.0, 4.0))) < 1e-12);
}

TEST_CASE("dilation fixes the first two vertices with multiplier two",
          "[moebius]") {
    const TetConfig base = base_tetrahedron();
    const ExtendedMoebius g = dilation_element(base);
    CHECK(chordal(g.apply(base[0]), base[0]) < 1e-10);
    CHECK(chordal(g.apply(base[1]), base[1]) < 1e-10);
    // in the chart sending vertex 0 to infinity and vertex 1 to 0 the map is
    // multiplication by 2: (g(z)-1)/g(z) = 2 (z-1)/z for the base vertices 0,1
    Rng rng(64);
    for (int i = 0; i < 20; ++i) {
        const cplx z = rng.cgauss();
        if (std::abs(z) < 0.1 || std::abs(z - 1.0) < 0.1) continue;
        const cplx gz = g.apply(pt(z)).value();
        const cplx lhs = (gz - 1.0) / gz;
        const cplx rhs = 2.0 * (z - 1.0) / z;
        CHECK(std::abs(lhs - rhs) < 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("dilation element does not depend on the translated tetrahedron",
          "[moebius]") {
    const TetConfig base = base_tetrahedron();
    const ExtendedMoebius g = dilation_element(base);
    TetConfig moved;
    for (int i = 0; i < 4; ++i) moved[i] = g.apply(base[i]);
    const ExtendedMoebius g2 = dilation_element(moved);
    Rng rng(65);
    CHECK(same_action(g, g2, rng));
}

TEST_CASE("orbit counts at small depth", "[tessellation]") {
    const auto base_refl = base_reflections();
    const std::vector<ExtendedMoebius> refl(base_refl.begin(), base_refl.end());
    CHECK(enumerate_orbit(refl, 0).size() == 1);
    CHECK(enumerate_orbit(refl, 1).size() == 5);
    CHECK(enumerate_orbit(refl, 2).size() == 17);
    // pairs of faces meet at angle pi/3, so r_i r_j has order 3 and the
    // braid relation identifies six of the 36 length three words
    CHECK(enumerate_orbit(refl, 3).size() == 47);

    std::vector<ExtendedMoebius> gens = refl;
    const ExtendedMoebius g = dilation_element(base_tetrahedron());
    gens.push_back(g);
    gens.push_back(g.inverse());
    CHECK(enumerate_orbit(gens, 1).size() == 7);
}

TEST_CASE("orbit cells are regular with alternating orientation",
          "[tessellation]") {
    const auto base_refl = base_reflections();
    const std::vector<ExtendedMoebius> refl(base_refl.begin(), base_refl.end());
    const auto cells = enumerate_orbit(refl, 4);
    for (const auto& c : cells) {
        const double v = ideal_volume(c.vertices);
        CHECK(std::abs(std::abs(v) - nu3()) < 1e-10);
        const double sign = (c.word.length() % 2 == 0) ? 1.0 : -1.0;
        CHECK(v * sign > 0.0);
        CHECK(c.word.reflections == c.word.length());
        CHECK(c.word.element.antiholomorphic == (c.word.length() % 2 == 1));
    }
}

TEST_CASE("orbit points begin with the base vertices", "[tessellation]") {
    const auto base_refl = base_reflections();
    const std::vector<ExtendedMoebius> refl(base_refl.begin(), base_refl.end());
    const auto cells = enumerate_orbit(refl, 1);
    const auto points = orbit_points(cells);
    CHECK(points.size() == 8);  // four base vertices plus one new per mirror
    const TetConfig base = base_tetrahedron();
    for (int i = 0; i < 4; ++i) CHECK(chordal(points[i], base[i]) < 1e-12);
}

TEST_CASE("word strings", "[tessellation]") {
    const auto base_refl = base_reflections();
    const std::vector<ExtendedMoebius> refl(base_refl.begin(), base_refl.end());
    const auto cells = enumerate_orbit(refl, 1);
    const std::vector<std::string> labels{"r1", "r2", "r3", "r4"};
    CHECK(word_string(cells[0].word, labels) == "e");
    std::set<std::string> seen;
    for (size_t i = 1; i < cells.size(); ++i)
        seen.insert(word_string(cells[i].word, labels));
    CHECK(seen == std::set<std::string>{"r1", "r2", "r3", "r4"});
}
