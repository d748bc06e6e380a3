// The cocycle on flag quadruples: reduction to the ideal volume, the
// Veronese maximum, symmetry and cocycle properties, block joins, and the
// partition bound table.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "borelvol/borel.hpp"
#include "borelvol/moebius.hpp"
#include "borelvol/random.hpp"
#include "borelvol/veronese.hpp"

using namespace borelvol;

namespace {

FlagConfig veronese_config(const TetConfig& t, int n) {
    return FlagConfig{veronese_flag(t[0], n), veronese_flag(t[1], n),
                      veronese_flag(t[2], n), veronese_flag(t[3], n)};
}

FlagConfig random_config(Rng& rng, int n) {
    return FlagConfig{rng.flag(n), rng.flag(n), rng.flag(n), rng.flag(n)};
}

}  // namespace

TEST_CASE("two dimensional cocycle is the ideal volume", "[borel]") {
    Rng rng(51);
    for (int i = 0; i < 200; ++i) {
        const TetConfig t{rng.point(), rng.point(), rng.point(), rng.point()};
        CHECK(std::abs(borel_cocycle(veronese_config(t, 2)) - ideal_volume(t)) <
              1e-10);
    }
}

TEST_CASE("Veronese quadruples achieve the bound", "[borel]") {
    const TetConfig t = base_tetrahedron();
    CHECK(std::abs(borel_cocycle(veronese_config(t, 3)) - 4.0597664256386144) <
          1e-9);
    CHECK(std::abs(borel_bound(3) - 4.0 * nu3()) < 1e-15);
    CHECK(std::abs(borel_cocycle(veronese_config(t, 4)) - 10.0 * nu3()) < 1e-8);

    // mirrored tetrahedron gives the negative extreme
    TetConfig m = t;
    m[2] = ProjectivePoint::from_value(std::polar(1.0, -std::numbers::pi / 3.0));
    CHECK(std::abs(borel_cocycle(veronese_config(m, 3)) + 4.0 * nu3()) < 1e-9);
}

TEST_CASE("cocycle sums quotient class volumes", "[borel]") {
    // cross-check against the direct per-multi-index computation
    Rng rng(52);
    for (int n : {2, 3}) {
        const FlagConfig f = random_config(rng, n);
        std::array<AffineFlag, 4> dec;
        for (int i = 0; i < 4; ++i)
            dec[i] = decorate(f[i], detail::mix_seed(default_decoration_seed, i));
        double sum = 0.0;
        std::array<int, 4> j{};
        for (j[0] = 0; j[0] < n; ++j[0])
            for (j[1] = 0; j[1] < n; ++j[1])
                for (j[2] = 0; j[2] < n; ++j[2])
                    for (j[3] = 0; j[3] < n; ++j[3])
                        sum += class_volume(quotient_class(dec, j));
        CHECK(std::abs(borel_cocycle(f) - sum) < 1e-11);
    }
}

TEST_CASE("projective invariance", "[borel]") {
    Rng rng(53);
    for (int i = 0; i < 30; ++i) {
        const int n = 2 + i % 3;
        const FlagConfig f = random_config(rng, n);
        const double b = borel_cocycle(f);
        const Mat g = rng.invertible(n);
        FlagConfig gf;
        for (int k = 0; k < 4; ++k) gf[k] = f[k].transformed(g);
        CHECK(std::abs(borel_cocycle(gf) - b) < 1e-9);
    }
}

TEST_CASE("alternation under permutations", "[borel]") {
    Rng rng(54);
    for (int i = 0; i < 20; ++i) {
        const int n = 3;
        const FlagConfig f = random_config(rng, n);
        const double b = borel_cocycle(f);
        const FlagConfig swap01{f[1], f[0], f[2], f[3]};
        CHECK(std::abs(borel_cocycle(swap01) + b) < 1e-9);
        const FlagConfig swap23{f[0], f[1], f[3], f[2]};
        CHECK(std::abs(borel_cocycle(swap23) + b) < 1e-9);
        const FlagConfig cyc{f[1], f[2], f[0], f[3]};  // even permutation
        CHECK(std::abs(borel_cocycle(cyc) - b) < 1e-9);
    }
}

TEST_CASE("decoration independence", "[borel]") {
    Rng rng(55);
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + i % 3;
        const FlagConfig f = random_config(rng, n);
        CHECK(std::abs(borel_cocycle(f, 17) - borel_cocycle(f, 90210)) < 1e-10);
    }
}

TEST_CASE("complex conjugation flips the sign", "[borel]") {
    Rng rng(56);
    for (int i = 0; i < 15; ++i) {
        const FlagConfig f = random_config(rng, 3);
        FlagConfig cf;
        for (int k = 0; k < 4; ++k) cf[k] = f[k].conjugated();
        CHECK(std::abs(borel_cocycle(cf) + borel_cocycle(f)) < 1e-9);
    }
}

TEST_CASE("coboundary of five flags vanishes", "[borel]") {
    Rng rng(57);
    for (int i = 0; i < 15; ++i) {
        const int n = 2 + i % 3;
        const std::array<Flag, 5> f{rng.flag(n), rng.flag(n), rng.flag(n),
                                    rng.flag(n), rng.flag(n)};
        CHECK(std::abs(borel_coboundary(f)) < 1e-8);
    }
}

TEST_CASE("boundedness on random configurations", "[borel]") {
    Rng rng(58);
    for (int i = 0; i < 300; ++i) {
        const int n = 2 + i % 3;
        const double b = std::abs(borel_cocycle(random_config(rng, n)));
        CHECK(b <= borel_bound(n) + 1e-9);
        if (n == 3) CHECK(borel_bound(n) - b > 0.1);
    }
}

TEST_CASE("block joins add", "[borel]") {
    Rng rng(59);
    for (int i = 0; i < 20; ++i) {
        const FlagConfig f2 = random_config(rng, 2);
        const FlagConfig g2 = random_config(rng, 2);
        FlagConfig joined;
        for (int k = 0; k < 4; ++k) joined[k] = block_join(f2[k], g2[k]);
        const double lhs = borel_cocycle(joined);
        const double rhs = borel_cocycle(f2) + borel_cocycle(g2);
        CHECK(std::abs(lhs - rhs) < 1e-8);

        // joining a trivial one dimensional flag keeps the value
        FlagConfig padded;
        for (int k = 0; k < 4; ++k)
            padded[k] = block_join(Flag(Mat::Identity(1, 1)), f2[k]);
        CHECK(std::abs(borel_cocycle(padded) - borel_cocycle(f2)) < 1e-8);
    }
}

TEST_CASE("partition bound table", "[borel]") {
    const auto parts3 = partitions_of(3);
    REQUIRE(parts3.size() == 3);
    CHECK(partition_bound(3, {3}).strict == false);
    CHECK(partition_bound(3, {2, 1}).strict == true);
    CHECK(partition_bound(3, {1, 1, 1}).strict == true);
    CHECK(partition_bound(3, {2, 1}).parts_int == 1);
    CHECK(partition_bound(3, {3}).full_int == 4);

    // partition counts p(n) for n = 1..8
    const int expected[] = {1, 2, 3, 5, 7, 11, 15, 22};
    for (int n = 1; n <= 8; ++n)
        CHECK(static_cast<int>(partitions_of(n).size()) == expected[n - 1]);

    CHECK_THROWS_AS(partition_bound(3, {2, 2}), std::invalid_argument);
    CHECK_THROWS_AS(partition_bound(3, {3, 0}), std::invalid_argument);
}

TEST_CASE("general position of random flags", "[borel]") {
    Rng rng(60);
    for (int i = 0; i < 10; ++i) {
        const FlagConfig f = random_config(rng, 4);
        CHECK(general_position({f[0], f[1], f[2], f[3]}));
    }
}
