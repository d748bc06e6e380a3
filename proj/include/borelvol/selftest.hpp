#pragma once

// Fast internal consistency checks for the selftest subcommand.  Each check
// is independent and reports the worst deviation it saw.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "borelvol/borel.hpp"
#include "borelvol/dilog.hpp"
#include "borelvol/random.hpp"
#include "borelvol/rigidity.hpp"
#include "borelvol/tessellation.hpp"
#include "borelvol/veronese.hpp"

namespace borelvol {

struct SelfTestResult {
    std::string name;
    bool pass = false;
    double deviation = 0.0;
    double tolerance = 0.0;
};

inline std::vector<SelfTestResult> run_selftest(std::uint64_t seed = 20240817u) {
    std::vector<SelfTestResult> out;
    const auto check = [&out](const std::string& name, double dev, double tol) {
        out.push_back(SelfTestResult{name, dev <= tol, dev, tol});
    };
    Rng rng(seed);

    check("dilog_unit_imaginary",
          std::abs(bloch_wigner(cplx(0.0, 1.0)) - 0.9159655941772190), 2e-14);
    check("volume_regular_ideal", std::abs(nu3() - 1.0149416064096536), 2e-14);

    double dev = 0.0;
    for (int i = 0; i < 64; ++i) {
        const cplx z = rng.cgauss();
        dev = std::max(dev, std::abs(bloch_wigner(z) + bloch_wigner(std::conj(z))));
        dev = std::max(dev, std::abs(bloch_wigner(z) + bloch_wigner(1.0 / z)));
        dev = std::max(dev, std::abs(bloch_wigner(z) + bloch_wigner(1.0 - z)));
    }
    check("dilog_symmetries", dev, 1e-12);

    dev = 0.0;
    for (int i = 0; i < 8; ++i) {
        const TetConfig t{rng.point(), rng.point(), rng.point(), rng.point()};
        const FlagConfig f{veronese_flag(t[0], 2), veronese_flag(t[1], 2),
                           veronese_flag(t[2], 2), veronese_flag(t[3], 2)};
        dev = std::max(dev, std::abs(borel_cocycle(f) - ideal_volume(t)));
    }
    check("cocycle_dimension_two", dev, 1e-10);

    dev = 0.0;
    {
        const TetConfig t = base_tetrahedron();
        for (int n = 2; n <= 4; ++n) {
            const FlagConfig f{veronese_flag(t[0], n), veronese_flag(t[1], n),
                               veronese_flag(t[2], n), veronese_flag(t[3], n)};
            dev = std::max(dev, std::abs(borel_cocycle(f) - borel_bound(n)));
        }
    }
    check("cocycle_veronese_maximum", dev, 1e-9);

    dev = 0.0;
    {
        const int n = 3;
        FlagConfig f;
        for (auto& fl : f) fl = rng.flag(n);
        const double b = borel_cocycle(f);
        const Mat g = rng.invertible(n);
        FlagConfig gf;
        for (int i = 0; i < 4; ++i) gf[i] = f[i].transformed(g);
        dev = std::max(dev, std::abs(borel_cocycle(gf) - b));
        FlagConfig sw{f[1], f[0], f[2], f[3]};
        dev = std::max(dev, std::abs(borel_cocycle(sw) + b));
    }
    check("cocycle_invariance_alternation", dev, 1e-9);

    dev = 0.0;
    for (int i = 0; i < 6; ++i) {
        const int n = 3;
        const ProjectivePoint p = rng.point();
        const Mat a2 = rng.invertible(2);
        const GroupElement g = irreducible_rep(Eigen::Matrix2cd(a2), n);
        const ProjectivePoint q{a2(0, 0) * p.x + a2(0, 1) * p.y,
                                a2(1, 0) * p.x + a2(1, 1) * p.y};
        dev = std::max(dev, flag_distance(act_on_flag(g, veronese_flag(p, n)),
                                          veronese_flag(q, n)));
    }
    check("veronese_equivariance", dev, 1e-9);

    {
        const auto refl = base_reflections();
        const auto cells = enumerate_orbit(
            std::vector<ExtendedMoebius>(refl.begin(), refl.end()), 1);
        check("tessellation_first_shell",
              std::abs(static_cast<double>(cells.size()) - 5.0), 0.0);
    }

    dev = 0.0;
    for (int i = 0; i < 3; ++i) {
        const int n = 3;
        const Mat g = rng.invertible(n);
        const TetConfig t = base_tetrahedron();
        FlagConfig f;
        for (int j = 0; j < 4; ++j) f[j] = veronese_flag(t[j], n).transformed(g);
        const RecoveredNormalizer rec = recover_normalizer(f, 1e-6);
        dev = std::max(dev, rec.residual);
    }
    check("normalizer_roundtrip", dev, 1e-7);

    return out;
}

}  // namespace borelvol
