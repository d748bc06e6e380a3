#pragma once

// Rigidity experiments around the maximum of the cocycle: maximality defect,
// recovery of the normalizing element of a maximal quadruple, derivative-free
// maximization, and synthetic asymptotically maximal representation
// sequences whose conjugators are recovered step by step.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "borelvol/borel.hpp"
#include "borelvol/moebius.hpp"
#include "borelvol/optimize.hpp"
#include "borelvol/random.hpp"
#include "borelvol/tessellation.hpp"
#include "borelvol/veronese.hpp"

namespace borelvol {

inline double maximality_defect(const FlagConfig& f,
                                std::uint64_t seed = default_decoration_seed) {
    return borel_bound(f[0].n()) - std::abs(borel_cocycle(f, seed));
}

struct RecoveredNormalizer {
    GroupElement g;
    TetConfig tetra;  // (0, 1, exp(sign i pi/3), inf)
    double residual;  // worst flag distance after mapping
    int sign;
};

// Verification allows residuals up to this factor times sqrt(tol): the
// defect is quadratic around the maximum, so flag distances scale like the
// square root of the allowed defect.
inline constexpr double recover_verify_factor = 10.0;

// Reconstructs g with g . F_i = veronese_flag(t_i) for a maximal quadruple:
// the intersection lines F_3^i cap F_0^(n-i+1) go to the coordinate lines,
// the line of F_1 fixes the relative scales, the sign of the cocycle picks
// the third vertex, and all four flags are verified at the end.
inline RecoveredNormalizer recover_normalizer(
    const FlagConfig& f, double tol = 1e-8,
    std::uint64_t seed = default_decoration_seed) {
    const int n = f[0].n();
    const double b = borel_cocycle(f, seed);
    if (borel_bound(n) - std::abs(b) > tol)
        throw recovery_error("not maximal");

    const Mat q0 = f[0].orthonormalized().basis();
    const Mat q3 = f[3].orthonormalized().basis();
    Mat u(n, n);
    for (int i = 1; i <= n; ++i) {
        Mat cat(n, n + 1);
        cat.leftCols(i) = q3.leftCols(i);
        cat.rightCols(n - i + 1) = -q0.leftCols(n - i + 1);
        Eigen::JacobiSVD<Mat> svd(cat, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        if (sv(n - 1) <= 1e-6 * sv(0))
            throw recovery_error("degenerate intersection");
        const Vec nullv = svd.matrixV().col(n);
        Vec x = q3.leftCols(i) * nullv.head(i);
        const double nx = x.norm();
        if (nx < 1e-8)
            throw recovery_error("degenerate intersection");
        u.col(i - 1) = x / nx;
    }

    const Vec w = f[1].orthonormalized().basis().col(0);
    Eigen::PartialPivLU<Mat> lu(u);
    const Vec y = lu.solve(w);
    Vec lambda(n);
    for (int i = 0; i < n; ++i) {
        if (std::abs(y(i)) < 1e-10 * y.norm())
            throw recovery_error("degenerate intersection");
        lambda(i) = binom(n - 1, i) / y(i);
    }
    const GroupElement g(lambda.asDiagonal() * u.inverse());

    const int sign = (b >= 0.0) ? 1 : -1;
    const TetConfig t{ProjectivePoint::from_value(cplx(0.0)),
                      ProjectivePoint::from_value(cplx(1.0)),
                      ProjectivePoint::from_value(
                          std::polar(1.0, sign * std::numbers::pi / 3.0)),
                      ProjectivePoint::infinity()};
    double residual = 0.0;
    for (int i = 0; i < 4; ++i)
        residual = std::max(
            residual, flag_distance(act_on_flag(g, f[i]), veronese_flag(t[i], n)));
    if (residual > recover_verify_factor * std::sqrt(tol))
        throw recovery_error("verification failed");
    return RecoveredNormalizer{g, t, residual, sign};
}

// ---------------------------------------------------------------------------
// Maximization

namespace detail {

inline int unitary_param_count(int n) { return n * n; }

inline Mat skew_from_params(const Eigen::Ref<const RealVec>& th, int n) {
    Mat h = Mat::Zero(n, n);
    int at = 0;
    for (int i = 0; i < n; ++i) h(i, i) = cplx(0.0, th(at++));
    const double r = 1.0 / std::numbers::sqrt2;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            const double a = th(at++), b = th(at++);
            h(p, q) = cplx(a, b) * r;
            h(q, p) = cplx(-a, b) * r;
        }
    return h;
}

inline RealVec params_from_skew(const Mat& h) {
    const int n = static_cast<int>(h.rows());
    RealVec th(unitary_param_count(n));
    int at = 0;
    for (int i = 0; i < n; ++i) th(at++) = h(i, i).imag();
    const double r = std::numbers::sqrt2;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
            th(at++) = r * h(p, q).real();
            th(at++) = r * h(p, q).imag();
        }
    return th;
}

// skew-Hermitian logarithm of a unitary matrix via its Schur form
inline Mat log_unitary(const Mat& q) {
    const int n = static_cast<int>(q.rows());
    Eigen::ComplexSchur<Mat> schur(q);
    Vec lg(n);
    for (int i = 0; i < n; ++i) {
        const cplx d = schur.matrixT()(i, i);
        lg(i) = cplx(0.0, std::arg(d));
    }
    const Mat s = schur.matrixU() * lg.asDiagonal() * schur.matrixU().adjoint();
    return 0.5 * (s - s.adjoint());  // enforce exact skew symmetry
}

}  // namespace detail

struct MaximizeReport {
    int n = 0;
    double value = 0.0;   // |cocycle| at the best configuration found
    double defect = 0.0;  // bound - value
    FlagConfig flags;
    long evals = 0;
};

// Multistart restarted simplex ascent of |cocycle| over quadruples of flags
// parametrized by unitary bases (exponentials of skew-Hermitian matrices).
// Ill-conditioned configurations count as objective -infinity.
inline MaximizeReport maximize_borel(int n, long budget, std::uint64_t seed,
                                     int starts = 8,
                                     const FlagConfig* warm_start = nullptr) {
    const int per_flag = detail::unitary_param_count(n);
    const int dim = 4 * per_flag;
    const double bound = borel_bound(n);
    const double target_defect = 1e-10;

    const auto unpack = [&](const RealVec& x) -> FlagConfig {
        FlagConfig f;
        for (int i = 0; i < 4; ++i) {
            const Mat h = detail::skew_from_params(x.segment(i * per_flag, per_flag), n);
            f[i] = Flag(expm_skew(h));
        }
        return f;
    };
    const Objective obj = [&](const RealVec& x) -> double {
        try {
            return -std::abs(borel_cocycle(unpack(x)));
        } catch (const conditioning_error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    Rng rng(seed);
    RealVec best_x;
    double best_v = std::numeric_limits<double>::infinity();
    long used = 0;
    for (int s = 0; s < starts && used < budget; ++s) {
        RealVec x0(dim);
        if (s == 0 && warm_start) {
            for (int i = 0; i < 4; ++i) {
                const Mat q = (*warm_start)[i].orthonormalized().basis();
                x0.segment(i * per_flag, per_flag) =
                    detail::params_from_skew(detail::log_unitary(q));
            }
        } else {
            for (int i = 0; i < dim; ++i) x0(i) = rng.uniform(-1.2, 1.2);
        }
        const long slice = std::min(budget - used, budget / starts + 1);
        const SimplexResult r =
            nelder_mead_restarted(obj, x0, 0.7, slice, -(bound - target_defect));
        used += r.evals;
        if (r.value < best_v) {
            best_v = r.value;
            best_x = r.x;
        }
        if (best_v <= -(bound - target_defect)) break;
    }
    MaximizeReport rep;
    rep.n = n;
    rep.value = -best_v;
    rep.defect = bound + best_v;
    rep.flags = unpack(best_x);
    rep.evals = used;
    return rep;
}

// ---------------------------------------------------------------------------
// Synthetic representation sequences

struct EpsSchedule {
    enum class Kind { zero, pow2, geometric } kind = Kind::pow2;
    double scale = 1.0;
    double ratio = 0.5;

    double at(int k) const {
        switch (kind) {
            case Kind::zero: return 0.0;
            case Kind::pow2: return std::ldexp(1.0, -k);
            default: return scale * std::pow(ratio, k);
        }
    }
};

struct DriftSpec {
    enum class Kind { none, diag, random } kind = Kind::diag;
    double scale = 0.08;
};

// Traceless generator matrix for the conjugator drift c_k = exp(k X).
inline Mat make_drift(int n, const DriftSpec& spec, std::uint64_t seed) {
    switch (spec.kind) {
        case DriftSpec::Kind::none:
            return Mat::Zero(n, n);
        case DriftSpec::Kind::diag: {
            Mat x = Mat::Zero(n, n);
            for (int i = 0; i < n; ++i)
                x(i, i) = spec.scale * (0.5 * (n - 1) - i);
            return x;
        }
        default: {
            Rng rng(detail::mix_seed(seed, 0xd71f7u));
            return spec.scale * rng.traceless(n);
        }
    }
}

// Everything one run of the experiment needs: orbit points with their
// Veronese targets, the per-step boundary-map samples, the representation
// images, and the ground-truth conjugators.
struct SyntheticRun {
    int n = 3, K = 30, L = 4;
    std::vector<Eigen::Matrix2cd> group_generators;
    std::vector<GroupElement> rep_targets;           // pi_n(generator)
    std::vector<std::vector<GroupElement>> images;   // [k][generator]
    std::vector<GroupElement> conjugators;           // c_k
    std::vector<double> eps;                         // noise scale per step
    std::vector<ProjectivePoint> points;             // first four: base tetra
    std::vector<Flag> targets;                       // veronese flag per point
    std::vector<std::vector<Flag>> samples;          // [k][point]
    TetConfig base, translated;
    std::array<int, 4> translated_index{};           // positions in `points`
};

// Parabolic generator pair of the figure-eight knot group, a torsion-free
// lattice acting on the tessellation's commensurability class.
inline std::vector<Eigen::Matrix2cd> default_group_generators() {
    Eigen::Matrix2cd a, b;
    a << 1.0, 1.0, 0.0, 1.0;
    const cplx w = std::polar(1.0, std::numbers::pi / 3.0);
    b << 1.0, 0.0, -w, 1.0;
    return {a, b};
}

// Builds rho_k = c_k (pi_n . ) c_k^{-1} together with boundary-map samples
// phi_k = c_k exp(eps_k S_p) V(p) over the reflection-and-dilation orbit up
// to word length L.  Noise directions are frozen per point so the decay of
// the recovery errors tracks the schedule cleanly.
inline SyntheticRun synthesize_sequence(int n, int K, int L, const Mat& drift,
                                        const EpsSchedule& eps_schedule,
                                        std::uint64_t seed) {
    SyntheticRun run;
    run.n = n;
    run.K = K;
    run.L = L;
    run.base = base_tetrahedron();

    const auto refl = base_reflections();
    std::vector<ExtendedMoebius> gens(refl.begin(), refl.end());
    const ExtendedMoebius gamma = dilation_element(run.base);
    gens.push_back(gamma);
    gens.push_back(gamma.inverse());

    const auto cells = enumerate_orbit(gens, L);
    run.points = orbit_points(cells);
    for (int i = 0; i < 4; ++i) run.translated[i] = gamma.apply(run.base[i]);
    for (int i = 0; i < 4; ++i) {
        int found = -1;
        for (size_t p = 0; p < run.points.size() && found < 0; ++p)
            if (chordal(run.points[p], run.translated[i]) <= 1e-9)
                found = static_cast<int>(p);
        if (found < 0)
            throw std::logic_error("translated tetrahedron not covered by the orbit");
        run.translated_index[i] = found;
    }

    run.group_generators = default_group_generators();
    for (const auto& g : run.group_generators)
        run.rep_targets.push_back(irreducible_rep(g, n));

    run.targets.reserve(run.points.size());
    std::vector<Mat> noise_dirs;
    noise_dirs.reserve(run.points.size());
    for (size_t p = 0; p < run.points.size(); ++p) {
        run.targets.push_back(veronese_flag(run.points[p], n));
        Rng prng(detail::mix_seed(seed, 1000 + static_cast<std::uint64_t>(p)));
        noise_dirs.push_back(prng.skew_hermitian(n));
    }

    run.images.resize(K);
    run.samples.resize(K);
    for (int k = 0; k < K; ++k) {
        const GroupElement ck(expm((static_cast<double>(k) * drift).eval()));
        run.conjugators.push_back(ck);
        const GroupElement cki = ck.inverse();
        for (const auto& t : run.rep_targets)
            run.images[k].push_back(ck * t * cki);
        const double e = eps_schedule.at(k);
        run.eps.push_back(e);
        run.samples[k].reserve(run.points.size());
        for (size_t p = 0; p < run.points.size(); ++p) {
            const Mat noise = (e == 0.0)
                                  ? Mat::Identity(n, n)
                                  : expm_skew((e * noise_dirs[p]).eval());
            run.samples[k].push_back(
                Flag(ck.m * noise * run.targets[p].basis()));
        }
    }
    return run;
}

struct PropagationRow {
    int k = 0;
    double eps = 0.0;
    double defect = std::numeric_limits<double>::quiet_NaN();
    double prop_dist = std::numeric_limits<double>::quiet_NaN();
    double rep_dist = std::numeric_limits<double>::quiet_NaN();
    double delta_dist = std::numeric_limits<double>::quiet_NaN();
    std::string status = "ok";
};

// Per step: recover the normalizer from the base-tetrahedron flags, check it
// propagates over the whole orbit, check it conjugates the representation
// back to pi_n, and compare against the recovery from the dilation-translated
// tetrahedron.  Failures are recorded and skipped, never fatal.
inline std::vector<PropagationRow> propagate_and_recover(const SyntheticRun& run,
                                                         double tol = 1e-3) {
    std::vector<PropagationRow> rows;
    const int n = run.n;
    for (int k = 0; k < run.K; ++k) {
        PropagationRow row;
        row.k = k;
        row.eps = run.eps[k];
        const FlagConfig base{run.samples[k][0], run.samples[k][1],
                              run.samples[k][2], run.samples[k][3]};
        try {
            row.defect = maximality_defect(base);
            const RecoveredNormalizer rec = recover_normalizer(base, tol);

            double prop = 0.0;
            for (size_t p = 0; p < run.points.size(); ++p)
                prop = std::max(prop,
                                flag_distance(act_on_flag(rec.g, run.samples[k][p]),
                                              run.targets[p]));
            row.prop_dist = prop;

            const GroupElement gi = rec.g.inverse();
            double repd = 0.0;
            for (size_t g = 0; g < run.rep_targets.size(); ++g)
                repd = std::max(repd,
                                projective_distance(rec.g * run.images[k][g] * gi,
                                                    run.rep_targets[g]));
            row.rep_dist = repd;

            const FlagConfig trf{run.samples[k][run.translated_index[0]],
                                 run.samples[k][run.translated_index[1]],
                                 run.samples[k][run.translated_index[2]],
                                 run.samples[k][run.translated_index[3]]};
            const RecoveredNormalizer rec2 = recover_normalizer(trf, tol);
            const ExtendedMoebius m = moebius_to_standard(
                run.translated[0], run.translated[1], run.translated[3]);
            const GroupElement pm = irreducible_rep(m, n);
            const GroupElement g2(pm.m.inverse() * rec2.g.m);
            row.delta_dist = projective_distance(rec.g, g2);
        } catch (const conditioning_error& e) {
            row.status = e.what();
        } catch (const recovery_error& e) {
            row.status = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace borelvol
