#pragma once

// The degree-three cocycle on quadruples of complete flags: for every
// multi-index J the four decorated flags induce a spanned class in the
// quotient W(J+1)/W(J), and the cocycle is the sum of the extended volumes
// of those classes.  The value is independent of the decorations, bounded
// by binom(n+1,3) nu3, alternating, and PGL(n,C)-invariant.

#include <array>
#include <cstdint>
#include <vector>

#include "borelvol/combinatorics.hpp"
#include "borelvol/flag.hpp"
#include "borelvol/volume.hpp"

namespace borelvol {

using FlagConfig = std::array<Flag, 4>;

inline constexpr std::uint64_t default_decoration_seed = 0x5eed0001u;

inline double borel_bound(int n) { return binom(n + 1, 3) * nu3(); }

// Spanned class of the multi-index J: the images of the decorations
// v_i^{J_i + 1} in (F_0^{J_0+1} + ... + F_3^{J_3+1}) / (F_0^{J_0} + ... + F_3^{J_3}),
// realized as coordinates in an orthonormal basis of the complement.
inline SpannedClass quotient_class(const std::array<AffineFlag, 4>& f,
                                   const std::array<int, 4>& j) {
    const int n = f[0].n();
    int dcols = 0, ncols = 0;
    for (int i = 0; i < 4; ++i) {
        if (j[i] < 0 || j[i] > n - 1)
            throw std::invalid_argument("multi-index entry out of range");
        dcols += j[i];
        ncols += j[i] + 1;
    }
    Mat den(n, dcols), num(n, ncols);
    int da = 0, na = 0;
    for (int i = 0; i < 4; ++i) {
        den.middleCols(da, j[i]) = f[i].flag.step(j[i]);
        da += j[i];
        num.middleCols(na, j[i] + 1) = f[i].flag.step(j[i] + 1);
        na += j[i] + 1;
    }
    const OrthoSplit sd = ortho_split(den);
    const OrthoSplit sn = ortho_split(num);
    const int m = sn.rank - sd.rank;

    SpannedClass c;
    c.m = m;
    c.vectors = Mat::Zero(m, 4);
    if (m == 0) return c;

    const Mat comp = sd.complement();             // n x (n - d)
    const OrthoSplit sq = ortho_split(comp.adjoint() * sn.range());
    if (sq.rank != m)
        throw conditioning_error("ill-conditioned configuration: quotient basis rank mismatch");
    const Mat u = comp * sq.range();              // n x m, spans num inside den-complement
    for (int i = 0; i < 4; ++i)
        c.vectors.col(i) = u.adjoint() * f[i].decoration(j[i] + 1);
    return c;
}

namespace detail {

// Orthonormal range bases and ranks for every multi-index in {0..n}^4 of
// summed flag steps; shared between the numerator and denominator of each J.
struct StepTable {
    int n;
    std::vector<OrthoSplit> cell;  // (n+1)^4 entries

    const OrthoSplit& at(int a, int b, int c, int d) const {
        const int s = n + 1;
        return cell[((a * s + b) * s + c) * s + d];
    }
};

inline StepTable build_step_table(const std::array<Flag, 4>& f) {
    const int n = f[0].n();
    std::array<Mat, 4> q;
    for (int i = 0; i < 4; ++i) q[i] = f[i].orthonormalized().basis();
    StepTable t;
    t.n = n;
    const int s = n + 1;
    t.cell.resize(static_cast<size_t>(s) * s * s * s);
    std::array<int, 4> j{};
    for (j[0] = 0; j[0] <= n; ++j[0])
        for (j[1] = 0; j[1] <= n; ++j[1])
            for (j[2] = 0; j[2] <= n; ++j[2])
                for (j[3] = 0; j[3] <= n; ++j[3]) {
                    Mat cols(n, j[0] + j[1] + j[2] + j[3]);
                    int at = 0;
                    for (int i = 0; i < 4; ++i) {
                        cols.middleCols(at, j[i]) = q[i].leftCols(j[i]);
                        at += j[i];
                    }
                    t.cell[((j[0] * s + j[1]) * s + j[2]) * s + j[3]] =
                        ortho_split(cols);
                }
    return t;
}

}  // namespace detail

// Cocycle value with internally seeded decorations (the result does not
// depend on them).  Multi-indices are accumulated in lexicographic order
// with compensated summation.
inline double borel_cocycle(const FlagConfig& f,
                            std::uint64_t seed = default_decoration_seed) {
    const int n = f[0].n();
    for (const Flag& fl : f)
        if (fl.n() != n) throw std::invalid_argument("flags must share the ambient dimension");

    std::array<AffineFlag, 4> af{decorate(f[0], detail::mix_seed(seed, 0)),
                                 decorate(f[1], detail::mix_seed(seed, 1)),
                                 decorate(f[2], detail::mix_seed(seed, 2)),
                                 decorate(f[3], detail::mix_seed(seed, 3))};
    const detail::StepTable table = detail::build_step_table(f);

    double sum = 0.0, comp = 0.0;  // Kahan
    std::array<int, 4> j{};
    for (j[0] = 0; j[0] <= n - 1; ++j[0])
        for (j[1] = 0; j[1] <= n - 1; ++j[1])
            for (j[2] = 0; j[2] <= n - 1; ++j[2])
                for (j[3] = 0; j[3] <= n - 1; ++j[3]) {
                    const OrthoSplit& sd = table.at(j[0], j[1], j[2], j[3]);
                    const OrthoSplit& sn =
                        table.at(j[0] + 1, j[1] + 1, j[2] + 1, j[3] + 1);
                    const int m = sn.rank - sd.rank;
                    if (m != 2) continue;
                    const Mat cm = sd.complement();
                    const OrthoSplit sq = ortho_split(cm.adjoint() * sn.range());
                    if (sq.rank != 2)
                        throw conditioning_error(
                            "ill-conditioned configuration: quotient basis rank mismatch");
                    const Mat u = cm * sq.q.leftCols(2);
                    SpannedClass c;
                    c.m = 2;
                    c.vectors = Mat(2, 4);
                    for (int i = 0; i < 4; ++i)
                        c.vectors.col(i) =
                            u.adjoint() * af[i].decoration(j[i] + 1);
                    const double v = class_volume(c);
                    const double y = v - comp;
                    const double t = sum + y;
                    comp = (t - sum) - y;
                    sum = t;
                }
    return sum;
}

// Alternating sum of the cocycle over the five omit-one quadruples.
inline double borel_coboundary(const std::array<Flag, 5>& f,
                               std::uint64_t seed = default_decoration_seed) {
    double acc = 0.0;
    for (int omit = 0; omit < 5; ++omit) {
        std::array<Flag, 4> h;
        int at = 0;
        for (int i = 0; i < 5; ++i)
            if (i != omit) h[at++] = f[i];
        const double sign = (omit % 2 == 0) ? 1.0 : -1.0;
        acc += sign * borel_cocycle(h, seed);
    }
    return acc;
}

// Block join: steps of the first flag, then the first block extended by the
// steps of the second.  Decorations are the originals, zero padded.
inline AffineFlag block_join(const AffineFlag& a, const AffineFlag& b) {
    const int n1 = a.n(), n2 = b.n(), n = n1 + n2;
    Mat basis = Mat::Zero(n, n);
    basis.topLeftCorner(n1, n1) = a.flag.basis();
    basis.bottomRightCorner(n2, n2) = b.flag.basis();
    Mat vec = Mat::Zero(n, n);
    vec.topLeftCorner(n1, n1) = a.vectors;
    vec.bottomRightCorner(n2, n2) = b.vectors;
    return AffineFlag{Flag(basis), std::move(vec)};
}

inline Flag block_join(const Flag& a, const Flag& b) {
    const int n1 = a.n(), n2 = b.n(), n = n1 + n2;
    Mat basis = Mat::Zero(n, n);
    basis.topLeftCorner(n1, n1) = a.basis();
    basis.bottomRightCorner(n2, n2) = b.basis();
    return Flag(basis);
}

struct PartitionBound {
    double parts_value;    // sum of the per-block bounds
    double full_value;     // bound for the joined dimension
    bool strict;           // parts_value < full_value in exact integers
    long long parts_int;   // sum binom(n_i + 1, 3)
    long long full_int;    // binom(n + 1, 3)
};

// Exact comparison of the partitioned bound against the unpartitioned one;
// strict for every nontrivial partition.
inline PartitionBound partition_bound(int n, const std::vector<int>& parts) {
    int total = 0;
    long long pi = 0;
    for (int p : parts) {
        if (p < 1) throw std::invalid_argument("partition parts must be positive");
        total += p;
        pi += binom_ll(p + 1, 3);
    }
    if (total != n) throw std::invalid_argument("partition must sum to n");
    const long long fi = binom_ll(n + 1, 3);
    return PartitionBound{static_cast<double>(pi) * nu3(),
                          static_cast<double>(fi) * nu3(), pi < fi, pi, fi};
}

inline std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    const auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

}  // namespace borelvol
