#pragma once

// Orbit of the base ideal tetrahedron under words in a generator list
// (face reflections, optionally the dilation element).  Cells are
// deduplicated as unordered vertex sets with a phase-free projector key.

#include <cstdint>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "borelvol/moebius.hpp"
#include "borelvol/volume.hpp"

namespace borelvol {

struct GroupWord {
    std::vector<int> letters;  // indices into the generator list
    ExtendedMoebius element;   // product, applied right to left
    int reflections = 0;       // count of orientation-reversing letters

    int length() const { return static_cast<int>(letters.size()); }
};

struct OrbitCell {
    GroupWord word;
    TetConfig vertices;
};

namespace detail {

// Order-free scalar fingerprint of a vertex set: an irrationally weighted
// sum of the entries of the four line projectors.  Two cells equal within
// 1e-9 land in the same or adjacent 1e-6 bucket.
inline double tet_fingerprint(const TetConfig& t) {
    double s = 0.0;
    for (const auto& p : t) {
        const Eigen::Matrix2cd pr = line_projector(p);
        s += pr(0, 0).real() + std::numbers::sqrt2 * pr(0, 1).real() +
             std::numbers::sqrt3 * pr(0, 1).imag();
    }
    return s;
}

inline bool tets_match(const TetConfig& a, const TetConfig& b, double tol) {
    bool used[4] = {false, false, false, false};
    for (int i = 0; i < 4; ++i) {
        bool hit = false;
        for (int k = 0; k < 4 && !hit; ++k) {
            if (!used[k] && chordal(a[i], b[k]) <= tol) {
                used[k] = true;
                hit = true;
            }
        }
        if (!hit) return false;
    }
    return true;
}

}  // namespace detail

// Breadth-first enumeration of distinct cells reachable within `depth`
// letters.  Deterministic: generators are tried in order and cells are
// emitted in discovery order.
inline std::vector<OrbitCell> enumerate_orbit(
    const std::vector<ExtendedMoebius>& generators, int depth,
    const TetConfig& base = base_tetrahedron(), double tol = 1e-9) {
    std::vector<OrbitCell> cells;
    std::unordered_map<long long, std::vector<size_t>> buckets;

    const auto apply_to = [](const ExtendedMoebius& g, const TetConfig& t) {
        TetConfig r;
        for (int i = 0; i < 4; ++i) r[i] = g.apply(t[i]);
        return r;
    };
    const auto try_emit = [&](GroupWord w, const TetConfig& t) -> bool {
        const double fp = detail::tet_fingerprint(t);
        const long long key = std::llround(fp / 1e-6);
        for (long long k = key - 1; k <= key + 1; ++k) {
            const auto it = buckets.find(k);
            if (it == buckets.end()) continue;
            for (size_t idx : it->second)
                if (detail::tets_match(cells[idx].vertices, t, tol)) return false;
        }
        buckets[key].push_back(cells.size());
        cells.push_back(OrbitCell{std::move(w), t});
        return true;
    };

    try_emit(GroupWord{{}, ExtendedMoebius::identity(), 0}, base);
    std::deque<size_t> frontier{0};
    while (!frontier.empty()) {
        const size_t at = frontier.front();
        frontier.pop_front();
        if (cells[at].word.length() >= depth) continue;
        for (int g = 0; g < static_cast<int>(generators.size()); ++g) {
            GroupWord w = cells[at].word;
            w.letters.push_back(g);
            w.element = w.element * generators[g];
            if (generators[g].antiholomorphic) ++w.reflections;
            const TetConfig t = apply_to(w.element, base);
            if (try_emit(std::move(w), t)) frontier.push_back(cells.size() - 1);
        }
    }
    return cells;
}

// Distinct vertices appearing in a cell list, discovery order.
inline std::vector<ProjectivePoint> orbit_points(const std::vector<OrbitCell>& cells,
                                                 double tol = 1e-9) {
    std::vector<ProjectivePoint> pts;
    std::unordered_map<long long, std::vector<size_t>> buckets;
    const auto fingerprint = [](const ProjectivePoint& p) {
        const Eigen::Matrix2cd pr = line_projector(p);
        return pr(0, 0).real() + std::numbers::sqrt2 * pr(0, 1).real() +
               std::numbers::sqrt3 * pr(0, 1).imag();
    };
    for (const auto& c : cells)
        for (const auto& p : c.vertices) {
            const long long key = std::llround(fingerprint(p) / 1e-6);
            bool seen = false;
            for (long long k = key - 1; k <= key + 1 && !seen; ++k) {
                const auto it = buckets.find(k);
                if (it == buckets.end()) continue;
                for (size_t idx : it->second)
                    if (chordal(pts[idx], p) <= tol) {
                        seen = true;
                        break;
                    }
            }
            if (!seen) {
                buckets[std::llround(fingerprint(p) / 1e-6)].push_back(pts.size());
                pts.push_back(p);
            }
        }
    return pts;
}

inline std::string word_string(const GroupWord& w,
                               const std::vector<std::string>& labels) {
    if (w.letters.empty()) return "e";
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ' ';
        s += labels[w.letters[i]];
    }
    return s;
}

}  // namespace borelvol
