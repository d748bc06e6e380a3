#pragma once

// Derivative-free simplex minimizer (Nelder-Mead with adaptive coefficients)
// plus a restart wrapper that re-seeds a shrinking simplex around the best
// point.  Deterministic for fixed inputs.

#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace borelvol {

using RealVec = Eigen::VectorXd;
using Objective = std::function<double(const RealVec&)>;

struct SimplexResult {
    RealVec x;
    double value = std::numeric_limits<double>::infinity();
    long evals = 0;
};

// One Nelder-Mead run from a simplex seeded at x0 with the given edge scale.
// Stops on eval budget or when the simplex collapses below xtol/ftol.
inline SimplexResult nelder_mead(const Objective& f, const RealVec& x0,
                                 double scale, long max_evals,
                                 double xtol = 1e-12, double ftol = 1e-14) {
    const int d = static_cast<int>(x0.size());
    // adaptive coefficients, better behaved in higher dimension
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / d;
    const double gamma = 0.75 - 0.5 / d;
    const double delta = 1.0 - 1.0 / d;

    std::vector<RealVec> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    long evals = 0;
    const auto eval = [&](const RealVec& x) {
        ++evals;
        return f(x);
    };
    for (int i = 1; i <= d; ++i) xs[i](i - 1) += scale;
    for (int i = 0; i <= d; ++i) fs[i] = eval(xs[i]);

    std::vector<int> order(d + 1);
    while (evals < max_evals) {
        for (int i = 0; i <= d; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[d], second = order[d - 1];

        double spread = 0.0, fspread = std::abs(fs[worst] - fs[best]);
        for (int i = 1; i <= d; ++i)
            spread = std::max(spread, (xs[order[i]] - xs[best]).norm());
        if (spread < xtol && fspread < ftol) break;

        RealVec centroid = RealVec::Zero(d);
        for (int i = 0; i <= d; ++i)
            if (i != worst) centroid += xs[i];
        centroid /= d;

        const RealVec xr = centroid + alpha * (centroid - xs[worst]);
        const double fr = eval(xr);
        if (fr < fs[best]) {
            const RealVec xe = centroid + beta * (xr - centroid);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[worst] = xe;
                fs[worst] = fe;
            } else {
                xs[worst] = xr;
                fs[worst] = fr;
            }
        } else if (fr < fs[second]) {
            xs[worst] = xr;
            fs[worst] = fr;
        } else {
            const bool outside = fr < fs[worst];
            const RealVec xc =
                outside ? RealVec(centroid + gamma * (xr - centroid))
                        : RealVec(centroid - gamma * (centroid - xs[worst]));
            const double fc = eval(xc);
            if (fc < (outside ? fr : fs[worst])) {
                xs[worst] = xc;
                fs[worst] = fc;
            } else {
                for (int i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    xs[i] = xs[best] + delta * (xs[i] - xs[best]);
                    fs[i] = eval(xs[i]);
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= d; ++i)
        if (fs[i] < fs[best]) best = i;
    return SimplexResult{xs[best], fs[best], evals};
}

// Restarted Nelder-Mead: repeat around the incumbent with geometrically
// shrinking simplex until the budget is spent or the target is reached.
inline SimplexResult nelder_mead_restarted(const Objective& f, const RealVec& x0,
                                           double scale, long budget,
                                           double target = -std::numeric_limits<double>::infinity(),
                                           double shrink = 0.35) {
    SimplexResult incumbent;
    incumbent.x = x0;
    incumbent.value = f(x0);
    incumbent.evals = 1;
    double s = scale;
    while (incumbent.evals < budget && incumbent.value > target) {
        const long slice = std::min<long>(budget - incumbent.evals,
                                          200L * (x0.size() + 1));
        SimplexResult r = nelder_mead(f, incumbent.x, s, slice);
        incumbent.evals += r.evals;
        if (r.value < incumbent.value) {
            incumbent.value = r.value;
            incumbent.x = r.x;
        }
        s *= shrink;
        if (s < 1e-10) s = scale * 1e-4;  // keep probing, avoid a frozen simplex
    }
    return incumbent;
}

}  // namespace borelvol
