// nelder_mead.hpp — internal derivative-free simplex minimizer shared by the
// numeric entanglement solver and the tripartite relative-entropy solver.
// Dimension-adaptive parameters; infeasible points may return +infinity and
// the simplex contracts away from them.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace entfloor::detail {

// Minimizes f over x (modified in place, also the initial point). init_step
// may be a single scale or per-coordinate. Returns the best value found.
template <typename F>
double nelder_mead(F&& f, std::vector<double>& x, const std::vector<double>& init_step,
                   int max_iters, double ftol = 1e-12) {
    const int n = static_cast<int>(x.size());
    const double alpha = 1.0;
    const double beta = 1.0 + 2.0 / n;
    const double gamma = 0.75 - 0.5 / n;
    const double delta = 1.0 - 1.0 / n;

    std::vector<std::vector<double>> pts(n + 1, x);
    std::vector<double> fv(n + 1);
    for (int i = 1; i <= n; ++i)
        pts[i][i - 1] += init_step[init_step.size() == 1 ? 0 : i - 1];
    for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    std::vector<int> order(n + 1);
    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    for (int it = 0; it < max_iters; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        int best = order[0], worst = order[n], second = order[n - 1];
        if (std::isfinite(fv[worst]) && fv[worst] - fv[best] < ftol * (1.0 + std::abs(fv[best])))
            break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (int i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (int k = 0; k < n; ++k) centroid[k] += pts[i][k];
        }
        for (int k = 0; k < n; ++k) centroid[k] /= n;

        for (int k = 0; k < n; ++k) xr[k] = centroid[k] + alpha * (centroid[k] - pts[worst][k]);
        double fr = f(xr);
        if (fr < fv[best]) {
            for (int k = 0; k < n; ++k) xe[k] = centroid[k] + beta * (xr[k] - centroid[k]);
            double fe = f(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
        } else {
            bool outside = fr < fv[worst];
            const std::vector<double>& base = outside ? xr : pts[worst];
            for (int k = 0; k < n; ++k) xc[k] = centroid[k] + gamma * (base[k] - centroid[k]);
            double fc = f(xc);
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = xc;
                fv[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (int k = 0; k < n; ++k)
                        pts[i][k] = pts[best][k] + delta * (pts[i][k] - pts[best][k]);
                    fv[i] = f(pts[i]);
                }
            }
        }
    }
    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    x = pts[best];
    return fv[best];
}

}  // namespace entfloor::detail
