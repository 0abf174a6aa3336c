#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "dyncorr/core.hpp"

namespace dyncorr::optim {

struct OptimResult {
    std::vector<double> x_min;
    double f_min = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    double tol = 1e-8;
    int max_iter = 2000;
};

/**
 * @brief Nelder-Mead simplex minimization.
 *
 * Reflection 1, expansion 2, contraction 0.5, shrink 0.5. The initial
 * simplex offsets each coordinate of x0 by max(0.05, 0.05 * |x0_k|).
 * Stops when the spread of function values across the simplex drops below
 * `tol`; running out of iterations returns the best vertex with
 * converged = false. Objectives may return a large finite penalty for
 * infeasible points but must be finite at x0.
 */
template <class Objective>
OptimResult minimize(Objective&& f, std::vector<double> x0, NelderMeadOptions opts = {}) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw InvalidInput("minimize: empty parameter vector");
    }
    if (!(opts.tol > 0.0)) {
        throw InvalidInput("minimize: tolerance must be positive");
    }
    const double f0 = f(static_cast<const std::vector<double>&>(x0));
    if (!std::isfinite(f0)) {
        throw InvalidInput("minimize: objective is not finite at the starting point");
    }

    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        return std::isnan(v) ? HUGE_VAL : v;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1, f0);
    for (std::size_t k = 0; k < n; ++k) {
        simplex[k + 1][k] += std::max(0.05, 0.05 * std::abs(x0[k]));
        fv[k + 1] = eval(simplex[k + 1]);
    }

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n);
    std::vector<double> reflected(n);
    std::vector<double> trial(n);

    auto point_along = [&](double coef, std::vector<double>& out, const std::vector<double>& worst) {
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = centroid[k] + coef * (centroid[k] - worst[k]);
        }
    };

    OptimResult result;
    int iter = 0;
    for (;; ++iter) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        // Stable sort keeps ties in vertex order so runs are reproducible.
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        if (fv[worst] - fv[best] < opts.tol) {
            result.converged = true;
            break;
        }
        if (iter >= opts.max_iter) {
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t v = 0; v <= n; ++v) {
            if (v == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[v][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        point_along(1.0, reflected, simplex[worst]);
        const double f_reflected = eval(reflected);

        if (f_reflected < fv[best]) {
            point_along(2.0, trial, simplex[worst]);
            const double f_expanded = eval(trial);
            if (f_expanded < f_reflected) {
                simplex[worst] = trial;
                fv[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                fv[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fv[second_worst]) {
            simplex[worst] = reflected;
            fv[worst] = f_reflected;
            continue;
        }

        // Contraction: outside if the reflection improved on the worst vertex.
        const bool outside = f_reflected < fv[worst];
        point_along(outside ? 0.5 : -0.5, trial, simplex[worst]);
        const double f_contracted = eval(trial);
        if (f_contracted < (outside ? f_reflected : fv[worst])) {
            simplex[worst] = trial;
            fv[worst] = f_contracted;
            continue;
        }

        for (std::size_t v = 0; v <= n; ++v) {
            if (v == best) continue;
            for (std::size_t k = 0; k < n; ++k) {
                simplex[v][k] = simplex[best][k] + 0.5 * (simplex[v][k] - simplex[best][k]);
            }
            fv[v] = eval(simplex[v]);
        }
    }

    const auto best_it = std::min_element(fv.begin(), fv.end());
    const auto best_idx = static_cast<std::size_t>(best_it - fv.begin());
    result.x_min = simplex[best_idx];
    result.f_min = fv[best_idx];
    result.iterations = iter;
    return result;
}

}  // namespace dyncorr::optim
