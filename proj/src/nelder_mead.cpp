#include "kerrsim/nelder_mead.hpp"

#include <algorithm>
#include <numeric>

#include "kerrsim/errors.hpp"

namespace kerrsim {

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) throw InvalidInput("nelder_mead: empty starting point");

    NelderMeadResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evals;
        return f(x);
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.initial_step;
    for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);

    auto along = [&](double coef, std::vector<double>& out) {
        // out = centroid + coef * (centroid - worst)
        const auto& worst = pts[order[n]];
        for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + coef * (centroid[k] - worst[k]);
    };

    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });

        if (vals[order[n]] - vals[order[0]] <= opts.f_tol) {
            res.converged = true;
            break;
        }
        if (res.evals >= opts.max_evals) break;

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[order[i]][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        const double best = vals[order[0]];
        const double second_worst = vals[order[n - 1]];
        const double worst = vals[order[n]];

        along(1.0, trial);
        const double fr = eval(trial);
        if (fr < best) {
            along(2.0, trial2);
            const double fe = eval(trial2);
            if (fe < fr) {
                pts[order[n]] = trial2;
                vals[order[n]] = fe;
            } else {
                pts[order[n]] = trial;
                vals[order[n]] = fr;
            }
            continue;
        }
        if (fr < second_worst) {
            pts[order[n]] = trial;
            vals[order[n]] = fr;
            continue;
        }

        // Contraction: outside if the reflected point beat the worst, inside otherwise.
        const bool outside = fr < worst;
        along(outside ? 0.5 : -0.5, trial2);
        const double fc = eval(trial2);
        if (fc < (outside ? fr : worst)) {
            pts[order[n]] = trial2;
            vals[order[n]] = fc;
            continue;
        }

        const auto& xb = pts[order[0]];
        for (std::size_t i = 1; i <= n; ++i) {
            auto& p = pts[order[i]];
            for (std::size_t k = 0; k < n; ++k) p[k] = xb[k] + 0.5 * (p[k] - xb[k]);
            vals[order[i]] = eval(p);
        }
    }

    res.x = pts[order[0]];
    res.f = vals[order[0]];
    return res;
}

}  // namespace kerrsim
