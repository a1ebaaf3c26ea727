#include "mlsc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mlsc {

Action Policy::action(int level, std::size_t i) const {
    const std::size_t k = static_cast<std::size_t>(level - 1) * grid.size() + i;
    return {a_plus.at(k), a_minus.at(k)};
}

Action Policy::lookup(int level, double x) const { return action(level, grid.nearest(x)); }

namespace {

ValueGrid initial_iterate(int levels, const GridSpec& grid, const ValueGrid* warm) {
    ValueGrid W(levels, grid, 0.0);
    if (!warm) return W;
    if (!(warm->grid() == grid)) throw std::invalid_argument("value_iterate: warm start grid mismatch");
    for (int l = 1; l <= levels; ++l) {
        auto src = warm->row(std::min(l, warm->levels()));
        std::copy(src.begin(), src.end(), W.row(l).begin());
    }
    return W;
}

}  // namespace

Policy value_iterate(const Ladder& ladder, const ModelParams& params, const GridSpec& grid,
                     double epsilon, const ValueGrid* warm_start) {
    params.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("value_iterate: epsilon must be > 0");
    if (!(grid.x_max() > ladder.top()))
        throw std::invalid_argument("value_iterate: grid x_max must exceed the top threshold");

    const int L = ladder.levels();
    const double log_beta = std::abs(std::log(params.beta));

    Policy pol;
    pol.ladder = ladder;
    pol.params = params;
    pol.grid = grid;
    pol.epsilon = epsilon;

    const ValueGrid W0 = initial_iterate(L, grid, warm_start);
    ValueGrid W = W0;
    int max_iter = 0;
    for (;;) {
        ValueGrid next = bellman_backup(W, ladder, params, grid, &pol.clamp_warnings);
        const double res = ValueGrid::sup_distance(next, W);
        pol.residuals.push_back(res);
        W = std::move(next);
        ++pol.iterations;
        if (pol.iterations == 1) {
            // ||W^0 - W*|| <= ||W^1 - W^0|| / (1 - beta)
            const double gap_upper = res / (1.0 - params.beta);
            max_iter = 10 * (iteration_bound(gap_upper, epsilon, params.beta) + 2);
        }
        if (res <= epsilon) break;
        if (pol.iterations >= max_iter) {
            std::ostringstream os;
            os << "value_iterate: no convergence after " << pol.iterations << " iterations (residual " << res
               << ", epsilon " << epsilon << ", log-beta rate " << log_beta << ")";
            throw ConvergenceError(os.str(), pol.residuals);
        }
    }
    pol.initial_gap = ValueGrid::sup_distance(W0, W);

    const std::size_t n = grid.size();
    pol.a_plus.assign(static_cast<std::size_t>(L) * n, 0.0);
    pol.a_minus.assign(static_cast<std::size_t>(L) * n, 0.0);
    for (int l = 1; l <= L; ++l) {
        const LevelSweep s = sweep_level(l, W, ladder, params);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(l - 1) * n + i;
            const double x = grid.point(i);
            const double xt = s.target[i];
            pol.a_plus[k] = std::max(0.0, xt - x);
            pol.a_minus[k] = gaming_topup(s.branch[i], l, xt, ladder);
        }
    }
    pol.W = std::move(W);
    return pol;
}

double error_bound(const ModelParams& params, const GridSpec& grid) {
    return params.c_plus * grid.dx() / (2.0 * (1.0 - params.beta));
}

int iteration_bound(double initial_gap, double epsilon, double beta) {
    if (!(initial_gap > epsilon)) return 0;
    return static_cast<int>(std::ceil(std::log(initial_gap / epsilon) / std::abs(std::log(beta)) - 1e-12));
}

ConvergenceReport convergence_report(const Policy& policy, const ModelParams& params) {
    ConvergenceReport rep;
    rep.iterations = policy.iterations;
    rep.bound = iteration_bound(policy.initial_gap, policy.epsilon, params.beta) + 2;
    // Ratios of residuals near round-off are meaningless; skip them.
    const double floor = 1e-7 * std::max(1.0, policy.W.sup_norm());
    const auto& r = policy.residuals;
    for (std::size_t n = 1; n < r.size(); ++n) {
        if (r[n - 1] <= floor) continue;
        rep.max_ratio = std::max(rep.max_ratio, r[n] / r[n - 1]);
    }
    rep.ratio_ok = rep.max_ratio <= params.beta + 1e-6;
    rep.iterations_ok = rep.iterations <= rep.bound;
    return rep;
}

}  // namespace mlsc
