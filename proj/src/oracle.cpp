#include "mlsc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mlsc {

std::size_t OracleResult::index_of(double x) const {
    const double k = std::round(x / spec.attribute_step);
    if (k <= 0.0) return 0;
    return std::min(points - 1, static_cast<std::size_t>(k));
}

namespace {

double lerp_row(const double* row, std::size_t n, double step, double x) {
    const double xmax = step * static_cast<double>(n - 1);
    x = std::clamp(x, 0.0, xmax);
    const double pos = x / step;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= n - 1) return row[n - 1];
    const double f = pos - static_cast<double>(i);
    return row[i] * (1.0 - f) + row[i + 1] * f;
}

// Smallest multiple of `step` that is at least `gap`.
double ceil_to_step(double gap, double step) {
    if (gap <= 0.0) return 0.0;
    return std::ceil(gap / step - 1e-9) * step;
}

}  // namespace

OracleResult brute_force_value(const Ladder& ladder, const ModelParams& params, const OracleSpec& spec) {
    params.validate();
    if (spec.horizon < 1 || !(spec.action_step > 0.0) || !(spec.attribute_step > 0.0) || !(spec.x_max > 0.0))
        throw std::invalid_argument("oracle: invalid spec");
    const int L = ladder.levels();
    const auto n = static_cast<std::size_t>(std::llround(spec.x_max / spec.attribute_step)) + 1;
    const auto n_actions = static_cast<double>(std::llround(spec.x_max / spec.action_step) + 1);
    const double work = static_cast<double>(L) * static_cast<double>(n) * n_actions * spec.horizon;
    if (work > spec.budget) throw std::length_error("oracle: instance exceeds work budget");

    OracleResult res;
    res.spec = spec;
    res.points = n;
    res.levels = L;
    const std::size_t total = static_cast<std::size_t>(L) * n;
    std::vector<double> prev(total, 0.0), cur(total, 0.0);
    res.first_action.assign(total, Action{});
    const double xmax = spec.attribute_step * static_cast<double>(n - 1);

    for (int t = 1; t <= spec.horizon; ++t) {
        const bool last = t == spec.horizon;
        for (int l = 1; l <= L; ++l) {
            for (std::size_t i = 0; i < n; ++i) {
                const double x = spec.attribute_step * static_cast<double>(i);
                double best = -std::numeric_limits<double>::infinity();
                Action best_a;
                for (long k = 0;; ++k) {
                    const double ap = spec.action_step * static_cast<double>(k);
                    if (x + ap > xmax + 1e-9) break;
                    const double xt = x + ap;
                    double gaming[3] = {0.0, 0.0, 0.0};
                    gaming[1] = ceil_to_step(ladder.at(l) - xt, spec.action_step);
                    gaming[2] = l < L ? ceil_to_step(ladder.at(l + 1) - xt, spec.action_step) : 0.0;
                    for (double am : gaming) {
                        const StepResult s = step({l, x}, {ap, am}, ladder, params);
                        const double cont = lerp_row(prev.data() + static_cast<std::size_t>(s.next.level - 1) * n, n,
                                                     spec.attribute_step, s.next.attribute);
                        const double v = s.reward - s.cost + params.beta * cont;
                        // Strict improvement keeps the smaller action on ties.
                        if (v > best + 1e-12) {
                            best = v;
                            best_a = {ap, am};
                        }
                    }
                }
                const std::size_t idx = static_cast<std::size_t>(l - 1) * n + i;
                cur[idx] = best;
                if (last) res.first_action[idx] = best_a;
            }
        }
        std::swap(prev, cur);
    }
    res.value = prev;
    return res;
}

}  // namespace mlsc
