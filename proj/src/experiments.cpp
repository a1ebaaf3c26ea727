#include "mlsc/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mlsc/closed_form.hpp"
#include "mlsc/solver.hpp"

namespace mlsc {

void CsvTable::write(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (v == 0.0) return "0";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

int default_workers() {
    const char* env = std::getenv("MLSC_WORKERS");
    if (!env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    return (end != env && *end == '\0' && v > 0) ? static_cast<int>(v) : 1;
}

ModelParams with_param(ModelParams p, const std::string& name, double value) {
    if (name == "beta") p.beta = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "delta") p.delta = value;
    else if (name == "c_plus") p.c_plus = value;
    else if (name == "c_minus") p.c_minus = value;
    else if (name == "r") p.r = value;
    else throw std::invalid_argument("unknown parameter '" + name + "'");
    p.validate();
    return p;
}

std::vector<GreedySweepRow> run_greedy_cases(const std::vector<ModelParams>& cases, double x_max, double dx,
                                             const GreedyOptions& options, int workers) {
    const GridSpec grid = GridSpec::covering(x_max, dx);
    return parallel_map<GreedySweepRow>(cases.size(), workers, [&](std::size_t i) {
        DesignProblem prob;
        prob.params = cases[i];
        prob.M = grid.x_max();
        return GreedySweepRow{cases[i], greedy_thresholds(prob, grid, options)};
    });
}

CsvTable greedy_table(const std::vector<GreedySweepRow>& rows) {
    CsvTable t;
    t.header = {"beta", "gamma", "delta", "c_plus", "c_minus", "r", "levels", "max_attribute"};
    std::size_t k = 0;
    for (const auto& r : rows) k = std::max(k, r.result.thresholds.size());
    for (std::size_t l = 1; l <= k; ++l) t.header.push_back("mu_" + std::to_string(l));
    for (const auto& r : rows) {
        const ModelParams& p = r.params;
        // An empty ladder means nothing is incentivizable: one level, max attribute 0.
        std::vector<std::string> row{fmt(p.beta), fmt(p.gamma), fmt(p.delta), fmt(p.c_plus), fmt(p.c_minus), fmt(p.r),
                                     std::to_string(r.result.levels()), fmt(r.result.max_attribute())};
        for (std::size_t l = 0; l < k; ++l)
            row.push_back(l < r.result.thresholds.size() ? fmt(r.result.thresholds[l]) : "");
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<ModelParams> sweep_cases(const ModelParams& base, const std::string& param, const std::vector<double>& values) {
    std::vector<ModelParams> out;
    for (double v : values) out.push_back(with_param(base, param, v));
    return out;
}

std::vector<ModelParams> heatmap_cases(const ModelParams& base, const std::vector<double>& betas,
                                       const std::vector<double>& gammas) {
    std::vector<ModelParams> out;
    for (double b : betas)
        for (double g : gammas) out.push_back(with_param(with_param(base, "beta", b), "gamma", g));
    return out;
}

CsvTable population_sweep(const ModelParams& base, const std::string& param, const std::vector<double>& values,
                          const Ladder& ladder, const InitialDistribution& dist, int horizon, double dx, int workers) {
    dist.validate();
    const double max_support = *std::max_element(dist.support.begin(), dist.support.end());
    const auto blocks = parallel_map<PopulationAggregate>(values.size(), workers, [&](std::size_t i) {
        const ModelParams p = with_param(base, param, values[i]);
        const GridSpec grid = GridSpec::covering(std::max(default_x_max(ladder, p), 1.25 * max_support), dx);
        const Policy pol = value_iterate(ladder, p, grid, kDefaultEpsilon);
        return population_rollout(pol, ladder, p, dist, horizon);
    });
    CsvTable t;
    t.header = {"param", "value", "t", "mean_x_post", "std_x_post", "mean_improvement_fraction"};
    for (std::size_t i = 0; i < values.size(); ++i) {
        const PopulationAggregate& a = blocks[i];
        for (std::size_t s = 0; s < a.mean_x_post.size(); ++s)
            t.rows.push_back({param, fmt(values[i]), std::to_string(s), fmt(a.mean_x_post[s]), fmt(a.std_x_post[s]),
                              fmt(a.mean_improvement_fraction[s])});
    }
    return t;
}

std::string strategy_label(const Action& a) {
    const bool up = a.a_plus > kThresholdTol, game = a.a_minus > kThresholdTol;
    if (up && game) return "mixed";
    if (up) return "improve";
    if (game) return "game";
    return "idle";
}

CsvTable regions_table(const ModelParams& params, const std::vector<double>& mus, double dx, double epsilon,
                       int workers) {
    struct Block {
        std::string regime;
        std::vector<std::vector<std::string>> rows;
    };
    const auto blocks = parallel_map<Block>(mus.size(), workers, [&](std::size_t k) {
        const double mu = mus[k];
        Block b;
        if (!check_incentivizable(params)) {
            b.regime = "Impossible";
        } else {
            try {
                b.regime = to_string(classify_regime(mu, params).tag);
            } catch (const std::exception&) {
                b.regime = "n/a";
            }
        }
        const Ladder ladder({0.0, mu});
        const GridSpec grid = default_grid(ladder, params, dx);
        const Policy pol = value_iterate(ladder, params, grid, epsilon);
        for (std::size_t i = 0; i < grid.size() && grid.point(i) <= 1.25 * mu + 1e-9; ++i) {
            const Action a = pol.action(1, i);
            b.rows.push_back({fmt(mu), b.regime, fmt(grid.point(i)), fmt(a.a_plus), fmt(a.a_minus), strategy_label(a)});
        }
        return b;
    });
    CsvTable t;
    t.header = {"mu", "regime", "x", "a_plus", "a_minus", "strategy"};
    for (const auto& b : blocks) t.rows.insert(t.rows.end(), b.rows.begin(), b.rows.end());
    return t;
}

}  // namespace mlsc
