#include "mlsc/principal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mlsc/solver.hpp"

namespace mlsc {

void PrincipalParams::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha: must be in (0,1)");
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda: must be >= 0");
    if (!(xi >= 0.0)) throw std::invalid_argument("xi: must be >= 0");
    if (horizon < 1) throw std::invalid_argument("horizon: must be >= 1");
}

Ladder DesignVector::ladder() const {
    std::vector<double> mu{0.0};
    mu.insert(mu.end(), thresholds.begin(), thresholds.end());
    return Ladder(mu);
}

std::vector<double> DesignVector::to_raw() const {
    std::vector<double> v{r};
    v.insert(v.end(), thresholds.begin(), thresholds.end());
    return v;
}

DesignVector DesignVector::from_raw(const std::vector<double>& raw) {
    if (raw.size() < 2) throw std::invalid_argument("design: need r and at least one threshold");
    const std::vector<double> p = project_nonnegative(raw);
    DesignVector d;
    d.r = p[0];
    d.thresholds.assign(p.begin() + 1, p.end());
    std::sort(d.thresholds.begin(), d.thresholds.end());
    return d;
}

DesignVector DesignVector::clipped(double hi) const {
    DesignVector d = *this;
    for (double& t : d.thresholds) t = std::min(t, hi);
    return d;
}

namespace {

// The agent model needs r > 0; a zero reward leaves the agent idle either way.
constexpr double kMinReward = 1e-9;

}  // namespace

UtilityBreakdown relaxed_utility(const DesignVector& design, const PrincipalParams& pp, const ModelParams& base,
                                 const InitialDistribution& dist, const UtilitySettings& settings) {
    pp.validate();
    dist.validate();
    const GridSpec grid = GridSpec::covering(settings.x_max, settings.dx);
    const double max_support = *std::max_element(dist.support.begin(), dist.support.end());
    if (max_support > grid.x_max()) throw std::invalid_argument("utility: distribution support exceeds x_max");
    ModelParams params = base;
    params.r = std::max(design.r, kMinReward);
    const Ladder ladder = design.clipped(grid.x_max() - grid.dx()).ladder();
    const Policy pol = value_iterate(ladder, params, grid, settings.solve_epsilon);

    UtilityBreakdown u;
    for (std::size_t k = 0; k < dist.support.size(); ++k) {
        const double w = dist.mass[k];
        if (w == 0.0) continue;
        const Trajectory tr = rollout(pol, {1, dist.support[k]}, ladder, params, pp.horizon + 1);
        double robust = 0.0, attr = 0.0, cost = 0.0, disc = 1.0;
        bool honest = true, monotone = true;
        int prev_level = tr.steps.front().level_before;
        for (std::size_t t = 0; t < tr.steps.size(); ++t) {
            const TrajectoryStep& s = tr.steps[t];
            const bool same = classify(ladder, s.level_before, s.z, params) ==
                              classify(ladder, s.level_before, s.x_post, params);
            const double x_next = t + 1 < tr.steps.size() ? tr.steps[t + 1].x_before : tr.final_state.attribute;
            robust += disc * (same ? 1.0 : 0.0);
            attr += disc * x_next;
            cost += disc * params.r * s.level_after;
            disc *= pp.alpha;
            if (s.action.a_minus > kThresholdTol) honest = false;
            if (s.level_before < prev_level) monotone = false;
            prev_level = s.level_before;
        }
        if (tr.final_state.level < prev_level) monotone = false;
        u.robust += w * robust;
        u.attribute += w * attr;
        u.cost += w * cost;
        if (honest) u.gaming_free_mass += w;
        if (honest && monotone) u.monotone_mass += w;
    }
    u.total = u.robust + pp.lambda * u.attribute - pp.xi * u.cost;
    return u;
}

std::vector<double> initial_design_mean(int L) {
    if (L < 2) throw std::invalid_argument("initial_design_mean: L must be >= 2");
    std::vector<double> m{1.0};
    for (int l = 2; l <= L; ++l) m.push_back(10.0 * (l - 1) / (L - 1));
    return m;
}

OptimizeResult optimize_over_levels(const PrincipalParams& pp, const ModelParams& params,
                                    const InitialDistribution& dist, const OptimizeOptions& opt) {
    pp.validate();
    if (opt.L_min < 2 || opt.L_max < opt.L_min) throw std::invalid_argument("optimize: invalid level range");
    OptimizeResult res;
    for (int L = opt.L_min; L <= opt.L_max; ++L) {
        std::map<std::vector<double>, UtilityBreakdown> cache;
        auto evaluate = [&](const std::vector<double>& raw) -> const UtilityBreakdown& {
            const DesignVector d = DesignVector::from_raw(raw);
            const std::vector<double> key = d.to_raw();
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, relaxed_utility(d, pp, params, dist, opt.utility)).first;
            return it->second;
        };
        CmaEsConfig cfg;
        cfg.population = opt.population;
        cfg.generations = opt.generations;
        cfg.sigma0 = opt.sigma0;
        cfg.mean0 = initial_design_mean(L);
        const CmaEsResult cr = cma_es_optimize([&](const std::vector<double>& x) { return -evaluate(x).total; }, L,
                                               opt.seed + static_cast<std::uint64_t>(L), cfg);
        LevelResult lr;
        lr.L = L;
        const GridSpec g = GridSpec::covering(opt.utility.x_max, opt.utility.dx);
        lr.design = DesignVector::from_raw(cr.best).clipped(g.x_max() - g.dx());
        lr.utility = evaluate(cr.best);
        lr.evaluations = cr.evaluations;
        res.per_level.push_back(lr);
    }
    for (std::size_t i = 1; i < res.per_level.size(); ++i)
        if (res.per_level[i].utility.total > res.per_level[res.best].utility.total) res.best = i;
    return res;
}

namespace {

InitialDistribution histogram(const std::vector<double>& scores, const std::vector<double>& weights, int bins) {
    const auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
    const double lo = *lo_it, hi = *hi_it;
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw ParseError("score distribution: total weight must be positive", 0);
    InitialDistribution d;
    if (hi - lo <= 0.0) {
        d.support = {10.0};
        d.mass = {1.0};
        return d;
    }
    std::vector<double> mass(static_cast<std::size_t>(bins), 0.0);
    const double width = 10.0 / bins;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double v = 10.0 * (scores[i] - lo) / (hi - lo);
        const int b = std::min(bins - 1, static_cast<int>(v / width));
        mass[static_cast<std::size_t>(b)] += weights[i] / total;
    }
    for (int b = 0; b < bins; ++b) {
        if (mass[static_cast<std::size_t>(b)] <= 0.0) continue;
        d.support.push_back(width * (b + 0.5));
        d.mass.push_back(mass[static_cast<std::size_t>(b)]);
    }
    return d;
}

}  // namespace

InitialDistribution parse_score_distribution(const std::string& text, int bins) {
    if (bins < 1) throw std::invalid_argument("score distribution: bins must be >= 1");
    std::istringstream in(text);
    std::string line;
    std::vector<double> scores, weights;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double s = 0.0, w = 1.0;
        if (!(row >> s)) throw ParseError("score distribution: malformed score on line " + std::to_string(lineno), lineno);
        if (!(row >> w)) {
            w = 1.0;
            row.clear();
        }
        std::string rest;
        if (row >> rest || !std::isfinite(s) || !std::isfinite(w) || w < 0.0)
            throw ParseError("score distribution: malformed row on line " + std::to_string(lineno), lineno);
        scores.push_back(s);
        weights.push_back(w);
    }
    if (scores.empty()) throw ParseError("score distribution: no rows", lineno);
    return histogram(scores, weights, bins);
}

InitialDistribution load_score_distribution(const std::string& path, int bins) {
    std::ifstream f(path);
    if (!f) throw ParseError("score distribution: cannot open " + path, 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_score_distribution(ss.str(), bins);
}

InitialDistribution synthetic_score_distribution(int bins) {
    if (bins < 1) throw std::invalid_argument("score distribution: bins must be >= 1");
    struct Component {
        double weight, mean, sd;
    };
    // Lower tail plus a dominant upper mode, roughly where normalized credit scores sit.
    const Component parts[] = {{0.25, 4.5, 1.4}, {0.75, 7.4, 1.1}};
    auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    const double width = 10.0 / bins;
    InitialDistribution d;
    double total = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double lo = b * width, hi = lo + width;
        double m = 0.0;
        for (const auto& c : parts) m += c.weight * (cdf((hi - c.mean) / c.sd) - cdf((lo - c.mean) / c.sd));
        d.support.push_back(lo + 0.5 * width);
        d.mass.push_back(m);
        total += m;
    }
    for (double& m : d.mass) m /= total;
    return d;
}

}  // namespace mlsc
