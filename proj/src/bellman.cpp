#include "mlsc/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlsc {

GridSpec::GridSpec(double x_max, double dx) {
    if (!(dx > 0.0) || !std::isfinite(dx)) throw std::invalid_argument("grid: dx must be > 0");
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw std::invalid_argument("grid: x_max must be > 0");
    const double steps = x_max / dx;
    const double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-6 * std::max(1.0, rounded) || rounded < 1.0)
        throw std::invalid_argument("grid: x_max must be an integer multiple of dx");
    dx_ = dx;
    n_ = static_cast<std::size_t>(rounded) + 1;
}

GridSpec GridSpec::covering(double x_required, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("grid: dx must be > 0");
    const double steps = std::max(1.0, std::ceil(x_required / dx - 1e-9));
    return GridSpec(steps * dx, dx);
}

std::size_t GridSpec::nearest(double x) const {
    if (!(x > 0.0)) return 0;
    const double idx = std::round(x / dx_);
    if (idx >= static_cast<double>(n_ - 1)) return n_ - 1;
    return static_cast<std::size_t>(idx);
}

double default_x_max(const Ladder& ladder, const ModelParams& params) {
    const int L = ladder.levels();
    const double anchor = std::max(ladder.top(), params.natural_equilibrium(L));
    return 1.25 * anchor + params.r / ((1.0 - params.beta) * params.c_plus);
}

GridSpec default_grid(const Ladder& ladder, const ModelParams& params, double dx) {
    return GridSpec::covering(default_x_max(ladder, params), dx);
}

ValueGrid::ValueGrid(int levels, GridSpec grid, double fill)
    : levels_(levels), grid_(grid), data_(static_cast<std::size_t>(levels) * grid.size(), fill) {
    if (levels < 1) throw std::invalid_argument("value grid: at least one level");
}

std::span<const double> ValueGrid::row(int level) const {
    if (level < 1 || level > levels_) throw std::invalid_argument("value grid: level out of range");
    return {data_.data() + static_cast<std::size_t>(level - 1) * grid_.size(), grid_.size()};
}

std::span<double> ValueGrid::row(int level) {
    if (level < 1 || level > levels_) throw std::invalid_argument("value grid: level out of range");
    return {data_.data() + static_cast<std::size_t>(level - 1) * grid_.size(), grid_.size()};
}

double ValueGrid::sup_norm() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ValueGrid::sup_distance(const ValueGrid& a, const ValueGrid& b) {
    if (a.data_.size() != b.data_.size()) throw std::invalid_argument("value grid: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i) m = std::max(m, std::abs(a.data_[i] - b.data_[i]));
    return m;
}

double w_from_v(double v, double x, const ModelParams& params) { return v + params.c_plus * x; }
double v_from_w(double w, double x, const ModelParams& params) { return w - params.c_plus * x; }

double interpolate(std::span<const double> row, const GridSpec& grid, double x, std::size_t* clamps) {
    const double xmax = grid.x_max();
    if (x < 0.0 || x > xmax) {
        // Rounding noise at the ends is not worth a warning.
        if ((x < -1e-12 || x > xmax + 1e-12) && clamps) ++*clamps;
        x = std::clamp(x, 0.0, xmax);
    }
    const double pos = x / grid.dx();
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= grid.size() - 1) i = grid.size() - 2;
    const double frac = pos - static_cast<double>(i);
    if (frac <= 0.0) return row[i];
    if (frac >= 1.0) return row[i + 1];
    return row[i] + frac * (row[i + 1] - row[i]);
}

double PhiCandidates::min() const { return std::min({v_rel, v_stay, v_pr}); }

double gaming_topup(Branch branch, int level, double x_tilde, const Ladder& ladder) {
    double mu = 0.0;
    switch (branch) {
        case Branch::Relegate: return 0.0;
        case Branch::Stay: mu = ladder.at(level); break;
        case Branch::Promote: mu = ladder.at(std::min(level + 1, ladder.levels())); break;
    }
    const double gap = mu - x_tilde;
    return gap > kThresholdTol ? gap : 0.0;
}

PhiCandidates phi_candidates(int level, double x_tilde, const ValueGrid& W, const Ladder& ladder,
                             const ModelParams& params, std::size_t* clamps) {
    const GridSpec& grid = W.grid();
    const int L = ladder.levels();
    if (level < 1 || level > L) throw std::invalid_argument("phi_candidates: level out of range");
    if (x_tilde < -1e-9 || x_tilde > grid.x_max() + 1e-9)
        throw std::invalid_argument("phi_candidates: x_tilde outside grid");

    const double base = params.c_tilde() * x_tilde;
    const double rt = params.r_tilde();
    auto branch_value = [&](int to_level, double topup) {
        const double y = params.gamma * x_tilde + params.delta * (to_level - 1);
        return base + params.c_minus * topup - rt * (to_level - 1) +
               params.beta * interpolate(W.row(to_level), grid, y, clamps);
    };

    PhiCandidates c;
    c.v_rel = branch_value(std::max(1, level - 1), 0.0);
    c.v_stay = branch_value(level, gaming_topup(Branch::Stay, level, x_tilde, ladder));
    c.v_pr = branch_value(std::min(level + 1, L), gaming_topup(Branch::Promote, level, x_tilde, ladder));
    return c;
}

Branch preferred_branch(const PhiCandidates& c, int level, double x_tilde, const Ladder& ladder) {
    const double m = c.min();
    const double tol = 1e-12 * std::max(1.0, std::abs(m));
    const int L = ladder.levels();
    struct Option {
        Branch b;
        double v;
        double topup;
        int to_level;
    };
    const Option opts[3] = {
        {Branch::Promote, c.v_pr, gaming_topup(Branch::Promote, level, x_tilde, ladder), std::min(level + 1, L)},
        {Branch::Stay, c.v_stay, gaming_topup(Branch::Stay, level, x_tilde, ladder), level},
        {Branch::Relegate, c.v_rel, 0.0, std::max(1, level - 1)},
    };
    const Option* best = nullptr;
    for (const Option& o : opts) {
        if (o.v > m + tol) continue;
        if (!best || o.topup < best->topup - kThresholdTol ||
            (std::abs(o.topup - best->topup) <= kThresholdTol && o.to_level > best->to_level))
            best = &o;
    }
    return best->b;
}

LevelSweep sweep_level(int level, const ValueGrid& W, const Ladder& ladder, const ModelParams& params) {
    const GridSpec& grid = W.grid();
    const std::size_t n = grid.size();
    const double xmax = grid.x_max();

    std::vector<double> extras;
    for (int lv : {level, std::min(level + 1, ladder.levels())}) {
        const double mu = ladder.at(lv);
        if (mu <= 0.0 || mu >= xmax) continue;
        const double off = std::abs(mu / grid.dx() - std::round(mu / grid.dx())) * grid.dx();
        if (off <= 1e-12) continue;
        extras.push_back(mu);
    }
    std::sort(extras.begin(), extras.end(), std::greater<>());
    extras.erase(std::unique(extras.begin(), extras.end()), extras.end());

    LevelSweep out;
    out.values.resize(n);
    out.target.resize(n);
    out.branch.resize(n);

    double best = std::numeric_limits<double>::infinity();
    double ref = best;
    double target = xmax;
    Branch target_branch = Branch::Stay;
    auto consider = [&](double p) {
        const PhiCandidates c = phi_candidates(level, p, W, ladder, params, &out.clamps);
        const double v = c.min();
        if (v < best) best = v;
        // Keep the larger target unless the smaller one is better beyond noise.
        if (!std::isfinite(ref) || v < ref - 1e-10 * std::max(1.0, std::abs(ref))) {
            ref = v;
            target = p;
            target_branch = preferred_branch(c, level, p, ladder);
        }
    };

    std::size_t j = 0;
    for (std::size_t k = n; k-- > 0;) {
        const double x = grid.point(k);
        while (j < extras.size() && extras[j] > x) consider(extras[j++]);
        consider(x);
        out.values[k] = best;
        out.target[k] = target;
        out.branch[k] = target_branch;
    }
    return out;
}

ValueGrid bellman_backup(const ValueGrid& W, const Ladder& ladder, const ModelParams& params,
                         const GridSpec& grid, std::size_t* clamps) {
    if (!(W.grid() == grid)) throw std::invalid_argument("bellman_backup: grid mismatch");
    if (W.levels() != ladder.levels()) throw std::invalid_argument("bellman_backup: level count mismatch");
    ValueGrid next(W.levels(), grid);
    for (int l = 1; l <= W.levels(); ++l) {
        LevelSweep s = sweep_level(l, W, ladder, params);
        std::copy(s.values.begin(), s.values.end(), next.row(l).begin());
        if (clamps) *clamps += s.clamps;
    }
    return next;
}

void running_min_inplace(std::span<double> row) {
    for (std::size_t k = row.size(); k-- > 1;) row[k - 1] = std::min(row[k - 1], row[k]);
}

}  // namespace mlsc
