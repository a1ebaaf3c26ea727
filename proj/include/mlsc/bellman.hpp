#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mlsc/core.hpp"

namespace mlsc {

/// Uniform attribute grid {0, dx, ..., x_max} with x_max an integer multiple of dx.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(double x_max, double dx);

    /// Smallest grid with step dx whose upper end is at least x_required.
    static GridSpec covering(double x_required, double dx);

    double dx() const { return dx_; }
    double x_max() const { return dx_ * static_cast<double>(n_ - 1); }
    std::size_t size() const { return n_; }
    double point(std::size_t i) const { return dx_ * static_cast<double>(i); }
    std::size_t nearest(double x) const;

    bool operator==(const GridSpec& o) const { return n_ == o.n_ && dx_ == o.dx_; }

private:
    double dx_ = 1.0;
    std::size_t n_ = 2;
};

/// 1.25 * max(mu_L, natural equilibrium of L) + r / ((1 - beta) c+).
double default_x_max(const Ladder& ladder, const ModelParams& params);
GridSpec default_grid(const Ladder& ladder, const ModelParams& params, double dx);

/// W_l(x) = V(l, x) + c+ x sampled on a grid, one row per level.
class ValueGrid {
public:
    ValueGrid() = default;
    ValueGrid(int levels, GridSpec grid, double fill = 0.0);

    int levels() const { return levels_; }
    const GridSpec& grid() const { return grid_; }

    std::span<const double> row(int level) const;
    std::span<double> row(int level);
    double at(int level, std::size_t i) const { return row(level)[i]; }
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    double sup_norm() const;
    static double sup_distance(const ValueGrid& a, const ValueGrid& b);

private:
    int levels_ = 0;
    GridSpec grid_;
    std::vector<double> data_;
};

double w_from_v(double v, double x, const ModelParams& params);
double v_from_w(double w, double x, const ModelParams& params);

/// Linear interpolation of one level's row. Arguments outside [0, x_max] are
/// clamped; each clamp increments *clamps when provided.
double interpolate(std::span<const double> row, const GridSpec& grid, double x,
                   std::size_t* clamps = nullptr);

enum class Branch : int { Relegate = -1, Stay = 0, Promote = 1 };

struct PhiCandidates {
    double v_rel = 0.0;
    double v_stay = 0.0;
    double v_pr = 0.0;
    double min() const;
};

PhiCandidates phi_candidates(int level, double x_tilde, const ValueGrid& W, const Ladder& ladder,
                             const ModelParams& params, std::size_t* clamps = nullptr);

/// Gaming needed after improving to x_tilde when following the given branch.
double gaming_topup(Branch branch, int level, double x_tilde, const Ladder& ladder);

/// Branch attaining the candidate minimum. Near-ties go to the smaller gaming
/// top-up, then to the higher resulting level.
Branch preferred_branch(const PhiCandidates& c, int level, double x_tilde, const Ladder& ladder);

/// Result of the reverse running-minimum sweep for one level.
struct LevelSweep {
    std::vector<double> values;  ///< min over x~ >= x of Phi(l, x~)
    std::vector<double> target;  ///< largest (near-)minimizing x~
    std::vector<Branch> branch;  ///< branch taken at target
    std::size_t clamps = 0;
};

/// The candidate post-improvement points are the grid points plus the two
/// thresholds that matter at this level, so that improving exactly onto an
/// off-grid threshold is representable.
LevelSweep sweep_level(int level, const ValueGrid& W, const Ladder& ladder, const ModelParams& params);

ValueGrid bellman_backup(const ValueGrid& W, const Ladder& ladder, const ModelParams& params,
                         const GridSpec& grid, std::size_t* clamps = nullptr);

/// Suffix running minimum, largest index first.
void running_min_inplace(std::span<double> row);

}  // namespace mlsc
