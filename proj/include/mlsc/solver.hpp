#pragma once

#include <stdexcept>
#include <vector>

#include "mlsc/bellman.hpp"
#include "mlsc/core.hpp"

namespace mlsc {

/// Converged agent best response on a grid.
struct Policy {
    Ladder ladder;
    ModelParams params;
    GridSpec grid;
    ValueGrid W;
    std::vector<double> a_plus;   ///< row-major, levels x grid points
    std::vector<double> a_minus;  ///< row-major, levels x grid points
    int iterations = 0;
    std::vector<double> residuals;  ///< sup-norm delta after each backup
    double epsilon = 0.0;
    double initial_gap = 0.0;  ///< ||W^0 - W_final||_inf
    std::size_t clamp_warnings = 0;

    Action action(int level, std::size_t i) const;
    /// Nearest-grid-point lookup.
    Action lookup(int level, double x) const;
    double value(int level, std::size_t i) const { return W.at(level, i); }
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), residuals_(std::move(residuals)) {}
    const std::vector<double>& residuals() const { return residuals_; }

private:
    std::vector<double> residuals_;
};

inline constexpr double kDefaultEpsilon = 1e-9;

/// Interpolated value iteration from W^0 = 0 (or a warm start) until the
/// sup-norm residual drops to epsilon. The warm start may have a different
/// level count; rows are copied and the last row is repeated.
Policy value_iterate(const Ladder& ladder, const ModelParams& params, const GridSpec& grid,
                     double epsilon = kDefaultEpsilon, const ValueGrid* warm_start = nullptr);

/// c+ dx / (2 (1 - beta)).
double error_bound(const ModelParams& params, const GridSpec& grid);

/// ceil(log(gap/epsilon) / |log beta|), floored at 0.
int iteration_bound(double initial_gap, double epsilon, double beta);

struct ConvergenceReport {
    double max_ratio = 0.0;  ///< largest residual ratio over reliable iterations
    int iterations = 0;
    int bound = 0;  ///< iteration_bound(...) + 2
    bool ratio_ok = true;
    bool iterations_ok = true;
    bool pass() const { return ratio_ok && iterations_ok; }
};

ConvergenceReport convergence_report(const Policy& policy, const ModelParams& params);

}  // namespace mlsc
