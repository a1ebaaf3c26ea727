#pragma once

#include <cstddef>
#include <vector>

#include "mlsc/core.hpp"

namespace mlsc {

struct OracleSpec {
    int horizon = 60;
    double action_step = 0.01;
    double attribute_step = 0.01;
    double x_max = 6.0;
    /// Upper limit on (levels x states x improvement actions x horizon).
    double budget = 5e9;
};

/// Finite-horizon discounted utility (reward minus cost) by backward induction
/// over an exhaustive improvement grid. For each improvement amount only the
/// smallest gaming amount on the action grid that lands in each classifier
/// outcome is tried; any larger gaming amount reaches the same outcome at
/// higher cost, so this is equivalent to scanning the full gaming grid.
struct OracleResult {
    OracleSpec spec;
    std::size_t points = 0;
    int levels = 0;
    std::vector<double> value;  ///< row-major levels x points, utility over `horizon` steps
    std::vector<Action> first_action;

    double attribute(std::size_t i) const { return spec.attribute_step * static_cast<double>(i); }
    double at(int level, std::size_t i) const { return value[static_cast<std::size_t>(level - 1) * points + i]; }
    Action action(int level, std::size_t i) const {
        return first_action[static_cast<std::size_t>(level - 1) * points + i];
    }
    /// Index of the grid point closest to x.
    std::size_t index_of(double x) const;
};

/// Throws std::length_error when the instance exceeds spec.budget.
OracleResult brute_force_value(const Ladder& ladder, const ModelParams& params, const OracleSpec& spec);

}  // namespace mlsc
