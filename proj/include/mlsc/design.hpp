#pragma once

#include <string>
#include <vector>

#include "mlsc/bellman.hpp"
#include "mlsc/core.hpp"
#include "mlsc/simulate.hpp"

namespace mlsc {

/// Target attribute M together with the model (the reward rate lives in params.r).
struct DesignProblem {
    double M = 0.0;
    ModelParams params;
    void validate() const;
};

/// r / ((1 - beta)(1 - gamma)^2 c+): without leg-up no ladder reaches this target.
double infeasibility_bound_no_legup(const ModelParams& params);

struct LegUpConditions {
    double min_r = 0.0;
    double min_c_minus = 0.0;
    bool satisfied = false;
};

/// Throws std::domain_error when delta = 0.
LegUpConditions legup_feasibility_conditions(const ModelParams& params);

/// mu_l = delta (l-1) / (1 - gamma), L = ceil((1-gamma) M / delta) + 1.
Ladder natural_sequence(const DesignProblem& problem);

struct GreedyOptions {
    double epsilon = 1e-3;     ///< bisection tolerance in attribute units
    int max_levels = 50;       ///< cap on L
    double solve_epsilon = 1e-9;
};

struct GreedyResult {
    std::vector<double> thresholds{0.0};  ///< mu_1 .. mu_L
    std::vector<double> entry_attributes;  ///< post-response attribute on arrival at each new level
    int solves = 0;
    std::string diagnostic;

    bool empty() const { return thresholds.size() < 2; }
    int levels() const { return static_cast<int>(thresholds.size()); }
    double first_threshold() const { return empty() ? 0.0 : thresholds[1]; }
    double max_attribute() const { return thresholds.back(); }
    Ladder ladder() const { return Ladder(thresholds); }
};

/// Greedy bisection of successive thresholds against the agent's best response.
GreedyResult greedy_thresholds(const DesignProblem& problem, const GridSpec& grid,
                               const GreedyOptions& options = {});

enum class ViolationKind { NoGaming, AttributeTarget, TopLevel, FinalThreshold };

std::string to_string(ViolationKind k);

struct Violation {
    double x0 = 0.0;
    ViolationKind kind = ViolationKind::NoGaming;
    int t = -1;  ///< first offending step, -1 when not tied to a step
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violated;
    Trajectory witness;  ///< prefix of the first violating rollout
};

/// Grid points of [0, mu_2] plus mu_L.
std::vector<double> default_x0_set(const Ladder& ladder, const GridSpec& grid);

FeasibilityReport verify_feasible(const Ladder& ladder, const DesignProblem& problem, const GridSpec& grid,
                                  const std::vector<double>& x0_set, int horizon = 200);

}  // namespace mlsc
