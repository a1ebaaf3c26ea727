#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "mlsc/core.hpp"
#include "mlsc/solver.hpp"

namespace mlsc {

struct TrajectoryStep {
    int t = 0;
    int level_before = 1;
    double x_before = 0.0;
    Action action;
    double z = 0.0;
    double x_post = 0.0;
    int level_after = 1;
    double reward = 0.0;
    double cost = 0.0;
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    /// State after the last step.
    AgentState final_state;
};

/// Policy action at a state. The grid action is read at the nearest grid point
/// and applied as targets: improve up to the grid point's post-improvement
/// attribute, then game up to its feature level. This keeps a gaming action
/// that aims at a threshold from missing it by the quantization offset.
Action policy_action(const Policy& policy, const AgentState& state);

Trajectory rollout(const Policy& policy, const AgentState& initial, const Ladder& ladder,
                   const ModelParams& params, int horizon);

enum class SteadyKind { FixedPoint, Cycle, None };

struct SteadyState {
    SteadyKind kind = SteadyKind::None;
    std::vector<AgentState> states;  ///< one state for a fixed point, the cycle otherwise
    int entry_time = -1;
};

SteadyState steady_state(const Policy& policy, const AgentState& initial, const Ladder& ladder,
                         const ModelParams& params, int horizon = 200);

/// Per-step a+/(a+ + a-); std::nullopt when no effort is exerted.
std::vector<std::optional<double>> improvement_fraction(const Trajectory& traj);

struct InitialDistribution {
    std::vector<double> support;
    std::vector<double> mass;
    void validate() const;
};

struct PopulationAggregate {
    std::vector<double> mean_x_post;
    std::vector<double> std_x_post;
    /// Mass-weighted over agents with nonzero effort; NaN when nobody acts.
    std::vector<double> mean_improvement_fraction;
};

PopulationAggregate population_rollout(const Policy& policy, const Ladder& ladder, const ModelParams& params,
                                       const InitialDistribution& dist, int horizon);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

}  // namespace mlsc
