#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mlsc/cma_es.hpp"
#include "mlsc/core.hpp"
#include "mlsc/simulate.hpp"

namespace mlsc {

struct PrincipalParams {
    double alpha = 0.95;
    double lambda = 5.0;
    double xi = 0.01;
    int horizon = 200;
    /// lambda and xi may be zero to isolate the robustness term.
    void validate() const;
};

/// Reward rate plus thresholds mu_2..mu_L (mu_1 is pinned to 0).
struct DesignVector {
    double r = 1.0;
    std::vector<double> thresholds;

    int levels() const { return static_cast<int>(thresholds.size()) + 1; }
    Ladder ladder() const;
    std::vector<double> to_raw() const;
    /// Projection: clamp to >= 0 and sort the thresholds.
    static DesignVector from_raw(const std::vector<double>& raw);
    /// Thresholds capped at hi.
    DesignVector clipped(double hi) const;
};

/// The agent is solved on the fixed attribute domain [0, x_max]; thresholds
/// are clipped to x_max - dx. Without a bounded domain the relaxed utility
/// grows without limit in (r, mu_L).
struct UtilitySettings {
    double dx = 0.1;
    double x_max = 12.0;
    double solve_epsilon = 1e-6;
};

struct UtilityBreakdown {
    double total = 0.0;
    double robust = 0.0;     ///< discounted sum of the robustness indicator
    double attribute = 0.0;  ///< discounted sum of next-period attribute
    double cost = 0.0;       ///< discounted sum of r * l_{t+1}
    double gaming_free_mass = 0.0;
    double monotone_mass = 0.0;  ///< gaming-free and non-decreasing level
};

/// Expected alpha-discounted principal utility over t = 0..horizon for the
/// agent's best response to the design, starting at level 1.
UtilityBreakdown relaxed_utility(const DesignVector& design, const PrincipalParams& pp, const ModelParams& params,
                                 const InitialDistribution& dist, const UtilitySettings& settings = {});

struct LevelResult {
    int L = 0;
    DesignVector design;
    UtilityBreakdown utility;
    int evaluations = 0;
};

struct OptimizeOptions {
    int L_min = 2;
    int L_max = 8;
    std::uint64_t seed = 1;
    int population = 10;
    int generations = 30;
    double sigma0 = 1.0;
    UtilitySettings utility;
};

struct OptimizeResult {
    std::vector<LevelResult> per_level;
    std::size_t best = 0;
    const LevelResult& best_result() const { return per_level.at(best); }
};

/// Initial CMA-ES mean for L levels: r = 1, thresholds evenly spaced up to 10.
std::vector<double> initial_design_mean(int L);

/// Runs CMA-ES for every L in [L_min, L_max] (seed + L per run) and keeps the best utility.
OptimizeResult optimize_over_levels(const PrincipalParams& pp, const ModelParams& params,
                                    const InitialDistribution& dist, const OptimizeOptions& options = {});

/// Min-max normalizes scores to [0, 10] and histograms them. Rows are
/// "score" or "score,weight"; blank lines and lines starting with '#' are skipped.
InitialDistribution load_score_distribution(const std::string& path, int bins);
InitialDistribution parse_score_distribution(const std::string& text, int bins);

/// Two-component Gaussian mixture on [0, 10] with a heavy upper mode,
/// resembling a normalized credit-score histogram.
InitialDistribution synthetic_score_distribution(int bins = 50);

}  // namespace mlsc
