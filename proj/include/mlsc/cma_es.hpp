#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace mlsc {

using Objective = std::function<double(const std::vector<double>&)>;
using Projection = std::function<std::vector<double>(const std::vector<double>&)>;

/// Clamp every coordinate to >= 0.
std::vector<double> project_nonnegative(const std::vector<double>& x);

struct CmaEsConfig {
    int population = 10;
    int generations = 30;
    double sigma0 = 1.0;
    std::vector<double> mean0;  ///< defaults to the origin
    Projection project = project_nonnegative;
};

struct CmaEsGeneration {
    int generation = 0;
    std::vector<double> mean;
    double sigma = 0.0;
    double best_value = 0.0;       ///< best value within this generation
    std::vector<double> best_point;  ///< projected
};

struct CmaEsResult {
    std::vector<double> best;  ///< projected point with the lowest value seen
    double best_value = 0.0;
    int evaluations = 0;
    std::vector<CmaEsGeneration> history;
};

/// (mu/mu_w, lambda)-CMA-ES minimizing `objective`. Samples are projected
/// before evaluation; the distribution is updated with the raw samples.
CmaEsResult cma_es_optimize(const Objective& objective, int dim, std::uint64_t seed, const CmaEsConfig& config = {});

}  // namespace mlsc
