#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <iosfwd>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "mlsc/bellman.hpp"
#include "mlsc/core.hpp"
#include "mlsc/design.hpp"
#include "mlsc/simulate.hpp"

namespace mlsc {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    void write(std::ostream& os) const;
};

/// Shortest round-trip-stable decimal with at most 12 significant digits.
std::string fmt(double v);

/// MLSC_WORKERS when set to a positive integer, else 1.
int default_workers();

/// Applies fn to 0..n-1 on up to `workers` threads; results keep index order.
template <class R, class F>
std::vector<R> parallel_map(std::size_t n, int workers, F fn) {
    std::vector<R> out(n);
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), std::max<std::size_t>(n, 1));
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < w; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

/// Sets one of beta, gamma, delta, c_plus, c_minus, r by name.
ModelParams with_param(ModelParams p, const std::string& name, double value);

struct GreedySweepRow {
    ModelParams params;
    GreedyResult result;
};

/// Greedy ladders for each parameter set, on a grid of [0, x_max] with step dx.
std::vector<GreedySweepRow> run_greedy_cases(const std::vector<ModelParams>& cases, double x_max, double dx,
                                             const GreedyOptions& options, int workers);

/// Parameter columns, levels, max_attribute, then mu_1..mu_K (blank past each row's L).
CsvTable greedy_table(const std::vector<GreedySweepRow>& rows);

std::vector<ModelParams> sweep_cases(const ModelParams& base, const std::string& param, const std::vector<double>& values);
std::vector<ModelParams> heatmap_cases(const ModelParams& base, const std::vector<double>& betas,
                                       const std::vector<double>& gammas);

/// Mean/std of post-action attribute and mean improvement fraction per step,
/// one block of rows per parameter value, for a fixed ladder.
CsvTable population_sweep(const ModelParams& base, const std::string& param, const std::vector<double>& values,
                          const Ladder& ladder, const InitialDistribution& dist, int horizon, double dx, int workers);

/// Two-level regime map: for each mu the analytic regime plus the solver's
/// action at every grid point of [0, 1.25 mu].
CsvTable regions_table(const ModelParams& params, const std::vector<double>& mus, double dx, double epsilon,
                       int workers);

/// "idle", "improve", "game" or "mixed".
std::string strategy_label(const Action& a);

}  // namespace mlsc
