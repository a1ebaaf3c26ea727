#include <gtest/gtest.h>

#include <cmath>

#include "mlsc/cma_es.hpp"

using namespace mlsc;

TEST(CmaEs, OneDimensionalQuadratic) {
    CmaEsConfig cfg;
    cfg.project = nullptr;
    const CmaEsResult r = cma_es_optimize([](const std::vector<double>& x) { return (x[0] - 3.0) * (x[0] - 3.0); }, 1, 42, cfg);
    ASSERT_EQ(r.best.size(), 1u);
    EXPECT_NEAR(r.best[0], 3.0, 1e-2);
    EXPECT_EQ(r.evaluations, 300);
    EXPECT_EQ(r.history.size(), 30u);
}

TEST(CmaEs, RosenbrockProgress) {
    CmaEsConfig cfg;
    cfg.project = nullptr;
    cfg.generations = 300;
    cfg.mean0 = {-1.0, 1.0};
    auto f = [](const std::vector<double>& x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    const CmaEsResult r = cma_es_optimize(f, 2, 5, cfg);
    EXPECT_LT(r.best_value, 1e-6);
}

TEST(CmaEs, DeterministicForSeed) {
    auto f = [](const std::vector<double>& x) { return std::abs(x[0] - 1.0) + std::abs(x[1] - 2.0); };
    const CmaEsResult a = cma_es_optimize(f, 2, 9), b = cma_es_optimize(f, 2, 9);
    ASSERT_EQ(a.history.size(), b.history.size());
    for (std::size_t g = 0; g < a.history.size(); ++g) {
        EXPECT_EQ(a.history[g].mean, b.history[g].mean);
        EXPECT_EQ(a.history[g].sigma, b.history[g].sigma);
        EXPECT_EQ(a.history[g].best_value, b.history[g].best_value);
    }
    const CmaEsResult c = cma_es_optimize(f, 2, 10);
    EXPECT_NE(a.history.back().mean, c.history.back().mean);
}

TEST(CmaEs, ProjectionKeepsEvaluatedPointsNonNegative) {
    bool negative = false;
    auto f = [&](const std::vector<double>& x) {
        for (double v : x) negative = negative || v < 0.0;
        return (x[0] + 2.0) * (x[0] + 2.0);
    };
    const CmaEsResult r = cma_es_optimize(f, 1, 3);
    EXPECT_FALSE(negative);
    EXPECT_NEAR(r.best[0], 0.0, 1e-12);
}

TEST(CmaEs, RejectsBadConfig) {
    auto f = [](const std::vector<double>&) { return 0.0; };
    CmaEsConfig cfg;
    cfg.population = 1;
    EXPECT_THROW(cma_es_optimize(f, 1, 0, cfg), std::invalid_argument);
    EXPECT_THROW(cma_es_optimize(f, 0, 0), std::invalid_argument);
}
