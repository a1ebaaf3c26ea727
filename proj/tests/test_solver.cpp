#include <gtest/gtest.h>

#include <cmath>

#include "mlsc/closed_form.hpp"
#include "mlsc/solver.hpp"

using namespace mlsc;

namespace {

ModelParams base(double delta = 0.0) {
    ModelParams p;
    p.beta = 0.8;
    p.gamma = 0.8;
    p.delta = delta;
    p.c_plus = 1.0;
    p.c_minus = 0.7;
    p.r = 1.0;
    return p;
}

}  // namespace

TEST(ErrorBound, Examples) {
    ModelParams p = base();
    EXPECT_NEAR(error_bound(p, GridSpec(1.0, 0.01)), 0.025, 1e-12);
    p.c_plus = 1.5;
    p.beta = 0.95;
    EXPECT_NEAR(error_bound(p, GridSpec(1.0, 0.05)), 0.75, 1e-12);
    EXPECT_LT(error_bound(base(), GridSpec(1.0, 1e-4)), error_bound(base(), GridSpec(1.0, 1e-2)));
}

TEST(IterationBound, Examples) {
    EXPECT_EQ(iteration_bound(10.0, 1e-8, 0.8) + 2, 95);
    EXPECT_EQ(iteration_bound(1e-9, 1e-8, 0.8), 0);
}

TEST(ValueIterate, ConvergesWithinBoundAndContracts) {
    const ModelParams p = base();
    const Ladder l({0, 2, 4});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    ASSERT_FALSE(pol.residuals.empty());
    EXPECT_LE(pol.residuals.back(), pol.epsilon);
    const ConvergenceReport rep = convergence_report(pol, p);
    EXPECT_TRUE(rep.ratio_ok);
    EXPECT_TRUE(rep.iterations_ok);
    EXPECT_LE(rep.max_ratio, p.beta + 1e-6);
}

TEST(ValueIterate, WarmStartFromFixedPointTakesOneIteration) {
    const ModelParams p = base();
    const Ladder l({0, 2, 4});
    const GridSpec g = default_grid(l, p, 0.05);
    const Policy pol = value_iterate(l, p, g);
    const Policy again = value_iterate(l, p, g, kDefaultEpsilon, &pol.W);
    EXPECT_EQ(again.iterations, 1);
    EXPECT_LE(again.residuals.front(), kDefaultEpsilon);
}

TEST(ValueIterate, TwoLevelRowsCoincide) {
    const ModelParams p = base();
    const Ladder l({0, 3.5});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    for (std::size_t i = 0; i < pol.grid.size(); ++i) EXPECT_NEAR(pol.W.at(1, i), pol.W.at(2, i), 1e-9);
}

TEST(ValueIterate, ImpossibilityMeansNoImprovement) {
    ModelParams p = base();
    p.c_plus = 1.5;
    p.c_minus = 0.4;
    const Ladder l({0, 2, 5, 8});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    for (double a : pol.a_plus) EXPECT_EQ(a, 0.0);
}

TEST(ValueIterate, GamingOnlyAimsAtThresholds) {
    ModelParams p = base(0.8);
    p.c_minus = 0.365;
    const Ladder l({0, 4, 8, 12, 16});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    for (int lev = 1; lev <= l.levels(); ++lev) {
        for (std::size_t i = 0; i < pol.grid.size(); ++i) {
            const Action a = pol.action(lev, i);
            if (a.a_minus <= 0.0) continue;
            const double z = pol.grid.point(i) + a.a_plus + a.a_minus;
            bool hits = false;
            for (double m : l.values()) hits = hits || std::abs(z - m) < 1e-9;
            EXPECT_TRUE(hits) << "level " << lev << " x " << pol.grid.point(i);
            const StepResult s = step({lev, pol.grid.point(i)}, a, l, p);
            EXPECT_GE(s.next.level, lev);
        }
    }
}

TEST(ValueIterate, RejectsGridBelowTopThreshold) {
    const ModelParams p = base();
    EXPECT_THROW(value_iterate(Ladder({0, 5}), p, GridSpec(4.0, 0.1)), std::invalid_argument);
}

TEST(ValueIterate, LookupUsesNearestGridPoint) {
    const ModelParams p = base();
    const Ladder l({0, 2});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.1));
    const Action a = pol.lookup(1, 1.04);
    const Action b = pol.action(1, 10);
    EXPECT_EQ(a.a_plus, b.a_plus);
    EXPECT_EQ(a.a_minus, b.a_minus);
}

TEST(ValueIterate, CaseAImprovesToThreshold) {
    const ModelParams p = base();
    const Ladder l({0, 2});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    const std::size_t i = pol.grid.nearest(1.5);
    EXPECT_NEAR(pol.action(1, i).a_plus, 0.5, 1e-9);
    EXPECT_EQ(pol.action(1, i).a_minus, 0.0);
}
