#include <gtest/gtest.h>

#include <cmath>

#include "mlsc/oracle.hpp"
#include "mlsc/solver.hpp"

using namespace mlsc;

namespace {

ModelParams params(double beta, double gamma, double delta, double cp, double cm, double r) {
    ModelParams p;
    p.beta = beta;
    p.gamma = gamma;
    p.delta = delta;
    p.c_plus = cp;
    p.c_minus = cm;
    p.r = r;
    return p;
}

OracleSpec small_spec() {
    OracleSpec s;
    s.horizon = 40;
    s.action_step = 0.05;
    s.attribute_step = 0.05;
    s.x_max = 5.0;
    return s;
}

}  // namespace

TEST(Oracle, TinyRewardMeansZeroValueAndIdle) {
    const ModelParams p = params(0.8, 0.8, 0.0, 1.0, 0.7, 1e-6);
    const Ladder l({0, 2});
    const OracleResult o = brute_force_value(l, p, small_spec());
    for (std::size_t i = 0; i < o.points; ++i) {
        // Without effort the agent at level 1 only loses level 2 reward, which is zero anyway.
        EXPECT_NEAR(o.at(1, i), 0.0, 1e-5);
        EXPECT_EQ(o.action(1, i).a_plus, 0.0);
        EXPECT_EQ(o.action(1, i).a_minus, 0.0);
    }
}

TEST(Oracle, CaseAImprovesToThreshold) {
    const ModelParams p = params(0.8, 0.8, 0.0, 1.0, 0.7, 1.0);
    const Ladder l({0, 2});
    const OracleResult o = brute_force_value(l, p, small_spec());
    const Action a = o.action(1, o.index_of(0.0));
    EXPECT_NEAR(a.a_plus, 2.0, 1e-9);
    EXPECT_EQ(a.a_minus, 0.0);
}

TEST(Oracle, GamesWhenImprovementIsExpensive) {
    const ModelParams p = params(0.8, 0.8, 0.0, 1.5, 0.4, 1.0);
    const Ladder l({0, 1});
    const OracleResult o = brute_force_value(l, p, small_spec());
    const Action a = o.action(1, o.index_of(0.0));
    EXPECT_EQ(a.a_plus, 0.0);
    EXPECT_NEAR(a.a_minus, 1.0, 1e-9);
}

TEST(Oracle, AgreesWithSolver) {
    const ModelParams p = params(0.8, 0.8, 0.2, 1.0, 0.6, 1.0);
    const Ladder l({0, 1.0, 2.0});
    const OracleResult o = brute_force_value(l, p, small_spec());
    const Policy pol = value_iterate(l, p, GridSpec(o.spec.x_max, 0.05));
    double gap = 0.0;
    for (int lev = 1; lev <= l.levels(); ++lev)
        for (std::size_t i = 0; i < o.points; ++i) {
            const double x = o.attribute(i);
            if (x > 3.0) continue;
            const double v_solver = -v_from_w(pol.value(lev, pol.grid.nearest(x)), x, p);
            gap = std::max(gap, std::abs(v_solver - o.at(lev, i)));
        }
    const double tail = std::pow(p.beta, o.spec.horizon) * 3.0 * p.r / (1.0 - p.beta);
    EXPECT_LE(gap, error_bound(p, pol.grid) + tail);
}

TEST(Oracle, BudgetIsEnforced) {
    OracleSpec s = small_spec();
    s.budget = 1000.0;
    EXPECT_THROW(brute_force_value(Ladder({0, 1}), params(0.8, 0.8, 0, 1, 0.7, 1), s), std::length_error);
}
