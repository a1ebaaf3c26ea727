#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "mlsc/closed_form.hpp"
#include "mlsc/design.hpp"
#include "mlsc/simulate.hpp"
#include "mlsc/solver.hpp"

using namespace mlsc;

namespace {

ModelParams params(double beta, double gamma, double delta, double cp, double cm, double r = 1.0) {
    ModelParams p;
    p.beta = beta;
    p.gamma = gamma;
    p.delta = delta;
    p.c_plus = cp;
    p.c_minus = cm;
    p.r = r;
    return p;
}

struct GamingLadder {
    ModelParams p = params(0.8, 0.8, 0.8, 1.0, 0.365);
    Ladder ladder{{0, 4, 8, 12, 16}};
    Policy pol = value_iterate(ladder, p, default_grid(ladder, p, 0.05));
};

const GamingLadder& gaming_ladder() {
    static const GamingLadder f;
    return f;
}

}  // namespace

TEST(Rollout, GamingLadderMilestones) {
    const GamingLadder& f = gaming_ladder();
    const Trajectory tr = rollout(f.pol, {1, 0.0}, f.ladder, f.p, 30);
    for (int t = 0; t < 4; ++t) {
        EXPECT_EQ(tr.steps[static_cast<std::size_t>(t)].action.a_plus, 0.0);
        EXPECT_GT(tr.steps[static_cast<std::size_t>(t)].action.a_minus, 0.0);
        EXPECT_EQ(tr.steps[static_cast<std::size_t>(t)].level_after, t + 2);
    }
    for (int t = 4; t <= 9; ++t) EXPECT_EQ(tr.steps[static_cast<std::size_t>(t)].level_before, t % 2 == 0 ? 5 : 4);
    int improvements = 0;
    for (const auto& s : tr.steps) improvements += s.action.a_plus > 0.0;
    EXPECT_EQ(improvements, 1);
    EXPECT_GT(tr.steps[9].action.a_plus, 0.0);
    for (std::size_t t = 10; t < tr.steps.size(); ++t) {
        EXPECT_EQ(tr.steps[t].level_before, 5);
        EXPECT_NEAR(tr.steps[t].x_before, 16.0, 2 * f.pol.grid.dx());
    }
}

TEST(Rollout, ReplayThroughStepIsExact) {
    const GamingLadder& f = gaming_ladder();
    const Trajectory tr = rollout(f.pol, {1, 0.0}, f.ladder, f.p, 30);
    AgentState s{1, 0.0};
    for (const auto& st : tr.steps) {
        const StepResult r = step(s, st.action, f.ladder, f.p);
        EXPECT_EQ(r.z, st.z);
        EXPECT_EQ(r.x_post, st.x_post);
        EXPECT_EQ(r.next.level, st.level_after);
        EXPECT_EQ(r.reward, st.reward);
        EXPECT_EQ(r.cost, st.cost);
        s = r.next;
    }
    EXPECT_EQ(s.level, tr.final_state.level);
    EXPECT_EQ(s.attribute, tr.final_state.attribute);
}

TEST(Rollout, DiscountedReturnMatchesValue) {
    const ModelParams p = params(0.8, 0.8, 0.0, 1.0, 0.7);
    const Ladder l({0, 2, 4});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.02));
    double lo = 1e300, hi = -1e300;
    for (double w : pol.W.data()) {
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    for (double x0 : {0.0, 1.0, 3.0}) {
        const std::size_t i = pol.grid.nearest(x0);
        const Trajectory tr = rollout(pol, {1, pol.grid.point(i)}, l, p, 200);
        double ret = 0.0, disc = 1.0;
        for (const auto& s : tr.steps) {
            ret += disc * (s.reward - s.cost);
            disc *= p.beta;
        }
        const double v = -v_from_w(pol.value(1, i), pol.grid.point(i), p);
        EXPECT_NEAR(ret, v, error_bound(p, pol.grid) + std::pow(p.beta, 200) * (hi - lo) + 1e-6);
    }
}

TEST(SteadyState, LegUpConvergesToNaturalEquilibrium) {
    const ModelParams p = params(0.8, 0.8, 0.5, 1.0, 0.7);
    const Ladder l({0, 1.0});  // mu below delta / (1 - gamma) = 2.5
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    const SteadyState ss = steady_state(pol, {1, 0.0}, l, p);
    ASSERT_EQ(ss.kind, SteadyKind::FixedPoint);
    EXPECT_EQ(ss.states.front().level, 2);
    EXPECT_NEAR(ss.states.front().attribute, 2.5, 2 * pol.grid.dx());
}

TEST(SteadyState, CaseDCollapsesToOrigin) {
    const ModelParams p = params(0.8, 0.8, 0.0, 1.0, 0.7);
    const double mu = 9.0;
    ASSERT_EQ(classify_regime(mu, p).tag, RegimeTag::CaseD);
    const Ladder l({0, mu});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    const double x_lower = policy_params(mu, p).x_lower;
    for (double x0 : {0.0, 1.0, x_lower - 0.5}) {
        const SteadyState ss = steady_state(pol, {1, x0}, l, p);
        ASSERT_EQ(ss.kind, SteadyKind::FixedPoint);
        EXPECT_EQ(ss.states.front().level, 1);
        EXPECT_NEAR(ss.states.front().attribute, 0.0, 2 * pol.grid.dx());
    }
}

TEST(SteadyState, GamingLadderDetectsAbsorption) {
    const GamingLadder& f = gaming_ladder();
    const SteadyState ss = steady_state(f.pol, {1, 0.0}, f.ladder, f.p);
    ASSERT_EQ(ss.kind, SteadyKind::FixedPoint);
    EXPECT_EQ(ss.states.front().level, 5);
    EXPECT_NEAR(ss.states.front().attribute, 16.0, 2 * f.pol.grid.dx());
}

TEST(ImprovementFraction, Examples) {
    Trajectory tr;
    TrajectoryStep s;
    s.action = {0.3, 0.1};
    tr.steps.push_back(s);
    s.action = {0.0, 2.0};
    tr.steps.push_back(s);
    s.action = {1.0, 0.0};
    tr.steps.push_back(s);
    s.action = {0.0, 0.0};
    tr.steps.push_back(s);
    const auto f = improvement_fraction(tr);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_NEAR(*f[0], 0.75, 1e-12);
    EXPECT_EQ(*f[1], 0.0);
    EXPECT_EQ(*f[2], 1.0);
    EXPECT_FALSE(f[3].has_value());
}

TEST(Population, PointMassEqualsSingleRollout) {
    const GamingLadder& f = gaming_ladder();
    const InitialDistribution d{{0.0}, {1.0}};
    const PopulationAggregate a = population_rollout(f.pol, f.ladder, f.p, d, 20);
    const Trajectory tr = rollout(f.pol, {1, 0.0}, f.ladder, f.p, 20);
    for (std::size_t t = 0; t < 20; ++t) {
        EXPECT_DOUBLE_EQ(a.mean_x_post[t], tr.steps[t].x_post);
        EXPECT_NEAR(a.std_x_post[t], 0.0, 1e-12);
    }
}

TEST(Population, TwoPointMeanIsMidpoint) {
    const ModelParams p = params(0.8, 0.8, 0.0, 1.0, 0.7);
    const Ladder l({0, 2, 4});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.05));
    const InitialDistribution d{{0.5, 3.0}, {0.5, 0.5}};
    const PopulationAggregate a = population_rollout(pol, l, p, d, 15);
    const Trajectory t1 = rollout(pol, {1, 0.5}, l, p, 15), t2 = rollout(pol, {1, 3.0}, l, p, 15);
    for (std::size_t t = 0; t < 15; ++t)
        EXPECT_NEAR(a.mean_x_post[t], 0.5 * (t1.steps[t].x_post + t2.steps[t].x_post), 1e-12);
}

TEST(Population, NaturalSequenceMeanNonDecreasing) {
    const ModelParams p = params(0.8, 0.8, 0.1, 1.0, 0.5);
    const Ladder l = natural_sequence({2.0, p});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.02));
    const InitialDistribution d{{0.0, 0.2, 0.4}, {0.3, 0.3, 0.4}};
    const PopulationAggregate a = population_rollout(pol, l, p, d, 40);
    for (std::size_t t = 2; t < a.mean_x_post.size(); ++t) EXPECT_GE(a.mean_x_post[t], a.mean_x_post[t - 1] - 1e-9);
}

TEST(Distribution, Validation) {
    EXPECT_THROW((InitialDistribution{{1.0, 2.0}, {0.5, 0.6}}.validate()), std::invalid_argument);
    EXPECT_THROW((InitialDistribution{{11.0}, {1.0}}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((InitialDistribution{{1.0, 2.0}, {0.5, 0.5}}.validate()));
}

TEST(TrajectoryCsv, HeaderAndRows) {
    const GamingLadder& f = gaming_ladder();
    std::ostringstream os;
    write_trajectory_csv(os, rollout(f.pol, {1, 0.0}, f.ladder, f.p, 3));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,level,x_pre,a_plus,a_minus,z,x_post,reward,cost");
    std::getline(in, line);
    EXPECT_EQ(line.substr(0, 8), "0,1,0,0,");
}
