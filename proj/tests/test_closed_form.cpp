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

TEST(KIndex, Examples) {
    EXPECT_EQ(k_index(base()), 2);
    ModelParams p = base();
    p.beta = 0.9;
    p.gamma = 0.9;
    p.c_minus = 0.5;
    EXPECT_EQ(k_index(p), 3);
    p = base();
    p.c_minus = 0.35;
    EXPECT_THROW(k_index(p), std::domain_error);
    p.c_minus = 0.361;
    EXPECT_GT(k_index(p), 5);
}

TEST(RegionBoundaries, Examples) {
    const RegionBoundaries b = region_boundaries(base());
    EXPECT_NEAR(b.mu_lower, 4.464, 1e-3);
    EXPECT_NEAR(b.mu_upper, 7.143, 1e-3);
    ModelParams p = base();
    p.r = 2.0;
    const RegionBoundaries b2 = region_boundaries(p);
    EXPECT_NEAR(b2.mu_lower, 2 * b.mu_lower, 1e-9);
    EXPECT_NEAR(b2.mu_upper, 2 * b.mu_upper, 1e-9);
}

TEST(RegionBoundaries, IncreaseInBetaAndGamma) {
    for (double beta : {0.5, 0.6, 0.7, 0.8}) {
        ModelParams lo = base(), hi = base();
        lo.beta = beta;
        hi.beta = beta + 0.05;
        EXPECT_LE(region_boundaries(lo).mu_lower, region_boundaries(hi).mu_lower);
        EXPECT_LE(region_boundaries(lo).mu_upper, region_boundaries(hi).mu_upper);
    }
    for (double gamma : {0.6, 0.7, 0.8}) {
        ModelParams lo = base(), hi = base();
        lo.gamma = gamma;
        hi.gamma = gamma + 0.05;
        EXPECT_LE(region_boundaries(lo).mu_lower, region_boundaries(hi).mu_lower);
        EXPECT_LE(region_boundaries(lo).mu_upper, region_boundaries(hi).mu_upper);
    }
}

TEST(RegionBoundaries, BetaToOneLimit) {
    ModelParams p = base();
    p.beta = 0.999999;
    const RegionBoundaries b = region_boundaries(p);
    const double limit = p.r / ((1 - p.gamma) * p.c_plus);
    EXPECT_NEAR(b.mu_lower, limit, 1e-3);
    // K stays 2 here, so the upper boundary settles at r / ((1 - gamma) c-) instead.
    EXPECT_NEAR(b.mu_upper, p.r / ((1 - p.gamma) * p.c_minus), 1e-3);
    EXPECT_TRUE(std::isfinite(b.mu_upper));
}

TEST(ClassifyRegime, Examples) {
    EXPECT_EQ(classify_regime(3.0, base(0.8)).tag, RegimeTag::LegUp);
    EXPECT_EQ(classify_regime(5.0, base()).tag, RegimeTag::CaseC);
    const double mu_upper = region_boundaries(base()).mu_upper;
    EXPECT_EQ(classify_regime(mu_upper, base()).tag, RegimeTag::CaseD);
    EXPECT_EQ(classify_regime(2.0, base()).tag, RegimeTag::CaseA);
}

TEST(ClassifyRegime, DeltaShiftTranslatesCutoffs) {
    const TwoLevelRegime r0 = classify_regime(1.0, base());
    for (double delta : {0.1, 0.3}) {
        const TwoLevelRegime r = classify_regime(1.0, base(delta));
        const double shift = delta / (1 - 0.8);
        EXPECT_NEAR(r.b_end - r0.b_end, shift, 1e-9);
        EXPECT_NEAR(r.c_end - r0.c_end, shift, 1e-9);
    }
}

TEST(SegmentSlope, Formula) {
    const ModelParams p = base();
    for (int k = 1; k <= 4; ++k) {
        const double expect = 1.0 - (1 - std::pow(0.64, k)) / (1 - 0.64) * 0.7;
        EXPECT_NEAR(segment_slope(k, p), expect, 1e-12);
        EXPECT_LE(segment_slope(k, p), p.c_plus);
    }
}

TEST(WClosed, CaseAIsConstant) {
    const ModelParams p = base();
    const PiecewiseLinearW w = w_closed(2.0, p);
    ASSERT_EQ(w.regime, RegimeTag::CaseA);
    for (double x : {0.0, 0.5, 1.9, 2.0}) EXPECT_NEAR(w(x), g_at_threshold(2.0, p), 1e-12);
}

TEST(WClosed, CaseCIsCPlusLineBelowFirstBreak) {
    const ModelParams p = base();
    const PiecewiseLinearW w = w_closed(5.0, p);
    ASSERT_EQ(w.regime, RegimeTag::CaseC);
    const double s1 = 5.0 - p.r / p.c_minus;
    for (double x = 0.0; x < s1; x += 0.1) EXPECT_NEAR(w(x), p.c_plus * x, 1e-12);
}

TEST(WClosed, SlopesNeverExceedCPlus) {
    for (double mu : {2.0, 3.5, 5.0, 6.5, 9.0}) {
        const PiecewiseLinearW w = w_closed(mu, base());
        for (const LinearPiece& pc : w.pieces) EXPECT_LE(pc.slope, 1.0 + 1e-12);
    }
}

TEST(WClosed, LegUpPreconditionsChecked) {
    ModelParams p = base(0.5);
    p.c_minus = 0.37;  // incentivizable but outside the leg-up conditions
    EXPECT_THROW(w_closed(1.0, p), PreconditionError);
}

TEST(WClosed, MatchesSolverInEveryRegime) {
    struct Case {
        double mu, delta;
    };
    for (const Case c : {Case{1.0, 0.5}, Case{2.0, 0.0}, Case{3.5, 0.0}, Case{5.0, 0.0}, Case{9.0, 0.0}}) {
        const ModelParams p = base(c.delta);
        const Ladder l({0, c.mu});
        const Policy pol = value_iterate(l, p, default_grid(l, p, 0.02));
        const PiecewiseLinearW w = w_closed(c.mu, p);
        double gap = 0.0;
        for (std::size_t i = 0; i < pol.grid.size(); ++i) gap = std::max(gap, std::abs(pol.value(1, i) - w(pol.grid.point(i))));
        EXPECT_LE(gap, error_bound(p, pol.grid) + 1e-6) << "mu " << c.mu;
    }
}

TEST(WClosed, FixedPointUnderOneBackup) {
    for (double mu : {2.0, 5.0, 9.0}) {
        const ModelParams p = base();
        const Ladder l({0, mu});
        const GridSpec g = default_grid(l, p, 0.01);
        const PiecewiseLinearW w = w_closed(mu, p);
        ValueGrid seed(2, g);
        for (int lev = 1; lev <= 2; ++lev)
            for (std::size_t i = 0; i < g.size(); ++i) seed.row(lev)[i] = w(g.point(i));
        const ValueGrid next = bellman_backup(seed, l, p, g);
        EXPECT_LE(ValueGrid::sup_distance(seed, next), error_bound(p, g)) << "mu " << mu;
    }
}

TEST(PolicyClosed, Examples) {
    const ModelParams p = base();
    const Action above = policy_closed(3.5, p, 4.0);
    EXPECT_EQ(above.a_plus, 0.0);
    EXPECT_EQ(above.a_minus, 0.0);

    // Case C at mu = 5: gaming below the switch point, improvement above it.
    const TwoLevelPolicyParams pp = policy_params(5.0, p);
    EXPECT_NEAR(pp.x_upper, 4.2, 1e-6);
    const Action game = policy_closed(5.0, p, 4.0);
    EXPECT_EQ(game.a_plus, 0.0);
    EXPECT_NEAR(game.a_minus, 1.0, 1e-12);
    const Action up = policy_closed(5.0, p, 4.4);
    EXPECT_NEAR(up.a_plus, 0.6, 1e-12);
    EXPECT_EQ(up.a_minus, 0.0);
}

TEST(PolicyClosed, SwitchPointAgreesWithSolver) {
    const ModelParams p = base();
    const Ladder l({0, 5.0});
    const Policy pol = value_iterate(l, p, default_grid(l, p, 0.01));
    double first_improve = -1.0;
    for (std::size_t i = 0; i < pol.grid.size() && pol.grid.point(i) < 5.0; ++i) {
        if (pol.action(1, i).a_plus > 0.0 && pol.action(1, i).a_minus == 0.0) {
            first_improve = pol.grid.point(i);
            break;
        }
    }
    EXPECT_NEAR(first_improve, policy_params(5.0, p).x_upper, 0.01 + 1e-9);
}

TEST(PolicyClosed, LegUpWithZeroXCircGamesEverywhere) {
    const ModelParams p = base(0.5);
    const TwoLevelPolicyParams pp = policy_params(0.3, p);
    ASSERT_EQ(pp.x_circ, 0.0);
    for (double x : {0.0, 0.1, 0.29}) {
        const Action a = policy_closed(0.3, p, x);
        EXPECT_EQ(a.a_plus, 0.0);
        EXPECT_NEAR(a.a_minus, 0.3 - x, 1e-12);
    }
}
