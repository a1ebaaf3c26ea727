// One line per criterion: "PASS <n> <name>: <detail>" or "FAIL ...". Exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mlsc/closed_form.hpp"
#include "mlsc/design.hpp"
#include "mlsc/oracle.hpp"
#include "mlsc/principal.hpp"
#include "mlsc/simulate.hpp"
#include "mlsc/solver.hpp"

using namespace mlsc;

namespace {

// Pinned tolerances.
constexpr double kClosedFormSlack = 1e-6;
constexpr double kRatioSlack = 1e-6;
constexpr double kMonotoneMass = 0.95;
constexpr double kBisectionSlack = 2e-3;  // two greedy bisection tolerances
constexpr int kOracleHorizon = 60;

struct Check {
    bool pass = true;
    std::string detail;
};

struct SolveRecord {
    ConvergenceReport report;
    double beta;
};
std::vector<SolveRecord> g_reports;

Policy solve(const Ladder& l, const ModelParams& p, const GridSpec& g) {
    Policy pol = value_iterate(l, p, g);
    g_reports.push_back({convergence_report(pol, p), p.beta});
    return pol;
}

ModelParams make(double beta, double gamma, double delta, double cp, double cm, double r) {
    ModelParams p;
    p.beta = beta;
    p.gamma = gamma;
    p.delta = delta;
    p.c_plus = cp;
    p.c_minus = cm;
    p.r = r;
    return p;
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Check impossibility() {
    std::mt19937_64 rng(20240101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Check o;
    int improving = 0;
    for (int k = 0; k < 20; ++k) {
        const double beta = 0.5 + 0.4 * u(rng), gamma = 0.5 + 0.45 * u(rng), cp = 0.5 + 1.5 * u(rng);
        const ModelParams p = make(beta, gamma, 0.3 * u(rng), cp, (0.05 + 0.9 * u(rng)) * (1.0 - beta * gamma) * cp,
                                   0.5 + 1.5 * u(rng));
        const int L = 2 + static_cast<int>(rng() % 4);
        std::vector<double> mu{0.0};
        for (int l = 1; l < L; ++l) mu.push_back(mu.back() + 0.5 + 2.5 * u(rng));
        const Ladder ladder(mu);
        const Policy pol = solve(ladder, p, default_grid(ladder, p, 0.05));
        if (std::any_of(pol.a_plus.begin(), pol.a_plus.end(), [](double a) { return a > 0.0; })) ++improving;
    }
    o.pass = improving == 0;
    o.detail = "20 instances, " + std::to_string(improving) + " with a_plus > 0";
    return o;
}

Check closed_form() {
    struct Case {
        RegimeTag tag;
        double mu, delta;
    };
    const Case cases[] = {{RegimeTag::LegUp, 1.0, 0.5},
                          {RegimeTag::CaseA, 2.0, 0.0},
                          {RegimeTag::CaseB, 3.5, 0.0},
                          {RegimeTag::CaseC, 5.0, 0.0},
                          {RegimeTag::CaseD, 9.0, 0.0}};
    Check o;
    for (const Case& c : cases) {
        const ModelParams p = make(0.8, 0.8, c.delta, 1.0, 0.7, 1.0);
        const Ladder l({0.0, c.mu});
        const PiecewiseLinearW w = w_closed(c.mu, p);
        const Policy pol = solve(l, p, default_grid(l, p, 0.005));
        double gap = 0.0;
        for (std::size_t i = 0; i < pol.grid.size(); ++i)
            gap = std::max(gap, std::abs(pol.value(1, i) - w(pol.grid.point(i))));
        const double bound = error_bound(p, pol.grid) + kClosedFormSlack;
        const bool ok = w.regime == c.tag && gap <= bound;
        o.pass = o.pass && ok;
        o.detail += to_string(w.regime) + " mu=" + num(c.mu) + " gap " + num(gap) + (ok ? " <= " : " > ") + num(bound) +
                    "; ";
    }
    return o;
}

Check gaming_ladder() {
    const ModelParams p = make(0.8, 0.8, 0.8, 1.0, 0.365, 1.0);
    const Ladder l({0, 4, 8, 12, 16});
    const Policy pol = solve(l, p, default_grid(l, p, 0.05));
    const Trajectory tr = rollout(pol, {1, 0.0}, l, p, 40);
    const double dx = pol.grid.dx();
    std::vector<std::string> bad;
    for (int t = 0; t < 4; ++t) {
        const auto& s = tr.steps[static_cast<std::size_t>(t)];
        if (s.action.a_plus != 0.0 || !(s.action.a_minus > 0.0) || s.level_after != t + 2)
            bad.push_back("ascent t=" + std::to_string(t));
    }
    for (int t = 4; t <= 9; ++t)
        if (tr.steps[static_cast<std::size_t>(t)].level_before != (t % 2 == 0 ? 5 : 4))
            bad.push_back("alternation t=" + std::to_string(t));
    std::vector<int> improving;
    for (const auto& s : tr.steps)
        if (s.action.a_plus > 0.0) improving.push_back(s.t);
    if (improving != std::vector<int>{9}) bad.push_back("improvement steps != {9}");
    for (std::size_t t = 10; t < tr.steps.size(); ++t) {
        const auto& s = tr.steps[t];
        if (s.level_before != 5 || std::abs(s.x_before - 16.0) > 2 * dx || s.action.a_minus > 0.0)
            bad.push_back("absorption t=" + std::to_string(t));
    }
    Check o;
    o.pass = bad.empty();
    o.detail = bad.empty() ? "ascent t=0..3, 5/4 alternation t=4..9, improvement at t=9, then (5, " +
                                 num(tr.final_state.attribute) + ")"
                           : bad.front() + " (" + std::to_string(bad.size()) + " mismatches)";
    return o;
}

Check natural() {
    DesignProblem prob;
    prob.M = 2.0;
    prob.params = make(0.8, 0.8, 0.1, 1.0, 0.5, 1.0);
    const Ladder l = natural_sequence(prob);
    const std::vector<double> expect{0.0, 0.5, 1.0, 1.5, 2.0};
    bool ladder_ok = l.values().size() == expect.size();
    for (std::size_t i = 0; ladder_ok && i < expect.size(); ++i) ladder_ok = std::abs(l.values()[i] - expect[i]) < 1e-12;
    const GridSpec g = default_grid(l, prob.params, 0.01);
    std::vector<double> x0;
    for (int i = 0; i <= 200; ++i) x0.push_back(0.01 * i);
    const FeasibilityReport rep = verify_feasible(l, prob, g, x0, 200);
    solve(l, prob.params, g);
    Check o;
    o.pass = ladder_ok && rep.feasible;
    o.detail = std::string("ladder ") + (ladder_ok ? "[0,0.5,1,1.5,2]" : "mismatch") + ", " + std::to_string(x0.size()) +
               " starts, " + std::to_string(rep.violated.size()) + " violations";
    return o;
}

Check phase() {
    const GridSpec g(40.0, 0.05);
    GreedyOptions opt;
    opt.max_levels = 2;
    Check o;
    for (double cm : {0.20, 0.26, 0.30, 0.40}) {
        DesignProblem prob;
        prob.params = make(0.8, 0.9, 0.0, 1.0, cm, 1.0);
        prob.M = g.x_max();
        const GreedyResult r = greedy_thresholds(prob, g, opt);
        if (!r.empty()) solve(r.ladder(), prob.params, g);
        const bool ok = cm < 0.28 ? r.first_threshold() == 0.0 : r.first_threshold() > 0.0;
        o.pass = o.pass && ok;
        o.detail += "c-=" + num(cm) + " mu_2=" + num(r.first_threshold()) + (ok ? "" : " (wrong)") + "; ";
    }
    return o;
}

Check contraction() {
    double worst_ratio = 0.0;
    int over_bound = 0, ratio_fail = 0;
    for (const auto& [r, beta] : g_reports) {
        worst_ratio = std::max(worst_ratio, r.max_ratio);
        over_bound += r.iterations > r.bound;
        ratio_fail += r.max_ratio > beta + kRatioSlack;
    }
    Check o;
    o.pass = !g_reports.empty() && over_bound == 0 && ratio_fail == 0;
    o.detail = std::to_string(g_reports.size()) + " solves, max ratio " + num(worst_ratio) + ", " + std::to_string(ratio_fail) +
               " above beta + " + num(kRatioSlack) + ", " + std::to_string(over_bound) + " over the iteration bound";
    return o;
}

Check greedy_soundness() {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const GridSpec g = GridSpec::covering(40.0, 0.05);
    GreedyOptions opt;
    opt.max_levels = 4;
    Check o;
    int nonempty = 0, failed = 0;
    for (int k = 0; k < 10; ++k) {
        const double beta = 0.6 + 0.25 * u(rng), gamma = 0.6 + 0.3 * u(rng), cp = 0.5 + u(rng);
        DesignProblem prob;
        prob.params = make(beta, gamma, 0.2 * u(rng), cp, (1.3 + 1.7 * u(rng)) * (1.0 - beta * gamma) * cp,
                           0.5 + u(rng));
        prob.M = g.x_max();
        const GreedyResult r = greedy_thresholds(prob, g, opt);
        if (r.empty()) continue;
        ++nonempty;
        const Ladder l = r.ladder();
        DesignProblem check = prob;
        check.M = l.top();
        const FeasibilityReport rep = verify_feasible(l, check, g, default_x0_set(l, g), 200);
        if (!rep.feasible) {
            ++failed;
            o.detail += "instance " + std::to_string(k) + ": " + to_string(rep.violated.front().kind) + " at x0=" +
                        num(rep.violated.front().x0) + "; ";
        }
    }
    o.pass = failed == 0;
    o.detail += "10 instances, " + std::to_string(nonempty) + " non-empty ladders, " + std::to_string(failed) + " infeasible";
    return o;
}

Check oracle() {
    struct Inst {
        ModelParams p;
        std::vector<double> mu;
    };
    const Inst inst[] = {{make(0.8, 0.8, 0.0, 1.0, 0.7, 1.0), {0, 2}},
                         {make(0.8, 0.8, 0.0, 1.0, 0.7, 1.0), {0, 3.5}},
                         {make(0.7, 0.8, 0.2, 1.0, 0.6, 1.0), {0, 1.5, 3}},
                         {make(0.8, 0.8, 0.2, 1.0, 0.365, 1.0), {0, 1, 2}},
                         {make(0.6, 0.9, 0.1, 1.2, 0.5, 0.5), {0, 1, 2.5}}};
    Check o;
    OracleSpec spec;
    spec.horizon = kOracleHorizon;
    spec.x_max = 6.0;
    for (const Inst& in : inst) {
        const Ladder l(in.mu);
        const GridSpec g(spec.x_max, 0.05);
        const Policy pol = value_iterate(l, in.p, g);
        const OracleResult orc = brute_force_value(l, in.p, spec);
        double gap = 0.0, lo = 1e300, hi = -1e300;
        for (int lev = 1; lev <= l.levels(); ++lev)
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double vs = -v_from_w(pol.value(lev, i), g.point(i), in.p);
                const double vo = orc.at(lev, orc.index_of(g.point(i)));
                gap = std::max(gap, std::abs(vs - vo));
                lo = std::min(lo, vo);
                hi = std::max(hi, vo);
            }
        const double bound = error_bound(in.p, g) + std::pow(in.p.beta, kOracleHorizon) * (hi - lo);
        o.pass = o.pass && gap <= bound;
        o.detail += "L=" + std::to_string(l.levels()) + " gap " + num(gap) + (gap <= bound ? " <= " : " > ") + num(bound) +
                    "; ";
    }
    return o;
}

Check table1() {
    struct Costs {
        const char* label;
        double cp, cm;
    };
    const Costs cases[] = {{"I", 0.8, 0.7}, {"II", 1.5, 1.2}, {"III", 0.8, 0.4}, {"IV", 1.5, 0.4}};
    const InitialDistribution dist = synthetic_score_distribution(50);
    const PrincipalParams pp;
    OptimizeOptions opt;
    opt.seed = 1;
    std::vector<LevelResult> best;
    Check o;
    for (const Costs& c : cases) {
        const OptimizeResult r = optimize_over_levels(pp, make(0.8, 0.8, 0.01, c.cp, c.cm, 1.0), dist, opt);
        best.push_back(r.best_result());
        const auto& b = best.back();
        o.detail += std::string(c.label) + " U=" + num(b.utility.total) + " L=" + std::to_string(b.L) + " monotone " +
                    num(b.utility.monotone_mass) + "; ";
    }
    for (int k = 0; k < 3; ++k) {
        o.pass = o.pass && best[3].utility.total < best[static_cast<std::size_t>(k)].utility.total;
        o.pass = o.pass && best[static_cast<std::size_t>(k)].utility.monotone_mass >= kMonotoneMass;
    }
    return o;
}

Check ablation() {
    const GridSpec g(80.0, 0.05);
    GreedyOptions opt;
    opt.max_levels = 5;
    auto ladder_for = [&](double beta, double gamma) {
        DesignProblem prob;
        prob.params = make(beta, gamma, 0.0, 1.0, 0.7, 1.0);
        prob.M = g.x_max();
        return greedy_thresholds(prob, g, opt).thresholds;
    };
    Check o;
    auto check = [&](const char* name, const std::vector<double>& values, const std::function<std::vector<double>(double)>& f) {
        std::vector<std::vector<double>> ladders;
        for (double v : values) ladders.push_back(f(v));
        for (std::size_t k = 1; k < ladders.size(); ++k) {
            const auto &a = ladders[k - 1], &b = ladders[k];
            bool ok = b.size() >= a.size();
            for (std::size_t l = 0; ok && l < a.size(); ++l) ok = b[l] >= a[l] - kBisectionSlack;
            o.pass = o.pass && ok;
        }
        o.detail += std::string(name) + ":";
        for (std::size_t k = 0; k < values.size(); ++k) o.detail += " " + num(values[k]) + "->mu_L " + num(ladders[k].back());
        o.detail += "; ";
    };
    check("gamma", {0.7, 0.8, 0.9}, [&](double v) { return ladder_for(0.8, v); });
    check("beta", {0.6, 0.7, 0.8}, [&](double v) { return ladder_for(v, 0.8); });
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> run;
    };
    const Criterion criteria[] = {{"impossibility-region", impossibility},
                                  {"closed-form-equivalence", closed_form},
                                  {"gaming-ladder-trajectory", gaming_ladder},
                                  {"natural-sequence-feasibility", natural},
                                  {"phase-transition", phase},
                                  {"contraction-diagnostics", contraction},
                                  {"greedy-soundness", greedy_soundness},
                                  {"oracle-equivalence", oracle},
                                  {"cost-case-ordering", table1},
                                  {"ablation-directionality", ablation}};
    int failures = 0, n = 0;
    for (const Criterion& c : criteria) {
        ++n;
        const auto t0 = std::chrono::steady_clock::now();
        Check o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << n << ' ' << c.name << " (" << num(std::round(secs * 10) / 10)
                  << " s): " << o.detail << std::endl;
    }
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << (n - failures) << '/' << n << std::endl;
    return failures ? 1 : 0;
}
