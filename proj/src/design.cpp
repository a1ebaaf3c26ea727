#include "mlsc/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "mlsc/solver.hpp"

namespace mlsc {

void DesignProblem::validate() const {
    params.validate();
    if (!(M >= 0.0) || !std::isfinite(M)) throw std::invalid_argument("M: must be >= 0");
}

double infeasibility_bound_no_legup(const ModelParams& p) {
    const double omg = 1.0 - p.gamma;
    return p.r / ((1.0 - p.beta) * omg * omg * p.c_plus);
}

LegUpConditions legup_feasibility_conditions(const ModelParams& p) {
    if (!(p.delta > 0.0)) throw std::domain_error("legup_feasibility_conditions: requires delta > 0");
    const double bg = p.beta * p.gamma;
    LegUpConditions c;
    c.min_r = (1.0 - p.beta) * p.c_plus * p.delta / (1.0 - p.gamma);
    c.min_c_minus = std::max((1.0 + bg / 2.0) * (1.0 - bg) * p.c_plus, bg * (1.0 - bg * bg) * p.c_plus);
    c.satisfied = p.r >= c.min_r && p.c_minus >= c.min_c_minus;
    return c;
}

Ladder natural_sequence(const DesignProblem& problem) {
    problem.validate();
    const ModelParams& p = problem.params;
    if (!(p.delta > 0.0)) throw PreconditionError("natural sequence requires delta > 0");
    const LegUpConditions c = legup_feasibility_conditions(p);
    if (p.r < c.min_r) {
        std::ostringstream os;
        os << "natural sequence requires r >= (1-beta) c+ delta / (1-gamma) = " << c.min_r;
        throw PreconditionError(os.str());
    }
    if (p.c_minus < c.min_c_minus) {
        std::ostringstream os;
        os << "natural sequence requires c- >= max{(1+beta gamma/2)(1-beta gamma) c+, beta gamma (1-beta^2 gamma^2) c+} = "
           << c.min_c_minus;
        throw PreconditionError(os.str());
    }
    const double steps = (1.0 - p.gamma) * problem.M / p.delta;
    const int L = std::max(2, static_cast<int>(std::ceil(steps - 1e-9)) + 1);
    std::vector<double> mu(static_cast<std::size_t>(L));
    for (int l = 1; l <= L; ++l) mu[static_cast<std::size_t>(l - 1)] = p.natural_equilibrium(l);
    return Ladder(mu);
}

GreedyResult greedy_thresholds(const DesignProblem& problem, const GridSpec& grid, const GreedyOptions& opt) {
    problem.validate();
    const ModelParams& p = problem.params;
    if (!(opt.epsilon > 0.0)) throw std::invalid_argument("greedy: epsilon must be > 0");
    GreedyResult res;

    std::vector<double> mu{0.0};
    double x_prev = 0.0;
    std::unique_ptr<ValueGrid> warm;
    const double upper = grid.x_max() - grid.dx();

    for (int l = 2; x_prev < problem.M && l <= opt.max_levels; ++l) {
        double a = std::max(mu.back(), p.natural_equilibrium(l));
        double b = upper;
        bool accepted_any = false;
        double x_new = 0.0;
        std::unique_ptr<ValueGrid> accepted_w;
        while (b - a > opt.epsilon) {
            const double m = 0.5 * (a + b);
            std::vector<double> cand = mu;
            cand.push_back(m);
            const Ladder ladder(cand);
            const Policy pol = value_iterate(ladder, p, grid, opt.solve_epsilon, warm.get());
            ++res.solves;
            // Entry state: the agent arrives at level l-1 with attribute gamma x_{l-1} + delta (l-2).
            const AgentState entry{l - 1, p.gamma * x_prev + p.delta * (l - 2)};
            const Action act = policy_action(pol, entry);
            const double x_l = entry.attribute + act.a_plus;
            const double z = x_l + act.a_minus;
            const Action hold = policy_action(pol, {l, p.gamma * m + p.delta * (l - 1)});
            const bool ok = act.a_minus <= kThresholdTol && z >= m - kThresholdTol && hold.a_plus > 0.0;
            if (ok) {
                a = m;
                accepted_any = true;
                x_new = x_l;
                accepted_w = std::make_unique<ValueGrid>(pol.W);
            } else {
                b = m;
            }
            if (!warm || ok) warm = std::make_unique<ValueGrid>(pol.W);
        }
        if (!accepted_any || a - mu.back() < opt.epsilon) {
            if (mu.size() == 1)
                res.diagnostic = check_incentivizable(p)
                                     ? "no first threshold incentivizes improvement from (1, 0)"
                                     : "no first threshold found; (1 - beta gamma) c+ >= c-";
            break;
        }
        mu.push_back(a);
        res.entry_attributes.push_back(x_new);
        x_prev = x_new;
        warm = std::move(accepted_w);
    }
    res.thresholds = mu;
    return res;
}

std::string to_string(ViolationKind k) {
    switch (k) {
        case ViolationKind::NoGaming: return "no-gaming";
        case ViolationKind::AttributeTarget: return "attribute-target";
        case ViolationKind::TopLevel: return "top-level";
        case ViolationKind::FinalThreshold: return "final-threshold";
    }
    return "?";
}

std::vector<double> default_x0_set(const Ladder& ladder, const GridSpec& grid) {
    std::vector<double> xs;
    const double mu2 = ladder.at(2);
    for (std::size_t i = 0; i < grid.size() && grid.point(i) <= mu2 + 1e-12; ++i) xs.push_back(grid.point(i));
    xs.push_back(ladder.top());
    return xs;
}

FeasibilityReport verify_feasible(const Ladder& ladder, const DesignProblem& problem, const GridSpec& grid,
                                  const std::vector<double>& x0_set, int horizon) {
    problem.validate();
    const ModelParams& p = problem.params;
    const int L = ladder.levels();
    FeasibilityReport rep;
    if (ladder.top() < p.natural_equilibrium(L) - kThresholdTol) {
        rep.feasible = false;
        rep.violated.push_back({0.0, ViolationKind::FinalThreshold, -1});
        return rep;
    }
    const Policy pol = value_iterate(ladder, p, grid);
    const int window_start = horizon - std::max(1, horizon / 5);
    for (double x0 : x0_set) {
        const Trajectory tr = rollout(pol, {1, x0}, ladder, p, horizon);
        std::vector<Violation> found;
        for (const auto& s : tr.steps) {
            if (s.action.a_minus > kThresholdTol) {
                found.push_back({x0, ViolationKind::NoGaming, s.t});
                break;
            }
        }
        double min_x = std::numeric_limits<double>::infinity();
        int top_fail = -1, attr_fail = -1;
        for (const auto& s : tr.steps) {
            if (s.t < window_start) continue;
            if (s.level_before != L && top_fail < 0) top_fail = s.t;
            if (s.x_post < min_x) {
                min_x = s.x_post;
                if (min_x < problem.M - grid.dx() && attr_fail < 0) attr_fail = s.t;
            }
        }
        if (tr.final_state.level != L && top_fail < 0) top_fail = horizon;
        if (top_fail >= 0) found.push_back({x0, ViolationKind::TopLevel, top_fail});
        if (attr_fail >= 0) found.push_back({x0, ViolationKind::AttributeTarget, attr_fail});
        if (!found.empty()) {
            if (rep.feasible) {
                int first = horizon;
                for (const auto& v : found) first = std::min(first, v.t);
                const int cut = std::min(horizon, first + 1);
                rep.witness.steps.assign(tr.steps.begin(), tr.steps.begin() + cut);
                const auto& tail = tr.steps;
                rep.witness.final_state = cut < horizon
                                              ? AgentState{tail[static_cast<std::size_t>(cut)].level_before,
                                                           tail[static_cast<std::size_t>(cut)].x_before}
                                              : tr.final_state;
            }
            rep.feasible = false;
            rep.violated.insert(rep.violated.end(), found.begin(), found.end());
        }
    }
    return rep;
}

}  // namespace mlsc
