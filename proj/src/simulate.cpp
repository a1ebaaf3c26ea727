#include "mlsc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace mlsc {

Action policy_action(const Policy& policy, const AgentState& state) {
    const std::size_t i = policy.grid.nearest(state.attribute);
    const double xg = policy.grid.point(i);
    const Action g = policy.action(state.level, i);
    Action a;
    if (g.a_plus > 0.0) a.a_plus = std::max(0.0, xg + g.a_plus - state.attribute);
    if (g.a_minus > 0.0) a.a_minus = std::max(0.0, xg + g.a_plus + g.a_minus - (state.attribute + a.a_plus));
    return a;
}

Trajectory rollout(const Policy& policy, const AgentState& initial, const Ladder& ladder,
                   const ModelParams& params, int horizon) {
    if (horizon < 1) throw std::invalid_argument("rollout: horizon must be >= 1");
    if (initial.attribute > policy.grid.x_max() + 1e-9)
        throw std::invalid_argument("rollout: initial attribute beyond grid");
    Trajectory traj;
    traj.steps.reserve(static_cast<std::size_t>(horizon));
    AgentState s = initial;
    for (int t = 0; t < horizon; ++t) {
        const Action a = policy_action(policy, s);
        const StepResult r = step(s, a, ladder, params);
        traj.steps.push_back({t, s.level, s.attribute, a, r.z, r.x_post, r.next.level, r.reward, r.cost});
        s = r.next;
    }
    traj.final_state = s;
    return traj;
}

namespace {

bool close(const AgentState& a, const AgentState& b, double tol) {
    return a.level == b.level && std::abs(a.attribute - b.attribute) <= tol;
}

}  // namespace

SteadyState steady_state(const Policy& policy, const AgentState& initial, const Ladder& ladder,
                         const ModelParams& params, int horizon) {
    const Trajectory traj = rollout(policy, initial, ladder, params, horizon);
    std::vector<AgentState> s;
    s.reserve(traj.steps.size() + 1);
    for (const auto& st : traj.steps) s.push_back({st.level_before, st.x_before});
    s.push_back(traj.final_state);
    const double tol = 2.0 * policy.grid.dx();
    const int H = static_cast<int>(s.size()) - 1;

    SteadyState out;
    const AgentState last = s.back();
    const StepResult extra = step(last, policy_action(policy, last), ladder, params);
    if (close(extra.next, last, tol)) {
        int t = H;
        while (t > 0 && close(s[static_cast<std::size_t>(t - 1)], last, tol)) --t;
        out.kind = SteadyKind::FixedPoint;
        out.states = {last};
        out.entry_time = t;
        return out;
    }
    const int max_period = 2 * ladder.levels();
    for (int p = 2; p <= max_period && 2 * p <= H; ++p) {
        bool ok = true;
        for (int u = H; u > H - 2 * p && ok; --u)
            ok = close(s[static_cast<std::size_t>(u)], s[static_cast<std::size_t>(u - p)], tol);
        if (!ok) continue;
        int t = H - p;
        while (t > 0 && close(s[static_cast<std::size_t>(t - 1)], s[static_cast<std::size_t>(t - 1 + p)], tol)) --t;
        out.kind = SteadyKind::Cycle;
        out.entry_time = t;
        out.states.assign(s.begin() + t, s.begin() + t + p);
        return out;
    }
    return out;
}

std::vector<std::optional<double>> improvement_fraction(const Trajectory& traj) {
    std::vector<std::optional<double>> out;
    out.reserve(traj.steps.size());
    for (const auto& st : traj.steps) {
        const double total = st.action.a_plus + st.action.a_minus;
        if (total <= 1e-12)
            out.emplace_back(std::nullopt);
        else
            out.emplace_back(st.action.a_plus / total);
    }
    return out;
}

void InitialDistribution::validate() const {
    if (support.empty() || support.size() != mass.size())
        throw std::invalid_argument("distribution: support and mass must be non-empty and equal length");
    double total = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (!(mass[i] >= 0.0)) throw std::invalid_argument("distribution: mass must be >= 0");
        if (!(support[i] >= 0.0 && support[i] <= 10.0))
            throw std::invalid_argument("distribution: support must lie in [0, 10]");
        total += mass[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("distribution: mass must sum to 1");
}

PopulationAggregate population_rollout(const Policy& policy, const Ladder& ladder, const ModelParams& params,
                                       const InitialDistribution& dist, int horizon) {
    dist.validate();
    const auto H = static_cast<std::size_t>(horizon);
    std::vector<double> m1(H, 0.0), m2(H, 0.0), fsum(H, 0.0), fmass(H, 0.0);
    for (std::size_t k = 0; k < dist.support.size(); ++k) {
        const double w = dist.mass[k];
        if (w == 0.0) continue;
        const Trajectory tr = rollout(policy, {1, dist.support[k]}, ladder, params, horizon);
        const auto frac = improvement_fraction(tr);
        for (std::size_t t = 0; t < H; ++t) {
            const double x = tr.steps[t].x_post;
            m1[t] += w * x;
            m2[t] += w * x * x;
            if (frac[t]) {
                fsum[t] += w * *frac[t];
                fmass[t] += w;
            }
        }
    }
    PopulationAggregate agg;
    agg.mean_x_post = m1;
    agg.std_x_post.resize(H);
    agg.mean_improvement_fraction.resize(H);
    for (std::size_t t = 0; t < H; ++t) {
        agg.std_x_post[t] = std::sqrt(std::max(0.0, m2[t] - m1[t] * m1[t]));
        agg.mean_improvement_fraction[t] =
            fmass[t] > 0.0 ? fsum[t] / fmass[t] : std::numeric_limits<double>::quiet_NaN();
    }
    return agg;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    const auto old_prec = os.precision(12);
    os << "t,level,x_pre,a_plus,a_minus,z,x_post,reward,cost\n";
    for (const auto& s : traj.steps) {
        os << s.t << ',' << s.level_before << ',' << s.x_before << ',' << s.action.a_plus << ','
           << s.action.a_minus << ',' << s.z << ',' << s.x_post << ',' << s.reward << ',' << s.cost << '\n';
    }
    os.precision(old_prec);
}

}  // namespace mlsc
