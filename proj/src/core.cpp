#include "mlsc/core.hpp"

#include <cmath>

namespace mlsc {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

void ModelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(beta) && beta > 0.0 && beta < 1.0, "beta: must be in (0,1)");
    require(finite(gamma) && gamma > 0.0 && gamma < 1.0, "gamma: must be in (0,1)");
    require(finite(delta) && delta >= 0.0, "delta: must be >= 0");
    require(finite(c_plus) && c_plus > 0.0, "c_plus: must be > 0");
    require(finite(c_minus) && c_minus > 0.0, "c_minus: must be > 0");
    require(finite(r) && r > 0.0, "r: must be > 0");
    require(theta == 1.0, "theta: fixed to 1");
}

Ladder::Ladder(std::vector<double> mu) : mu_(std::move(mu)) {
    require(mu_.size() >= 2, "ladder: at least two levels required");
    require(mu_.front() == 0.0, "ladder: mu_1 must be 0");
    for (std::size_t i = 0; i < mu_.size(); ++i) {
        require(std::isfinite(mu_[i]) && mu_[i] >= 0.0, "ladder: thresholds must be finite and >= 0");
        if (i > 0) require(mu_[i] >= mu_[i - 1], "ladder: thresholds must be non-decreasing");
    }
}

double Ladder::at(int level) const {
    if (level < 1 || level > levels())
        throw std::invalid_argument("ladder: level " + std::to_string(level) + " out of range");
    return mu_[static_cast<std::size_t>(level - 1)];
}

double clamp_nonnegative(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": must be finite");
    if (v >= 0.0) return v;
    if (v >= -kNegativeClamp) return 0.0;
    throw std::invalid_argument(std::string(what) + ": must be >= 0");
}

Outcome classify(const Ladder& ladder, int level, double z, const ModelParams& params) {
    const int L = ladder.levels();
    if (level < 1 || level > L)
        throw std::invalid_argument("classify: level " + std::to_string(level) + " out of range");
    z = clamp_nonnegative(z, "classify: z");
    const double score = params.theta * z;
    if (level < L && score >= ladder.at(level + 1) - kThresholdTol) return Outcome::Promote;
    if (level > 1 && score < ladder.at(level) - kThresholdTol) return Outcome::Relegate;
    return Outcome::Stay;
}

StepResult step(const AgentState& state, const Action& action, const Ladder& ladder,
                const ModelParams& params) {
    if (state.level < 1 || state.level > ladder.levels())
        throw std::invalid_argument("step: level out of range");
    const double x = clamp_nonnegative(state.attribute, "step: attribute");
    const double ap = clamp_nonnegative(action.a_plus, "step: a_plus");
    const double am = clamp_nonnegative(action.a_minus, "step: a_minus");

    StepResult out;
    out.z = x + ap + am;
    out.x_post = x + ap;
    out.outcome = classify(ladder, state.level, out.z, params);
    const int next_level = state.level + static_cast<int>(out.outcome);
    out.next.level = next_level;
    out.next.attribute = params.gamma * out.x_post + params.delta * (next_level - 1);
    out.reward = params.r * (next_level - 1);
    out.cost = params.c_plus * ap + params.c_minus * am;
    return out;
}

bool check_incentivizable(const ModelParams& params) {
    return (1.0 - params.beta * params.gamma) * params.c_plus < params.c_minus;
}

bool impossibility_general(double lipschitz_h, const ModelParams& params) {
    if (!(lipschitz_h >= 0.0)) throw std::invalid_argument("impossibility_general: H must be >= 0");
    return (1.0 - params.beta * lipschitz_h) * params.c_plus > params.c_minus;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Promote: return "promote";
        case Outcome::Relegate: return "relegate";
        case Outcome::Stay: break;
    }
    return "stay";
}

}  // namespace mlsc
