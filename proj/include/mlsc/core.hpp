#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlsc {

// Tolerance used when comparing a feature against a threshold and when
// deciding that a gaming top-up is numerically zero.
inline constexpr double kThresholdTol = 1e-9;
// Negative inputs closer than this to zero are treated as zero.
inline constexpr double kNegativeClamp = 1e-12;

/// Raised when a documented analytic precondition does not hold.
/// The message names the inequality that failed.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Input text that could not be parsed; line is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct ModelParams {
    double beta = 0.8;
    double gamma = 0.8;
    double delta = 0.0;
    double c_plus = 1.0;
    double c_minus = 0.7;
    double r = 1.0;
    double theta = 1.0;

    /// Throws std::invalid_argument naming the first violated field.
    void validate() const;

    double c_tilde() const { return (1.0 - beta * gamma) * c_plus; }
    double r_tilde() const { return r + beta * c_plus * delta; }
    /// Zero-effort attribute fixed point at a 1-indexed level.
    double natural_equilibrium(int level) const { return delta * (level - 1) / (1.0 - gamma); }
};

/// Threshold ladder mu_1..mu_L stored 0-based; use at(level) for 1-based access.
class Ladder {
public:
    Ladder() = default;
    explicit Ladder(std::vector<double> mu);

    int levels() const { return static_cast<int>(mu_.size()); }
    double at(int level) const;
    double top() const { return mu_.back(); }
    const std::vector<double>& values() const { return mu_; }

private:
    std::vector<double> mu_;
};

struct AgentState {
    int level = 1;
    double attribute = 0.0;
};

struct Action {
    double a_plus = 0.0;
    double a_minus = 0.0;
};

enum class Outcome : int { Relegate = -1, Stay = 0, Promote = 1 };

struct StepResult {
    AgentState next;
    double z = 0.0;
    double x_post = 0.0;
    Outcome outcome = Outcome::Stay;
    double reward = 0.0;
    double cost = 0.0;
};

/// Clamps tiny negative noise to zero; throws for genuinely negative input.
double clamp_nonnegative(double v, const char* what);

Outcome classify(const Ladder& ladder, int level, double z, const ModelParams& params);

StepResult step(const AgentState& state, const Action& action, const Ladder& ladder,
                const ModelParams& params);

/// True iff improvement can be incentivized at all: (1 - beta*gamma) c+ < c-.
bool check_incentivizable(const ModelParams& params);

/// True iff a level whose continuation has Lipschitz sensitivity H can never
/// see improvement: (1 - beta*H) c+ > c-.
bool impossibility_general(double lipschitz_h, const ModelParams& params);

std::string to_string(Outcome o);

}  // namespace mlsc
