#pragma once

#include <string>
#include <vector>

#include "mlsc/core.hpp"

namespace mlsc {

/// Analytic results for a single classifier (two levels, mu_2 = mu).

enum class RegimeTag { LegUp, CaseA, CaseB, CaseC, CaseD };

std::string to_string(RegimeTag tag);

struct TwoLevelRegime {
    RegimeTag tag = RegimeTag::CaseA;
    double legup_end = 0.0;  ///< delta / (1 - gamma)
    double a_end = 0.0;      ///< (r + beta c+ delta) / ((1 - beta gamma) c+)
    double b_end = 0.0;      ///< mu_lower + delta / (1 - gamma)
    double c_end = 0.0;      ///< r / ((1 - gamma^(K-1)) c-) + delta / (1 - gamma)
};

struct RegionBoundaries {
    double mu_lower = 0.0;
    double mu_upper = 0.0;
    bool degenerate = false;  ///< K = 1
};

/// K = ceil(log_{beta gamma}(1 - (1 - beta gamma) c+ / c-)). Throws
/// std::domain_error when (1 - beta gamma) c+ >= c-.
int k_index(const ModelParams& params);

RegionBoundaries region_boundaries(const ModelParams& params);

TwoLevelRegime classify_regime(double mu, const ModelParams& params);

/// G(mu) = ((1 - beta gamma) c+ mu - r - beta c+ delta) / (1 - beta).
double g_at_threshold(double mu, const ModelParams& params);

/// Slope c+ - (1 - (beta gamma)^k) / (1 - beta gamma) c-.
double segment_slope(int k, const ModelParams& params);

struct LinearPiece {
    double lo = 0.0;
    double hi = 0.0;  ///< exclusive, except for the last piece on [lo, mu]
    double slope = 0.0;
    double x_ref = 0.0;
    double w_ref = 0.0;
};

/// Piecewise-linear W on [0, mu]. Beyond mu the agent idles and W follows
/// W(x) = c~ x - r~ + beta W(gamma x + delta), evaluated by unrolling; in the
/// leg-up regime this is the c+-slope line carried by the last piece.
class PiecewiseLinearW {
public:
    RegimeTag regime = RegimeTag::CaseA;
    double mu = 0.0;
    ModelParams params;
    std::vector<double> breakpoints;  ///< s_k in construction order
    std::vector<double> values;       ///< xi_k in construction order
    std::vector<double> slopes;       ///< slope of the segment starting at each piece
    std::vector<LinearPiece> pieces;  ///< ascending, clipped to [0, inf)
    bool unbounded_last_piece = false;

    double operator()(double x) const;

private:
    double inner(double x) const;
};

PiecewiseLinearW w_closed(double mu, const ModelParams& params);

struct TwoLevelPolicyParams {
    double x_circ = 0.0;
    double x_lower = 0.0;
    double x_upper = 0.0;
    double mu_lower = 0.0;
    double mu_upper = 0.0;
};

TwoLevelPolicyParams policy_params(double mu, const ModelParams& params);

Action policy_closed(double mu, const ModelParams& params, double x);

}  // namespace mlsc
