#include "mlsc/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace mlsc {

std::string to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::LegUp: return "LegUp";
        case RegimeTag::CaseA: return "CaseA";
        case RegimeTag::CaseB: return "CaseB";
        case RegimeTag::CaseC: return "CaseC";
        case RegimeTag::CaseD: return "CaseD";
    }
    return "?";
}

int k_index(const ModelParams& params) {
    const double bg = params.beta * params.gamma;
    const double arg = 1.0 - (1.0 - bg) * params.c_plus / params.c_minus;
    if (!(arg > 0.0))
        throw std::domain_error("k_index: requires (1 - beta*gamma) c+ < c-");
    const double v = std::log(arg) / std::log(bg);
    return std::max(1, static_cast<int>(std::ceil(v - 1e-12)));
}

RegionBoundaries region_boundaries(const ModelParams& params) {
    const double b = params.beta, g = params.gamma, cp = params.c_plus, cm = params.c_minus;
    RegionBoundaries out;
    out.mu_lower = (cm - (1.0 - b) * cp) / (b * (1.0 - g) * cp * cm) * params.r;
    const int K = k_index(params);
    if (K == 1) {
        out.mu_upper = out.mu_lower;
        out.degenerate = true;
        return out;
    }
    out.mu_upper = std::max(out.mu_lower, params.r / ((1.0 - std::pow(g, K - 1)) * cm));
    return out;
}

TwoLevelRegime classify_regime(double mu, const ModelParams& params) {
    if (!(mu >= 0.0)) throw std::invalid_argument("classify_regime: mu must be >= 0");
    const double shift = params.delta / (1.0 - params.gamma);
    const RegionBoundaries rb = region_boundaries(params);
    const int K = k_index(params);
    TwoLevelRegime reg;
    reg.legup_end = shift;
    reg.a_end = params.r_tilde() / params.c_tilde();
    reg.b_end = rb.mu_lower + shift;
    reg.c_end = (K == 1 ? std::numeric_limits<double>::infinity()
                        : params.r / ((1.0 - std::pow(params.gamma, K - 1)) * params.c_minus)) +
                shift;
    if (mu < reg.legup_end)
        reg.tag = RegimeTag::LegUp;
    else if (mu < reg.a_end)
        reg.tag = RegimeTag::CaseA;
    else if (mu < reg.b_end)
        reg.tag = RegimeTag::CaseB;
    else if (mu < reg.c_end)
        reg.tag = RegimeTag::CaseC;
    else
        reg.tag = RegimeTag::CaseD;
    return reg;
}

double g_at_threshold(double mu, const ModelParams& params) {
    return (params.c_tilde() * mu - params.r_tilde()) / (1.0 - params.beta);
}

double segment_slope(int k, const ModelParams& params) {
    const double bg = params.beta * params.gamma;
    return params.c_plus - (1.0 - std::pow(bg, k)) / (1.0 - bg) * params.c_minus;
}

namespace {

void check_legup_preconditions(const ModelParams& p) {
    const double bg = p.beta * p.gamma;
    const double min_r = (1.0 - p.beta) * p.c_minus * p.delta / ((1.0 - p.gamma) * (1.0 - bg));
    if (p.r < min_r) {
        std::ostringstream os;
        os << "leg-up closed form requires r >= (1-beta) c- delta / ((1-gamma)(1-beta gamma)) = " << min_r;
        throw PreconditionError(os.str());
    }
    const double min_cm = std::max(bg * p.c_plus, (1.0 - bg) * p.c_plus);
    if (p.c_minus < min_cm) {
        std::ostringstream os;
        os << "leg-up closed form requires c- >= max{beta gamma c+, (1-beta gamma) c+} = " << min_cm;
        throw PreconditionError(os.str());
    }
}

void check_incentive_precondition(const ModelParams& p) {
    if (!check_incentivizable(p))
        throw PreconditionError("closed form requires (1 - beta gamma) c+ < c-");
}

// Case C/D knots s_k for k = 0..K-1 and values xi_k.
void build_increasing_sequence(double mu, const ModelParams& p, int K, std::vector<double>& s,
                               std::vector<double>& xi) {
    const double g = p.gamma, cm = p.c_minus;
    s.assign(1, 0.0);
    xi.assign(1, 0.0);
    for (int k = 1; k <= K - 1; ++k) {
        const double gk = std::pow(g, k - 1);
        const double sk = ((1.0 - g) * (cm * mu - p.r) - (1.0 - gk) * cm * p.delta) / (gk * (1.0 - g) * cm);
        const double xk = segment_slope(k - 1, p) * (sk - s.back()) + xi.back();
        s.push_back(sk);
        xi.push_back(xk);
    }
}

void clip_pieces(std::vector<LinearPiece>& pieces) {
    std::vector<LinearPiece> out;
    for (LinearPiece pc : pieces) {
        if (pc.hi <= 0.0 || pc.hi <= pc.lo) continue;
        pc.lo = std::max(pc.lo, 0.0);
        out.push_back(pc);
    }
    pieces = std::move(out);
}

}  // namespace

double PiecewiseLinearW::inner(double x) const {
    const LinearPiece* pc = &pieces.front();
    for (const auto& p : pieces) {
        if (x >= p.lo) pc = &p;
    }
    return pc->w_ref + pc->slope * (x - pc->x_ref);
}

double PiecewiseLinearW::operator()(double x) const {
    x = std::max(0.0, x);
    if (unbounded_last_piece || x <= mu) return inner(x);
    const double ct = params.c_tilde(), rt = params.r_tilde();
    double acc = 0.0, disc = 1.0, y = x;
    for (int j = 0; j < 100000 && y > mu + 1e-12; ++j) {
        acc += disc * (ct * y - rt);
        disc *= params.beta;
        y = params.gamma * y + params.delta;
        if (disc < 1e-300) return acc;
    }
    return acc + disc * inner(std::min(y, mu));
}

PiecewiseLinearW w_closed(double mu, const ModelParams& params) {
    params.validate();
    const TwoLevelRegime reg = classify_regime(mu, params);
    PiecewiseLinearW w;
    w.regime = reg.tag;
    w.mu = mu;
    w.params = params;
    const double cp = params.c_plus;
    const double big = std::numeric_limits<double>::infinity();

    switch (reg.tag) {
        case RegimeTag::LegUp: {
            check_legup_preconditions(params);
            const int K = k_index(params);
            std::vector<double> s{mu};
            std::vector<double> xi{cp * mu - params.r / (1.0 - params.beta)};
            for (int k = 1; k <= K - 1; ++k) {
                const double sk = (s.back() - params.delta) / params.gamma;
                xi.push_back(segment_slope(k, params) * (sk - s.back()) + xi.back());
                s.push_back(sk);
            }
            w.breakpoints = s;
            w.values = xi;
            std::vector<LinearPiece> pcs;
            pcs.push_back({-big, s[K - 1], 0.0, s[K - 1], xi[K - 1]});
            for (int k = K - 1; k >= 1; --k)
                pcs.push_back({s[k], s[k - 1], segment_slope(k, params), s[k], xi[k]});
            pcs.push_back({s[0], big, cp, s[0], xi[0]});
            clip_pieces(pcs);
            w.pieces = pcs;
            w.unbounded_last_piece = true;
            break;
        }
        case RegimeTag::CaseA: {
            check_incentive_precondition(params);
            const double G = g_at_threshold(mu, params);
            w.breakpoints = {0.0};
            w.values = {G};
            w.pieces = {{0.0, mu, 0.0, 0.0, G}};
            break;
        }
        case RegimeTag::CaseB: {
            check_incentive_precondition(params);
            const double G = g_at_threshold(mu, params);
            const double kink = G / cp;
            w.breakpoints = {0.0, kink};
            w.values = {0.0, G};
            w.pieces = {{0.0, kink, cp, 0.0, 0.0}, {kink, mu, 0.0, kink, G}};
            clip_pieces(w.pieces);
            break;
        }
        case RegimeTag::CaseC: {
            check_incentive_precondition(params);
            const int K = k_index(params);
            std::vector<double> s, xi;
            build_increasing_sequence(mu, params, K, s, xi);
            const double bg = params.beta * params.gamma;
            const double q = (1.0 - std::pow(bg, K - 1)) / (1.0 - bg);
            const double slope_last = segment_slope(K - 1, params);
            const double alt = (cp - bg * q * params.c_minus) * mu - (params.r + params.beta * q * params.c_minus * params.delta) +
                               params.beta * (xi[K - 1] - slope_last * s[K - 1]);
            const double xiK = std::min(g_at_threshold(mu, params), alt);
            const double sK = (xiK - xi[K - 1]) / slope_last + s[K - 1];
            s.push_back(sK);
            xi.push_back(xiK);
            w.breakpoints = s;
            w.values = xi;
            std::vector<LinearPiece> pcs;
            for (int k = 0; k <= K - 1; ++k)
                pcs.push_back({s[k], std::min(s[k + 1], mu), segment_slope(k, params), s[k], xi[k]});
            pcs.push_back({sK, mu, 0.0, sK, xiK});
            clip_pieces(pcs);
            w.pieces = pcs;
            break;
        }
        case RegimeTag::CaseD: {
            check_incentive_precondition(params);
            const int K = k_index(params);
            std::vector<double> s, xi;
            build_increasing_sequence(mu, params, K, s, xi);
            w.breakpoints = s;
            w.values = xi;
            std::vector<LinearPiece> pcs;
            for (int k = 0; k <= K - 1; ++k) {
                if (s[k] >= mu) break;
                const double hi = (k + 1 <= K - 1) ? std::min(s[k + 1], mu) : mu;
                pcs.push_back({s[k], hi, segment_slope(k, params), s[k], xi[k]});
            }
            clip_pieces(pcs);
            w.pieces = pcs;
            break;
        }
    }
    for (const auto& pc : w.pieces) w.slopes.push_back(pc.slope);
    if (w.pieces.empty()) throw std::logic_error("w_closed: empty construction");
    return w;
}

TwoLevelPolicyParams policy_params(double mu, const ModelParams& params) {
    const PiecewiseLinearW w = w_closed(mu, params);
    TwoLevelPolicyParams out;
    const RegionBoundaries rb = region_boundaries(params);
    out.mu_lower = rb.mu_lower;
    out.mu_upper = rb.mu_upper;
    switch (w.regime) {
        case RegimeTag::LegUp:
            out.x_circ = std::clamp(w.breakpoints.back(), 0.0, mu);
            out.x_lower = out.x_circ;
            out.x_upper = mu;
            break;
        case RegimeTag::CaseA:
        case RegimeTag::CaseB:
            out.x_lower = std::clamp(g_at_threshold(mu, params) / params.c_plus, 0.0, mu);
            out.x_upper = mu;
            break;
        case RegimeTag::CaseC:
            out.x_lower = std::clamp(mu - params.r / params.c_minus, 0.0, mu);
            out.x_upper = std::clamp(w.breakpoints.back(), 0.0, mu);
            break;
        case RegimeTag::CaseD:
            out.x_lower = std::clamp(mu - params.r / params.c_minus, 0.0, mu);
            out.x_upper = mu;
            break;
    }
    return out;
}

Action policy_closed(double mu, const ModelParams& params, double x) {
    x = clamp_nonnegative(x, "policy_closed: x");
    const TwoLevelRegime reg = classify_regime(mu, params);
    const TwoLevelPolicyParams pp = policy_params(mu, params);
    if (x >= mu) return {};
    switch (reg.tag) {
        case RegimeTag::LegUp:
            if (x >= pp.x_circ) return {0.0, mu - x};
            return {pp.x_circ - x, mu - pp.x_circ};
        case RegimeTag::CaseA:
        case RegimeTag::CaseB:
            if (x >= pp.x_lower) return {mu - x, 0.0};
            return {};
        case RegimeTag::CaseC:
            if (x >= pp.x_upper) return {mu - x, 0.0};
            if (x >= pp.x_lower) return {0.0, mu - x};
            return {};
        case RegimeTag::CaseD:
            if (x >= pp.x_lower) return {0.0, mu - x};
            return {};
    }
    return {};
}

}  // namespace mlsc
