#include "mlsc/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

namespace mlsc {

namespace {

using FT = FieldType;

const char* const kUnit = "in (0,1)";
const char* const kPos = "> 0";
const char* const kNonNeg = ">= 0";

std::vector<FieldSpec> build_schema() {
    return {
        {"model.beta", "beta", FT::Real, kUnit, "", "agent discount factor"},
        {"model.gamma", "gamma", FT::Real, kUnit, "", "attribute retention"},
        {"model.delta", "delta", FT::Real, kNonNeg, "0", "leg-up per level above the first"},
        {"model.c_plus", "c_plus", FT::Real, kPos, "", "unit improvement cost"},
        {"model.c_minus", "c_minus", FT::Real, kPos, "", "unit gaming cost"},
        {"model.r", "r", FT::Real, kPos, "", "reward per level above the first"},
        {"grid.dx", "dx", FT::Real, kPos, "0.05", "grid step"},
        {"grid.x_max", "x_max", FT::Real, kPos, "", "grid upper end (derived from the ladder when absent)"},
        {"solver.epsilon", "epsilon", FT::Real, kPos, "1e-9", "sup-norm stopping tolerance"},
        {"ladder", "ladder", FT::RealList, "valid ladder", "", "thresholds mu_1..mu_L, mu_1 = 0, non-decreasing"},
        {"design.M", "M", FT::Real, kNonNeg, "", "target attribute"},
        {"design.bisect_epsilon", "bisect_epsilon", FT::Real, kPos, "1e-3", "greedy bisection tolerance"},
        {"design.max_levels", "max_levels", FT::Integer, ">= 2", "50", "greedy level cap"},
        {"design.horizon", "verify_horizon", FT::Integer, ">= 1", "200", "feasibility rollout length"},
        {"simulate.level", "level0", FT::Integer, ">= 1", "1", "initial level"},
        {"simulate.x0", "x0", FT::Real, kNonNeg, "0", "initial attribute"},
        {"simulate.horizon", "horizon", FT::Integer, ">= 1", "30", "rollout length"},
        {"principal.alpha", "alpha", FT::Real, kUnit, "0.95", "principal discount"},
        {"principal.lambda", "lambda", FT::Real, kNonNeg, "5", "attribute weight"},
        {"principal.xi", "xi", FT::Real, kNonNeg, "0.01", "reward cost weight"},
        {"principal.horizon", "principal_horizon", FT::Integer, ">= 1", "200", "utility truncation T"},
        {"principal.L_min", "L_min", FT::Integer, ">= 2", "2", "smallest level count searched"},
        {"principal.L_max", "L_max", FT::Integer, ">= 2", "8", "largest level count searched"},
        {"principal.population", "population", FT::Integer, ">= 2", "10", "CMA-ES population"},
        {"principal.generations", "generations", FT::Integer, ">= 1", "30", "CMA-ES generations"},
        {"principal.sigma0", "sigma0", FT::Real, kPos, "1", "CMA-ES initial step size"},
        {"principal.bins", "bins", FT::Integer, ">= 1", "50", "score histogram bins"},
        {"principal.dx", "principal_dx", FT::Real, kPos, "0.1", "grid step for design evaluation"},
        {"principal.x_max", "principal_x_max", FT::Real, kPos, "12", "attribute domain for design evaluation"},
        {"principal.epsilon", "principal_epsilon", FT::Real, kPos, "1e-6", "solver tolerance for design evaluation"},
        {"principal.scores", "scores", FT::Text, "readable file", "", "score CSV (synthetic mixture when absent)"},
        {"sweep.param", "param", FT::Text, "one of beta,gamma,delta,c_plus,c_minus", "", "swept parameter"},
        {"sweep.values", "values", FT::RealList, "non-empty", "", "values of the swept parameter"},
        {"sweep.mode", "mode", FT::Text, "one of greedy,population", "greedy", "greedy thresholds or population rollout"},
        {"heatmap.beta", "beta_values", FT::RealList, "non-empty", "", "beta axis"},
        {"heatmap.gamma", "gamma_values", FT::RealList, "non-empty", "", "gamma axis"},
        {"phase.c_minus", "c_minus_values", FT::RealList, "non-empty", "", "gaming costs swept"},
        {"regions.mu", "mu_values", FT::RealList, "non-empty", "", "single-threshold values"},
        {"closed_form.mu", "mu", FT::Real, kPos, "", "single threshold"},
        {"seed", "seed", FT::Integer, kNonNeg, "1", "random seed"},
        {"workers", "workers", FT::Integer, ">= 1", "MLSC_WORKERS or 1", "parallel workers for sweeps"},
        {"out", "out", FT::Text, "path", "", "primary output (stdout when absent)"},
        {"traj_out", "traj_out", FT::Text, "path", "", "trajectory CSV for the best design"},
    };
}

[[noreturn]] void fail(const FieldSpec& f, const std::string& what) {
    throw ConfigError(f.name + ": " + what + ", " + f.constraint);
}

bool satisfies(const std::string& c, double v) {
    if (!std::isfinite(v)) return false;
    if (c == kUnit) return v > 0.0 && v < 1.0;
    if (c == kPos) return v > 0.0;
    if (c == kNonNeg) return v >= 0.0;
    if (c == ">= 1") return v >= 1.0;
    if (c == ">= 2") return v >= 2.0;
    return true;
}

void check(const FieldSpec& f, const ConfigValue& v) {
    switch (f.type) {
        case FT::Real:
            if (!std::holds_alternative<double>(v)) fail(f, "expected a number");
            if (!satisfies(f.constraint, std::get<double>(v))) fail(f, "out of range");
            break;
        case FT::Integer:
            if (!std::holds_alternative<std::int64_t>(v)) fail(f, "expected an integer");
            if (!satisfies(f.constraint, static_cast<double>(std::get<std::int64_t>(v)))) fail(f, "out of range");
            break;
        case FT::Text: {
            if (!std::holds_alternative<std::string>(v)) fail(f, "expected a string");
            const std::string& s = std::get<std::string>(v);
            if (s.empty()) fail(f, "empty");
            if (f.constraint.rfind("one of ", 0) == 0) {
                std::stringstream opts(f.constraint.substr(7));
                std::string o;
                bool ok = false;
                while (std::getline(opts, o, ',')) ok = ok || o == s;
                if (!ok) fail(f, "invalid value '" + s + "'");
            }
            break;
        }
        case FT::RealList: {
            if (!std::holds_alternative<std::vector<double>>(v)) fail(f, "expected a list of numbers");
            const auto& xs = std::get<std::vector<double>>(v);
            if (xs.empty()) fail(f, "empty");
            for (double x : xs)
                if (!std::isfinite(x)) fail(f, "non-finite entry");
            if (f.constraint == "valid ladder") {
                try {
                    Ladder l(xs);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(f.name + ": " + e.what());
                }
            }
            break;
        }
    }
}

double parse_real(const FieldSpec& f, const std::string& text) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        fail(f, "expected a number, got '" + text + "'");
    }
    if (pos != text.size()) fail(f, "expected a number, got '" + text + "'");
    return v;
}

void parse_object(RunConfig& cfg, const nlohmann::json& obj, const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
        bool is_section = false;
        bool is_field = false;
        for (const FieldSpec& f : config_schema()) {
            if (f.key == key) is_field = true;
            if (f.key.rfind(key + ".", 0) == 0) is_section = true;
        }
        if (is_section && it->is_object()) {
            parse_object(cfg, *it, key);
            continue;
        }
        if (!is_field) throw ConfigError("unknown key: " + key);
        const FieldSpec& f = field_spec(key);
        const nlohmann::json& v = *it;
        switch (f.type) {
            case FT::Real:
                if (!v.is_number()) fail(f, "expected a number");
                cfg.set(key, v.get<double>());
                break;
            case FT::Integer:
                if (!v.is_number_integer()) fail(f, "expected an integer");
                cfg.set(key, v.get<std::int64_t>());
                break;
            case FT::Text:
                if (!v.is_string()) fail(f, "expected a string");
                cfg.set(key, v.get<std::string>());
                break;
            case FT::RealList: {
                if (!v.is_array()) fail(f, "expected a list of numbers");
                std::vector<double> xs;
                for (const auto& e : v) {
                    if (!e.is_number()) fail(f, "expected a list of numbers");
                    xs.push_back(e.get<double>());
                }
                cfg.set(key, xs);
                break;
            }
        }
    }
}

}  // namespace

const std::vector<FieldSpec>& config_schema() {
    static const std::vector<FieldSpec> schema = build_schema();
    return schema;
}

const FieldSpec& field_spec(const std::string& key) {
    for (const FieldSpec& f : config_schema())
        if (f.key == key) return f;
    throw ConfigError("unknown key: " + key);
}

std::vector<double> parse_real_list(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        std::stringstream ss(text);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c) || c.find(':') != std::string::npos)
            throw std::invalid_argument("range must be lo:hi:step");
        const double lo = std::stod(a), hi = std::stod(b), step = std::stod(c);
        if (!(step > 0.0) || hi < lo) throw std::invalid_argument("range needs step > 0 and hi >= lo");
        const long n = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
        std::vector<double> xs;
        for (long i = 0; i < n; ++i) {
            // Round to 12 significant digits so 0.2 + 3*0.02 prints as 0.26.
            const double v = lo + static_cast<double>(i) * step;
            xs.push_back(std::stod((std::ostringstream() << std::setprecision(12) << v).str()));
        }
        return xs;
    }
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        xs.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
    }
    return xs;
}

void RunConfig::set(const std::string& key, ConfigValue value) {
    const FieldSpec& f = field_spec(key);
    if (f.type == FT::Real && std::holds_alternative<std::int64_t>(value))
        value = static_cast<double>(std::get<std::int64_t>(value));
    check(f, value);
    values_[key] = std::move(value);
}

void RunConfig::set_text(const std::string& key, const std::string& text) {
    const FieldSpec& f = field_spec(key);
    switch (f.type) {
        case FT::Real:
            set(key, parse_real(f, text));
            break;
        case FT::Integer: {
            const double v = parse_real(f, text);
            if (v != std::floor(v) || std::abs(v) > 9e15) fail(f, "expected an integer");
            set(key, static_cast<std::int64_t>(v));
            break;
        }
        case FT::Text:
            set(key, text);
            break;
        case FT::RealList:
            try {
                set(key, parse_real_list(text));
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                fail(f, std::string("cannot parse '") + text + "' (" + e.what() + ")");
            }
            break;
    }
}

void RunConfig::merge(const RunConfig& o) {
    for (const auto& [k, v] : o.values_) values_[k] = v;
}

double RunConfig::real(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        const FieldSpec& f = field_spec(key);
        throw ConfigError(f.name + ": required, " + f.constraint);
    }
    return std::get<double>(it->second);
}

double RunConfig::real_or(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::get<double>(it->second);
}

std::int64_t RunConfig::integer_or(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::get<std::int64_t>(it->second);
}

std::optional<std::string> RunConfig::text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return std::get<std::string>(it->second);
}

std::optional<std::vector<double>> RunConfig::list(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return std::get<std::vector<double>>(it->second);
}

ModelParams RunConfig::model() const {
    ModelParams p;
    p.beta = real("model.beta");
    p.gamma = real("model.gamma");
    p.delta = real_or("model.delta", 0.0);
    p.c_plus = real("model.c_plus");
    p.c_minus = real("model.c_minus");
    p.r = real("model.r");
    return p;
}

GridSpec RunConfig::grid_for(const Ladder& ladder, const ModelParams& params, double fallback_dx) const {
    const double dx = real_or("grid.dx", fallback_dx);
    if (has("grid.x_max")) {
        try {
            return GridSpec(real("grid.x_max"), dx);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("x_max: ") + e.what());
        }
    }
    return default_grid(ladder, params, dx);
}

Ladder RunConfig::ladder() const {
    auto l = list("ladder");
    if (!l) throw ConfigError("ladder: required, valid ladder");
    return Ladder(*l);
}

PrincipalParams RunConfig::principal() const {
    PrincipalParams pp;
    pp.alpha = real_or("principal.alpha", pp.alpha);
    pp.lambda = real_or("principal.lambda", pp.lambda);
    pp.xi = real_or("principal.xi", pp.xi);
    pp.horizon = static_cast<int>(integer_or("principal.horizon", pp.horizon));
    return pp;
}

OptimizeOptions RunConfig::optimize_options() const {
    OptimizeOptions o;
    o.L_min = static_cast<int>(integer_or("principal.L_min", o.L_min));
    o.L_max = static_cast<int>(integer_or("principal.L_max", o.L_max));
    if (o.L_max < o.L_min) throw ConfigError("L_max: out of range, >= L_min");
    o.seed = static_cast<std::uint64_t>(integer_or("seed", 1));
    o.population = static_cast<int>(integer_or("principal.population", o.population));
    o.generations = static_cast<int>(integer_or("principal.generations", o.generations));
    o.sigma0 = real_or("principal.sigma0", o.sigma0);
    o.utility.dx = real_or("principal.dx", o.utility.dx);
    o.utility.x_max = real_or("principal.x_max", o.utility.x_max);
    o.utility.solve_epsilon = real_or("principal.epsilon", o.utility.solve_epsilon);
    return o;
}

GreedyOptions RunConfig::greedy_options() const {
    GreedyOptions g;
    g.epsilon = real_or("design.bisect_epsilon", g.epsilon);
    g.max_levels = static_cast<int>(integer_or("design.max_levels", g.max_levels));
    g.solve_epsilon = real_or("solver.epsilon", g.solve_epsilon);
    return g;
}

RunConfig parse_config_text(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    RunConfig cfg;
    parse_object(cfg, j, "");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    RunConfig cfg = parse_config_text(ss.str());
    for (const char* k : {"model.beta", "model.gamma", "model.c_plus", "model.c_minus", "model.r"}) {
        if (!cfg.has(k)) {
            const FieldSpec& fs = field_spec(k);
            throw ConfigError(fs.name + ": required, " + fs.constraint);
        }
    }
    return cfg;
}

}  // namespace mlsc
