#include "mlsc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <ostream>

#include "mlsc/closed_form.hpp"
#include "mlsc/config.hpp"
#include "mlsc/design.hpp"
#include "mlsc/experiments.hpp"
#include "mlsc/policy_io.hpp"
#include "mlsc/principal.hpp"
#include "mlsc/simulate.hpp"
#include "mlsc/solver.hpp"

namespace mlsc {

namespace {

using nlohmann::json;

std::string cost_case_config(const char* c_plus, const char* c_minus) {
    return std::string(R"({"model": {"beta": 0.8, "gamma": 0.8, "delta": 0.01, "c_plus": )") + c_plus +
           R"(, "c_minus": )" + c_minus +
           R"(, "r": 1.0},
 "principal": {"alpha": 0.95, "lambda": 5.0, "xi": 0.01, "horizon": 200, "L_min": 2, "L_max": 8,
               "population": 10, "generations": 30, "sigma0": 1.0, "bins": 50},
 "simulate": {"level": 1, "x0": 0.0, "horizon": 30},
 "seed": 1})";
}

std::string cost_case_description(const char* label, const char* c_plus, const char* c_minus) {
    return std::string("Principal design, cost case ") + label + ": (c+, c-) = (" + c_plus + ", " + c_minus +
           "), beta = 0.8, gamma = 0.8, delta = 0.01, alpha = 0.95, lambda = 5, xi = 0.01.\n"
           "CMA-ES with population 10 and 30 generations for each L = 2..8 over (r, mu_2..mu_L), keeping the\n"
           "best utility. Scores come from the synthetic credit-score mixture unless --scores is given.\n"
           "Reference optimum for this case: " +
           (std::string(label) == "I"     ? "L* = 6, r* = 1.80, mu_L* = 10.76, U* = 630.4"
            : std::string(label) == "II"  ? "L* = 7, r* = 2.51, mu_L* = 11.92, U* = 629.9"
            : std::string(label) == "III" ? "L* = 2, r* = 4.48, mu_L* = 11.98, U* = 628.8"
                                          : "L* = 8, r* = 0.63, mu_L* = 7.98, U* = 107.9") +
           " (dataset dependent, not expected to match exactly).";
}

std::vector<Preset> build_presets() {
    return {
        {"fig3c", "simulate",
         "Deterministic trajectory under the natural ladder when gaming is cheap.\n"
         "beta = 0.8, gamma = 0.8, c+ = 1, c- = 0.365, r = 1, delta = 0.8, mu = [0, 4, 8, 12, 16], start (1, 0).\n"
         "Expected: pure gaming up to level 5 by t = 4, 5-4-5 alternation through t = 9, one improvement\n"
         "at t = 9, then rest at (5, 16).",
         R"({"model": {"beta": 0.8, "gamma": 0.8, "delta": 0.8, "c_plus": 1.0, "c_minus": 0.365, "r": 1.0},
             "ladder": [0, 4, 8, 12, 16], "grid": {"dx": 0.05},
             "simulate": {"level": 1, "x0": 0.0, "horizon": 30}})"},
        {"table1-caseI", "optimize", cost_case_description("I", "0.8", "0.7"), cost_case_config("0.8", "0.7")},
        {"table1-caseII", "optimize", cost_case_description("II", "1.5", "1.2"), cost_case_config("1.5", "1.2")},
        {"table1-caseIII", "optimize", cost_case_description("III", "0.8", "0.4"), cost_case_config("0.8", "0.4")},
        {"table1-caseIV", "optimize", cost_case_description("IV", "1.5", "0.4"), cost_case_config("1.5", "0.4")},
        {"fig5-sweep", "sweep",
         "Greedy thresholds of a 5-level ladder as retention varies.\n"
         "Base: beta = 0.8, c+ = 1, c- = 0.7, r = 1, delta = 0; gamma over 0.6..0.9.\n"
         "Other panels: --param beta --values 0.6:0.9:0.05, --param c_plus ..., --param c_minus ....",
         R"({"model": {"beta": 0.8, "gamma": 0.8, "delta": 0.0, "c_plus": 1.0, "c_minus": 0.7, "r": 1.0},
             "sweep": {"param": "gamma", "values": [0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9], "mode": "greedy"},
             "design": {"max_levels": 5}, "grid": {"dx": 0.05, "x_max": 80}})"},
        {"fig7-heatmap", "heatmap",
         "Greedy level count and maximum reachable attribute over a beta x gamma grid.\n"
         "c+ = 1, c- = 0.7, r = 1, delta = 0, level cap 50. Thresholds are bounded by the grid\n"
         "(x_max = 60), so cells near beta, gamma -> 1 are truncated.",
         R"({"model": {"beta": 0.8, "gamma": 0.8, "delta": 0.0, "c_plus": 1.0, "c_minus": 0.7, "r": 1.0},
             "heatmap": {"beta": [0.5, 0.6, 0.7, 0.8, 0.9], "gamma": [0.5, 0.6, 0.7, 0.8, 0.9]},
             "design": {"max_levels": 50}, "grid": {"dx": 0.1, "x_max": 60}})"},
        {"fig8-phase", "phase",
         "Maximum incentivizable attribute versus the gaming cost.\n"
         "c+ = 1, beta = 0.8, gamma = 0.9, r = 1, delta = 0; c- over 0.2..0.6 step 0.02.\n"
         "Improvement becomes incentivizable once c- exceeds (1 - beta gamma) c+ = 0.28.",
         R"({"model": {"beta": 0.8, "gamma": 0.9, "delta": 0.0, "c_plus": 1.0, "c_minus": 0.4, "r": 1.0},
             "phase": {"c_minus": [0.2, 0.22, 0.24, 0.26, 0.28, 0.3, 0.32, 0.34, 0.36, 0.38, 0.4,
                                   0.42, 0.44, 0.46, 0.48, 0.5, 0.52, 0.54, 0.56, 0.58, 0.6]},
             "design": {"max_levels": 6}, "grid": {"dx": 0.1, "x_max": 60}})"},
        {"fig9-ablation", "sweep",
         "Population attribute and improvement fraction over 20 steps as retention varies.\n"
         "beta = 0.8, c+ = 1, c- = 0.5, r = 1, delta = 0, fixed ladder [0, 2.5, 5, 7.5, 10],\n"
         "agents start at level 1 on the synthetic score mixture. Other panels: --param beta or --param delta.",
         R"({"model": {"beta": 0.8, "gamma": 0.7, "delta": 0.0, "c_plus": 1.0, "c_minus": 0.5, "r": 1.0},
             "ladder": [0, 2.5, 5, 7.5, 10],
             "sweep": {"param": "gamma", "values": [0.4, 0.5, 0.7, 0.8, 0.9], "mode": "population"},
             "simulate": {"horizon": 20}, "grid": {"dx": 0.05}})"},
    };
}

std::string flag_of(const FieldSpec& f) {
    std::string s = f.name;
    for (char& c : s)
        if (c == '_') c = '-';
    return "--" + s;
}

struct Output {
    std::ofstream file;
    std::ostream* os;
};

std::unique_ptr<Output> open_output(const RunConfig& cfg, std::ostream& fallback) {
    auto o = std::make_unique<Output>();
    o->os = &fallback;
    if (auto path = cfg.text("out")) {
        o->file.open(*path);
        if (!o->file) throw ConfigError("out: cannot open " + *path + " for writing");
        o->os = &o->file;
    }
    return o;
}

int workers_of(const RunConfig& cfg) { return static_cast<int>(cfg.integer_or("workers", default_workers())); }

InitialDistribution distribution_of(const RunConfig& cfg) {
    const int bins = static_cast<int>(cfg.integer_or("principal.bins", 50));
    if (auto path = cfg.text("principal.scores")) return load_score_distribution(*path, bins);
    return synthetic_score_distribution(bins);
}

json utility_json(const UtilityBreakdown& u) {
    return {{"total", u.total},
            {"robust", u.robust},
            {"attribute", u.attribute},
            {"cost", u.cost},
            {"gaming_free_mass", u.gaming_free_mass},
            {"monotone_mass", u.monotone_mass}};
}

void ensure_default(RunConfig& cfg, const std::string& key, const std::optional<std::vector<double>>& values) {
    if (!cfg.has(key) && values && !values->empty()) cfg.set(key, values->front());
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
    const ModelParams p = cfg.model();
    const Ladder ladder = cfg.ladder();
    const Policy pol = value_iterate(ladder, p, cfg.grid_for(ladder, p), cfg.real_or("solver.epsilon", kDefaultEpsilon));
    auto o = open_output(cfg, out);
    write_policy_json(*o->os, pol);
    return kExitOk;
}

int cmd_regions(const RunConfig& cfg, std::ostream& out) {
    auto mus = cfg.list("regions.mu");
    if (!mus) throw ConfigError("mu_values: required, non-empty");
    for (double m : *mus)
        if (!(m > 0.0)) throw ConfigError("mu_values: out of range, entries > 0");
    const CsvTable t = regions_table(cfg.model(), *mus, cfg.real_or("grid.dx", 0.05),
                                     cfg.real_or("solver.epsilon", kDefaultEpsilon), workers_of(cfg));
    auto o = open_output(cfg, out);
    t.write(*o->os);
    return kExitOk;
}

int cmd_closed_form(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ModelParams p = cfg.model();
    const double mu = cfg.real("closed_form.mu");
    PiecewiseLinearW w;
    try {
        w = w_closed(mu, p);
    } catch (const std::domain_error& e) {
        err << "closed form unavailable: " << e.what() << '\n';
        return kExitInfeasible;
    }
    const Ladder ladder({0.0, mu});
    const Policy pol = value_iterate(ladder, p, cfg.grid_for(ladder, p), cfg.real_or("solver.epsilon", kDefaultEpsilon));
    CsvTable t;
    t.header = {"x", "w_closed", "w_solver", "abs_diff", "a_plus_closed", "a_minus_closed", "a_plus_solver",
                "a_minus_solver"};
    double gap = 0.0;
    for (std::size_t i = 0; i < pol.grid.size() && pol.grid.point(i) <= 1.25 * mu + 1e-9; ++i) {
        const double x = pol.grid.point(i);
        const double wc = w(x), ws = pol.value(1, i);
        gap = std::max(gap, std::abs(wc - ws));
        const Action ac = policy_closed(mu, p, x), as = pol.action(1, i);
        t.rows.push_back({fmt(x), fmt(wc), fmt(ws), fmt(std::abs(wc - ws)), fmt(ac.a_plus), fmt(ac.a_minus),
                          fmt(as.a_plus), fmt(as.a_minus)});
    }
    auto o = open_output(cfg, out);
    t.write(*o->os);
    err << "regime " << to_string(w.regime) << ", sup gap " << fmt(gap) << ", bound " << fmt(error_bound(p, pol.grid))
        << '\n';
    return kExitOk;
}

int cmd_design(const std::string& method, const RunConfig& cfg, std::ostream& out) {
    DesignProblem prob;
    prob.params = cfg.model();
    prob.M = cfg.real("design.M");
    json j{{"method", method}, {"M", prob.M}};
    int code = kExitOk;
    if (method == "natural") {
        try {
            const Ladder l = natural_sequence(prob);
            j["feasible"] = true;
            j["ladder"] = l.values();
            j["levels"] = l.levels();
        } catch (const std::domain_error& e) {
            j["feasible"] = false;
            j["reason"] = e.what();
            code = kExitInfeasible;
        }
    } else {
        const GridSpec grid = cfg.grid_for(Ladder({0.0, prob.M}), prob.params);
        const GreedyResult g = greedy_thresholds(prob, grid, cfg.greedy_options());
        j["feasible"] = !g.empty();
        j["ladder"] = g.thresholds;
        j["levels"] = g.levels();
        j["max_attribute"] = g.max_attribute();
        j["entry_attributes"] = g.entry_attributes;
        j["solves"] = g.solves;
        if (!g.diagnostic.empty()) j["diagnostic"] = g.diagnostic;
        if (g.empty()) code = kExitInfeasible;
    }
    auto o = open_output(cfg, out);
    *o->os << j.dump(2) << '\n';
    return code;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const Ladder ladder = cfg.ladder();
    DesignProblem prob;
    prob.params = cfg.model();
    prob.M = cfg.real_or("design.M", ladder.top());
    const GridSpec grid = cfg.grid_for(ladder, prob.params);
    const FeasibilityReport rep = verify_feasible(ladder, prob, grid, default_x0_set(ladder, grid),
                                                  static_cast<int>(cfg.integer_or("design.horizon", 200)));
    json v = json::array();
    for (std::size_t i = 0; i < rep.violated.size() && i < 100; ++i)
        v.push_back({{"x0", rep.violated[i].x0}, {"kind", to_string(rep.violated[i].kind)}, {"t", rep.violated[i].t}});
    const json j{{"feasible", rep.feasible},
                 {"ladder", ladder.values()},
                 {"M", prob.M},
                 {"violation_count", rep.violated.size()},
                 {"violations", v}};
    auto o = open_output(cfg, out);
    *o->os << j.dump(2) << '\n';
    return rep.feasible ? kExitOk : kExitInfeasible;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const ModelParams p = cfg.model();
    const Ladder ladder = cfg.ladder();
    const AgentState s0{static_cast<int>(cfg.integer_or("simulate.level", 1)), cfg.real_or("simulate.x0", 0.0)};
    if (s0.level > ladder.levels()) throw ConfigError("level0: out of range, <= number of levels");
    const double need = std::max({default_x_max(ladder, p), 1.25 * s0.attribute, ladder.top() + 1.0});
    const GridSpec grid = cfg.has("grid.x_max") ? cfg.grid_for(ladder, p)
                                                : GridSpec::covering(need, cfg.real_or("grid.dx", 0.05));
    const Policy pol = value_iterate(ladder, p, grid, cfg.real_or("solver.epsilon", kDefaultEpsilon));
    const Trajectory tr = rollout(pol, s0, ladder, p, static_cast<int>(cfg.integer_or("simulate.horizon", 30)));
    auto o = open_output(cfg, out);
    write_trajectory_csv(*o->os, tr);
    return kExitOk;
}

constexpr double kSweepXMax = 60.0;

int cmd_sweep(RunConfig cfg, std::ostream& out) {
    const auto param = cfg.text("sweep.param");
    const auto values = cfg.list("sweep.values");
    if (!param) throw ConfigError("param: required, " + field_spec("sweep.param").constraint);
    if (!values) throw ConfigError("values: required, non-empty");
    ensure_default(cfg, "model." + *param, values);
    const ModelParams base = cfg.model();
    CsvTable t;
    if (cfg.text("sweep.mode").value_or("greedy") == "greedy") {
        const auto rows = run_greedy_cases(sweep_cases(base, *param, *values), cfg.real_or("grid.x_max", kSweepXMax),
                                           cfg.real_or("grid.dx", 0.05), cfg.greedy_options(), workers_of(cfg));
        t = greedy_table(rows);
    } else {
        t = population_sweep(base, *param, *values, cfg.ladder(), distribution_of(cfg),
                             static_cast<int>(cfg.integer_or("simulate.horizon", 20)), cfg.real_or("grid.dx", 0.05),
                             workers_of(cfg));
    }
    auto o = open_output(cfg, out);
    t.write(*o->os);
    return kExitOk;
}

int cmd_heatmap(RunConfig cfg, std::ostream& out) {
    const auto betas = cfg.list("heatmap.beta");
    const auto gammas = cfg.list("heatmap.gamma");
    if (!betas) throw ConfigError("beta_values: required, non-empty");
    if (!gammas) throw ConfigError("gamma_values: required, non-empty");
    ensure_default(cfg, "model.beta", betas);
    ensure_default(cfg, "model.gamma", gammas);
    const auto rows = run_greedy_cases(heatmap_cases(cfg.model(), *betas, *gammas), cfg.real_or("grid.x_max", kSweepXMax),
                                       cfg.real_or("grid.dx", 0.1), cfg.greedy_options(), workers_of(cfg));
    auto o = open_output(cfg, out);
    greedy_table(rows).write(*o->os);
    return kExitOk;
}

int cmd_phase(RunConfig cfg, std::ostream& out) {
    const auto cms = cfg.list("phase.c_minus");
    if (!cms) throw ConfigError("c_minus_values: required, non-empty");
    ensure_default(cfg, "model.c_minus", cms);
    const auto rows = run_greedy_cases(sweep_cases(cfg.model(), "c_minus", *cms), cfg.real_or("grid.x_max", kSweepXMax),
                                       cfg.real_or("grid.dx", 0.1), cfg.greedy_options(), workers_of(cfg));
    auto o = open_output(cfg, out);
    greedy_table(rows).write(*o->os);
    return kExitOk;
}

int cmd_optimize(RunConfig cfg, std::ostream& out) {
    // r is a decision variable here; the configured value only seeds defaults.
    if (!cfg.has("model.r")) cfg.set("model.r", 1.0);
    const ModelParams p = cfg.model();
    const PrincipalParams pp = cfg.principal();
    const OptimizeOptions opt = cfg.optimize_options();
    const InitialDistribution dist = distribution_of(cfg);
    const OptimizeResult res = optimize_over_levels(pp, p, dist, opt);

    auto design_json = [](const LevelResult& lr) {
        std::vector<double> mu{0.0};
        mu.insert(mu.end(), lr.design.thresholds.begin(), lr.design.thresholds.end());
        return json{{"L", lr.L},
                    {"r", lr.design.r},
                    {"thresholds", mu},
                    {"mu_L", mu.back()},
                    {"utility", utility_json(lr.utility)},
                    {"evaluations", lr.evaluations}};
    };
    json per = json::array();
    for (const auto& lr : res.per_level) per.push_back(design_json(lr));
    const json j{{"model",
                  {{"beta", p.beta}, {"gamma", p.gamma}, {"delta", p.delta}, {"c_plus", p.c_plus}, {"c_minus", p.c_minus}}},
                 {"principal", {{"alpha", pp.alpha}, {"lambda", pp.lambda}, {"xi", pp.xi}, {"horizon", pp.horizon}}},
                 {"seed", opt.seed},
                 {"distribution",
                  {{"source", cfg.text("principal.scores").value_or("synthetic")}, {"bins", dist.support.size()}}},
                 {"per_level", per},
                 {"best", design_json(res.best_result())}};
    auto o = open_output(cfg, out);
    *o->os << j.dump(2) << '\n';

    if (auto tpath = cfg.text("traj_out")) {
        const LevelResult& b = res.best_result();
        ModelParams q = p;
        q.r = std::max(b.design.r, 1e-9);
        const Ladder ladder = b.design.ladder();
        const Policy pol = value_iterate(ladder, q, GridSpec::covering(opt.utility.x_max, opt.utility.dx),
                                         opt.utility.solve_epsilon);
        const AgentState s0{static_cast<int>(cfg.integer_or("simulate.level", 1)), cfg.real_or("simulate.x0", 0.0)};
        std::ofstream f(*tpath);
        if (!f) throw ConfigError("traj_out: cannot open " + *tpath + " for writing");
        write_trajectory_csv(f, rollout(pol, s0, ladder, q, static_cast<int>(cfg.integer_or("simulate.horizon", 30))));
    }
    return kExitOk;
}

const Preset* find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return &p;
    return nullptr;
}

struct Sub {
    CLI::App* app = nullptr;
    std::string config_path;
    std::string preset;
    bool describe = false;
    std::map<std::string, std::string> flags;  // schema key -> raw text
};

void add_common(Sub& s, const std::string& command) {
    s.app->add_option("--config", s.config_path, "JSON config file");
    s.app->add_option("--preset", s.preset, "named experiment recipe");
    s.app->add_flag("--describe", s.describe, "print the preset's parameters and exit");
    for (const FieldSpec& f : config_schema()) {
        std::string flag = flag_of(f);
        if (command == "phase" && f.key == "model.c_minus") continue;
        if (command == "phase" && f.key == "phase.c_minus") flag = "--c-minus";
        std::string help = f.help + " [" + f.constraint + "]";
        if (!f.fallback.empty()) help += " (default " + f.fallback + ")";
        s.app->add_option_function<std::string>(flag, [&s, key = f.key](const std::string& v) { s.flags[key] = v; },
                                                help);
    }
}

RunConfig resolve(const Sub& s, const std::string& command) {
    RunConfig cfg;
    if (!s.preset.empty()) {
        const Preset* p = find_preset(s.preset);
        if (!p) throw ConfigError("preset: unknown preset '" + s.preset + "'");
        if (p->command != command)
            throw ConfigError("preset: '" + s.preset + "' belongs to the '" + p->command + "' subcommand");
        cfg = parse_config_text(p->config_json);
    }
    if (!s.config_path.empty()) cfg.merge(load_config(s.config_path));
    RunConfig flags;
    for (const auto& [key, text] : s.flags) flags.set_text(key, text);
    cfg.merge(flags);
    return cfg;
}

}  // namespace

const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = build_presets();
    return all;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-level strategic classification: agent best response, threshold design, principal optimization"};
    app.name("mlsc");
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve", "value iteration; writes the policy as JSON"},
        {"regions", "single-threshold regime map over (x, mu), CSV"},
        {"closed-form", "analytic single-threshold W against the solver, CSV"},
        {"verify", "check a ladder against the design constraints, JSON; exit 3 if infeasible"},
        {"simulate", "roll out the best response, trajectory CSV"},
        {"sweep", "greedy thresholds or population rollouts across one parameter, CSV"},
        {"heatmap", "greedy ladders over a beta x gamma grid, CSV"},
        {"phase", "greedy ladders across gaming costs, CSV"},
        {"optimize", "principal design by CMA-ES over L, JSON"},
    };
    std::map<std::string, std::unique_ptr<Sub>> subs;
    for (const auto& [name, help] : commands) {
        auto s = std::make_unique<Sub>();
        s->app = app.add_subcommand(name, help);
        add_common(*s, name);
        subs[name] = std::move(s);
    }
    CLI::App* design = app.add_subcommand("design", "build a ladder: natural | greedy, JSON; exit 3 if none exists");
    design->require_subcommand(1);
    for (const std::string m : {"natural", "greedy"}) {
        auto s = std::make_unique<Sub>();
        s->app = design->add_subcommand(m, m == "natural" ? "thresholds at the natural equilibria"
                                                          : "greedy bisection of successive thresholds");
        add_common(*s, "design " + m);
        subs["design " + m] = std::move(s);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    std::string command;
    for (const auto& [name, s] : subs)
        if (s->app->parsed()) command = name;
    Sub& s = *subs.at(command);

    try {
        if (s.describe) {
            if (s.preset.empty()) throw ConfigError("describe: requires --preset");
            const Preset* p = find_preset(s.preset);
            if (!p) throw ConfigError("preset: unknown preset '" + s.preset + "'");
            out << p->name << " (" << p->command << ")\n" << p->description << "\n\nconfig:\n"
                << json::parse(p->config_json).dump(2) << '\n';
            return kExitOk;
        }
        const RunConfig cfg = resolve(s, command);
        if (command == "solve") return cmd_solve(cfg, out);
        if (command == "regions") return cmd_regions(cfg, out);
        if (command == "closed-form") return cmd_closed_form(cfg, out, err);
        if (command == "design natural") return cmd_design("natural", cfg, out);
        if (command == "design greedy") return cmd_design("greedy", cfg, out);
        if (command == "verify") return cmd_verify(cfg, out);
        if (command == "simulate") return cmd_simulate(cfg, out);
        if (command == "sweep") return cmd_sweep(cfg, out);
        if (command == "heatmap") return cmd_heatmap(cfg, out);
        if (command == "phase") return cmd_phase(cfg, out);
        if (command == "optimize") return cmd_optimize(cfg, out);
        err << "error: unhandled subcommand " << command << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace mlsc
