#include "mlsc/policy_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

namespace mlsc {

using nlohmann::json;

void write_policy_json(std::ostream& os, const Policy& p) {
    json j;
    j["format"] = "mlsc-policy";
    j["version"] = 1;
    j["params"] = {{"beta", p.params.beta},       {"gamma", p.params.gamma},     {"delta", p.params.delta},
                   {"c_plus", p.params.c_plus},   {"c_minus", p.params.c_minus}, {"r", p.params.r},
                   {"theta", p.params.theta}};
    j["ladder"] = p.ladder.values();
    j["grid"] = {{"dx", p.grid.dx()}, {"points", p.grid.size()}};
    j["epsilon"] = p.epsilon;
    j["iterations"] = p.iterations;
    j["initial_gap"] = p.initial_gap;
    j["residuals"] = p.residuals;
    j["W"] = p.W.data();
    j["a_plus"] = p.a_plus;
    j["a_minus"] = p.a_minus;
    os << j.dump() << '\n';
}

Policy read_policy_json(std::istream& is) {
    json j;
    try {
        j = json::parse(is);
        if (j.at("format") != "mlsc-policy" || j.at("version") != 1) throw ParseError("policy: unknown format", 0);
        Policy p;
        const json& pp = j.at("params");
        p.params.beta = pp.at("beta");
        p.params.gamma = pp.at("gamma");
        p.params.delta = pp.at("delta");
        p.params.c_plus = pp.at("c_plus");
        p.params.c_minus = pp.at("c_minus");
        p.params.r = pp.at("r");
        p.params.theta = pp.at("theta");
        p.params.validate();
        p.ladder = Ladder(j.at("ladder").get<std::vector<double>>());
        const double dx = j.at("grid").at("dx");
        const std::size_t n = j.at("grid").at("points");
        if (n < 2) throw ParseError("policy: grid needs at least 2 points", 0);
        p.grid = GridSpec(dx * static_cast<double>(n - 1), dx);
        p.epsilon = j.at("epsilon");
        p.iterations = j.at("iterations");
        p.initial_gap = j.at("initial_gap");
        p.residuals = j.at("residuals").get<std::vector<double>>();
        const std::size_t cells = static_cast<std::size_t>(p.ladder.levels()) * n;
        p.W = ValueGrid(p.ladder.levels(), p.grid);
        p.W.data() = j.at("W").get<std::vector<double>>();
        p.a_plus = j.at("a_plus").get<std::vector<double>>();
        p.a_minus = j.at("a_minus").get<std::vector<double>>();
        if (p.W.data().size() != cells || p.a_plus.size() != cells || p.a_minus.size() != cells)
            throw ParseError("policy: array sizes do not match levels x points", 0);
        return p;
    } catch (const json::exception& e) {
        throw ParseError(std::string("policy: ") + e.what(), 0);
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("policy: ") + e.what(), 0);
    }
}

void save_policy(const std::string& path, const Policy& policy) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path);
    write_policy_json(f, policy);
}

Policy load_policy(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("policy: cannot open " + path, 0);
    return read_policy_json(f);
}

}  // namespace mlsc
