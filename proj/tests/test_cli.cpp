#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "mlsc/cli.hpp"

using namespace mlsc;

namespace {

struct CliRun {
    int code = 0;
    std::string out, err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "mlsc");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

const std::vector<std::string> kModelFlags{"--beta", "0.8", "--gamma", "0.8", "--delta", "0",
                                           "--c-plus", "1",  "--c-minus", "0.7", "--r", "1"};

std::vector<std::string> with_model(std::vector<std::string> head) {
    head.insert(head.end(), kModelFlags.begin(), kModelFlags.end());
    return head;
}

}  // namespace

TEST(Cli, GamingLadderPresetMilestones) {
    const CliRun r = run({"simulate", "--preset", "fig3c"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = csv(r.out);
    ASSERT_EQ(rows[0][0], "t");
    ASSERT_GE(rows.size(), 21u);
    // t, level, x_pre, a_plus, a_minus, ...
    for (int t = 0; t < 4; ++t) {
        EXPECT_EQ(std::stod(rows[t + 1][3]), 0.0);
        EXPECT_GT(std::stod(rows[t + 1][4]), 0.0);
    }
    EXPECT_GT(std::stod(rows[10][3]), 0.0);
    EXPECT_EQ(rows[20][1], "5");
}

TEST(Cli, SolveCaseIVNeverImproves) {
    const CliRun r = run({"solve", "--beta", "0.8", "--gamma", "0.8", "--c-plus", "1.5", "--c-minus", "0.4", "--r", "1",
                       "--ladder", "0,1,2", "--dx", "0.1"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["format"], "mlsc-policy");
    for (double a : j["a_plus"].get<std::vector<double>>()) EXPECT_EQ(a, 0.0);
    EXPECT_GT(j["iterations"].get<int>(), 0);
}

TEST(Cli, PhaseZeroThenPositive) {
    const CliRun r = run({"phase", "--preset", "fig8-phase", "--c-minus", "0.2,0.5", "--max-levels", "2", "--x-max", "30"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0][7], "max_attribute");
    EXPECT_EQ(std::stod(rows[1][7]), 0.0);
    EXPECT_GT(std::stod(rows[2][7]), 0.0);
}

TEST(Cli, ClosedFormReportsGapWithinBound) {
    const CliRun r = run(with_model({"closed-form", "--mu", "2", "--dx", "0.02"}));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.err.find("regime CaseA"), std::string::npos) << r.err;
    double gap = 0.0;
    const auto rows = csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) gap = std::max(gap, std::stod(rows[i][3]));
    EXPECT_LE(gap, 1.0 * 0.02 / (2 * 0.2));
}

TEST(Cli, ClosedFormPreconditionExits3) {
    const CliRun r = run({"closed-form", "--beta", "0.8", "--gamma", "0.8", "--c-plus", "1", "--c-minus", "0.3", "--r", "1",
                       "--mu", "2"});
    EXPECT_EQ(r.code, kExitInfeasible);
}

TEST(Cli, DesignNaturalAndGreedy) {
    CliRun r = run({"design", "natural", "--beta", "0.8", "--gamma", "0.8", "--delta", "0.5", "--c-plus", "1", "--c-minus",
                 "0.7", "--r", "1", "--M", "5"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["ladder"].size(), 3u);
    r = run(with_model({"design", "greedy", "--M", "20", "--max-levels", "2", "--x-max", "20", "--dx", "0.1"}));
    ASSERT_EQ(r.code, kExitOk) << r.err;
    j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["ladder"].size(), 2u);
}

TEST(Cli, GreedyInfeasibleExits3) {
    const CliRun r = run({"design", "greedy", "--beta", "0.8", "--gamma", "0.9", "--c-plus", "1", "--c-minus", "0.2", "--r",
                       "1", "--M", "10", "--max-levels", "2", "--x-max", "20", "--dx", "0.1"});
    EXPECT_EQ(r.code, kExitInfeasible);
}

TEST(Cli, ConfigErrorsExit2) {
    EXPECT_EQ(run({"solve", "--gamma", "0.8", "--c-plus", "1", "--c-minus", "0.7", "--r", "1", "--ladder", "0,1"}).code,
              kExitConfig);
    const CliRun bad = run({"solve", "--ladder", "0,1", "--beta", "1.0", "--gamma", "0.8", "--c-plus", "1", "--c-minus",
                            "0.7", "--r", "1"});
    EXPECT_EQ(bad.code, kExitConfig);
    EXPECT_NE(bad.err.find("beta: out of range"), std::string::npos) << bad.err;
    EXPECT_EQ(run({"solve", "--no-such-flag"}).code, kExitConfig);
    EXPECT_EQ(run({"solve", "--preset", "fig3c"}).code, kExitConfig);
    EXPECT_EQ(run({"simulate", "--preset", "nope"}).code, kExitConfig);
    EXPECT_EQ(run({}).code, kExitConfig);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
    const std::string path = testing::TempDir() + "mlsc_cli_cfg.json";
    {
        std::ofstream f(path);
        f << R"({"model": {"beta": 0.8, "gamma": 0.8, "c_plus": 1, "c_minus": 0.7, "r": 1}, "ladder": [0, 2]})";
    }
    const CliRun a = run({"simulate", "--config", path, "--horizon", "5"});
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(csv(a.out).size(), 6u);
    const CliRun b = run({"simulate", "--config", path, "--horizon", "5", "--gamma", "0.5"});
    ASSERT_EQ(b.code, kExitOk) << b.err;
    EXPECT_NE(a.out, b.out);
}

TEST(Cli, DescribeListsPresetConfig) {
    const CliRun r = run({"optimize", "--preset", "table1-caseIV", "--describe"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("table1-caseIV"), std::string::npos);
    EXPECT_NE(r.out.find("\"c_minus\": 0.4"), std::string::npos);
    for (const Preset& p : presets()) {
        const CliRun d = run({p.command, "--preset", p.name, "--describe"});
        EXPECT_EQ(d.code, kExitOk) << p.name;
        EXPECT_TRUE(nlohmann::json::accept(p.config_json)) << p.name;
    }
}

TEST(Cli, ReducedPresetsProduceOutput) {
    const CliRun sweep = run({"sweep", "--preset", "fig5-sweep", "--values", "0.7,0.8", "--max-levels", "3", "--x-max", "30",
                           "--dx", "0.1"});
    ASSERT_EQ(sweep.code, kExitOk) << sweep.err;
    EXPECT_EQ(csv(sweep.out).size(), 3u);
    const CliRun heat = run({"heatmap", "--preset", "fig7-heatmap", "--beta-values", "0.8", "--gamma-values", "0.7,0.8",
                          "--max-levels", "3", "--x-max", "30"});
    ASSERT_EQ(heat.code, kExitOk) << heat.err;
    EXPECT_EQ(csv(heat.out).size(), 3u);
    const CliRun abl = run({"sweep", "--preset", "fig9-ablation", "--values", "0.5,0.9"});
    ASSERT_EQ(abl.code, kExitOk) << abl.err;
    EXPECT_GT(csv(abl.out).size(), 10u);
    const CliRun opt = run({"optimize", "--preset", "table1-caseI", "--L-min", "2", "--L-max", "2", "--generations", "2",
                         "--principal-horizon", "20"});
    ASSERT_EQ(opt.code, kExitOk) << opt.err;
    const auto j = nlohmann::json::parse(opt.out);
    EXPECT_EQ(j["per_level"].size(), 1u);
    const CliRun reg = run(with_model({"regions", "--mu-values", "1,3", "--dx", "0.1"}));
    ASSERT_EQ(reg.code, kExitOk) << reg.err;
    EXPECT_EQ(csv(reg.out)[0][1], "regime");
}

TEST(Cli, RerunIsByteIdentical) {
    const std::vector<std::string> args{"optimize", "--preset", "table1-caseII", "--L-min", "2", "--L-max", "3",
                                        "--generations", "2", "--principal-horizon", "20", "--seed", "3"};
    const CliRun a = run(args), b = run(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
}

TEST(Cli, BinaryExitCodes) {
    const std::string bin = MLSC_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status("--help"), 0);
    EXPECT_EQ(status("solve --beta 2"), 2);
    EXPECT_EQ(status("closed-form --beta 0.8 --gamma 0.8 --c-plus 1 --c-minus 0.3 --r 1 --mu 2"), 3);
    EXPECT_EQ(status("simulate --preset fig3c --horizon 3"), 0);
}
