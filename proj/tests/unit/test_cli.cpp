#include "cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace archinf::cli;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "archinf");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "archinf_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("check reports the IARCH verdict for d = 0.9") {
    const auto r = invoke({"check", "--model", "figarch0d0", "--d", "0.9", "--dist", "gaussian", "--J", "100000", "--quiet"});
    CHECK(r.code == kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["verdict"] == "EXISTS_BY_IARCH_CONDITION");
    CHECK(j["format_version"] == 1);
    CHECK(r.err.empty());
}

TEST_CASE("inconclusive and rejected exit codes") {
    CHECK(invoke({"check", "--d", "0.5", "--J", "100000", "--quiet"}).code == kExitInconclusive);
    const auto bad = invoke({"check", "--model", "figarch0d0", "--d", "1.5", "--quiet"});
    CHECK(bad.code == kExitRejected);
    CHECK(bad.err.find("(0,1)") != std::string::npos);
    CHECK(invoke({"dstar", "--dist", "rademacher", "--quiet"}).code == kExitRejected);
}

TEST_CASE("usage errors print the grammar") {
    const auto r = invoke({"check", "--no-such-flag"});
    CHECK(r.code == kExitUsage);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"simulate", "--engine", "magic"}).code == kExitUsage);
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
    const std::vector<std::string> base{"simulate", "--model", "figarch0d0", "--d", "0.9", "--J", "200",
                                        "--n", "300", "--seed", "42", "--format", "csv", "--quiet"};
    const auto a = invoke(base);
    const auto b = invoke(base);
    auto threaded = base;
    threaded.insert(threaded.end(), {"--threads", "3"});
    const auto c = invoke(threaded);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.rfind("n,sigma2,x\n", 0) == 0);
}

TEST_CASE("simulate refuses models without a verdict unless forced") {
    const std::vector<std::string> base{"simulate", "--d", "0.5", "--J", "100", "--n", "10", "--quiet"};
    CHECK(invoke(base).code == kExitInconclusive);
    auto forced = base;
    forced.push_back("--force");
    CHECK(invoke(forced).code == kExitOk);
}

TEST_CASE("dump-config round trips") {
    const auto r = invoke({"verify", "--suite", "equivalence", "--d", "0.7", "--seeds", "4,5", "--burnin", "12",
                           "--dump-config"});
    REQUIRE(r.code == kExitOk);
    const auto cfg = run_config_from_json(json::parse(r.out));
    CHECK(cfg.suite == "equivalence");
    CHECK(cfg.model.d == 0.7);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{4, 5});
    CHECK(cfg.burn_in == std::optional<std::size_t>{12});
    CHECK(run_config_from_json(to_json(cfg)) == cfg);

    RunConfig defaults;
    CHECK(defaults.seed == 0);
    CHECK(run_config_from_json(to_json(defaults)) == defaults);
}

TEST_CASE("strict config parsing") {
    auto j = to_json(RunConfig{});
    j["tolerance"] = 1e-3;
    CHECK_THROWS_AS(run_config_from_json(j), std::invalid_argument);
    auto k = to_json(RunConfig{});
    k["model"]["dd"] = 0.5;
    CHECK_THROWS_AS(run_config_from_json(k), std::invalid_argument);
    auto t = to_json(RunConfig{});
    t["n"] = "many";
    CHECK_THROWS_AS(run_config_from_json(t), std::invalid_argument);
}

TEST_CASE("explicit flags override the config file and --out is written") {
    RunConfig cfg;
    cfg.subcommand = "check";
    cfg.model.d = 0.5;
    cfg.J = 100000;
    const auto cfg_path = scratch("cfg.json");
    std::ofstream(cfg_path) << to_json(cfg).dump();
    const auto out_path = scratch("report.json");
    std::filesystem::remove(out_path);
    const auto r = invoke({"check", "--config", cfg_path.string(), "--d", "0.9", "--out", out_path.string(), "--quiet"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.empty());
    const auto rep = json::parse(slurp(out_path));
    CHECK(rep["model"]["d"] == 0.9);
    CHECK(rep["J"] == 100000);

    std::ofstream(cfg_path) << R"({"subcommand": "check", "typo_key": 1})";
    CHECK(invoke({"check", "--config", cfg_path.string()}).code == kExitUsage);
}

TEST_CASE("verify reports every estimate with its bound") {
    const auto r = invoke({"verify", "--suite", "bounds", "--model", "geometric", "--scale", "0.5", "--ratio", "0.5",
                           "--J", "60", "--n", "3000", "--replicates", "4", "--p", "1", "--quiet"});
    CHECK(r.code == kExitOk);
    const auto j = json::parse(r.out);
    REQUIRE(j["estimates"].size() == 2);
    for (const auto& e : j["estimates"]) {
        CHECK(e.contains("bound"));
        CHECK(e.contains("std_error"));
        CHECK(e["passed"] == true);
    }
    const auto eq = invoke({"verify", "--suite", "equivalence", "--d", "0.5", "--window", "10", "--quiet"});
    CHECK(eq.code == kExitOk);
    const auto undefined = invoke({"verify", "--suite", "bounds", "--d", "0.9", "--p", "0.5", "--quiet"});
    CHECK(undefined.code == kExitRejected);
}

TEST_CASE("coeffs csv") {
    const auto r = invoke({"coeffs", "--model", "explicit", "--values", "0.5,0.25", "--J", "2"});
    CHECK(r.out == "j,a_j\n1,0.5\n2,0.25\n");
}

TEST_CASE("quiet suppresses progress only") {
    const auto loud = invoke({"check", "--d", "0.9", "--J", "10000"});
    const auto quiet = invoke({"check", "--d", "0.9", "--J", "10000", "--quiet"});
    CHECK(!loud.err.empty());
    CHECK(quiet.err.empty());
    CHECK(loud.out == quiet.out);
}
