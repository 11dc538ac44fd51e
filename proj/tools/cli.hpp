#pragma once

#include "archinf/coeffs.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace archinf::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInconclusive = 2,
    kExitRejected = 3,
    kExitRuntime = 4,
    kExitUsage = 64,
};

struct ModelSpec {
    std::string kind = "figarch0d0";  // figarch0d0 | figarchpq | geometric | explicit
    double d = 0.5;
    std::vector<double> theta{1.0};
    std::vector<double> phi{1.0};
    double scale = 0.5;  // geometric: a_j = scale * ratio^j
    double ratio = 0.5;
    std::vector<double> values;  // explicit: a_1, a_2, ...
    std::optional<double> tail_constant;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Every knob of every subcommand. Unset optionals take the documented
/// subcommand-specific default when the run starts.
struct RunConfig {
    std::string subcommand = "check";  // check | dstar | simulate | verify | coeffs
    ModelSpec model;
    std::string dist = "gaussian";
    std::optional<std::size_t> J;  // 1000000 for check/dstar/coeffs, 1000 for simulate/verify
    bool tail = true;
    std::size_t n = 100000;
    std::optional<std::size_t> burn_in;  // 10 * J
    double a0 = 1.0;
    std::uint64_t seed = 0;
    std::size_t chaos_order = 30;
    std::string engine = "recursive";
    double tol = 1e-4;
    double margin = 1e-8;
    double iarch_tol = 1e-4;
    double p = 0.5;
    std::string suite = "bounds";  // bounds | equivalence | divergence | remainder
    std::size_t replicates = 32;
    std::size_t window = 20;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::size_t n_short = 10000;
    std::size_t batches = 30;
    std::size_t q_max = 10;
    double overflow_cap = 1e300;
    bool force = false;
    std::size_t threads = 0;  // 0: ARCHINF_THREADS, else 1
    bool quiet = false;
    std::string out;  // empty: stdout
    std::string format = "json";  // json | csv

    [[nodiscard]] std::size_t resolved_J() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Strict: unknown keys and ill-typed values throw std::invalid_argument.
RunConfig run_config_from_json(const nlohmann::json& j);

CoeffSequence build_sequence(const ModelSpec& model, std::size_t J);

/// Entry point behind the archinf binary. Results go to `out` (or --out), progress
/// and errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace archinf::cli
