#include "cli.hpp"

#include "archinf/archinf.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <deque>
#include <set>
#include <sstream>

namespace archinf::cli {

namespace {

using json = nlohmann::json;

json num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

json opt_num(const std::optional<double>& v) { return v ? num(*v) : json(nullptr); }

template <class T>
T get_as(const json& v, const std::string& key) {
    try {
        return v.get<T>();
    } catch (const json::exception& e) {
        throw std::invalid_argument("config key '" + key + "' has the wrong type: " + e.what());
    }
}

void require_member(const std::string& key, const std::string& value, const std::set<std::string>& allowed) {
    if (!allowed.contains(value)) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : " | ") + a;
        throw std::invalid_argument("config key '" + key + "' must be one of " + list + ", got '" + value + "'");
    }
}

const std::set<std::string> kSubcommands{"check", "dstar", "simulate", "verify", "coeffs"};
const std::set<std::string> kModelKinds{"figarch0d0", "figarchpq", "geometric", "explicit"};
const std::set<std::string> kEngines{"recursive", "volterra"};
const std::set<std::string> kSuites{"bounds", "equivalence", "divergence", "remainder"};
const std::set<std::string> kFormats{"json", "csv"};

json model_to_json(const ModelSpec& m) {
    return json{{"kind", m.kind},     {"d", m.d},         {"theta", m.theta},
                {"phi", m.phi},       {"scale", m.scale}, {"ratio", m.ratio},
                {"values", m.values}, {"tail_constant", opt_num(m.tail_constant)}};
}

ModelSpec model_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config key 'model' must be an object");
    ModelSpec m;
    const std::map<std::string, std::function<void(const json&)>> fields{
        {"kind",
         [&](const json& v) {
             m.kind = get_as<std::string>(v, "model.kind");
             require_member("model.kind", m.kind, kModelKinds);
         }},
        {"d", [&](const json& v) { m.d = get_as<double>(v, "model.d"); }},
        {"theta", [&](const json& v) { m.theta = get_as<std::vector<double>>(v, "model.theta"); }},
        {"phi", [&](const json& v) { m.phi = get_as<std::vector<double>>(v, "model.phi"); }},
        {"scale", [&](const json& v) { m.scale = get_as<double>(v, "model.scale"); }},
        {"ratio", [&](const json& v) { m.ratio = get_as<double>(v, "model.ratio"); }},
        {"values", [&](const json& v) { m.values = get_as<std::vector<double>>(v, "model.values"); }},
        {"tail_constant",
         [&](const json& v) {
             if (v.is_null()) {
                 m.tail_constant.reset();
             } else {
                 m.tail_constant = get_as<double>(v, "model.tail_constant");
             }
         }},
    };
    for (const auto& [key, value] : j.items()) {
        auto it = fields.find(key);
        if (it == fields.end()) throw std::invalid_argument("unknown config key 'model." + key + "'");
        it->second(value);
    }
    return m;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        out.flush();
    } else {
        write_file_atomic(cfg.out, text);
    }
}

json estimate_json(const std::string& name, const MomentEstimate& e) {
    json j{{"quantity", name},
           {"p", e.p},
           {"estimate", num(e.estimate)},
           {"std_error", num(e.std_error)},
           {"n_samples", e.n_samples},
           {"n_batches", e.n_batches},
           {"bound", opt_num(e.bound)},
           {"passed", nullptr}};
    if (e.passed) j["passed"] = *e.passed;
    return j;
}

json header(const RunConfig& cfg) {
    return json{{"format_version", kFormatVersion}, {"subcommand", cfg.subcommand}};
}

SimConfig sim_config(const RunConfig& cfg) {
    SimConfig sc;
    sc.n = cfg.n;
    sc.burn_in = cfg.burn_in;
    sc.J = cfg.resolved_J();
    sc.a0 = cfg.a0;
    sc.seed = cfg.seed;
    sc.chaos_order = cfg.chaos_order;
    sc.overflow_cap = cfg.overflow_cap;
    return sc;
}

class Progress {
public:
    Progress(const RunConfig& cfg, std::ostream& err) : quiet_(cfg.quiet), err_(err) {}
    void operator()(const std::string& msg) const {
        if (!quiet_) err_ << "archinf: " << msg << '\n';
    }

private:
    bool quiet_;
    std::ostream& err_;
};

int exit_for(Verdict v) {
    switch (v) {
        case Verdict::ExistsByCs:
        case Verdict::ExistsByIarchCondition: return kExitOk;
        case Verdict::Inconclusive: return kExitInconclusive;
        case Verdict::RejectedInput: return kExitRejected;
    }
    return kExitRuntime;
}

int run_check(const RunConfig& cfg, std::ostream& out, const Progress& progress) {
    const std::size_t J = cfg.resolved_J();
    const std::size_t threads = resolve_threads(cfg.threads);
    progress("building " + cfg.model.kind + " coefficients, J = " + std::to_string(J));
    const auto seq = build_sequence(cfg.model, J);
    const auto dist = InnovationDist::parse(cfg.dist);
    ExistenceOptions opts;
    opts.sums = SumOptions{J, cfg.tail, threads};
    opts.margin = cfg.margin;
    opts.iarch_tol = cfg.iarch_tol;
    progress("minimizing phi over the admissible range");
    const auto rep = check_cs(seq, dist, opts);

    auto j = header(cfg);
    j["verdict"] = to_string(rep.verdict);
    j["p_star"] = opt_num(rep.p_star);
    j["phi"] = opt_num(rep.phi_at_p_star);
    j["iarch_lhs"] = opt_num(rep.iarch_lhs);
    j["A1"] = num(rep.A1);
    j["mu1"] = num(rep.mu1);
    j["diagnostics"] = rep.diagnostics;
    j["model"] = model_to_json(cfg.model);
    j["dist"] = dist.spec();
    j["J"] = J;
    j["tail"] = cfg.tail;
    emit(cfg, j.dump(2) + "\n", out);
    return exit_for(rep.verdict);
}

int run_dstar(const RunConfig& cfg, std::ostream& out, const Progress& progress) {
    const auto dist = InnovationDist::parse(cfg.dist);
    DStarOptions opts;
    opts.truncation = cfg.resolved_J();
    opts.tol = cfg.tol;
    opts.threads = resolve_threads(cfg.threads);
    progress("locating d* for " + dist.spec() + " with J = " + std::to_string(opts.truncation));
    const auto res = find_d_star(dist, opts);
    auto j = header(cfg);
    j["d_star"] = num(res.d_star);
    j["uncertainty"] = num(res.uncertainty);
    j["kappa"] = num(res.kappa);
    j["lower_bound"] = num(res.lower_bound);
    j["monotone_on_grid"] = res.monotone_on_grid;
    j["diagnostics"] = res.diagnostics;
    j["dist"] = dist.spec();
    j["J"] = opts.truncation;
    j["tol"] = cfg.tol;
    emit(cfg, j.dump(2) + "\n", out);
    return kExitOk;
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err, const Progress& progress) {
    const std::size_t J = cfg.resolved_J();
    const auto seq = build_sequence(cfg.model, J);
    const auto dist = InnovationDist::parse(cfg.dist);
    if (!cfg.force) {
        ExistenceOptions opts;
        opts.sums = SumOptions{J, true, resolve_threads(cfg.threads)};
        const auto rep = check_cs(seq, dist, opts);
        if (rep.verdict != Verdict::ExistsByCs && rep.verdict != Verdict::ExistsByIarchCondition) {
            err << "archinf: no existence verdict for this model (" << to_string(rep.verdict)
                << "); pass --force to simulate a possibly non-stationary process\n";
            return exit_for(rep.verdict);
        }
    }
    const auto sc = sim_config(cfg);
    progress("simulating " + std::to_string(sc.effective_burn_in() + sc.n) + " steps with the " + cfg.engine +
             " engine");
    const auto path = cfg.engine == "volterra" ? simulate_volterra(seq, dist, sc) : simulate_recursive(seq, dist, sc);

    std::string text;
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n,sigma2,x\n";
        for (std::size_t i = 0; i < path.sigma2.size(); ++i) {
            os << i << ',' << format_double(path.sigma2[i]) << ',' << format_double(path.x[i]) << '\n';
        }
        text = os.str();
    } else {
        auto j = header(cfg);
        j["engine"] = cfg.engine;
        j["config"] = to_json(cfg);
        j["sigma2"] = path.sigma2;
        j["x"] = path.x;
        text = j.dump() + "\n";
    }
    emit(cfg, text, out);
    return kExitOk;
}

int run_coeffs(const RunConfig& cfg, std::ostream& out) {
    const std::size_t J = cfg.resolved_J();
    const auto seq = build_sequence(cfg.model, J);
    std::ostringstream os;
    write_coeffs_csv(os, seq, J);
    emit(cfg, os.str(), out);
    return kExitOk;
}

int run_verify(const RunConfig& cfg, std::ostream& out, const Progress& progress) {
    const std::size_t J = std::max(cfg.resolved_J(), cfg.window);
    const auto seq = build_sequence(cfg.model, J);
    const auto dist = InnovationDist::parse(cfg.dist);
    const std::size_t threads = resolve_threads(cfg.threads);
    auto j = header(cfg);
    j["suite"] = cfg.suite;
    j["model"] = model_to_json(cfg.model);
    j["dist"] = dist.spec();
    bool passed = false;

    if (cfg.suite == "bounds") {
        ReplicateOptions ro{cfg.replicates, cfg.batches, threads, SumOptions{J, true, threads}};
        progress("moment bounds: " + std::to_string(cfg.replicates) + " replicates");
        const auto rep = check_moment_bounds(seq, dist, sim_config(cfg), cfg.p, ro);
        j["p"] = cfg.p;
        j["contraction"] = num(rep.contraction);
        j["estimates"] = json::array({estimate_json("sigma2^p", rep.sigma), estimate_json("|x|^2p", rep.x)});
        passed = rep.passed();
    } else if (cfg.suite == "equivalence") {
        progress("engine equivalence on a window of " + std::to_string(cfg.window));
        const auto rep = check_engine_equivalence(seq, dist, cfg.window, cfg.seeds, cfg.chaos_order, cfg.a0);
        j["window"] = rep.window;
        j["chaos_order"] = rep.chaos_order;
        j["seeds"] = rep.seeds;
        json disc = json::array();
        for (double d : rep.max_rel_discrepancy) disc.push_back(num(d));
        j["max_rel_discrepancy"] = disc;
        j["overall"] = num(rep.overall);
        j["tolerance"] = kEquivalenceTolerance;
        passed = rep.passed;
    } else if (cfg.suite == "divergence") {
        progress("divergence evidence over " + std::to_string(cfg.seeds.size()) + " seeds");
        const auto rep = divergence_evidence(seq, dist, sim_config(cfg), cfg.n_short, cfg.seeds, 1.0, threads);
        j["p"] = rep.p;
        j["n_short"] = rep.n_short;
        j["n_long"] = rep.n_long;
        j["seeds"] = rep.seeds;
        json s = json::array();
        json l = json::array();
        for (double v : rep.short_estimates) s.push_back(num(v));
        for (double v : rep.long_estimates) l.push_back(num(v));
        j["short_estimates"] = s;
        j["long_estimates"] = l;
        j["exceed_count"] = rep.exceed_count;
        j["note"] = "growth of the sample second moment is evidence of an infinite moment, not a proof";
        passed = rep.passed;
    } else {
        ReplicateOptions ro{cfg.replicates, cfg.batches, threads, SumOptions{J, true, threads}};
        progress("chaos remainder decay up to q = " + std::to_string(cfg.q_max));
        const auto rep = remainder_decay(seq, dist, sim_config(cfg), cfg.p, cfg.q_max, ro);
        j["p"] = rep.p;
        j["contraction_truncated"] = num(rep.contraction_truncated);
        j["contraction_full"] = num(rep.contraction_full);
        json ests = json::array();
        for (std::size_t i = 0; i < rep.estimates.size(); ++i) {
            ests.push_back(estimate_json("|T_" + std::to_string(i + 2) + "|^p", rep.estimates[i]));
        }
        j["estimates"] = ests;
        json ratios = json::array();
        for (double r : rep.ratios) ratios.push_back(num(r));
        j["ratios"] = ratios;
        passed = true;
        for (double r : rep.ratios) passed = passed && r <= rep.contraction_truncated + 0.05;
    }
    j["passed"] = passed;
    emit(cfg, j.dump(2) + "\n", out);
    return passed ? kExitOk : kExitInconclusive;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
    }
    return run_config_from_json(j);
}

// CLI11 writes every option into `flags`; only options the user actually passed
// are copied over the config-file values.
class Bindings {
public:
    explicit Bindings(RunConfig& flags) : flags_(flags) {}

    template <class T>
    CLI::Option* add(CLI::App* app, const std::string& name, T RunConfig::*member, const std::string& desc) {
        auto* opt = app->add_option(name, flags_.*member, desc);
        overrides_.emplace_back(opt, [this, member](RunConfig& c) { c.*member = flags_.*member; });
        return opt;
    }

    template <class T>
    CLI::Option* add_model(CLI::App* app, const std::string& name, T ModelSpec::*member, const std::string& desc) {
        auto* opt = app->add_option(name, flags_.model.*member, desc);
        overrides_.emplace_back(opt, [this, member](RunConfig& c) { c.model.*member = flags_.model.*member; });
        return opt;
    }

    CLI::Option* add_optional(CLI::App* app, const std::string& name, std::optional<std::size_t> RunConfig::*member,
                              const std::string& desc) {
        auto& slot = scratch_.emplace_back();
        auto* opt = app->add_option(name, slot, desc);
        overrides_.emplace_back(opt, [&slot, member](RunConfig& c) { c.*member = slot; });
        return opt;
    }

    CLI::Option* add_flag(CLI::App* app, const std::string& name, bool RunConfig::*member, const std::string& desc) {
        auto* opt = app->add_flag(name, flags_.*member, desc);
        overrides_.emplace_back(opt, [this, member](RunConfig& c) { c.*member = flags_.*member; });
        return opt;
    }

    void add_custom(CLI::Option* opt, std::function<void(RunConfig&)> apply) {
        overrides_.emplace_back(opt, std::move(apply));
    }

    void apply(RunConfig& cfg) const {
        for (const auto& [opt, fn] : overrides_) {
            if (opt->count() > 0) fn(cfg);
        }
    }

private:
    RunConfig& flags_;
    std::deque<std::size_t> scratch_;
    std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides_;
};

}  // namespace

std::size_t RunConfig::resolved_J() const {
    if (J) return *J;
    return (subcommand == "simulate" || subcommand == "verify") ? 1000 : kDefaultTruncation;
}

json to_json(const RunConfig& c) {
    json j{{"format_version", kFormatVersion},
           {"subcommand", c.subcommand},
           {"model", model_to_json(c.model)},
           {"dist", c.dist},
           {"J", c.J ? json(*c.J) : json(nullptr)},
           {"tail", c.tail},
           {"n", c.n},
           {"burn_in", c.burn_in ? json(*c.burn_in) : json(nullptr)},
           {"a0", c.a0},
           {"seed", c.seed},
           {"chaos_order", c.chaos_order},
           {"engine", c.engine},
           {"tol", c.tol},
           {"margin", c.margin},
           {"iarch_tol", c.iarch_tol},
           {"p", c.p},
           {"suite", c.suite},
           {"replicates", c.replicates},
           {"window", c.window},
           {"seeds", c.seeds},
           {"n_short", c.n_short},
           {"batches", c.batches},
           {"q_max", c.q_max},
           {"overflow_cap", c.overflow_cap},
           {"force", c.force},
           {"threads", c.threads},
           {"quiet", c.quiet},
           {"out", c.out},
           {"format", c.format}};
    return j;
}

RunConfig run_config_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    RunConfig c;
    auto opt_size = [](const json& v, const std::string& key) -> std::optional<std::size_t> {
        if (v.is_null()) return std::nullopt;
        return get_as<std::size_t>(v, key);
    };
    const std::map<std::string, std::function<void(const json&)>> fields{
        {"format_version",
         [&](const json& v) {
             if (get_as<int>(v, "format_version") != kFormatVersion) {
                 throw std::invalid_argument("unsupported config format_version");
             }
         }},
        {"subcommand",
         [&](const json& v) {
             c.subcommand = get_as<std::string>(v, "subcommand");
             require_member("subcommand", c.subcommand, kSubcommands);
         }},
        {"model", [&](const json& v) { c.model = model_from_json(v); }},
        {"dist", [&](const json& v) { c.dist = get_as<std::string>(v, "dist"); }},
        {"J", [&](const json& v) { c.J = opt_size(v, "J"); }},
        {"tail", [&](const json& v) { c.tail = get_as<bool>(v, "tail"); }},
        {"n", [&](const json& v) { c.n = get_as<std::size_t>(v, "n"); }},
        {"burn_in", [&](const json& v) { c.burn_in = opt_size(v, "burn_in"); }},
        {"a0", [&](const json& v) { c.a0 = get_as<double>(v, "a0"); }},
        {"seed", [&](const json& v) { c.seed = get_as<std::uint64_t>(v, "seed"); }},
        {"chaos_order", [&](const json& v) { c.chaos_order = get_as<std::size_t>(v, "chaos_order"); }},
        {"engine",
         [&](const json& v) {
             c.engine = get_as<std::string>(v, "engine");
             require_member("engine", c.engine, kEngines);
         }},
        {"tol", [&](const json& v) { c.tol = get_as<double>(v, "tol"); }},
        {"margin", [&](const json& v) { c.margin = get_as<double>(v, "margin"); }},
        {"iarch_tol", [&](const json& v) { c.iarch_tol = get_as<double>(v, "iarch_tol"); }},
        {"p", [&](const json& v) { c.p = get_as<double>(v, "p"); }},
        {"suite",
         [&](const json& v) {
             c.suite = get_as<std::string>(v, "suite");
             require_member("suite", c.suite, kSuites);
         }},
        {"replicates", [&](const json& v) { c.replicates = get_as<std::size_t>(v, "replicates"); }},
        {"window", [&](const json& v) { c.window = get_as<std::size_t>(v, "window"); }},
        {"seeds", [&](const json& v) { c.seeds = get_as<std::vector<std::uint64_t>>(v, "seeds"); }},
        {"n_short", [&](const json& v) { c.n_short = get_as<std::size_t>(v, "n_short"); }},
        {"batches", [&](const json& v) { c.batches = get_as<std::size_t>(v, "batches"); }},
        {"q_max", [&](const json& v) { c.q_max = get_as<std::size_t>(v, "q_max"); }},
        {"overflow_cap", [&](const json& v) { c.overflow_cap = get_as<double>(v, "overflow_cap"); }},
        {"force", [&](const json& v) { c.force = get_as<bool>(v, "force"); }},
        {"threads", [&](const json& v) { c.threads = get_as<std::size_t>(v, "threads"); }},
        {"quiet", [&](const json& v) { c.quiet = get_as<bool>(v, "quiet"); }},
        {"out", [&](const json& v) { c.out = get_as<std::string>(v, "out"); }},
        {"format",
         [&](const json& v) {
             c.format = get_as<std::string>(v, "format");
             require_member("format", c.format, kFormats);
         }},
    };
    for (const auto& [key, value] : j.items()) {
        auto it = fields.find(key);
        if (it == fields.end()) throw std::invalid_argument("unknown config key '" + key + "'");
        it->second(value);
    }
    return c;
}

CoeffSequence build_sequence(const ModelSpec& m, std::size_t J) {
    auto seq = [&] {
        if (m.kind == "figarch0d0") return CoeffSequence::figarch0d0(m.d, J);
        if (m.kind == "figarchpq") return CoeffSequence::figarch_pq(m.d, PowerSeries(m.theta), PowerSeries(m.phi), J);
        if (m.kind == "geometric") return CoeffSequence::geometric(m.scale, m.ratio, J);
        if (m.kind == "explicit") return CoeffSequence::explicit_list(m.values);
        throw DomainError("unknown model kind '" + m.kind + "'");
    }();
    if (m.tail_constant) seq = seq.with_tail_constant(*m.tail_constant);
    return seq;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Existence checks, simulation and Monte Carlo verification for ARCH(inf), IARCH(inf) "
                 "and FIGARCH processes",
                 "archinf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "archinf 0.1.0");

    RunConfig flags;
    Bindings bind(flags);
    std::string config_path;
    bool dump_config = false;
    std::string tail_flag = "on";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON RunConfig file; explicit flags override it");
        sub->add_flag("--dump-config", dump_config, "print the effective RunConfig as JSON and exit");
        bind.add(sub, "--threads", &RunConfig::threads, "worker threads (0: $ARCHINF_THREADS, else 1)");
        bind.add_flag(sub, "--quiet", &RunConfig::quiet, "suppress progress messages");
        bind.add(sub, "--out", &RunConfig::out, "output file (written atomically); default stdout");
    };
    auto model = [&](CLI::App* sub) {
        bind.add_model(sub, "--model", &ModelSpec::kind, "figarch0d0 | figarchpq | geometric | explicit")
            ->check(CLI::IsMember(kModelKinds));
        bind.add_model(sub, "--d", &ModelSpec::d, "fractional order d in (0,1)");
        bind.add_model(sub, "--theta", &ModelSpec::theta, "theta polynomial, constant first (figarchpq)")
            ->delimiter(',');
        bind.add_model(sub, "--phi", &ModelSpec::phi, "phi polynomial, constant first (figarchpq)")->delimiter(',');
        bind.add_model(sub, "--scale", &ModelSpec::scale, "geometric: a_j = scale * ratio^j");
        bind.add_model(sub, "--ratio", &ModelSpec::ratio, "geometric ratio in [0,1)");
        bind.add_model(sub, "--values", &ModelSpec::values, "explicit a_1,a_2,...")->delimiter(',');
        auto* tc = sub->add_option("--tail-constant", flags.model.tail_constant,
                                   "pin c in a_j ~ c j^-delta instead of fitting it");
        bind.add_custom(tc, [&flags](RunConfig& c) { c.model.tail_constant = flags.model.tail_constant; });
    };
    auto dist = [&](CLI::App* sub) {
        bind.add(sub, "--dist", &RunConfig::dist, "gaussian | student:NU | rademacher | twopoint:V1,V2,W | logtail");
    };
    auto truncation = [&](CLI::App* sub) {
        bind.add_optional(sub, "--J", &RunConfig::J, "coefficient truncation / lag window");
        auto* t = sub->add_option("--tail", tail_flag, "tail correction on|off")->check(CLI::IsMember({"on", "off"}));
        bind.add_custom(t, [&tail_flag](RunConfig& c) { c.tail = tail_flag == "on"; });
    };
    auto sim = [&](CLI::App* sub) {
        bind.add(sub, "--n", &RunConfig::n, "kept path length");
        bind.add_optional(sub, "--burnin", &RunConfig::burn_in, "discarded leading steps (default 10*J)");
        bind.add(sub, "--a0", &RunConfig::a0, "intercept a0 > 0");
        bind.add(sub, "--seed", &RunConfig::seed, "innovation seed (default 0)");
        bind.add(sub, "--chaos", &RunConfig::chaos_order, "chaos order of the Volterra engine");
        bind.add(sub, "--overflow-cap", &RunConfig::overflow_cap, "abort when sigma2 exceeds this");
    };

    auto* check = app.add_subcommand("check", "decide existence of a stationary causal solution");
    common(check);
    model(check);
    dist(check);
    truncation(check);
    bind.add(check, "--margin", &RunConfig::margin, "EXISTS needs min phi < -margin");
    bind.add(check, "--iarch-tol", &RunConfig::iarch_tol, "tolerance on |A_1 - 1| and |mu_1 - 1|");

    auto* dstar = app.add_subcommand("dstar", "locate the FIGARCH(0,d,0) existence threshold d*");
    common(dstar);
    dist(dstar);
    truncation(dstar);
    bind.add(dstar, "--tol", &RunConfig::tol, "bisection tolerance on d");

    auto* simulate = app.add_subcommand("simulate", "simulate (sigma2, x) paths");
    common(simulate);
    model(simulate);
    dist(simulate);
    truncation(simulate);
    sim(simulate);
    bind.add(simulate, "--engine", &RunConfig::engine, "recursive | volterra")->check(CLI::IsMember(kEngines));
    bind.add(simulate, "--format", &RunConfig::format, "csv | json")->check(CLI::IsMember(kFormats));
    bind.add_flag(simulate, "--force", &RunConfig::force, "simulate without an existence verdict");

    auto* verify = app.add_subcommand("verify", "Monte Carlo checks of moment bounds and engine agreement");
    common(verify);
    model(verify);
    dist(verify);
    truncation(verify);
    sim(verify);
    bind.add(verify, "--suite", &RunConfig::suite, "bounds | equivalence | divergence | remainder")
        ->check(CLI::IsMember(kSuites));
    bind.add(verify, "--p", &RunConfig::p, "moment order p in (0,1]");
    bind.add(verify, "--replicates", &RunConfig::replicates, "independent replicate paths");
    bind.add(verify, "--window", &RunConfig::window, "equivalence window (<= 30)");
    bind.add(verify, "--seeds", &RunConfig::seeds, "comma-separated seeds")->delimiter(',');
    bind.add(verify, "--n-short", &RunConfig::n_short, "short horizon for the divergence suite");
    bind.add(verify, "--batches", &RunConfig::batches, "batch-means batch count (>= 30)");
    bind.add(verify, "--qmax", &RunConfig::q_max, "highest chaos order difference for the remainder suite");

    auto* coeffs = app.add_subcommand("coeffs", "dump coefficients a_1..a_J as CSV");
    common(coeffs);
    model(coeffs);
    truncation(coeffs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion& e) {
        out << e.what() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "archinf: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config_file(config_path);
    } catch (const std::invalid_argument& e) {
        err << "archinf: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }
    cfg.subcommand = sub->get_name();
    bind.apply(cfg);

    if (dump_config) {
        emit(cfg, to_json(cfg).dump(2) + "\n", out);
        return kExitOk;
    }

    const Progress progress(cfg, err);
    try {
        if (cfg.subcommand == "check") return run_check(cfg, out, progress);
        if (cfg.subcommand == "dstar") return run_dstar(cfg, out, progress);
        if (cfg.subcommand == "simulate") return run_simulate(cfg, out, err, progress);
        if (cfg.subcommand == "verify") return run_verify(cfg, out, progress);
        if (cfg.subcommand == "coeffs") return run_coeffs(cfg, out);
    } catch (const BoundUndefinedError& e) {
        err << "archinf: rejected input: " << e.what() << '\n';
        return kExitRejected;
    } catch (const std::invalid_argument& e) {  // DomainError-like construction failures included
        err << "archinf: rejected input: " << e.what() << '\n';
        return kExitRejected;
    } catch (const std::domain_error& e) {
        err << "archinf: rejected input: " << e.what() << '\n';
        return kExitRejected;
    } catch (const std::exception& e) {
        err << "archinf: error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

}  // namespace archinf::cli
