#include "archinf/verify.hpp"

#include "archinf/errors.hpp"
#include "archinf/io.hpp"
#include "archinf/numeric.hpp"

#include <cmath>

namespace archinf {

namespace {

void require_moment_order(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("moment order p must lie in (0,1], got " + format_double(p));
}

double abs_pow(double v, double p) {
    const double a = std::abs(v);
    if (p == 1.0) return a;
    return a > 0.0 ? std::pow(a, p) : 0.0;
}

// Per-replicate sample vectors concatenated in replicate order.
std::vector<double> concat(std::vector<std::vector<double>>& parts) {
    std::size_t total = 0;
    for (const auto& v : parts) total += v.size();
    std::vector<double> out;
    out.reserve(total);
    for (auto& v : parts) {
        out.insert(out.end(), v.begin(), v.end());
        v.clear();
        v.shrink_to_fit();
    }
    return out;
}

}  // namespace

void MomentEstimate::set_bound(double b) {
    bound = b;
    passed = estimate <= b + kStdErrorMargin * std_error;
}

MomentEstimate batch_mean(std::span<const double> values, std::size_t batches) {
    if (batches < kMinBatches) {
        throw InsufficientSamplesError("batch means needs at least " + std::to_string(kMinBatches) +
                                       " batches");
    }
    if (values.size() < batches) {
        throw InsufficientSamplesError("only " + std::to_string(values.size()) + " samples for " +
                                       std::to_string(batches) + " batches");
    }
    MomentEstimate est;
    est.n_samples = values.size();
    est.n_batches = batches;

    CompensatedSum total;
    for (double v : values) total.add(v);
    est.estimate = total.value() / static_cast<double>(values.size());

    // Batch i covers [i*N/B, (i+1)*N/B): sizes differ by at most one.
    const std::size_t N = values.size();
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t lo = b * N / batches;
        const std::size_t hi = (b + 1) * N / batches;
        CompensatedSum s;
        for (std::size_t i = lo; i < hi; ++i) s.add(values[i]);
        means[b] = s.value() / static_cast<double>(hi - lo);
    }
    CompensatedSum mb;
    for (double m : means) mb.add(m);
    const double grand = mb.value() / static_cast<double>(batches);
    CompensatedSum ss;
    for (double m : means) ss.add((m - grand) * (m - grand));
    const double var = ss.value() / static_cast<double>(batches - 1);
    est.std_error = std::sqrt(var / static_cast<double>(batches));
    return est;
}

MomentEstimate estimate_fractional_moment(std::span<const Path> paths, double p, std::size_t batches) {
    require_moment_order(p);
    std::vector<double> vals;
    for (const auto& path : paths) {
        for (double x : path.x) vals.push_back(abs_pow(x, 2.0 * p));
    }
    auto est = batch_mean(vals, batches);
    est.p = p;
    return est;
}

MomentEstimate estimate_sigma_moment(std::span<const Path> paths, double p, std::size_t batches) {
    require_moment_order(p);
    std::vector<double> vals;
    for (const auto& path : paths) {
        for (double s : path.sigma2) vals.push_back(abs_pow(s, p));
    }
    auto est = batch_mean(vals, batches);
    est.p = p;
    return est;
}

MomentBoundReport check_moment_bounds(const CoeffSequence& seq, const InnovationDist& dist,
                                      const SimConfig& cfg, double p, const ReplicateOptions& opts) {
    require_moment_order(p);
    cfg.validate();
    MomentBoundReport rep;
    rep.p = p;
    rep.replicates = opts.replicates;
    rep.contraction = contraction_factor(seq, dist, p, opts.sums);
    if (!(rep.contraction < 1.0)) {
        throw BoundUndefinedError("moment bound undefined: A_p mu_p = " + format_double(rep.contraction) +
                                      " >= 1 at p = " + format_double(p),
                                  rep.contraction);
    }
    const double mp = mu_p(dist, p);
    const double sigma_bound = std::pow(cfg.a0, p) / (1.0 - rep.contraction);

    std::vector<std::vector<double>> sig(opts.replicates);
    std::vector<std::vector<double>> xs(opts.replicates);
    parallel_for(opts.replicates, opts.threads, [&](std::size_t r) {
        SimConfig c = cfg;
        c.stream = r;
        const auto path = simulate_recursive(seq, dist, c);
        sig[r].resize(path.sigma2.size());
        xs[r].resize(path.x.size());
        for (std::size_t i = 0; i < path.sigma2.size(); ++i) {
            sig[r][i] = abs_pow(path.sigma2[i], p);
            xs[r][i] = abs_pow(path.x[i], 2.0 * p);
        }
    });
    rep.sigma = batch_mean(concat(sig), opts.batches);
    rep.sigma.p = p;
    rep.sigma.set_bound(sigma_bound);
    rep.x = batch_mean(concat(xs), opts.batches);
    rep.x.p = p;
    rep.x.set_bound(mp * sigma_bound);
    return rep;
}

EquivalenceReport check_engine_equivalence(const CoeffSequence& seq, const InnovationDist& dist,
                                           std::size_t window, std::span<const std::uint64_t> seeds,
                                           std::optional<std::size_t> chaos_order, double a0) {
    if (window < 1 || window > 30) throw DomainError("equivalence window must lie in [1, 30]");
    EquivalenceReport rep;
    rep.window = window;
    rep.chaos_order = chaos_order.value_or(window);
    rep.seeds.assign(seeds.begin(), seeds.end());
    for (auto seed : seeds) {
        SimConfig cfg;
        cfg.n = window;
        cfg.burn_in = 0;
        cfg.J = window;
        cfg.a0 = a0;
        cfg.seed = seed;
        cfg.chaos_order = rep.chaos_order;
        const auto rec = simulate_recursive(seq, dist, cfg);
        const auto vol = simulate_volterra(seq, dist, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < window; ++i) {
            worst = std::max(worst, std::abs(rec.sigma2[i] - vol.sigma2[i]) / std::abs(rec.sigma2[i]));
        }
        rep.max_rel_discrepancy.push_back(worst);
        rep.overall = std::max(rep.overall, worst);
    }
    rep.passed = rep.overall <= kEquivalenceTolerance;
    return rep;
}

DivergenceReport divergence_evidence(const CoeffSequence& seq, const InnovationDist& dist,
                                     const SimConfig& cfg, std::size_t n_short,
                                     std::span<const std::uint64_t> seeds, double p, std::size_t threads) {
    require_moment_order(p);
    if (n_short < 1 || n_short >= cfg.n) throw DomainError("need 1 <= n_short < n");
    DivergenceReport rep;
    rep.p = p;
    rep.n_short = n_short;
    rep.n_long = cfg.n;
    rep.seeds.assign(seeds.begin(), seeds.end());
    rep.short_estimates.resize(seeds.size());
    rep.long_estimates.resize(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t i) {
        SimConfig c = cfg;
        c.seed = seeds[i];
        const auto path = simulate_recursive(seq, dist, c);
        CompensatedSum s;
        for (std::size_t k = 0; k < path.x.size(); ++k) {
            s.add(abs_pow(path.x[k], 2.0 * p));
            if (k + 1 == n_short) rep.short_estimates[i] = s.value() / static_cast<double>(n_short);
        }
        rep.long_estimates[i] = s.value() / static_cast<double>(path.x.size());
    });
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (rep.long_estimates[i] > rep.short_estimates[i]) ++rep.exceed_count;
    }
    rep.passed = !seeds.empty() && 10 * rep.exceed_count >= 9 * seeds.size();
    return rep;
}

RemainderDecayReport remainder_decay(const CoeffSequence& seq, const InnovationDist& dist,
                                     const SimConfig& cfg, double p, std::size_t q_max,
                                     const ReplicateOptions& opts) {
    require_moment_order(p);
    if (q_max < 1) throw DomainError("q_max must be >= 1");
    RemainderDecayReport rep;
    rep.p = p;
    SumOptions truncated = opts.sums;
    truncated.truncation = cfg.J;
    truncated.tail = false;
    rep.contraction_truncated = contraction_factor(seq, dist, p, truncated);
    rep.contraction_full = contraction_factor(seq, dist, p, opts.sums);

    SimConfig c = cfg;
    c.chaos_order = q_max + 1;
    // per_rep[r][q] holds |T_{q+1}|^p samples of replicate r, q = 1..q_max
    std::vector<std::vector<std::vector<double>>> per_rep(opts.replicates);
    parallel_for(opts.replicates, opts.threads, [&](std::size_t r) {
        SimConfig cr = c;
        cr.stream = r;
        auto terms = volterra_terms(seq, dist, cr);
        auto& out = per_rep[r];
        out.resize(q_max);
        for (std::size_t q = 1; q <= q_max; ++q) {
            out[q - 1].resize(terms.terms[q + 1].size());
            for (std::size_t i = 0; i < out[q - 1].size(); ++i) {
                out[q - 1][i] = abs_pow(terms.terms[q + 1][i], p);
            }
        }
    });
    for (std::size_t q = 1; q <= q_max; ++q) {
        std::vector<std::vector<double>> parts(opts.replicates);
        for (std::size_t r = 0; r < opts.replicates; ++r) parts[r] = std::move(per_rep[r][q - 1]);
        auto est = batch_mean(concat(parts), opts.batches);
        est.p = p;
        rep.estimates.push_back(est);
    }
    for (std::size_t i = 1; i < rep.estimates.size(); ++i) {
        rep.ratios.push_back(rep.estimates[i].estimate / rep.estimates[i - 1].estimate);
    }
    return rep;
}

}  // namespace archinf
