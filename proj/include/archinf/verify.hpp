#pragma once

#include "archinf/coeffs.hpp"
#include "archinf/innovations.hpp"
#include "archinf/simulate.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace archinf {

/// Every stochastic check accepts estimates up to this many standard errors above the bound.
inline constexpr double kStdErrorMargin = 4.0;
inline constexpr std::size_t kMinBatches = 30;

struct MomentEstimate {
    double p = 1.0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
    std::size_t n_batches = 0;
    std::optional<double> bound;
    /// estimate <= bound + 4 std_error; set only together with bound.
    std::optional<bool> passed;

    void set_bound(double b);
};

/// Mean of `values` with a batch-means standard error over `batches` contiguous
/// batches. Throws InsufficientSamplesError when batches < 30 or values.size() < batches.
MomentEstimate batch_mean(std::span<const double> values, std::size_t batches = kMinBatches);

/// E|X|^{2p} from post-burn-in samples of every path, concatenated in path order.
MomentEstimate estimate_fractional_moment(std::span<const Path> paths, double p,
                                          std::size_t batches = kMinBatches);
/// E[(sigma^2)^p], same conventions.
MomentEstimate estimate_sigma_moment(std::span<const Path> paths, double p,
                                     std::size_t batches = kMinBatches);

struct ReplicateOptions {
    std::size_t replicates = 1;
    std::size_t batches = kMinBatches;
    std::size_t threads = 1;
    SumOptions sums{};
};

struct MomentBoundReport {
    double p = 1.0;
    double contraction = 0.0;  // A_p mu_p
    MomentEstimate sigma;      // E[(sigma^2)^p] vs a0^p / (1 - A_p mu_p)
    MomentEstimate x;          // E|X|^{2p} vs mu_p a0^p / (1 - A_p mu_p)
    std::size_t replicates = 0;
    [[nodiscard]] bool passed() const { return sigma.passed.value_or(false) && x.passed.value_or(false); }
};

/// Simulates replicates (stream id = replicate index) with the recursive engine and
/// compares moment estimates with their theoretical bounds. Throws
/// BoundUndefinedError when A_p mu_p >= 1.
MomentBoundReport check_moment_bounds(const CoeffSequence& seq, const InnovationDist& dist,
                                      const SimConfig& cfg, double p, const ReplicateOptions& opts = {});

inline constexpr double kEquivalenceTolerance = 1e-9;

struct EquivalenceReport {
    std::size_t window = 0;
    std::size_t chaos_order = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> max_rel_discrepancy;  // per seed
    double overall = 0.0;
    bool passed = false;
};

/// Runs both engines on the same zero-pre-sample window and innovation stream.
/// chaos_order defaults to the window length, which makes the expansion exact.
EquivalenceReport check_engine_equivalence(const CoeffSequence& seq, const InnovationDist& dist,
                                           std::size_t window, std::span<const std::uint64_t> seeds,
                                           std::optional<std::size_t> chaos_order = std::nullopt,
                                           double a0 = 1.0);

struct DivergenceReport {
    double p = 1.0;
    std::size_t n_short = 0;
    std::size_t n_long = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<double> short_estimates;
    std::vector<double> long_estimates;
    std::size_t exceed_count = 0;
    /// At least 90% of seeds show growth.
    bool passed = false;
};

/// Growth of the sample mean of |X|^{2p} between the first n_short and all cfg.n
/// post-burn-in samples. Growth is evidence of an infinite moment, not proof.
DivergenceReport divergence_evidence(const CoeffSequence& seq, const InnovationDist& dist,
                                     const SimConfig& cfg, std::size_t n_short,
                                     std::span<const std::uint64_t> seeds, double p = 1.0,
                                     std::size_t threads = 1);

struct RemainderDecayReport {
    double p = 1.0;
    /// estimates[i] is E[|sigma2_{q+1} - sigma2_q|^p] = E[T_{q+1}^p] for q = i + 1.
    std::vector<MomentEstimate> estimates;
    std::vector<double> ratios;
    /// A_p mu_p of the coefficients actually simulated (truncated at J).
    double contraction_truncated = 0.0;
    /// A_p mu_p of the full sequence (tail corrected); may be +inf.
    double contraction_full = 0.0;
};

/// MC estimates of the successive chaos increments for q = 1..q_max; the
/// Volterra engine runs with chaos_order = q_max + 1 over the given replicates.
RemainderDecayReport remainder_decay(const CoeffSequence& seq, const InnovationDist& dist,
                                     const SimConfig& cfg, double p, std::size_t q_max,
                                     const ReplicateOptions& opts = {});

}  // namespace archinf
