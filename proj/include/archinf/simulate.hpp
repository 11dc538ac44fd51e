#pragma once

#include "archinf/coeffs.hpp"
#include "archinf/innovations.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace archinf {

enum class Engine { Recursive, Volterra };

std::string_view to_string(Engine e);

struct SimConfig {
    std::size_t n = 1000;
    /// Leading values discarded; unset means 10 * J.
    std::optional<std::size_t> burn_in;
    /// Lag truncation.
    std::size_t J = 1000;
    double a0 = 1.0;
    std::uint64_t seed = 0;
    /// Innovation stream id; replicates use distinct streams under one seed.
    std::uint64_t stream = 0;
    /// Highest chaos order kept by the Volterra engine.
    std::size_t chaos_order = 1;
    double overflow_cap = 1e300;

    [[nodiscard]] std::size_t effective_burn_in() const noexcept { return burn_in.value_or(10 * J); }
    /// Throws DomainError unless a0 > 0, n >= 1, J >= 1 and chaos_order >= 1.
    void validate() const;
};

struct Path {
    std::vector<double> sigma2;
    std::vector<double> x;
    /// Innovations paired with sigma2 and x: x[k] = sqrt(sigma2[k]) * z[k].
    std::vector<double> z;
    SimConfig config;
    Engine engine = Engine::Recursive;
};

/// sigma2_m = a0 + sum_{j=1}^{min(J, m)} a_j X_{m-j}^2 with X = 0 before the start,
/// X_m = sigma_m z_m, then the first burn_in values are dropped.
/// Throws SimulationError when sigma2 exceeds cfg.overflow_cap.
Path simulate_recursive(const CoeffSequence& seq, const InnovationDist& dist, const SimConfig& cfg);

/// Chaos terms T_0 = a0, T_k(m) = sum_{j=1}^{min(J, m)} a_j xi_{m-j} T_{k-1}(m-j) with
/// xi = z^2, after burn-in. terms[k][i] is T_k at kept index i.
struct ChaosTerms {
    std::vector<std::vector<double>> terms;
    std::vector<double> z;
};

ChaosTerms volterra_terms(const CoeffSequence& seq, const InnovationDist& dist, const SimConfig& cfg);

/// sigma2 = sum_{k=0}^{chaos_order} T_k, the explicit chaotic-expansion solution truncated
/// to lags <= J and order <= chaos_order. Same innovation stream as simulate_recursive.
Path simulate_volterra(const CoeffSequence& seq, const InnovationDist& dist, const SimConfig& cfg);

/// (contraction)^q * moment2p, for contraction = A_p mu_p < 1.
double remainder_bound(double contraction, std::size_t q, double moment2p);

/// Bound on E[R_{n,q}^p] for the given model. When moment2p is unset the bound on
/// E|X|^{2p} = mu_p a0^p / (1 - A_p mu_p) is used. Throws BoundUndefinedError when
/// A_p mu_p >= 1.
double remainder_bound(const CoeffSequence& seq, const InnovationDist& dist, double p, std::size_t q,
                       std::optional<double> moment2p = std::nullopt, double a0 = 1.0,
                       const SumOptions& sums = {});

/// A_p mu_p for the model; +inf when A_p diverges.
double contraction_factor(const CoeffSequence& seq, const InnovationDist& dist, double p,
                          const SumOptions& sums = {});

}  // namespace archinf
