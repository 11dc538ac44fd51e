#pragma once

#include "archinf/power_series.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace archinf {

enum class CoeffKind { Figarch0d0, FigarchPQ, Geometric, ExplicitList };

std::string_view to_string(CoeffKind kind);

/// Values in [-kNegativityTolerance, 0) are treated as rounding noise and clamped to zero.
inline constexpr double kNegativityTolerance = 1e-12;

/// Default truncation used for IARCH-grade sums of power-law sequences.
inline constexpr std::size_t kDefaultTruncation = 1'000'000;

/// Nonnegative ARCH(inf) coefficients a_1, a_2, ... with a cached prefix and
/// tail-decay metadata. Immutable after construction; the cache is filled once.
class CoeffSequence {
public:
    static CoeffSequence figarch0d0(double d, std::size_t j_max);
    /// Coefficients of 1 - (1-z)^d theta(z)/phi(z). Rejects phi with a root of
    /// modulus <= 1 + 1e-9 and any coefficient below -kNegativityTolerance.
    static CoeffSequence figarch_pq(double d, const PowerSeries& theta, const PowerSeries& phi,
                                    std::size_t j_max);
    /// a_j = scale * ratio^j.
    static CoeffSequence geometric(double scale, double ratio, std::size_t j_max);
    /// Finitely supported sequence: values[0] is a_1, a_j = 0 past the end.
    static CoeffSequence explicit_list(std::vector<double> values);

    [[nodiscard]] CoeffKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t j_max() const noexcept { return cache_.size(); }

    /// a_j for j >= 1. Figarch0d0 and geometric kinds extend past the cache on
    /// demand; figarch_pq throws std::out_of_range there; explicit lists give 0.
    [[nodiscard]] double at(std::size_t j) const;

    /// The first min(J, available) coefficients a_1..a_J. Throws std::out_of_range
    /// when J exceeds the cache of a kind with infinite support.
    [[nodiscard]] std::span<const double> head(std::size_t J) const;

    /// delta with a_j ~ c j^{-delta}; empty for geometric and finite sequences.
    [[nodiscard]] std::optional<double> tail_exponent() const noexcept { return tail_exponent_; }
    /// User-pinned c in a_j ~ c j^{-delta}. Empty means: fit c = a_J J^delta at the truncation point.
    [[nodiscard]] std::optional<double> tail_constant() const noexcept { return tail_constant_; }
    [[nodiscard]] CoeffSequence with_tail_constant(double c) const;

    /// Infimum of p with A_p finite: 1/delta for power-law tails, 0 otherwise.
    [[nodiscard]] double p_min() const noexcept;

    /// True when only finitely many coefficients are nonzero.
    [[nodiscard]] bool finite_support() const noexcept { return kind_ == CoeffKind::ExplicitList; }

    // Construction parameters, for reporting.
    [[nodiscard]] double d() const noexcept { return d_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] double ratio() const noexcept { return ratio_; }
    [[nodiscard]] const PowerSeries& theta() const noexcept { return theta_; }
    [[nodiscard]] const PowerSeries& phi() const noexcept { return phi_; }

private:
    CoeffSequence() = default;

    CoeffKind kind_ = CoeffKind::ExplicitList;
    std::vector<double> cache_;
    std::optional<double> tail_exponent_;
    std::optional<double> tail_constant_;
    double d_ = 0.0;
    double scale_ = 0.0;
    double ratio_ = 0.0;
    PowerSeries theta_;
    PowerSeries phi_;
};

/// pi_1(d), ..., pi_J(d) via pi_1 = d, pi_j = pi_{j-1} (j-1-d)/j.
std::vector<double> figarch_pi(double d, std::size_t J);

/// (1-z)^d truncated to J+1 terms: 1, -pi_1(d), ..., -pi_J(d).
PowerSeries series_fracdiff(double d, std::size_t J);

/// a_1..a_J of 1 - (1-z)^d theta(z)/phi(z); see CoeffSequence::figarch_pq.
CoeffSequence figarch_pq_coeffs(double d, const PowerSeries& theta, const PowerSeries& phi,
                                std::size_t J);

struct SumOptions {
    std::size_t truncation = kDefaultTruncation;
    bool tail = true;
    std::size_t threads = 1;
};

/// A_p = sum_j a_j^p over j <= J, plus the tail estimate when requested. J is capped
/// at the cached horizon of the sequence.
/// Returns +inf when the tail is on and p * delta <= 1.
double a_norm_p(const CoeffSequence& seq, double p, const SumOptions& opts = {});

/// sum_j a_j log a_j with 0 log 0 = 0, plus the tail estimate when requested.
double sum_a_log_a(const CoeffSequence& seq, const SumOptions& opts = {});

/// Tail estimates used above; exposed for reporting and tests.
double power_tail_norm(double c, double delta, double p, std::size_t J);
double power_tail_entropy(double c, double delta, std::size_t J);

/// Writes `j,a_j` rows for j = 1..J with round-trip precision.
void write_coeffs_csv(std::ostream& out, const CoeffSequence& seq, std::size_t J);

}  // namespace archinf
