#pragma once

#include "archinf/coeffs.hpp"
#include "archinf/innovations.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace archinf {

enum class Verdict { ExistsByCs, ExistsByIarchCondition, Inconclusive, RejectedInput };

std::string_view to_string(Verdict v);

struct ExistenceOptions {
    SumOptions sums{};
    /// EXISTS needs min phi below -margin; truncation error must not manufacture existence.
    double margin = 1e-8;
    /// |A_1 - 1| and |mu_1 - 1| allowed for the IARCH normalization.
    double iarch_tol = 1e-4;
    /// Golden-section search runs on [p_min + offset, 1].
    double search_offset = 1e-3;
    double search_tol = 1e-6;
};

struct ExistenceReport {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<double> p_star;
    std::optional<double> phi_at_p_star;
    std::optional<double> iarch_lhs;
    double A1 = 0.0;
    double mu1 = 0.0;
    std::vector<std::string> diagnostics;
};

/// phi(q) = log A_q + log mu_q. Returns +inf for q <= p_min (A_q diverges).
/// Throws DomainError for q outside (0,1].
double phi(const CoeffSequence& seq, const InnovationDist& dist, double q,
           const SumOptions& sums = {});

/// Minimizes the convex phi on (p_min, 1] by golden-section search and issues a verdict.
/// IARCH-normalized inputs additionally get the entropy condition evaluated.
ExistenceReport check_cs(const CoeffSequence& seq, const InnovationDist& dist,
                         const ExistenceOptions& opts = {});

struct IarchConditionResult {
    /// RejectedInput when the IARCH normalization or tail precondition fails.
    Verdict status = Verdict::Inconclusive;
    /// sum a_j log a_j + E[z^2 log z^2]; +inf possible.
    double lhs = 0.0;
    bool positive = false;
    double A1 = 0.0;
    double mu1 = 0.0;
    std::string message;
};

IarchConditionResult check_iarch_condition(const CoeffSequence& seq, const InnovationDist& dist,
                                           const ExistenceOptions& opts = {});

struct DStarOptions {
    std::size_t truncation = kDefaultTruncation;
    double tol = 1e-4;
    std::size_t grid_points = 32;
    /// Upper end of the search; g must be positive here.
    double d_upper = 1.0 - 1e-6;
    std::size_t threads = 1;
};

struct DStarResult {
    double d_star = 0.0;
    /// |d*(J) - d*(2J)|.
    double uncertainty = 0.0;
    double kappa = 0.0;
    /// exp(-kappa): below this the entropy condition cannot hold.
    double lower_bound = 0.0;
    bool monotone_on_grid = true;
    std::vector<std::string> diagnostics;
};

/// g(d) = L(d) + E[z^2 log z^2] for FIGARCH(0,d,0) coefficients.
double figarch_condition_lhs(double d, double kappa, std::size_t truncation, std::size_t threads = 1);

/// Smallest d (to tol) past which g stays positive. d* = 0 when kappa = +inf.
/// Throws PreconditionError when kappa <= 0 and BracketError when g(d_upper) <= 0.
DStarResult find_d_star(const InnovationDist& dist, const DStarOptions& opts = {});

struct KlDiagnostic {
    bool geometric_decay = false;
    bool finite_log_second_moment = false;
};

/// Informational check of the geometric-decay and log-moment conditions from the
/// earlier IARCH existence literature. Never affects a verdict.
KlDiagnostic check_kl_diagnostic(const CoeffSequence& seq, const InnovationDist& dist);

}  // namespace archinf
