#include "archinf/existence.hpp"

#include "archinf/errors.hpp"
#include "archinf/io.hpp"
#include "archinf/numeric.hpp"

#include <cmath>

namespace archinf {

namespace {

constexpr double kInvGolden = 0.61803398874989484820;  // (sqrt(5) - 1) / 2

struct Minimum {
    double x;
    double fx;
};

template <class F>
Minimum golden_section(F&& f, double lo, double hi, double tol) {
    double a = lo;
    double b = hi;
    double c = b - kInvGolden * (b - a);
    double d = a + kInvGolden * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvGolden * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

}  // namespace

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::ExistsByCs: return "EXISTS_BY_CS";
        case Verdict::ExistsByIarchCondition: return "EXISTS_BY_IARCH_CONDITION";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
        case Verdict::RejectedInput: return "REJECTED_INPUT";
    }
    return "UNKNOWN";
}

double phi(const CoeffSequence& seq, const InnovationDist& dist, double q, const SumOptions& sums) {
    if (!(q > 0.0 && q <= 1.0)) throw DomainError("phi: q must lie in (0,1], got " + format_double(q));
    if (q <= seq.p_min()) return kInfinity;
    const double A = a_norm_p(seq, q, sums);
    if (!std::isfinite(A)) return kInfinity;
    const double m = mu_p(dist, q);
    if (!std::isfinite(m)) return kInfinity;
    return std::log(A) + std::log(m);
}

IarchConditionResult check_iarch_condition(const CoeffSequence& seq, const InnovationDist& dist,
                                           const ExistenceOptions& opts) {
    IarchConditionResult r;
    r.A1 = a_norm_p(seq, 1.0, opts.sums);
    r.mu1 = mu_p(dist, 1.0);
    if (!(std::abs(r.A1 - 1.0) <= opts.iarch_tol)) {
        r.status = Verdict::RejectedInput;
        r.message = "IARCH normalization fails: A_1 = " + format_double(r.A1);
        return r;
    }
    if (!(std::abs(r.mu1 - 1.0) <= opts.iarch_tol)) {
        r.status = Verdict::RejectedInput;
        r.message = "IARCH normalization fails: mu_1 = " + format_double(r.mu1);
        return r;
    }
    if (seq.p_min() >= 1.0) {
        r.status = Verdict::RejectedInput;
        r.message = "no p < 1 with A_p finite: tail exponent " +
                    format_double(seq.tail_exponent().value_or(0.0)) + " <= 1";
        return r;
    }
    const double kappa = z2_log_z2(dist);
    r.lhs = std::isinf(kappa) ? kappa : sum_a_log_a(seq, opts.sums) + kappa;
    r.positive = r.lhs > 0.0;
    r.status = r.positive ? Verdict::ExistsByIarchCondition : Verdict::Inconclusive;
    r.message = r.positive ? "entropy condition holds" : "entropy condition fails";
    return r;
}

ExistenceReport check_cs(const CoeffSequence& seq, const InnovationDist& dist,
                         const ExistenceOptions& opts) {
    ExistenceReport rep;
    const auto head = seq.head(std::min(opts.sums.truncation, seq.j_max()));
    for (std::size_t j = 0; j < head.size(); ++j) {
        if (head[j] < 0.0) {
            rep.verdict = Verdict::RejectedInput;
            rep.diagnostics.push_back("a_" + std::to_string(j + 1) + " is negative");
            return rep;
        }
    }

    rep.A1 = a_norm_p(seq, 1.0, opts.sums);
    rep.mu1 = mu_p(dist, 1.0);

    auto f = [&](double q) { return phi(seq, dist, q, opts.sums); };
    const double lo = seq.p_min() + opts.search_offset;
    Minimum best{1.0, f(1.0)};
    if (lo < 1.0) {
        const auto m = golden_section(f, lo, 1.0, opts.search_tol);
        if (m.fx < best.fx) best = m;
    } else {
        rep.diagnostics.push_back("admissible range (p_min, 1] is empty: p_min = " +
                                  format_double(seq.p_min()));
    }
    if (std::isfinite(best.fx) || best.fx < 0) {
        rep.p_star = best.x;
        rep.phi_at_p_star = best.fx;
    }

    const bool iarch = std::abs(rep.A1 - 1.0) <= opts.iarch_tol && std::abs(rep.mu1 - 1.0) <= opts.iarch_tol;
    bool iarch_positive = false;
    if (iarch) {
        const auto cond = check_iarch_condition(seq, dist, opts);
        if (cond.status != Verdict::RejectedInput) {
            rep.iarch_lhs = cond.lhs;
            iarch_positive = cond.positive;
        }
        rep.diagnostics.push_back("IARCH normalization holds (A_1 = " + format_double(rep.A1) +
                                  ", mu_1 = " + format_double(rep.mu1) +
                                  "); any stationary solution has E[X^2] = inf");
        if (cond.status == Verdict::RejectedInput) rep.diagnostics.push_back(cond.message);
    }

    const bool cs_holds = rep.phi_at_p_star && *rep.phi_at_p_star < -opts.margin;
    if (iarch_positive) {
        rep.verdict = Verdict::ExistsByIarchCondition;
    } else if (cs_holds) {
        rep.verdict = Verdict::ExistsByCs;
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.diagnostics.push_back(
            "sufficient conditions not met; this does not show that no stationary solution exists");
    }
    if (iarch && rep.iarch_lhs && (cs_holds != iarch_positive)) {
        rep.diagnostics.push_back("min phi and the entropy condition disagree near the threshold "
                                  "(truncation-limited)");
    }

    const auto kl = check_kl_diagnostic(seq, dist);
    rep.diagnostics.push_back(std::string("geometric coefficient decay: ") +
                              (kl.geometric_decay ? "yes" : "no"));
    rep.diagnostics.push_back(std::string("E|log z|^2 finite: ") +
                              (kl.finite_log_second_moment ? "yes" : "no"));
    return rep;
}

double figarch_condition_lhs(double d, double kappa, std::size_t truncation, std::size_t threads) {
    const auto seq = CoeffSequence::figarch0d0(d, truncation);
    return sum_a_log_a(seq, SumOptions{truncation, true, threads}) + kappa;
}

namespace {

// Bisection for the sign change of g in [lo, hi] with g(lo) <= 0 < g(hi). Returns hi.
template <class G>
double bisect(G&& g, double lo, double hi, double tol) {
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

DStarResult find_d_star(const InnovationDist& dist, const DStarOptions& opts) {
    DStarResult res;
    res.kappa = z2_log_z2(dist);
    if (std::isinf(res.kappa) && res.kappa > 0) {
        res.d_star = 0.0;
        res.lower_bound = 0.0;
        res.diagnostics.push_back("E[z^2 log z^2] = inf: the entropy condition holds for every d");
        return res;
    }
    if (!(res.kappa > 1e-12)) {
        throw PreconditionError("find_d_star needs E[z^2 log z^2] > 0 (P{|z|=1} < 1); got " +
                                format_double(res.kappa));
    }
    res.lower_bound = std::exp(-res.kappa);
    const double upper = opts.d_upper;
    if (!(res.lower_bound < upper)) {
        throw BracketError("lower bound exp(-kappa) = " + format_double(res.lower_bound) +
                           " is not below the upper search limit");
    }

    auto g = [&](double d, std::size_t J) { return figarch_condition_lhs(d, res.kappa, J, 1); };

    const std::size_t n = std::max<std::size_t>(opts.grid_points, 3);
    std::vector<double> grid(n);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = res.lower_bound + (upper - res.lower_bound) * static_cast<double>(i) /
                                        static_cast<double>(n - 1);
    }
    parallel_for(n, opts.threads, [&](std::size_t i) { values[i] = g(grid[i], opts.truncation); });

    if (!(values.back() > 0.0)) {
        throw BracketError("g(" + format_double(upper) + ") = " + format_double(values.back()) +
                           " is not positive");
    }
    std::size_t changes = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if ((values[i - 1] > 0.0) != (values[i] > 0.0)) ++changes;
    }
    if (changes > 1) {
        res.monotone_on_grid = false;
        res.diagnostics.push_back("g changes sign " + std::to_string(changes) +
                                  " times on the grid; reporting the last threshold");
    }
    std::size_t last_nonpos = n;
    for (std::size_t i = n - 1; i-- > 0;) {
        if (!(values[i] > 0.0)) {
            last_nonpos = i;
            break;
        }
    }
    if (last_nonpos == n) {
        res.monotone_on_grid = false;
        res.diagnostics.push_back("g is positive at exp(-kappa), contradicting L(d) <= log d; "
                                  "check truncation");
        res.d_star = res.lower_bound;
        return res;
    }

    const double lo = grid[last_nonpos];
    const double hi = grid[last_nonpos + 1];
    res.d_star = bisect([&](double d) { return g(d, opts.truncation); }, lo, hi, opts.tol);

    const std::size_t J2 = 2 * opts.truncation;
    auto g2 = [&](double d) { return g(d, J2); };
    double lo2 = lo;
    double hi2 = hi;
    if (g2(lo2) > 0.0 || !(g2(hi2) > 0.0)) {
        lo2 = res.lower_bound;
        hi2 = upper;
    }
    const double d2 = bisect(g2, lo2, hi2, opts.tol);
    res.uncertainty = std::abs(res.d_star - d2);
    res.diagnostics.push_back("d* is a sufficient threshold; existence for d <= d* is not decided");
    return res;
}

KlDiagnostic check_kl_diagnostic(const CoeffSequence& seq, const InnovationDist& dist) {
    KlDiagnostic kl;
    switch (seq.kind()) {
        case CoeffKind::Geometric:
        case CoeffKind::ExplicitList: kl.geometric_decay = true; break;
        case CoeffKind::Figarch0d0:
        case CoeffKind::FigarchPQ: kl.geometric_decay = false; break;
    }
    kl.finite_log_second_moment = dist.finite_log_second_moment();
    return kl;
}

}  // namespace archinf
