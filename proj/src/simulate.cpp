#include "archinf/simulate.hpp"

#include "archinf/errors.hpp"
#include "archinf/io.hpp"
#include "archinf/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

namespace archinf {

namespace {

constexpr std::size_t kCompensatedLagThreshold = 10'000;

double dot(const double* a, const double* b, std::size_t len) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < len; ++i) s += a[i] * b[i];
    return s;
}

double dot_compensated(const double* a, const double* b, std::size_t len) {
    CompensatedSum s;
    for (std::size_t i = 0; i < len; ++i) s.add(a[i] * b[i]);
    return s.value();
}

// Lag window: reversed coefficients so that sum_{j=1}^{L} a_j buf[m-j] is a
// forward dot product over contiguous memory.
class LagKernel {
public:
    LagKernel(const CoeffSequence& seq, std::size_t J) {
        const auto head = seq.head(J);
        rev_.assign(head.rbegin(), head.rend());
        compensated_ = rev_.size() > kCompensatedLagThreshold;
    }

    [[nodiscard]] std::size_t size() const noexcept { return rev_.size(); }

    /// sum_{j=1}^{min(J, m)} a_j buf[m-j]
    [[nodiscard]] double apply(std::span<const double> buf, std::size_t m) const {
        const std::size_t J = rev_.size();
        const std::size_t L = std::min(J, m);
        if (L == 0) return 0.0;
        const double* pa = rev_.data() + (J - L);
        const double* pb = buf.data() + (m - L);
        return compensated_ ? dot_compensated(pa, pb, L) : dot(pa, pb, L);
    }

private:
    std::vector<double> rev_;
    bool compensated_ = false;
};

[[noreturn]] void overflow(std::size_t index, double value, double cap) {
    throw SimulationError("sigma2 = " + format_double(value) + " exceeded the cap " + format_double(cap) +
                              " at step " + std::to_string(index) +
                              "; the parameters are likely non-stationary",
                          index, value);
}

}  // namespace

std::string_view to_string(Engine e) {
    switch (e) {
        case Engine::Recursive: return "recursive";
        case Engine::Volterra: return "volterra";
    }
    return "unknown";
}

void SimConfig::validate() const {
    if (!(a0 > 0.0) || !std::isfinite(a0)) throw DomainError("a0 must be positive and finite");
    if (n < 1) throw DomainError("path length n must be >= 1");
    if (J < 1) throw DomainError("lag truncation J must be >= 1");
    if (chaos_order < 1) throw DomainError("chaos order must be >= 1");
    if (!(overflow_cap > a0)) throw DomainError("overflow cap must exceed a0");
}

Path simulate_recursive(const CoeffSequence& seq, const InnovationDist& dist, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t burn = cfg.effective_burn_in();
    const std::size_t total = burn + cfg.n;
    const LagKernel kernel(seq, cfg.J);
    auto z = sample(dist, total, StreamId{cfg.seed, cfg.stream});

    std::vector<double> x2(total, 0.0);
    Path path;
    path.config = cfg;
    path.engine = Engine::Recursive;
    path.sigma2.resize(cfg.n);
    path.x.resize(cfg.n);
    for (std::size_t m = 0; m < total; ++m) {
        const double s2 = cfg.a0 + kernel.apply(x2, m);
        if (!(s2 <= cfg.overflow_cap)) overflow(m, s2, cfg.overflow_cap);
        const double x = std::sqrt(s2) * z[m];
        x2[m] = x * x;
        if (m >= burn) {
            path.sigma2[m - burn] = s2;
            path.x[m - burn] = x;
        }
    }
    z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(burn));
    path.z = std::move(z);
    return path;
}

namespace {

// Runs the chaos recursion over the full (burn-in included) horizon. `on_term`
// receives each T_k (k >= 1) over the full horizon; returns sum_{k=0}^{q} T_k.
template <class OnTerm>
std::vector<double> chaos_sum(const CoeffSequence& seq, std::span<const double> z, const SimConfig& cfg,
                              OnTerm&& on_term) {
    const std::size_t total = z.size();
    const LagKernel kernel(seq, cfg.J);
    std::vector<double> xi(total);
    for (std::size_t i = 0; i < total; ++i) xi[i] = z[i] * z[i];

    std::vector<double> prev(total, cfg.a0);
    std::vector<double> sum(total, cfg.a0);
    std::vector<double> u(total);
    std::vector<double> cur(total);
    for (std::size_t k = 1; k <= cfg.chaos_order; ++k) {
        for (std::size_t i = 0; i < total; ++i) u[i] = xi[i] * prev[i];
        for (std::size_t m = 0; m < total; ++m) {
            cur[m] = kernel.apply(u, m);
            sum[m] += cur[m];
            if (!(sum[m] <= cfg.overflow_cap)) overflow(m, sum[m], cfg.overflow_cap);
        }
        on_term(k, std::as_const(cur));
        std::swap(prev, cur);
    }
    return sum;
}

}  // namespace

ChaosTerms volterra_terms(const CoeffSequence& seq, const InnovationDist& dist, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t burn = cfg.effective_burn_in();
    const std::size_t total = burn + cfg.n;
    auto z = sample(dist, total, StreamId{cfg.seed, cfg.stream});

    ChaosTerms out;
    out.terms.reserve(cfg.chaos_order + 1);
    out.terms.emplace_back(cfg.n, cfg.a0);
    chaos_sum(seq, z, cfg, [&](std::size_t, const std::vector<double>& t) {
        out.terms.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(burn), t.end());
    });
    out.z.assign(z.begin() + static_cast<std::ptrdiff_t>(burn), z.end());
    return out;
}

Path simulate_volterra(const CoeffSequence& seq, const InnovationDist& dist, const SimConfig& cfg) {
    cfg.validate();
    const std::size_t burn = cfg.effective_burn_in();
    const std::size_t total = burn + cfg.n;
    auto z = sample(dist, total, StreamId{cfg.seed, cfg.stream});
    const auto sum = chaos_sum(seq, z, cfg, [](std::size_t, const std::vector<double>&) {});

    Path path;
    path.config = cfg;
    path.engine = Engine::Volterra;
    path.sigma2.assign(sum.begin() + static_cast<std::ptrdiff_t>(burn), sum.end());
    path.z.assign(z.begin() + static_cast<std::ptrdiff_t>(burn), z.end());
    path.x.resize(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i) path.x[i] = std::sqrt(path.sigma2[i]) * path.z[i];
    return path;
}

double remainder_bound(double contraction, std::size_t q, double moment2p) {
    if (!(contraction < 1.0)) {
        throw BoundUndefinedError("remainder bound needs A_p mu_p < 1, got " + format_double(contraction),
                                  contraction);
    }
    return std::pow(contraction, static_cast<double>(q)) * moment2p;
}

double contraction_factor(const CoeffSequence& seq, const InnovationDist& dist, double p,
                          const SumOptions& sums) {
    const double A = a_norm_p(seq, p, sums);
    if (!std::isfinite(A)) return kInfinity;
    return A * mu_p(dist, p);
}

double remainder_bound(const CoeffSequence& seq, const InnovationDist& dist, double p, std::size_t q,
                       std::optional<double> moment2p, double a0, const SumOptions& sums) {
    const double c = contraction_factor(seq, dist, p, sums);
    if (!(c < 1.0)) {
        throw BoundUndefinedError("remainder bound needs A_p mu_p < 1, got " + format_double(c), c);
    }
    const double m = moment2p.value_or(mu_p(dist, p) * std::pow(a0, p) / (1.0 - c));
    return remainder_bound(c, q, m);
}

}  // namespace archinf
