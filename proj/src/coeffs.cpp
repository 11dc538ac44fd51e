#include "archinf/coeffs.hpp"

#include "archinf/errors.hpp"
#include "archinf/io.hpp"
#include "archinf/numeric.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace archinf {

namespace {

void require_fractional_d(double d) {
    if (!(d > 0.0 && d < 1.0)) {
        throw DomainError("fractional order d must lie in (0,1), got " + format_double(d));
    }
}

void require_positive_length(std::size_t J, const char* what) {
    if (J < 1) throw DomainError(std::string(what) + ": truncation J must be >= 1");
}

// Clamps rounding noise to zero and rejects genuine negatives. `offset` is the
// 1-based index of values[0].
void enforce_nonnegative(std::vector<double>& values, std::size_t offset) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        double& a = values[i];
        if (!std::isfinite(a)) {
            throw NegativityError("coefficient a_" + std::to_string(i + offset) + " is not finite",
                                  i + offset, a);
        }
        if (a < -kNegativityTolerance) {
            throw NegativityError("coefficient a_" + std::to_string(i + offset) + " = " +
                                      format_double(a) + " is negative",
                                  i + offset, a);
        }
        if (a < 0.0) a = 0.0;
    }
}

}  // namespace

std::string_view to_string(CoeffKind kind) {
    switch (kind) {
        case CoeffKind::Figarch0d0: return "figarch0d0";
        case CoeffKind::FigarchPQ: return "figarchpq";
        case CoeffKind::Geometric: return "geometric";
        case CoeffKind::ExplicitList: return "explicit";
    }
    return "unknown";
}

std::vector<double> figarch_pi(double d, std::size_t J) {
    require_fractional_d(d);
    require_positive_length(J, "figarch_pi");
    std::vector<double> pi(J);
    pi[0] = d;
    for (std::size_t j = 2; j <= J; ++j) {
        const double jd = static_cast<double>(j);
        pi[j - 1] = pi[j - 2] * ((jd - 1.0 - d) / jd);
    }
    return pi;
}

PowerSeries series_fracdiff(double d, std::size_t J) {
    const auto pi = figarch_pi(d, std::max<std::size_t>(J, 1));
    std::vector<double> c(J + 1);
    c[0] = 1.0;
    for (std::size_t j = 1; j <= J; ++j) c[j] = -pi[j - 1];
    return PowerSeries(std::move(c));
}

CoeffSequence CoeffSequence::figarch0d0(double d, std::size_t j_max) {
    CoeffSequence s;
    s.kind_ = CoeffKind::Figarch0d0;
    s.cache_ = figarch_pi(d, j_max);
    s.tail_exponent_ = d + 1.0;
    s.d_ = d;
    return s;
}

CoeffSequence CoeffSequence::figarch_pq(double d, const PowerSeries& theta, const PowerSeries& phi,
                                        std::size_t j_max) {
    require_fractional_d(d);
    require_positive_length(j_max, "figarch_pq_coeffs");
    if (theta.empty() || theta[0] != 1.0) throw DomainError("theta(0) must equal 1");
    if (phi.empty() || phi[0] != 1.0) throw DomainError("phi(0) must equal 1");
    const double rmin = min_root_modulus(phi);
    if (rmin <= 1.0 + 1e-9) {
        throw RootLocationError("phi has a root of modulus " + format_double(rmin) +
                                    " inside the closed unit disk",
                                rmin);
    }
    const std::size_t len = j_max + 1;
    const PowerSeries ratio = series_fracdiff(d, j_max).multiply(theta, len).divide(phi, len);
    std::vector<double> a(j_max);
    for (std::size_t j = 1; j <= j_max; ++j) a[j - 1] = -ratio[j];
    enforce_nonnegative(a, 1);

    CoeffSequence s;
    s.kind_ = CoeffKind::FigarchPQ;
    s.cache_ = std::move(a);
    s.tail_exponent_ = d + 1.0;
    s.d_ = d;
    s.theta_ = theta;
    s.phi_ = phi;
    return s;
}

CoeffSequence CoeffSequence::geometric(double scale, double ratio, std::size_t j_max) {
    if (!(scale >= 0.0) || !std::isfinite(scale)) {
        throw DomainError("geometric scale must be finite and >= 0");
    }
    if (!(ratio >= 0.0 && ratio < 1.0)) throw DomainError("geometric ratio must lie in [0,1)");
    require_positive_length(j_max, "geometric");
    CoeffSequence s;
    s.kind_ = CoeffKind::Geometric;
    s.scale_ = scale;
    s.ratio_ = ratio;
    s.cache_.resize(j_max);
    double rj = 1.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
        rj *= ratio;
        s.cache_[j - 1] = scale * rj;
    }
    return s;
}

CoeffSequence CoeffSequence::explicit_list(std::vector<double> values) {
    enforce_nonnegative(values, 1);
    CoeffSequence s;
    s.kind_ = CoeffKind::ExplicitList;
    s.cache_ = std::move(values);
    return s;
}

CoeffSequence CoeffSequence::with_tail_constant(double c) const {
    if (!tail_exponent_) throw PreconditionError("sequence has no power-law tail to pin");
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("tail constant must be positive");
    auto s = *this;
    s.tail_constant_ = c;
    return s;
}

double CoeffSequence::at(std::size_t j) const {
    if (j == 0) throw std::out_of_range("coefficients are indexed from j = 1");
    if (j <= cache_.size()) return cache_[j - 1];
    switch (kind_) {
        case CoeffKind::ExplicitList: return 0.0;
        case CoeffKind::Geometric: return scale_ * std::pow(ratio_, static_cast<double>(j));
        case CoeffKind::Figarch0d0: {
            double v = cache_.back();
            for (std::size_t k = cache_.size() + 1; k <= j; ++k) {
                const double kd = static_cast<double>(k);
                v *= (kd - 1.0 - d_) / kd;
            }
            return v;
        }
        case CoeffKind::FigarchPQ: break;
    }
    throw std::out_of_range("a_" + std::to_string(j) + " is beyond the cached horizon " +
                            std::to_string(cache_.size()));
}

std::span<const double> CoeffSequence::head(std::size_t J) const {
    if (J <= cache_.size()) return std::span<const double>(cache_).first(J);
    if (kind_ == CoeffKind::ExplicitList) return cache_;
    throw std::out_of_range("truncation " + std::to_string(J) + " exceeds the cached horizon " +
                            std::to_string(cache_.size()) + " of a " +
                            std::string(to_string(kind_)) + " sequence");
}

double CoeffSequence::p_min() const noexcept {
    return tail_exponent_ ? 1.0 / *tail_exponent_ : 0.0;
}

CoeffSequence figarch_pq_coeffs(double d, const PowerSeries& theta, const PowerSeries& phi,
                                std::size_t J) {
    return CoeffSequence::figarch_pq(d, theta, phi, J);
}

double power_tail_norm(double c, double delta, double p, std::size_t J) {
    const double e = p * delta;
    if (e <= 1.0) return kInfinity;
    if (c <= 0.0) return 0.0;
    return std::pow(c, p) * std::pow(static_cast<double>(J), 1.0 - e) / (e - 1.0);
}

double power_tail_entropy(double c, double delta, std::size_t J) {
    if (delta <= 1.0) return -kInfinity;
    if (c <= 0.0) return 0.0;
    const double Jd = static_cast<double>(J);
    const double g = delta - 1.0;
    const double base = std::pow(Jd, -g);
    return c * std::log(c) * base / g - c * delta * base * (std::log(Jd) / g + 1.0 / (g * g));
}

namespace {

double fitted_constant(const CoeffSequence& seq, std::span<const double> head) {
    if (seq.tail_constant()) return *seq.tail_constant();
    const double J = static_cast<double>(head.size());
    return head.back() * std::pow(J, *seq.tail_exponent());
}

}  // namespace

double a_norm_p(const CoeffSequence& seq, double p, const SumOptions& opts) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("a_norm_p: p must lie in (0,1]");
    require_positive_length(opts.truncation, "a_norm_p");
    const auto head = seq.head(std::min(opts.truncation, seq.j_max()));
    const double partial =
        chunked_sum(head, [p](double a, std::size_t) { return a > 0.0 ? std::pow(a, p) : 0.0; },
                    opts.threads);
    if (!opts.tail) return partial;

    switch (seq.kind()) {
        case CoeffKind::ExplicitList: {
            const auto rest = seq.head(seq.j_max()).subspan(head.size());
            return partial + chunked_sum(rest, [p](double a, std::size_t) {
                       return a > 0.0 ? std::pow(a, p) : 0.0;
                   });
        }
        case CoeffKind::Geometric: {
            const double rp = std::pow(seq.ratio(), p);
            const auto J = static_cast<double>(head.size());
            return partial + std::pow(seq.scale(), p) * std::pow(rp, J + 1.0) / (1.0 - rp);
        }
        case CoeffKind::Figarch0d0:
        case CoeffKind::FigarchPQ: {
            const double delta = *seq.tail_exponent();
            if (p * delta <= 1.0) return kInfinity;
            return partial + power_tail_norm(fitted_constant(seq, head), delta, p, head.size());
        }
    }
    return partial;
}

double sum_a_log_a(const CoeffSequence& seq, const SumOptions& opts) {
    require_positive_length(opts.truncation, "sum_a_log_a");
    const auto head = seq.head(std::min(opts.truncation, seq.j_max()));
    const double partial = chunked_sum(
        head, [](double a, std::size_t) { return a > 0.0 ? a * std::log(a) : 0.0; }, opts.threads);
    if (!opts.tail) return partial;

    switch (seq.kind()) {
        case CoeffKind::ExplicitList: {
            const auto rest = seq.head(seq.j_max()).subspan(head.size());
            return partial + chunked_sum(rest, [](double a, std::size_t) {
                       return a > 0.0 ? a * std::log(a) : 0.0;
                   });
        }
        case CoeffKind::Geometric: {
            const double c = seq.scale();
            const double r = seq.ratio();
            if (c == 0.0 || r == 0.0) return partial;
            const auto J = static_cast<double>(head.size());
            const double rJ1 = std::pow(r, J + 1.0);
            const double sum_r = rJ1 / (1.0 - r);
            const double sum_jr = rJ1 * ((J + 1.0) - J * r) / ((1.0 - r) * (1.0 - r));
            return partial + c * std::log(c) * sum_r + c * std::log(r) * sum_jr;
        }
        case CoeffKind::Figarch0d0:
        case CoeffKind::FigarchPQ:
            return partial +
                   power_tail_entropy(fitted_constant(seq, head), *seq.tail_exponent(), head.size());
    }
    return partial;
}

void write_coeffs_csv(std::ostream& out, const CoeffSequence& seq, std::size_t J) {
    out << "j,a_j\n";
    const auto head = seq.head(J);
    for (std::size_t j = 1; j <= head.size(); ++j) {
        out << j << ',' << format_double(head[j - 1]) << '\n';
    }
}

}  // namespace archinf
