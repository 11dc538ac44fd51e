#include "archinf/innovations.hpp"

#include "archinf/errors.hpp"
#include "archinf/io.hpp"
#include "archinf/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace archinf {

namespace {

constexpr double kQuadratureTolerance = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(StreamId id) {
    const std::uint64_t a = splitmix64(id.seed);
    const std::uint64_t b = splitmix64(id.stream ^ 0x5851f42d4c957f2dULL);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double parse_number(const std::string& text, const std::string& spec) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size() || text.empty()) {
        throw DomainError("malformed number '" + text + "' in distribution spec '" + spec + "'");
    }
    return v;
}

// E[X^p] / e for the logtail base variable, minus the atom at e:
// p * int_1^inf exp((p-1) u) / u^2 du.
double log_tail_integral(double p) {
    using boost::math::quadrature::gauss_kronrod;
    const double a = 1.0 - p;
    auto f = [a](double u) { return std::exp(-a * u) / (u * u); };
    double err = 0.0;
    const double v = gauss_kronrod<double, 61>::integrate(f, 1.0, std::numeric_limits<double>::infinity(),
                                                          15, kQuadratureTolerance, &err);
    if (!std::isfinite(v) || err > kQuadratureTolerance * std::max(1.0, std::abs(v))) {
        throw QuadratureError("logtail moment quadrature did not converge at p=" + format_double(p) +
                                  " (error estimate " + format_double(err) + ")",
                              v, err);
    }
    return p * v;
}

double mu_p_uncached(const InnovationDist& dist, double p) {
    constexpr double log_sqrt_pi = 0.57236494292470008707;  // log(sqrt(pi))
    switch (dist.kind()) {
        case DistKind::Gaussian:
            return std::exp(p * std::numbers::ln2 + std::lgamma(p + 0.5) - log_sqrt_pi);
        case DistKind::StudentT: {
            const double nu = dist.nu();
            return std::exp(p * std::log(nu - 2.0) + std::lgamma(p + 0.5) + std::lgamma(nu / 2.0 - p) -
                            log_sqrt_pi - std::lgamma(nu / 2.0));
        }
        case DistKind::Rademacher: return 1.0;
        case DistKind::TwoPoint: {
            auto pw = [p](double v) { return v > 0.0 ? std::pow(v, p) : 0.0; };
            return dist.w() * pw(dist.v1()) + (1.0 - dist.w()) * pw(dist.v2());
        }
        case DistKind::Empirical: {
            CompensatedSum acc;
            for (double z : dist.values()) acc.add(z != 0.0 ? std::pow(z * z, p) : 0.0);
            return acc.value() / static_cast<double>(dist.values().size());
        }
        case DistKind::LogTail: {
            const double e = std::numbers::e;
            return std::pow(2.0 * e, -p) * (std::pow(e, p) + e * log_tail_integral(p));
        }
    }
    return kInfinity;
}

// Inverse survival function of the logtail base variable, returned as log X.
double log_tail_quantile_log(double survival) {
    // Solve u + 2 log u = 1 - log(survival) for u >= 1; the left side is increasing.
    const double rhs = 1.0 - std::log(survival);
    double u = std::max(1.0, rhs);
    for (int it = 0; it < 100; ++it) {
        const double h = u + 2.0 * std::log(u) - rhs;
        const double step = h / (1.0 + 2.0 / u);
        u = std::max(1.0, u - step);
        if (std::abs(step) <= 1e-15 * u) break;
    }
    return u;
}

}  // namespace

InnovationDist InnovationDist::gaussian() {
    InnovationDist d;
    d.kind_ = DistKind::Gaussian;
    return d;
}

InnovationDist InnovationDist::student_t(double nu) {
    if (!(nu > 2.0) || !std::isfinite(nu)) {
        throw DomainError("student-t innovations need nu > 2 for unit variance, got " +
                          format_double(nu));
    }
    InnovationDist d;
    d.kind_ = DistKind::StudentT;
    d.nu_ = nu;
    return d;
}

InnovationDist InnovationDist::rademacher() {
    InnovationDist d;
    d.kind_ = DistKind::Rademacher;
    return d;
}

InnovationDist InnovationDist::two_point(double v1, double v2, double w) {
    if (!(v1 >= 0.0 && v2 >= 0.0) || !std::isfinite(v1) || !std::isfinite(v2)) {
        throw DomainError("twopoint values of z^2 must be finite and >= 0");
    }
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("twopoint weight must lie in [0,1]");
    if (std::abs(w * v1 + (1.0 - w) * v2 - 1.0) > 1e-9) {
        throw DomainError("twopoint law must satisfy w*v1 + (1-w)*v2 = 1");
    }
    InnovationDist d;
    d.kind_ = DistKind::TwoPoint;
    d.v1_ = v1;
    d.v2_ = v2;
    d.w_ = w;
    return d;
}

InnovationDist InnovationDist::log_tail() {
    InnovationDist d;
    d.kind_ = DistKind::LogTail;
    return d;
}

InnovationDist InnovationDist::empirical(std::vector<double> values) {
    if (values.empty()) throw DomainError("empirical innovation law needs at least one value");
    for (double v : values) {
        if (!std::isfinite(v)) throw DomainError("empirical innovation values must be finite");
    }
    InnovationDist d;
    d.kind_ = DistKind::Empirical;
    d.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return d;
}

InnovationDist InnovationDist::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto no_args = [&] {
        if (colon != std::string::npos) throw DomainError("'" + name + "' takes no parameters");
    };
    if (name == "gaussian") {
        no_args();
        return gaussian();
    }
    if (name == "rademacher") {
        no_args();
        return rademacher();
    }
    if (name == "logtail") {
        no_args();
        return log_tail();
    }
    if (name == "student") {
        if (args.empty()) throw DomainError("student needs degrees of freedom: student:NU");
        return student_t(parse_number(args, spec));
    }
    if (name == "twopoint") {
        std::vector<double> parts;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) parts.push_back(parse_number(item, spec));
        if (parts.size() != 3) throw DomainError("twopoint expects twopoint:V1,V2,W");
        return two_point(parts[0], parts[1], parts[2]);
    }
    throw DomainError("unknown distribution '" + spec +
                      "' (expected gaussian | student:NU | rademacher | twopoint:V1,V2,W | logtail)");
}

std::string InnovationDist::spec() const {
    switch (kind_) {
        case DistKind::Gaussian: return "gaussian";
        case DistKind::StudentT: return "student:" + format_double(nu_);
        case DistKind::Rademacher: return "rademacher";
        case DistKind::TwoPoint:
            return "twopoint:" + format_double(v1_) + "," + format_double(v2_) + "," + format_double(w_);
        case DistKind::LogTail: return "logtail";
        case DistKind::Empirical: return "empirical:" + std::to_string(values_->size());
    }
    return "unknown";
}

bool InnovationDist::finite_log_second_moment() const noexcept {
    switch (kind_) {
        case DistKind::Gaussian:
        case DistKind::StudentT:
        case DistKind::Rademacher:
        case DistKind::LogTail: return true;
        case DistKind::TwoPoint: return (v1_ > 0.0 || w_ == 0.0) && (v2_ > 0.0 || w_ == 1.0);
        case DistKind::Empirical:
            return std::none_of(values_->begin(), values_->end(), [](double v) { return v == 0.0; });
    }
    return false;
}

double mu_p(const InnovationDist& dist, double p) {
    if (!(p > 0.0 && p <= 1.0)) throw DomainError("mu_p: p must lie in (0,1], got " + format_double(p));
    auto& cache = *dist.cache_;
    {
        std::lock_guard lock(cache.mu);
        if (auto it = cache.values.find(p); it != cache.values.end()) return it->second;
    }
    const double v = mu_p_uncached(dist, p);
    std::lock_guard lock(cache.mu);
    cache.values.emplace(p, v);
    return v;
}

double z2_log_z2(const InnovationDist& dist) {
    switch (dist.kind()) {
        case DistKind::Gaussian: return std::numbers::ln2 + boost::math::digamma(1.5);
        case DistKind::StudentT: {
            const double nu = dist.nu();
            return std::log(nu - 2.0) + boost::math::digamma(1.5) - boost::math::digamma(nu / 2.0 - 1.0);
        }
        case DistKind::Rademacher: return 0.0;
        case DistKind::TwoPoint: return dist.w() * xlogx(dist.v1()) + (1.0 - dist.w()) * xlogx(dist.v2());
        case DistKind::Empirical: {
            CompensatedSum acc;
            for (double z : dist.values()) acc.add(xlogx(z * z));
            return acc.value() / static_cast<double>(dist.values().size());
        }
        case DistKind::LogTail: return kInfinity;
    }
    return kInfinity;
}

std::vector<double> sample(const InnovationDist& dist, std::size_t n, StreamId id) {
    if (n < 1) throw DomainError("sample: n must be >= 1");
    auto engine = make_engine(id);
    std::vector<double> z(n);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sign = [&] { return (engine() >> 63) != 0 ? 1.0 : -1.0; };
    switch (dist.kind()) {
        case DistKind::Gaussian: {
            std::normal_distribution<double> normal(0.0, 1.0);
            for (auto& v : z) v = normal(engine);
            break;
        }
        case DistKind::StudentT: {
            std::normal_distribution<double> normal(0.0, 1.0);
            std::chi_squared_distribution<double> chi2(dist.nu());
            const double nu_minus_2 = dist.nu() - 2.0;
            for (auto& v : z) {
                const double g = normal(engine);
                v = g * std::sqrt(nu_minus_2 / chi2(engine));
            }
            break;
        }
        case DistKind::Rademacher:
            for (auto& v : z) v = sign();
            break;
        case DistKind::TwoPoint: {
            const double r1 = std::sqrt(dist.v1());
            const double r2 = std::sqrt(dist.v2());
            for (auto& v : z) {
                const double u = unif(engine);
                v = (u < dist.w() ? r1 : r2) * sign();
            }
            break;
        }
        case DistKind::Empirical: {
            const auto& vals = dist.values();
            std::uniform_int_distribution<std::size_t> pick(0, vals.size() - 1);
            for (auto& v : z) v = vals[pick(engine)];
            break;
        }
        case DistKind::LogTail: {
            for (auto& v : z) {
                const double survival = 1.0 - unif(engine);  // in (0, 1]
                const double log_x = log_tail_quantile_log(survival);
                v = std::sqrt(0.5 * std::exp(log_x - 1.0)) * sign();
            }
            break;
        }
    }
    return z;
}

}  // namespace archinf
