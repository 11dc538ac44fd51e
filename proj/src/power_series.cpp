#include "archinf/power_series.hpp"

#include "archinf/errors.hpp"
#include "archinf/numeric.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace archinf {

PowerSeries::PowerSeries(std::vector<double> coefficients) : coeffs_(std::move(coefficients)) {}

PowerSeries::PowerSeries(std::initializer_list<double> coefficients) : coeffs_(coefficients) {}

PowerSeries PowerSeries::zeros(std::size_t length) {
    return PowerSeries(std::vector<double>(length, 0.0));
}

PowerSeries PowerSeries::one(std::size_t length) {
    auto s = zeros(std::max<std::size_t>(length, 1));
    s.coeffs_[0] = 1.0;
    return s;
}

int PowerSeries::degree() const noexcept {
    for (std::size_t k = coeffs_.size(); k > 0; --k) {
        if (coeffs_[k - 1] != 0.0) return static_cast<int>(k - 1);
    }
    return -1;
}

PowerSeries PowerSeries::truncated(std::size_t length) const {
    std::vector<double> out(length, 0.0);
    std::copy_n(coeffs_.begin(), std::min(length, coeffs_.size()), out.begin());
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::multiply(const PowerSeries& other, std::size_t length) const {
    std::vector<double> out(length, 0.0);
    const std::size_t na = std::min(coeffs_.size(), length);
    for (std::size_t i = 0; i < na; ++i) {
        const double ai = coeffs_[i];
        if (ai == 0.0) continue;
        const std::size_t nb = std::min(other.coeffs_.size(), length - i);
        for (std::size_t j = 0; j < nb; ++j) out[i + j] += ai * other.coeffs_[j];
    }
    return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::divide(const PowerSeries& divisor, std::size_t length) const {
    if (divisor.coeffs_.empty() || divisor.coeffs_[0] == 0.0) {
        throw DomainError("power series division requires a nonzero constant term in the divisor");
    }
    const double b0 = divisor.coeffs_[0];
    // Polynomial divisors are short; only their nonzero tail terms enter the recurrence.
    const std::size_t nb = static_cast<std::size_t>(std::max(divisor.degree(), 0)) + 1;
    std::vector<double> q(length, 0.0);
    for (std::size_t k = 0; k < length; ++k) {
        CompensatedSum acc;
        acc.add((*this)[k]);
        const std::size_t upper = std::min(k, nb - 1);
        for (std::size_t i = 1; i <= upper; ++i) acc.add(-divisor.coeffs_[i] * q[k - i]);
        q[k] = acc.value() / b0;
    }
    return PowerSeries(std::move(q));
}

PowerSeries PowerSeries::operator-() const {
    auto out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::max(a.length(), b.length());
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] + b[k];
    return PowerSeries(std::move(out));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) { return a + (-b); }

std::vector<std::complex<double>> polynomial_roots(const PowerSeries& poly) {
    const int deg = poly.degree();
    if (deg <= 0) return {};
    const double lead = poly[static_cast<std::size_t>(deg)];
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -poly[static_cast<std::size_t>(i)] / lead;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("companion-matrix eigenvalue computation did not converge");
    }
    const auto& ev = solver.eigenvalues();
    std::vector<std::complex<double>> roots(ev.data(), ev.data() + ev.size());
    return roots;
}

double min_root_modulus(const PowerSeries& poly) {
    double best = kInfinity;
    for (const auto& r : polynomial_roots(poly)) best = std::min(best, std::abs(r));
    return best;
}

}  // namespace archinf
