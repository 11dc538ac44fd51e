#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace archinf {

/// Truncated formal power series c_0 + c_1 z + ... + c_{n-1} z^{n-1}.
///
/// Products and quotients are truncated to the length of the result requested;
/// for polynomial inputs they are exact up to that length (modulo rounding).
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(std::vector<double> coefficients);
    PowerSeries(std::initializer_list<double> coefficients);

    /// Series of the given length with all coefficients zero.
    static PowerSeries zeros(std::size_t length);
    static PowerSeries one(std::size_t length);

    [[nodiscard]] std::size_t length() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] double operator[](std::size_t k) const noexcept {
        return k < coeffs_.size() ? coeffs_[k] : 0.0;
    }
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return coeffs_; }

    /// Degree ignoring trailing zeros; -1 for the zero series.
    [[nodiscard]] int degree() const noexcept;

    [[nodiscard]] PowerSeries truncated(std::size_t length) const;

    /// Product truncated to `length` terms.
    [[nodiscard]] PowerSeries multiply(const PowerSeries& other, std::size_t length) const;

    /// Quotient this / divisor truncated to `length` terms, by the long-division
    /// recurrence q_k = (c_k - sum_{i=1..k} b_i q_{k-i}) / b_0.
    /// Throws DomainError when divisor[0] == 0.
    [[nodiscard]] PowerSeries divide(const PowerSeries& divisor, std::size_t length) const;

    [[nodiscard]] PowerSeries operator-() const;
    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);

    friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

private:
    std::vector<double> coeffs_;
};

/// Roots of the polynomial with the given coefficients (constant term first),
/// computed as eigenvalues of the companion matrix.
std::vector<std::complex<double>> polynomial_roots(const PowerSeries& poly);

/// Smallest root modulus, +inf for constant polynomials.
double min_root_modulus(const PowerSeries& poly);

}  // namespace archinf
