#include "archinf/coeffs.hpp"
#include "archinf/errors.hpp"
#include "archinf/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace archinf;

namespace {

// pi_j(d) = d (1-d)(2-d)...(j-1-d) / j!
long double pi_factorial(long double d, int j) {
    long double num = d;
    long double fact = 1.0L;
    for (int k = 1; k < j; ++k) num *= (k - d);
    for (int k = 2; k <= j; ++k) fact *= k;
    return num / fact;
}

// Coefficients of 1 - (1-z)^d theta(z) / phi(z) by long-double convolution and long division.
std::vector<long double> figarch_pq_oracle(long double d, std::vector<long double> theta,
                                           std::vector<long double> phi, int J) {
    std::vector<long double> frac(J + 1, 0.0L);  // (1-z)^d via binomial coefficients
    frac[0] = 1.0L;
    for (int k = 1; k <= J; ++k) frac[k] = frac[k - 1] * (k - 1 - d) / k;
    std::vector<long double> num(J + 1, 0.0L);
    for (int i = 0; i <= J; ++i) {
        for (std::size_t t = 0; t < theta.size() && i + static_cast<int>(t) <= J; ++t) {
            num[i + t] += frac[i] * theta[t];
        }
    }
    std::vector<long double> q(J + 1, 0.0L);
    for (int k = 0; k <= J; ++k) {
        long double s = num[k];
        for (std::size_t i = 1; i < phi.size() && static_cast<int>(i) <= k; ++i) s -= phi[i] * q[k - i];
        q[k] = s / phi[0];
    }
    std::vector<long double> a(J);
    for (int j = 1; j <= J; ++j) a[j - 1] = -q[j];
    return a;
}

}  // namespace

TEST_CASE("pi recurrence matches the factorial formula") {
    for (double d : {0.1, 0.45, 0.9}) {
        const auto pi = figarch_pi(d, 25);
        for (int j = 1; j <= 25; ++j) {
            CHECK(pi[j - 1] == doctest::Approx(static_cast<double>(pi_factorial(d, j))).epsilon(1e-13));
        }
    }
}

TEST_CASE("partial sums of pi close the product identity") {
    for (double d : {0.2, 0.6}) {
        const auto pi = figarch_pi(d, 5000);
        long double s = 0.0L;
        long double prod = 1.0L;
        for (int j = 1; j <= 5000; ++j) {
            s += pi[j - 1];
            prod *= 1.0L - d / j;
        }
        CHECK(std::abs(static_cast<double>((1.0L - s) - prod)) <= 1e-12 * static_cast<double>(prod));
    }
}

TEST_CASE("series_fracdiff stores the negated pi") {
    const auto s = series_fracdiff(0.3, 4);
    const auto pi = figarch_pi(0.3, 4);
    CHECK(s[0] == 1.0);
    for (int j = 1; j <= 4; ++j) CHECK(s[j] == -pi[j - 1]);
}

TEST_CASE("figarch0d0 extends past the cache with the same recurrence") {
    const auto seq = CoeffSequence::figarch0d0(0.4, 10);
    const auto longer = figarch_pi(0.4, 50);
    CHECK(seq.at(50) == doctest::Approx(longer[49]).epsilon(1e-14));
    CHECK(seq.head(10).size() == 10);
    CHECK(seq.tail_exponent().value() == doctest::Approx(1.4));
    CHECK(seq.p_min() == doctest::Approx(1.0 / 1.4));
    CHECK_THROWS_AS(CoeffSequence::figarch0d0(1.5, 10), DomainError);
    CHECK_THROWS_AS(CoeffSequence::figarch0d0(0.0, 10), DomainError);
}

TEST_CASE("figarch_pq matches an extended-precision series oracle") {
    const std::vector<double> theta{1.0, -0.4};
    const std::vector<double> phi{1.0, -0.2};
    const auto seq = CoeffSequence::figarch_pq(0.45, PowerSeries(theta), PowerSeries(phi), 200);
    const auto oracle = figarch_pq_oracle(0.45L, {1.0L, -0.4L}, {1.0L, -0.2L}, 200);
    for (int j = 1; j <= 200; ++j) {
        const double expect = static_cast<double>(oracle[j - 1]);
        CHECK(seq.at(j) == doctest::Approx(expect).epsilon(1e-12).scale(1e-16));
    }
    CHECK_THROWS_AS((void)seq.at(201), std::out_of_range);
    // theta = phi = 1 reduces to FIGARCH(0,d,0)
    const auto plain = CoeffSequence::figarch_pq(0.3, PowerSeries{1.0}, PowerSeries{1.0}, 30);
    const auto pi = figarch_pi(0.3, 30);
    for (int j = 1; j <= 30; ++j) CHECK(plain.at(j) == doctest::Approx(pi[j - 1]).epsilon(1e-14));
}

TEST_CASE("figarch_pq input validation") {
    CHECK_THROWS_AS(CoeffSequence::figarch_pq(0.5, PowerSeries{1.0}, PowerSeries{1.0, -1.0}, 10), RootLocationError);
    CHECK_THROWS_AS(CoeffSequence::figarch_pq(0.5, PowerSeries{2.0}, PowerSeries{1.0}, 10), DomainError);
    CHECK_THROWS_AS(CoeffSequence::figarch_pq(0.5, PowerSeries{1.0}, PowerSeries{0.5}, 10), DomainError);
    // theta with a large positive lag-1 coefficient makes a_1 = d - theta_1 negative
    CHECK_THROWS_AS(CoeffSequence::figarch_pq(0.2, PowerSeries{1.0, 0.5}, PowerSeries{1.0}, 10), NegativityError);
}

TEST_CASE("geometric sums are exact") {
    const double c = 0.4;
    const double r = 0.6;
    const auto seq = CoeffSequence::geometric(c, r, 20);
    for (double p : {0.3, 0.7, 1.0}) {
        const double expect = std::pow(c, p) * std::pow(r, p) / (1.0 - std::pow(r, p));
        CHECK(a_norm_p(seq, p, {20, true, 1}) == doctest::Approx(expect).epsilon(1e-13));
    }
    // sum c r^j (log c + j log r) = c log c r/(1-r) + c log r r/(1-r)^2
    const double ent = c * std::log(c) * r / (1 - r) + c * std::log(r) * r / ((1 - r) * (1 - r));
    CHECK(sum_a_log_a(seq, {20, true, 1}) == doctest::Approx(ent).epsilon(1e-13));
    CHECK(seq.p_min() == 0.0);
    CHECK(!seq.tail_exponent());
}

TEST_CASE("explicit lists sum their entries") {
    const auto seq = CoeffSequence::explicit_list({0.5, 0.25, 0.0, 0.125});
    CHECK(a_norm_p(seq, 0.5) == doctest::Approx(std::sqrt(0.5) + 0.5 + std::sqrt(0.125)));
    CHECK(sum_a_log_a(seq) == doctest::Approx(0.5 * std::log(0.5) + 0.25 * std::log(0.25) + 0.125 * std::log(0.125)));
    CHECK(seq.at(100) == 0.0);
    CHECK(seq.finite_support());
    CHECK(a_norm_p(seq, 1.0, {2, false, 1}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(CoeffSequence::explicit_list({0.5, -0.1}), NegativityError);
}

TEST_CASE("power-law tail makes the truncation point irrelevant") {
    const auto seq = CoeffSequence::figarch0d0(0.5, 1'000'000);
    const double near = a_norm_p(seq, 0.8, {10'000, true, 1});
    const double far = a_norm_p(seq, 0.8, {1'000'000, true, 1});
    CHECK(near == doctest::Approx(far).epsilon(1e-4));
    const double e_near = sum_a_log_a(seq, {10'000, true, 1});
    const double e_far = sum_a_log_a(seq, {1'000'000, true, 1});
    CHECK(e_near == doctest::Approx(e_far).epsilon(1e-5));
    // without the tail the truncated sums are visibly smaller
    CHECK(a_norm_p(seq, 1.0, {10'000, false, 1}) < a_norm_p(seq, 1.0, {10'000, true, 1}) - 1e-3);
}

TEST_CASE("A_p diverges at or below p_min") {
    const auto seq = CoeffSequence::figarch0d0(0.5, 1000);
    CHECK(std::isinf(a_norm_p(seq, 0.6, {1000, true, 1})));
    CHECK(std::isfinite(a_norm_p(seq, 0.6, {1000, false, 1})));
    CHECK_THROWS_AS(a_norm_p(seq, 0.0), DomainError);
    CHECK_THROWS_AS(a_norm_p(seq, 1.5), DomainError);
}

TEST_CASE("A_p is nonincreasing in p when every a_j <= 1") {
    const auto seq = CoeffSequence::figarch0d0(0.7, 100'000);
    double prev = kInfinity;
    for (int k = 70; k <= 100; ++k) {
        const double p = k / 100.0;
        const double v = a_norm_p(seq, p, {100'000, true, 1});
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("pinned tail constant is used instead of the fitted one") {
    const auto seq = CoeffSequence::figarch0d0(0.5, 1000);
    const double c = 0.5 / std::tgamma(0.5);
    const auto pinned = seq.with_tail_constant(c);
    CHECK(pinned.tail_constant().value() == c);
    const double tail = power_tail_norm(c, 1.5, 1.0, 1000);
    CHECK(a_norm_p(pinned, 1.0, {1000, true, 1}) == doctest::Approx(a_norm_p(seq, 1.0, {1000, false, 1}) + tail));
}

TEST_CASE("coefficient csv") {
    std::ostringstream os;
    write_coeffs_csv(os, CoeffSequence::geometric(0.5, 0.5, 3), 3);
    CHECK(os.str() == "j,a_j\n1,0.25\n2,0.125\n3,0.0625\n");
}
