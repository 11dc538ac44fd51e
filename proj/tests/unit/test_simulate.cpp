#include "archinf/errors.hpp"
#include "archinf/numeric.hpp"
#include "archinf/simulate.hpp"

#include <doctest.h>

#include <cmath>

using namespace archinf;

namespace {

// sigma2_m as a sum over all chains m > m_1 > ... > m_k >= 0 of
// a0 * prod a_{gap} xi_{m_i}, enumerating every subset of {0..m-1}.
double chain_sum(const std::vector<double>& a, const std::vector<double>& xi, std::size_t m, double a0) {
    long double total = 0.0L;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        long double term = a0;
        std::size_t prev = m;
        for (int i = static_cast<int>(m) - 1; i >= 0; --i) {
            if (!(mask & (1u << i))) continue;
            const std::size_t gap = prev - static_cast<std::size_t>(i);
            term *= (gap <= a.size() ? a[gap - 1] : 0.0) * xi[i];
            prev = static_cast<std::size_t>(i);
        }
        total += term;
    }
    return static_cast<double>(total);
}

SimConfig window_config(std::size_t w, std::uint64_t seed) {
    SimConfig c;
    c.n = w;
    c.burn_in = 0;
    c.J = w;
    c.seed = seed;
    c.chaos_order = w;
    c.a0 = 0.7;
    return c;
}

}  // namespace

TEST_CASE("brute-force chain enumeration validates both engines") {
    for (double d : {0.5, 0.9}) {
        const auto seq = CoeffSequence::figarch0d0(d, 8);
        const std::vector<double> a(seq.head(8).begin(), seq.head(8).end());
        for (std::uint64_t seed : {1, 2, 3}) {
            const auto cfg = window_config(8, seed);
            const auto rec = simulate_recursive(seq, InnovationDist::student_t(5), cfg);
            const auto vol = simulate_volterra(seq, InnovationDist::student_t(5), cfg);
            std::vector<double> xi;
            for (double z : rec.z) xi.push_back(z * z);
            CHECK(vol.z == rec.z);
            for (std::size_t m = 0; m < 8; ++m) {
                const double expect = chain_sum(a, xi, m, cfg.a0);
                CHECK(rec.sigma2[m] == doctest::Approx(expect).epsilon(1e-13));
                CHECK(vol.sigma2[m] == doctest::Approx(expect).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("window of one is the intercept") {
    const auto seq = CoeffSequence::figarch0d0(0.5, 1);
    const auto cfg = window_config(1, 9);
    CHECK(simulate_recursive(seq, InnovationDist::gaussian(), cfg).sigma2[0] == cfg.a0);
    CHECK(simulate_volterra(seq, InnovationDist::gaussian(), cfg).sigma2[0] == cfg.a0);
}

TEST_CASE("chaos terms add up and x = sigma z") {
    const auto seq = CoeffSequence::figarch0d0(0.7, 50);
    SimConfig cfg;
    cfg.n = 100;
    cfg.J = 50;
    cfg.burn_in = 200;
    cfg.chaos_order = 4;
    cfg.seed = 7;
    const auto terms = volterra_terms(seq, InnovationDist::gaussian(), cfg);
    const auto path = simulate_volterra(seq, InnovationDist::gaussian(), cfg);
    REQUIRE(terms.terms.size() == 5);
    for (std::size_t i = 0; i < cfg.n; ++i) {
        double s = 0.0;
        for (const auto& t : terms.terms) s += t[i];
        CHECK(path.sigma2[i] == doctest::Approx(s).epsilon(1e-14));
        CHECK(terms.terms[0][i] == cfg.a0);
        CHECK(path.x[i] == doctest::Approx(std::sqrt(path.sigma2[i]) * path.z[i]));
    }
}

TEST_CASE("dropping chaos orders loses mass monotonically") {
    const auto seq = CoeffSequence::figarch0d0(0.9, 20);
    auto cfg = window_config(20, 4);
    const auto rec = simulate_recursive(seq, InnovationDist::gaussian(), cfg);
    double prev = kInfinity;
    for (std::size_t q : {2, 4, 8, 16}) {
        cfg.chaos_order = q;
        const auto vol = simulate_volterra(seq, InnovationDist::gaussian(), cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < 20; ++i) {
            CHECK(vol.sigma2[i] <= rec.sigma2[i] * (1 + 1e-14));
            worst = std::max(worst, (rec.sigma2[i] - vol.sigma2[i]) / rec.sigma2[i]);
        }
        CHECK(worst <= prev);
        prev = worst;
    }
}

TEST_CASE("paths are reproducible") {
    const auto seq = CoeffSequence::figarch0d0(0.6, 100);
    SimConfig cfg;
    cfg.n = 500;
    cfg.J = 100;
    cfg.seed = 42;
    const auto a = simulate_recursive(seq, InnovationDist::gaussian(), cfg);
    const auto b = simulate_recursive(seq, InnovationDist::gaussian(), cfg);
    CHECK(a.sigma2 == b.sigma2);
    cfg.stream = 1;
    CHECK(simulate_recursive(seq, InnovationDist::gaussian(), cfg).sigma2 != a.sigma2);
    CHECK(cfg.effective_burn_in() == 1000);
}

TEST_CASE("explosive input hits the overflow cap") {
    const auto seq = CoeffSequence::geometric(3.0, 0.9, 50);
    SimConfig cfg;
    cfg.n = 100000;
    cfg.J = 50;
    cfg.burn_in = 0;
    cfg.overflow_cap = 1e100;
    CHECK_THROWS_AS(simulate_recursive(seq, InnovationDist::gaussian(), cfg), SimulationError);
}

TEST_CASE("invalid configurations") {
    const auto seq = CoeffSequence::geometric(0.5, 0.5, 10);
    SimConfig cfg;
    cfg.J = 10;
    cfg.a0 = 0.0;
    CHECK_THROWS_AS(simulate_recursive(seq, InnovationDist::gaussian(), cfg), DomainError);
    cfg.a0 = 1.0;
    cfg.chaos_order = 0;
    CHECK_THROWS_AS(simulate_volterra(seq, InnovationDist::gaussian(), cfg), DomainError);
}

TEST_CASE("remainder bound") {
    CHECK(remainder_bound(0.5, 3, 2.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(remainder_bound(1.0, 3, 2.0), BoundUndefinedError);
    const auto geo = CoeffSequence::geometric(0.5, 0.5, 60);
    // p = 1: A_1 mu_1 = 0.5, E X^2 <= a0 / (1 - 0.5)
    CHECK(remainder_bound(geo, InnovationDist::gaussian(), 1.0, 2) == doctest::Approx(0.25 * 2.0));
    CHECK_THROWS_AS(remainder_bound(CoeffSequence::figarch0d0(0.9, 1000), InnovationDist::gaussian(), 0.5, 2),
                    BoundUndefinedError);
    CHECK(contraction_factor(geo, InnovationDist::gaussian(), 1.0) == doctest::Approx(0.5));
}
