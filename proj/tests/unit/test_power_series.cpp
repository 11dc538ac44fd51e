#include "archinf/errors.hpp"
#include "archinf/power_series.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace archinf;

TEST_CASE("product of polynomials matches hand expansion") {
    const PowerSeries a{1.0, 2.0};
    const PowerSeries b{1.0, -3.0, 1.0};
    const auto c = a.multiply(b, 5);
    CHECK(c[0] == 1.0);
    CHECK(c[1] == -1.0);
    CHECK(c[2] == -5.0);
    CHECK(c[3] == 2.0);
    CHECK(c[4] == 0.0);
    CHECK(a.multiply(b, 2).length() == 2);
}

TEST_CASE("division by 1 - z gives partial sums") {
    const PowerSeries a{1.0, 2.0, 3.0, 4.0};
    const auto q = a.divide(PowerSeries{1.0, -1.0}, 6);
    const double expect[] = {1, 3, 6, 10, 10, 10};
    for (int k = 0; k < 6; ++k) CHECK(q[k] == doctest::Approx(expect[k]));
}

TEST_CASE("multiply then divide round trips") {
    const PowerSeries a{0.3, -1.2, 0.7, 2.5, -0.1};
    const PowerSeries b{2.0, 0.5, -0.25};
    const auto back = a.multiply(b, 20).divide(b, 5);
    for (int k = 0; k < 5; ++k) CHECK(back[k] == doctest::Approx(a[k]).epsilon(1e-13));
}

TEST_CASE("division by a series with zero constant term is rejected") {
    CHECK_THROWS_AS(PowerSeries{1.0}.divide(PowerSeries{0.0, 1.0}, 3), DomainError);
}

TEST_CASE("companion matrix roots") {
    // (1 - 2z)(1 - 3z) = 1 - 5z + 6z^2
    auto roots = polynomial_roots(PowerSeries{1.0, -5.0, 6.0});
    REQUIRE(roots.size() == 2);
    std::vector<double> mods;
    for (auto r : roots) {
        CHECK(std::abs(r.imag()) < 1e-12);
        mods.push_back(std::abs(r));
    }
    std::sort(mods.begin(), mods.end());
    CHECK(mods[0] == doctest::Approx(1.0 / 3.0));
    CHECK(mods[1] == doctest::Approx(0.5));
    CHECK(min_root_modulus(PowerSeries{1.0, -5.0, 6.0}) == doctest::Approx(1.0 / 3.0));
    CHECK(std::isinf(min_root_modulus(PowerSeries{1.0})));
}

TEST_CASE("degree ignores trailing zeros") {
    CHECK(PowerSeries{1.0, 2.0, 0.0, 0.0}.degree() == 1);
    CHECK(PowerSeries::zeros(4).degree() == -1);
    CHECK((PowerSeries{1.0, 2.0} + PowerSeries{0.0, -2.0, 3.0}) == PowerSeries{1.0, 0.0, 3.0});
    CHECK((-PowerSeries{1.0, -2.0})[1] == 2.0);
}
