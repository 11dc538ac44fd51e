// Reference value of d* for FIGARCH(0,d,0), computed without the library:
// pi_j from log-gamma, direct long-double summation to J, integral tail beyond J,
// bisection to 1e-9. Prints d* for gaussian and student:5 innovations.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <thread>
#include <vector>

namespace {

long double entropy_sum(long double d, std::size_t J) {
    const unsigned nt = std::max(1u, std::thread::hardware_concurrency());
    std::vector<long double> part(nt, 0.0L);
    std::vector<std::thread> pool;
    const long double base = std::log(d) - std::lgamma(1.0L - d);
    for (unsigned t = 0; t < nt; ++t) {
        pool.emplace_back([&, t] {
            long double s = 0.0L;
            for (std::size_t j = J - t; j >= 1 && j <= J; j -= nt) {
                const long double lp = base + std::lgamma(static_cast<long double>(j) - d) -
                                       std::lgamma(static_cast<long double>(j) + 1.0L);
                s += std::exp(lp) * lp;
                if (j <= nt) break;
            }
            part[t] = s;
        });
    }
    for (auto& th : pool) th.join();
    long double s = 0.0L;
    for (auto v : part) s += v;

    // pi_j ~ c j^-(1+d), c = d / Gamma(1-d); integrate c x^-a log(c x^-a) over [J + 1/2, inf)
    const long double a = 1.0L + d;
    const long double c = d / std::tgamma(1.0L - d);
    const long double x0 = static_cast<long double>(J) + 0.5L;
    const long double m = std::pow(x0, 1.0L - a) / (a - 1.0L);
    const long double tail = c * std::log(c) * m - c * a * (std::log(x0) * m + m / (a - 1.0L));
    return s + tail;
}

double d_star(long double kappa, std::size_t J) {
    long double lo = std::exp(-kappa);
    long double hi = 1.0L - 1e-6L;
    while (hi - lo > 1e-9L) {
        const long double mid = 0.5L * (lo + hi);
        (entropy_sum(mid, J) + kappa > 0.0L ? hi : lo) = mid;
    }
    return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t J = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000;
    // E[z^2 log z^2]: gaussian 2 - gamma - log 2; unit-variance student-5 log 3
    const long double k_gauss = 2.0L - std::numbers::egamma_v<long double> - std::log(2.0L);
    const long double k_t5 = std::log(3.0L);
    std::printf("J %zu\n", J);
    std::printf("gaussian %.10f\n", d_star(k_gauss, J));
    std::printf("student:5 %.10f\n", d_star(k_t5, J));
}
