#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace archinf {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }
    [[nodiscard]] double high() const noexcept { return sum_; }
    [[nodiscard]] double low() const noexcept { return comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Worker count: explicit request, else ARCHINF_THREADS, else 1.
inline std::size_t resolve_threads(std::size_t requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ARCHINF_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return 1;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Work assignment is
/// strided, so callers that write results by index get identical output for any
/// worker count. The exception from the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr first_error;
    std::size_t first_index = count;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(mu);
                    if (i < first_index) {
                        first_index = i;
                        first_error = std::current_exception();
                    }
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

inline constexpr std::size_t kReductionChunk = std::size_t{1} << 16;

/// Compensated sum of f(values[i], i) over fixed-size chunks reduced in chunk order.
/// Chunk boundaries do not depend on the worker count, so neither does the result.
template <class F>
double chunked_sum(std::span<const double> values, F&& f, std::size_t threads = 1) {
    const std::size_t n_chunks = (values.size() + kReductionChunk - 1) / kReductionChunk;
    std::vector<double> partial(n_chunks, 0.0);
    parallel_for(n_chunks, threads, [&](std::size_t c) {
        CompensatedSum acc;
        const std::size_t lo = c * kReductionChunk;
        const std::size_t hi = std::min(values.size(), lo + kReductionChunk);
        for (std::size_t i = lo; i < hi; ++i) acc.add(f(values[i], i));
        partial[c] = acc.value();
    });
    CompensatedSum total;
    for (double v : partial) total.add(v);
    return total.value();
}

}  // namespace archinf
