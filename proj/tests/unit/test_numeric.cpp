#include "archinf/io.hpp"
#include "archinf/numeric.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

using namespace archinf;

TEST_CASE("compensated sum recovers cancelled low-order bits") {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-10));
}

TEST_CASE("chunked sum does not depend on the worker count") {
    std::vector<double> v(300000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(static_cast<double>(i)) * 1e3 + 1e-7 * i;
    auto f = [](double x, std::size_t) { return x * x; };
    const double one = chunked_sum(v, f, 1);
    CHECK(chunked_sum(v, f, 3) == one);
    CHECK(chunked_sum(v, f, 8) == one);
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
    auto run = [](std::size_t threads) {
        try {
            parallel_for(64, threads, [](std::size_t i) {
                if (i == 7 || i == 40) throw std::runtime_error(std::to_string(i));
            });
        } catch (const std::runtime_error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(run(1) == "7");
    CHECK(run(4) == "7");
}

TEST_CASE("resolve_threads prefers the explicit request") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("format_double round trips and names non-finite values") {
    for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 1e300}) {
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(kInfinity) == "inf");
    CHECK(format_double(-kInfinity) == "-inf");
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("atomic write leaves only the final file") {
    const auto dir = std::filesystem::temp_directory_path() / "archinf_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.txt";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "second");
    std::size_t n = 0;
    for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++n;
    CHECK(n == 1);
    std::filesystem::remove_all(dir);
}
