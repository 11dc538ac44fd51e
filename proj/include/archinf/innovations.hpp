#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace archinf {

enum class DistKind { Gaussian, StudentT, Rademacher, TwoPoint, Empirical, LogTail };

/// Law of the i.i.d. innovation z_0.
///
/// Built-in kinds are normalized so that mu_1 = E[z_0^2] = 1:
///  - gaussian: standard normal;
///  - student:NU: Student-t with NU > 2 degrees of freedom scaled by sqrt((NU-2)/NU);
///  - rademacher: z = +-1 (the degenerate case P{|z|=1} = 1);
///  - twopoint:V1,V2,W: z^2 = V1 with probability W, V2 otherwise, random sign, W V1 + (1-W) V2 = 1;
///  - logtail: z^2 = X/(2e) with P(X > x) = e/(x log^2 x) on [e, inf). Unit second
///    moment, E[z^2 log z^2] = +inf;
///  - empirical: uniform law on a user sample (not renormalized).
class InnovationDist {
public:
    static InnovationDist gaussian();
    static InnovationDist student_t(double nu);
    static InnovationDist rademacher();
    static InnovationDist two_point(double v1, double v2, double w);
    static InnovationDist log_tail();
    static InnovationDist empirical(std::vector<double> values);

    /// Parses `gaussian | student:NU | rademacher | twopoint:V1,V2,W | logtail`.
    static InnovationDist parse(const std::string& spec);
    /// Inverse of parse for the built-in kinds; empirical laws render as `empirical:N`.
    [[nodiscard]] std::string spec() const;

    [[nodiscard]] DistKind kind() const noexcept { return kind_; }
    [[nodiscard]] double nu() const noexcept { return nu_; }
    [[nodiscard]] double v1() const noexcept { return v1_; }
    [[nodiscard]] double v2() const noexcept { return v2_; }
    [[nodiscard]] double w() const noexcept { return w_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return *values_; }

    /// E|log z_0|^2 < inf, declared per kind.
    [[nodiscard]] bool finite_log_second_moment() const noexcept;

    friend double mu_p(const InnovationDist& dist, double p);

private:
    InnovationDist() = default;

    struct MomentCache {
        std::mutex mu;
        std::map<double, double> values;
    };

    DistKind kind_ = DistKind::Gaussian;
    double nu_ = 0.0;
    double v1_ = 0.0;
    double v2_ = 0.0;
    double w_ = 0.0;
    std::shared_ptr<const std::vector<double>> values_ = std::make_shared<std::vector<double>>();
    std::shared_ptr<MomentCache> cache_ = std::make_shared<MomentCache>();
};

/// mu_p = E[z_0^{2p}] for p in (0,1]. Closed forms where they exist, adaptive
/// Gauss-Kronrod (absolute tolerance 1e-10) otherwise.
double mu_p(const InnovationDist& dist, double p);

/// E[z_0^2 log z_0^2], possibly +inf (declared per kind, never inferred).
double z2_log_z2(const InnovationDist& dist);

/// Deterministic generator for replicate `stream` under `seed`. Distinct streams
/// are seeded independently, so parallel replicates never share draws.
struct StreamId {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// n i.i.d. draws of z_0. Identical (dist, n, seed, stream) gives identical output.
std::vector<double> sample(const InnovationDist& dist, std::size_t n, StreamId id);
inline std::vector<double> sample(const InnovationDist& dist, std::size_t n, std::uint64_t seed) {
    return sample(dist, n, StreamId{seed, 0});
}

}  // namespace archinf
