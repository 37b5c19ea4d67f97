#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bgn {

/// 64-bit mixing function used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// A reproducible random stream keyed by a user seed plus any number of
/// indices (batch, scenario, replicate, ...). Two streams built from the same
/// keys produce identical draws on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys = {});

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on the open interval (0, 1).
    double uniform();

    double normal();

    /// ln of a unit-scale gamma variate with the given shape > 0.
    double log_gamma(double shape);

    double gamma(double shape);

    /// Beta(a, b) variate and its complement, each without cancellation.
    struct BetaDraw {
        double u;
        double one_minus_u;
    };
    BetaDraw beta(double a, double b);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace bgn
