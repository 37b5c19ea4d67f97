#include "bgn/random.hpp"

#include <cfloat>
#include <cmath>

#include "bgn/error.hpp"

namespace bgn {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t k : keys) h = splitmix64(h ^ splitmix64(k + 0x632be59bd9b4e019ULL));
    return h;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys)
    : engine_(derive_seed(seed, keys)) {}

double RandomStream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // Marsaglia polar method.
    double v1, v2, r2;
    do {
        v1 = 2.0 * uniform() - 1.0;
        v2 = 2.0 * uniform() - 1.0;
        r2 = v1 * v1 + v2 * v2;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double f = std::sqrt(-2.0 * std::log(r2) / r2);
    spare_ = v2 * f;
    has_spare_ = true;
    return v1 * f;
}

double RandomStream::log_gamma(double shape) {
    if (!(std::isfinite(shape) && shape > 0.0)) throw DomainError("gamma variate: shape must be positive");
    if (shape < 1.0) {
        // G_a = G_{a+1} U^{1/a}, kept in logs so tiny shapes do not underflow.
        return log_gamma(shape + 1.0) + std::log(uniform()) / shape;
    }
    // Marsaglia and Tsang squeeze-rejection.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d) + std::log(v);
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d) + std::log(v);
    }
}

double RandomStream::gamma(double shape) { return std::exp(log_gamma(shape)); }

RandomStream::BetaDraw RandomStream::beta(double a, double b) {
    const double la = log_gamma(a);
    const double lb = log_gamma(b);
    // u = G_a / (G_a + G_b) = 1 / (1 + e^{lb - la}).
    BetaDraw out{1.0 / (1.0 + std::exp(lb - la)), 1.0 / (1.0 + std::exp(la - lb))};
    // The inverse transform needs both masses strictly positive.
    if (out.u < DBL_MIN) out.u = DBL_MIN;
    if (out.one_minus_u < DBL_MIN) out.one_minus_u = DBL_MIN;
    return out;
}

}  // namespace bgn
