#include "bgn/stats.hpp"

#include <algorithm>
#include <cmath>

#include "bgn/error.hpp"

namespace bgn::stats {

namespace {

void require_nonempty(std::span<const double> xs, const char* what) {
    if (xs.empty()) throw EmptyRegionError(what);
}

}  // namespace

double mean(std::span<const double> xs) {
    require_nonempty(xs, "mean of an empty sample");
    // Two passes: a shifted sum keeps large offsets from eating precision.
    const double shift = xs.front();
    double acc = 0.0;
    for (double x : xs) acc += x - shift;
    return shift + acc / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) throw InvalidArgument("standard deviation needs at least two values");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double quantile(std::span<const double> xs, double prob) {
    require_nonempty(xs, "quantile of an empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw DomainError("quantile: prob must lie in [0, 1]");
    std::vector<double> v(xs.begin(), xs.end());
    const double h = (static_cast<double>(v.size()) - 1.0) * prob;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(lo), v.end());
    const double a = v[lo];
    if (lo + 1 >= v.size()) return a;
    const double b = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo) + 1, v.end());
    return a + (h - static_cast<double>(lo)) * (b - a);
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

double ks_statistic(std::span<const double> xs, const std::function<double(double)>& cdf) {
    require_nonempty(xs, "KS statistic of an empty sample");
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    const double n = static_cast<double>(v.size());
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double f = cdf(v[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

double ks_critical_value(std::size_t n, double level) {
    double c = 0.0;
    if (level == 0.05) {
        c = 1.358;
    } else if (level == 0.01) {
        c = 1.628;
    } else {
        // Inverse of the Kolmogorov limit distribution, leading term.
        c = std::sqrt(-0.5 * std::log(level / 2.0));
    }
    return c / std::sqrt(static_cast<double>(n));
}

}  // namespace bgn::stats
