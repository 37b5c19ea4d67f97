#pragma once

#include <functional>
#include <span>
#include <vector>

namespace bgn::stats {

double mean(std::span<const double> xs);

/// Sample standard deviation with the n - 1 divisor.
double sample_sd(std::span<const double> xs);

/// Linear-interpolation quantile (Hyndman–Fan type 7) of unsorted data.
double quantile(std::span<const double> xs, double prob);

double median(std::span<const double> xs);

/// Kolmogorov–Smirnov distance between the empirical law of xs and cdf.
double ks_statistic(std::span<const double> xs, const std::function<double(double)>& cdf);

/// Asymptotic one-sample KS critical value for n draws at level 0.05 or 0.01.
double ks_critical_value(std::size_t n, double level);

}  // namespace bgn::stats
