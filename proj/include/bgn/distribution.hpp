#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bgn/gn.hpp"

namespace bgn {

/// Beta generalized normal parameters. alpha = beta = 1 is the GN law.
struct BgnParams {
    double alpha = 1.0;
    double beta = 1.0;
    double mu = 0.0;
    double sigma = 1.0;
    double s = 2.0;

    void validate() const;
    GnParams gn() const { return {mu, sigma, s}; }
};

struct SampleBatch {
    std::vector<double> values;
    std::uint64_t seed = 0;
    BgnParams params;
};

/// Density. Where it diverges (alpha < 1 or beta < 1 with the base cdf
/// reaching 0 or 1 in floating point) the result is +infinity, not an error.
double bgn_pdf(double x, const BgnParams& p);

/// ln of the density; -infinity where the density is zero, +infinity where
/// it diverges.
double bgn_log_pdf(double x, const BgnParams& p);

double bgn_cdf(double x, const BgnParams& p);

/// 1 - bgn_cdf, accurate in the upper tail.
double bgn_ccdf(double x, const BgnParams& p);

/// Inverse of bgn_cdf for prob in (0, 1).
double bgn_quantile(double prob, const BgnParams& p);

/// n draws by the inverse-transform method from a stream keyed by seed alone.
SampleBatch bgn_sample(std::size_t n, const BgnParams& p, std::uint64_t seed);

class RandomStream;

/// Appends n draws from an existing stream.
void bgn_sample_into(std::vector<double>& out, std::size_t n, const BgnParams& p, RandomStream& rng);

/// Beta density carried onto [mu - sigma, mu + sigma]: the large-s limit.
double limiting_beta_pdf(double x, const BgnParams& p);

}  // namespace bgn
