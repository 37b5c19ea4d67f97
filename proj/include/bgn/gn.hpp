#pragma once

// Generalized normal (exponential power) law with location mu, dispersion
// sigma and shape s. s = 2 is the normal with variance sigma^2/2, s = 1 the
// Laplace law.

namespace bgn {

struct GnParams {
    double mu = 0.0;
    double sigma = 1.0;
    double s = 2.0;

    /// Throws DomainError unless sigma > 0, s > 0 and mu is finite.
    void validate() const;
};

/// Lower and upper tail masses of the standardized law at z, each computed
/// without cancellation: lower = Φ_s(z), upper = 1 - Φ_s(z).
struct TailPair {
    double lower;
    double upper;
};

double gn_pdf_std(double z, double s);
double gn_log_pdf_std(double z, double s);
double gn_cdf_std(double z, double s);
TailPair gn_tails_std(double z, double s);

/// ln of the smaller tail mass min(Φ_s(z), 1 - Φ_s(z)); finite far beyond the
/// point where the mass itself underflows.
double gn_log_tail_std(double z, double s);

double gn_cdf(double x, const GnParams& p);

/// Inverse of gn_cdf for u in (0, 1).
double gn_quantile(double u, const GnParams& p);

/// Inverse given both u and 1 - u, so that either tail keeps full precision.
double gn_quantile_split(double u, double one_minus_u, const GnParams& p);

}  // namespace bgn
