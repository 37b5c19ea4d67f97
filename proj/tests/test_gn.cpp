#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bgn/error.hpp"
#include "bgn/gn.hpp"
#include "oracle.hpp"

using namespace bgn;
using doctest::Approx;

TEST_CASE("gn_pdf_std examples") {
    CHECK(gn_pdf_std(0.0, 2.0) == Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(gn_pdf_std(0.0, 1.0) == Approx(0.5).epsilon(1e-14));
    const double direct = 2.0 * std::exp(-1.0) / std::tgamma(0.25);
    const double norm = oracle::integrate([](long double z) { return std::exp(-std::pow(std::fabs(z), 4.0L)); }, -10, 10);
    CHECK(std::exp(-1.0) / norm == Approx(direct).epsilon(1e-10));
    CHECK(gn_pdf_std(1.0, 4.0) == Approx(0.2029338238166167).epsilon(1e-13));
    CHECK(gn_pdf_std(-1.3, 3.0) == Approx(gn_pdf_std(1.3, 3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(gn_pdf_std(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(gn_pdf_std(0.0, -2.0), DomainError);
}

TEST_CASE("gn_cdf_std examples") {
    CHECK(gn_cdf_std(0.0, 3.0) == Approx(0.5).epsilon(1e-15));
    CHECK(gn_cdf_std(1.0, 1.0) == Approx(1.0 - std::exp(-1.0) / 2).epsilon(1e-14));
    const double erf_oracle = 0.5 * (1.0 + std::erf(1.0));
    CHECK(erf_oracle == Approx(0.9213503964748574).epsilon(1e-15));
    CHECK(gn_cdf_std(1.0, 2.0) == Approx(erf_oracle).epsilon(1e-14));
    CHECK_THROWS_AS(gn_cdf_std(0.0, 0.0), DomainError);
}

TEST_CASE("gn_cdf examples") {
    const GnParams p{1.0, 2.0, 1.0};
    CHECK(gn_cdf(p.mu, p) == 0.5);
    CHECK(gn_cdf(3.0, p) == Approx(1.0 - std::exp(-1.0) / 2).epsilon(1e-14));
    CHECK(gn_cdf(-1.0, {0.0, 1.0, 2.0}) == Approx(1.0 - 0.9213503964748574).epsilon(1e-13));
    CHECK_THROWS_AS(gn_cdf(0.0, {0.0, 0.0, 2.0}), DomainError);
    CHECK_THROWS_AS(gn_cdf(0.0, {NAN, 1.0, 2.0}), DomainError);
}

TEST_CASE("gn_quantile examples") {
    const GnParams p{3.5, 2.0, 1.7};
    CHECK(gn_quantile(0.5, p) == p.mu);
    CHECK(gn_quantile(0.8160603, {0.0, 1.0, 1.0}) == Approx(-std::log(2.0 * (1.0 - 0.8160603))).epsilon(1e-12));
    CHECK(gn_quantile(0.8160603, {0.0, 1.0, 1.0}) == Approx(1.0).epsilon(1e-6));
    // Normal(0, 1/2): the 0.25 quantile is -erfinv(1/2).
    const double z = oracle::bisect([](double x) { return 0.5 * (1 + std::erf(x)) - 0.25; }, -3, 3);
    CHECK(z == Approx(-0.4769362762044699).epsilon(1e-12));
    CHECK(gn_quantile(0.25, {0.0, 1.0, 2.0}) == Approx(z).epsilon(1e-12));
    CHECK_THROWS_AS(gn_quantile(0.0, p), DomainError);
    CHECK_THROWS_AS(gn_quantile(1.0, p), DomainError);
}

TEST_CASE("symmetry of the standardized cdf") {
    for (double s : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        for (int i = 0; i <= 40; ++i) {
            const double z = -4.0 + 0.2 * i;
            CHECK(std::fabs(gn_cdf_std(-z, s) + gn_cdf_std(z, s) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("cdf difference matches density") {
    for (double s : {1.0, 1.5, 2.0, 4.0}) {
        for (double z = -3.0; z <= 3.0; z += 0.137) {
            if (std::fabs(z) <= 0.01) continue;
            const double fd = oracle::derivative([s](double v) { return gn_cdf_std(v, s); }, z, 1e-5);
            CHECK(fd == Approx(gn_pdf_std(z, s)).epsilon(1e-6));
        }
    }
}

TEST_CASE("normalization") {
    // For s = 0.5 about 2.7% of the mass lies beyond |z| = 30, so that case
    // integrates over a wider window.
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
        const long double half_width = s < 1.0 ? 1000.0L : 30.0L;
        auto f = [s](long double z) { return static_cast<long double>(gn_pdf_std(static_cast<double>(z), s)); };
        const double total = oracle::integrate(f, -half_width, 0.0L, 1e-12L) + oracle::integrate(f, 0.0L, half_width, 1e-12L);
        CHECK(total == Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("quantile round trip over the central mass") {
    for (double s : {0.5, 1.0, 2.0, 4.0}) {
        const GnParams p{-2.0, 1.5, s};
        for (double x = gn_quantile(0.005, p); x <= gn_quantile(0.995, p); x += 0.05) {
            CHECK(std::fabs(gn_quantile(gn_cdf(x, p), p) - x) <= 1e-8);
        }
        for (double u : {1e-12, 1e-6, 0.1, 0.5, 0.9, 1 - 1e-6}) CHECK(gn_cdf(gn_quantile(u, p), p) == Approx(u).epsilon(1e-9));
    }
}

TEST_CASE("tails keep precision") {
    const TailPair t = gn_tails_std(8.0, 2.0);
    CHECK(t.upper == Approx(0.5 * std::erfc(8.0)).epsilon(1e-12));
    // ln erfc(x) = -x^2 - ln(x sqrt(pi)) + ln(1 - 1/(2x^2) + 3/(4x^4) - ...).
    const double x = 40.0;
    const double ln_erfc = -x * x - std::log(x * std::sqrt(std::numbers::pi)) +
                           std::log1p(-1 / (2 * x * x) + 3 / (4 * std::pow(x, 4)) - 15 / (8 * std::pow(x, 6)));
    CHECK(gn_log_tail_std(x, 2.0) == Approx(ln_erfc - std::log(2.0)).epsilon(1e-12));
    CHECK(std::isfinite(gn_log_tail_std(1e3, 2.0)));
}
