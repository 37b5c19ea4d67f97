#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bgn/distribution.hpp"
#include "bgn/mle.hpp"
#include "bgn/rivals.hpp"

namespace bgn {

/// Pixel rectangle: origin column/row and size.
struct Rect {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;
};

enum class ImageFormat { Csv, Pgm16, RawF32le };

/// Accepts "csv", "pgm16" (or "pgm"), "raw_f32le" (or "raw").
ImageFormat parse_image_format(std::string_view name);

/// Positive intensity samples with provenance.
struct IntensityRegion {
    std::vector<double> values;
    std::string source;
    std::string channel;
    Rect rect;
    /// Nonpositive or non-finite pixels dropped at construction.
    std::size_t rejected = 0;
};

/// Builds a region from raw samples, dropping values that are not positive
/// and finite. The rect is {0, 0, count, 1}. EmptyRegionError when nothing
/// survives.
IntensityRegion make_region(std::span<const double> samples, std::string source, std::string channel);

/// Reads an image and extracts `rect` (whole image when absent). Raw float
/// rasters need `raw_shape`. Csv rows are comma or whitespace separated; lines
/// starting with '#' are skipped.
IntensityRegion load_region(const std::string& path, ImageFormat format, std::optional<Rect> rect = {},
                            const std::string& channel = "", std::optional<std::pair<int, int>> raw_shape = {});

/// One value per line with 17 significant digits, so reloading is exact.
void write_region_csv(const IntensityRegion& region, const std::string& path);

struct Descriptive {
    double mean = 0.0;
    double median = 0.0;
    double sd = 0.0;
    /// Coefficient of variation in percent.
    double cv = 0.0;
};

Descriptive describe(std::span<const double> values);
Descriptive describe(const IntensityRegion& region);

struct ModelRecord {
    std::string name;
    std::vector<std::pair<std::string, double>> params;
    double loglik = 0.0;
    int k = 0;
    CriteriaTriple criteria;
    bool converged = false;
    /// Set when the fit raised an error instead of returning.
    std::string error;
};

struct ComparisonReport {
    std::vector<ModelRecord> models;
    /// Criterion name ("aic", "aicc", "bic") to the winning model name.
    std::map<std::string, std::string> winner_by;
    Descriptive descriptive;
    std::size_t n = 0;
    std::string source;
    std::string channel;
};

/// Fits BGN, Gamma, K and G0 and ranks them. Winners are taken among
/// converged models only. Needs at least 30 values; ConvergenceError when no
/// model converges.
ComparisonReport compare(const IntensityRegion& region, const FitOptions& opts = {});

enum class Scenario { VaryS, VaryBeta, VaryAlpha };

/// Accepts "s", "beta", "alpha" and the vary_ forms.
Scenario parse_scenario(std::string_view name);
std::string_view scenario_name(Scenario s);

/// The sweep grid used when none is given: 1, 1.5, ..., 5.
std::vector<double> default_sweep();

struct McConfig {
    int replications = 1000;
    std::vector<int> sample_sizes{49, 121, 400};
    Scenario scenario = Scenario::VaryS;
    std::vector<double> sweep = default_sweep();
    /// Parameters not being swept.
    BgnParams base{1.0, 1.0, 0.0, 1.0, 1.0};
    int grid_points = 512;
    std::uint64_t seed = 0;
    /// Threads over replications; 0 picks the hardware count. The table does
    /// not depend on this value.
    int workers = 0;
    FitOptions fit;
    /// Test hook replacing fit_bgn: receives the sample and the true params.
    std::function<FitResult(std::span<const double>, const BgnParams&)> fitter;

    void validate() const;
};

struct McRow {
    double value = 0.0;
    int sample_size = 0;
    /// Mean integrated squared error over the used replications.
    double mse = 0.0;
    int used = 0;
    /// Replications dropped because the fit did not converge or failed.
    int excluded = 0;
};

struct McTable {
    Scenario scenario = Scenario::VaryS;
    std::vector<McRow> rows;
};

/// Params with the swept coordinate set to `value`.
BgnParams scenario_params(const McConfig& cfg, double value);

/// Integrated squared error between two BGN densities over the central
/// 99.8% of `truth`, trapezoidal on a uniform grid.
double integrated_squared_error(const BgnParams& truth, const BgnParams& fitted, int grid_points);

McTable mc_study(const McConfig& cfg);

struct RngCheck {
    double ks_stat = 0.0;
    /// 1% asymptotic critical value for the sample size.
    double ks_critical = 0.0;
    std::vector<double> bin_centers;
    /// Normalized so the bars integrate to one.
    std::vector<double> histogram;
    /// bgn_pdf at the bin centers.
    std::vector<double> density_curve;
};

RngCheck rng_check(const BgnParams& p, std::size_t n, int bins, std::uint64_t seed);

std::string to_json(const Descriptive& d);
std::string to_json(const ComparisonReport& r);
std::string to_json(const McTable& t);
std::string to_json(const RngCheck& c);
std::string to_text(const Descriptive& d);
std::string to_text(const ComparisonReport& r);
std::string to_text(const McTable& t);
std::string to_text(const RngCheck& c);

}  // namespace bgn
