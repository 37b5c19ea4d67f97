#include "bgn/sarfit.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "bgn/error.hpp"
#include "bgn/random.hpp"
#include "bgn/stats.hpp"
#include "parallel.hpp"

namespace bgn {

namespace {

constexpr std::size_t kMinCompareSize = 30;

using Raster = std::vector<std::vector<double>>;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, const std::string& where) {
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(where + ": cannot parse '" + std::string(token) + "' as a number");
    return v;
}

Raster read_csv(const std::string& path) {
    const std::string text = read_file(path);
    Raster rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = trim(std::string_view(text).substr(pos, end - pos));
        ++line_no;
        pos = end + 1;
        if (line.empty() || line.front() == '#') continue;
        // Comma separated when the line has a comma, whitespace separated otherwise.
        const bool commas = line.find(',') != std::string_view::npos;
        const char* separators = commas ? "," : " \t";
        std::vector<double> row;
        std::size_t start = 0;
        while (true) {
            if (!commas) start = line.find_first_not_of(separators, start);
            const std::size_t sep = line.find_first_of(separators, start);
            const auto cell = line.substr(start, sep == std::string_view::npos ? line.size() - start : sep - start);
            row.push_back(parse_number(cell, path + " line " + std::to_string(line_no)));
            if (sep == std::string_view::npos) break;
            start = sep + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw DimensionError(path + " line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(rows.front().size()) + " columns, found " +
                                 std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw EmptyRegionError(path + ": no data rows");
    return rows;
}

// Binary (P5) or plain (P2) graymap with maxval up to 65535.
Raster read_pgm(const std::string& path) {
    const std::string bytes = read_file(path);
    std::size_t pos = 0;
    auto next_token = [&]() -> std::string {
        while (pos < bytes.size()) {
            if (bytes[pos] == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
                ++pos;
            } else {
                break;
            }
        }
        const std::size_t start = pos;
        while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
        if (start == pos) throw ParseError(path + ": truncated header at offset " + std::to_string(start));
        return bytes.substr(start, pos - start);
    };
    auto header_int = [&](const char* what) {
        const std::size_t at = pos;
        const std::string tok = next_token();
        const double v = parse_number(tok, path + " offset " + std::to_string(at));
        if (v != std::floor(v) || v < 1 || v > 65535)
            throw ParseError(path + ": invalid " + std::string(what) + " '" + tok + "'");
        return static_cast<int>(v);
    };
    const std::string magic = next_token();
    if (magic != "P5" && magic != "P2") throw ParseError(path + ": not a PGM file (magic '" + magic + "')");
    const int width = header_int("width");
    const int height = header_int("height");
    const int maxval = header_int("maxval");
    Raster rows(height, std::vector<double>(width));
    if (magic == "P2") {
        for (auto& row : rows)
            for (auto& v : row) {
                const std::size_t at = pos;
                v = parse_number(next_token(), path + " offset " + std::to_string(at));
            }
        return rows;
    }
    ++pos;  // single whitespace byte after maxval
    const std::size_t depth = maxval > 255 ? 2 : 1;
    const std::size_t need = static_cast<std::size_t>(width) * height * depth;
    if (bytes.size() < pos + need)
        throw DimensionError(path + ": raster needs " + std::to_string(need) + " bytes after offset " +
                             std::to_string(pos) + ", file has " + std::to_string(bytes.size() - pos));
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + pos);
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            const std::size_t i = (static_cast<std::size_t>(r) * width + c) * depth;
            rows[r][c] = depth == 2 ? static_cast<double>((raw[i] << 8) | raw[i + 1]) : static_cast<double>(raw[i]);
        }
    return rows;
}

Raster read_raw_f32le(const std::string& path, std::optional<std::pair<int, int>> shape) {
    if (!shape) throw InvalidArgument("raw_f32le input needs width and height");
    const auto [width, height] = *shape;
    if (width < 1 || height < 1) throw InvalidArgument("raw_f32le width and height must be positive");
    const std::string bytes = read_file(path);
    const std::size_t need = static_cast<std::size_t>(width) * height * 4;
    if (bytes.size() != need)
        throw DimensionError(path + ": expected " + std::to_string(need) + " bytes for " + std::to_string(width) +
                             "x" + std::to_string(height) + " floats, found " + std::to_string(bytes.size()));
    const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data());
    Raster rows(height, std::vector<double>(width));
    for (int r = 0; r < height; ++r)
        for (int c = 0; c < width; ++c) {
            const std::size_t i = (static_cast<std::size_t>(r) * width + c) * 4;
            const std::uint32_t bits = static_cast<std::uint32_t>(raw[i]) | (static_cast<std::uint32_t>(raw[i + 1]) << 8) |
                                       (static_cast<std::uint32_t>(raw[i + 2]) << 16) |
                                       (static_cast<std::uint32_t>(raw[i + 3]) << 24);
            rows[r][c] = static_cast<double>(std::bit_cast<float>(bits));
        }
    return rows;
}

std::string fmt_sig(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

std::string fmt_fixed2(double v) {
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

// Pads every column to its widest cell.
std::string align(const std::vector<std::vector<std::string>>& table) {
    std::vector<std::size_t> widths;
    for (const auto& row : table) {
        widths.resize(std::max(widths.size(), row.size()), 0);
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    std::ostringstream os;
    for (const auto& row : table) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) os << "  ";
            os << std::setw(static_cast<int>(widths[c])) << (c == 0 ? std::left : std::right) << row[c];
        }
        os << '\n';
    }
    return os.str();
}

nlohmann::json number_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json descriptive_json(const Descriptive& d) {
    return {{"mean", d.mean}, {"median", d.median}, {"sd", d.sd}, {"cv", d.cv}};
}

}  // namespace

ImageFormat parse_image_format(std::string_view name) {
    if (name == "csv") return ImageFormat::Csv;
    if (name == "pgm16" || name == "pgm") return ImageFormat::Pgm16;
    if (name == "raw_f32le" || name == "raw") return ImageFormat::RawF32le;
    throw InvalidArgument("unknown image format '" + std::string(name) + "'");
}

IntensityRegion make_region(std::span<const double> samples, std::string source, std::string channel) {
    IntensityRegion region;
    region.source = std::move(source);
    region.channel = std::move(channel);
    region.values.reserve(samples.size());
    for (double v : samples) {
        if (v > 0.0 && std::isfinite(v)) {
            region.values.push_back(v);
        } else {
            ++region.rejected;
        }
    }
    region.rect = {0, 0, static_cast<int>(samples.size()), 1};
    if (region.values.empty()) throw EmptyRegionError("region has no positive finite values");
    return region;
}

IntensityRegion load_region(const std::string& path, ImageFormat format, std::optional<Rect> rect,
                            const std::string& channel, std::optional<std::pair<int, int>> raw_shape) {
    Raster raster;
    switch (format) {
        case ImageFormat::Csv: raster = read_csv(path); break;
        case ImageFormat::Pgm16: raster = read_pgm(path); break;
        case ImageFormat::RawF32le: raster = read_raw_f32le(path, raw_shape); break;
    }
    const int height = static_cast<int>(raster.size());
    const int width = height ? static_cast<int>(raster.front().size()) : 0;
    const Rect r = rect.value_or(Rect{0, 0, width, height});
    if (r.width < 1 || r.height < 1) throw EmptyRegionError(path + ": rectangle has no pixels");
    if (r.x0 < 0 || r.y0 < 0 || r.x0 + r.width > width || r.y0 + r.height > height)
        throw DimensionError(path + ": rectangle " + std::to_string(r.x0) + "," + std::to_string(r.y0) + "," +
                             std::to_string(r.width) + "," + std::to_string(r.height) + " exceeds the " +
                             std::to_string(width) + "x" + std::to_string(height) + " image");
    std::vector<double> pixels;
    pixels.reserve(static_cast<std::size_t>(r.width) * r.height);
    for (int row = r.y0; row < r.y0 + r.height; ++row)
        for (int col = r.x0; col < r.x0 + r.width; ++col) pixels.push_back(raster[row][col]);
    IntensityRegion region = make_region(pixels, path, channel);
    region.rect = r;
    return region;
}

void write_region_csv(const IntensityRegion& region, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    char buf[32];
    for (double v : region.values) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
        out.write(buf, res.ptr - buf);
        out.put('\n');
    }
    if (!out) throw IoError("write failed for " + path);
}

Descriptive describe(std::span<const double> values) {
    if (values.empty()) throw EmptyRegionError("describe: empty region");
    Descriptive d;
    d.mean = stats::mean(values);
    d.median = stats::median(values);
    d.sd = values.size() > 1 ? stats::sample_sd(values) : 0.0;
    d.cv = d.sd == 0.0 ? 0.0 : 100.0 * d.sd / d.mean;
    return d;
}

Descriptive describe(const IntensityRegion& region) { return describe(region.values); }

ComparisonReport compare(const IntensityRegion& region, const FitOptions& opts) {
    opts.validate();
    const auto& x = region.values;
    if (x.size() < kMinCompareSize) throw DomainError("compare: need at least 30 values");
    ComparisonReport report;
    report.n = x.size();
    report.source = region.source;
    report.channel = region.channel;
    report.descriptive = describe(region);
    report.models = {{"BGN", {}, 0.0, kBgnParamCount, {}, false, {}},
                     {"Gamma", {}, 0.0, kGammaParamCount, {}, false, {}},
                     {"K", {}, 0.0, kKParamCount, {}, false, {}},
                     {"G0", {}, 0.0, kG0ParamCount, {}, false, {}}};
    FitOptions inner = opts;
    inner.workers = 1;
    detail::parallel_for(report.models.size(), opts.workers, [&](std::size_t m) {
        ModelRecord& rec = report.models[m];
        try {
            switch (m) {
                case 0: {
                    const auto f = fit_bgn(x, inner);
                    rec.params = {{"alpha", f.params.alpha},
                                  {"beta", f.params.beta},
                                  {"mu", f.params.mu},
                                  {"sigma", f.params.sigma},
                                  {"s", f.params.s}};
                    rec.loglik = f.loglik;
                    rec.converged = f.converged;
                    break;
                }
                case 1: {
                    const auto f = fit_gamma(x, inner);
                    rec.params = {{"shape", f.params.shape}, {"rate", f.params.rate}};
                    rec.loglik = f.loglik;
                    rec.converged = f.converged;
                    break;
                }
                case 2: {
                    const auto f = fit_k(x, inner);
                    rec.params = {{"alpha", f.params.alpha_k},
                                  {"looks", f.params.looks},
                                  {"mean", f.params.mean_intensity}};
                    rec.loglik = f.loglik;
                    rec.converged = f.converged;
                    break;
                }
                default: {
                    const auto f = fit_g0(x, inner);
                    rec.params = {{"alpha", f.params.alpha_g},
                                  {"gamma", f.params.gamma_g},
                                  {"looks", f.params.looks}};
                    rec.loglik = f.loglik;
                    rec.converged = f.converged;
                    break;
                }
            }
        } catch (const Error& e) {
            rec.error = e.what();
            rec.converged = false;
            rec.loglik = std::numeric_limits<double>::quiet_NaN();
        }
        if (std::isfinite(rec.loglik)) rec.criteria = criteria(rec.loglik, rec.k, static_cast<long long>(x.size()));
    });

    bool any = false;
    for (const auto& m : report.models) any = any || (m.converged && std::isfinite(m.loglik));
    if (!any) throw ConvergenceError("compare: no model converged");
    auto pick = [&](const char* name, auto value_of) {
        const ModelRecord* best = nullptr;
        double best_value = std::numeric_limits<double>::infinity();
        for (const auto& m : report.models) {
            if (!m.converged || !std::isfinite(m.loglik)) continue;
            const std::optional<double> v = value_of(m.criteria);
            if (v && *v < best_value) {
                best_value = *v;
                best = &m;
            }
        }
        if (best) report.winner_by[name] = best->name;
    };
    pick("aic", [](const CriteriaTriple& c) { return std::optional<double>(c.aic); });
    pick("aicc", [](const CriteriaTriple& c) { return c.aicc; });
    pick("bic", [](const CriteriaTriple& c) { return std::optional<double>(c.bic); });
    return report;
}

Scenario parse_scenario(std::string_view name) {
    if (name == "s" || name == "vary_s") return Scenario::VaryS;
    if (name == "beta" || name == "vary_beta") return Scenario::VaryBeta;
    if (name == "alpha" || name == "vary_alpha") return Scenario::VaryAlpha;
    throw InvalidArgument("unknown scenario '" + std::string(name) + "'");
}

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::VaryS: return "vary_s";
        case Scenario::VaryBeta: return "vary_beta";
        default: return "vary_alpha";
    }
}

std::vector<double> default_sweep() {
    std::vector<double> out;
    for (int i = 0; i <= 8; ++i) out.push_back(1.0 + 0.5 * i);
    return out;
}

void McConfig::validate() const {
    if (replications < 1) throw InvalidArgument("McConfig.replications must be at least 1");
    if (sample_sizes.empty()) throw InvalidArgument("McConfig.sample_sizes must not be empty");
    for (int n : sample_sizes)
        if (n < 10) throw InvalidArgument("McConfig.sample_sizes must be at least 10");
    if (sweep.empty()) throw InvalidArgument("McConfig.sweep must not be empty");
    for (double v : sweep)
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("McConfig.sweep values must be positive");
    if (grid_points < 2) throw InvalidArgument("McConfig.grid_points must be at least 2");
    if (workers < 0) throw InvalidArgument("McConfig.workers must be nonnegative");
    base.validate();
    fit.validate();
}

BgnParams scenario_params(const McConfig& cfg, double value) {
    BgnParams p = cfg.base;
    switch (cfg.scenario) {
        case Scenario::VaryS: p.s = value; break;
        case Scenario::VaryBeta: p.beta = value; break;
        case Scenario::VaryAlpha: p.alpha = value; break;
    }
    return p;
}

double integrated_squared_error(const BgnParams& truth, const BgnParams& fitted, int grid_points) {
    if (grid_points < 2) throw InvalidArgument("integrated_squared_error: grid_points must be at least 2");
    const double lo = bgn_quantile(0.001, truth);
    const double hi = bgn_quantile(0.999, truth);
    const double h = (hi - lo) / (grid_points - 1);
    double total = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + h * i;
        const double d = bgn_pdf(x, truth) - bgn_pdf(x, fitted);
        total += (i == 0 || i == grid_points - 1 ? 0.5 : 1.0) * d * d;
    }
    return total * h;
}

McTable mc_study(const McConfig& cfg) {
    cfg.validate();
    const std::size_t n_sweep = cfg.sweep.size();
    const std::size_t n_sizes = cfg.sample_sizes.size();
    const std::size_t reps = static_cast<std::size_t>(cfg.replications);
    std::vector<double> ise(n_sweep * n_sizes * reps, std::numeric_limits<double>::quiet_NaN());
    FitOptions fit_opts = cfg.fit;
    fit_opts.workers = 1;
    fit_opts.observer = nullptr;
    const auto scenario_key = static_cast<std::uint64_t>(cfg.scenario);

    detail::parallel_for(ise.size(), cfg.workers, [&](std::size_t task) {
        const std::size_t rep = task % reps;
        const std::size_t size_idx = (task / reps) % n_sizes;
        const std::size_t sweep_idx = task / (reps * n_sizes);
        const BgnParams truth = scenario_params(cfg, cfg.sweep[sweep_idx]);
        RandomStream rng(cfg.seed, {scenario_key, sweep_idx, size_idx, rep});
        std::vector<double> sample;
        bgn_sample_into(sample, static_cast<std::size_t>(cfg.sample_sizes[size_idx]), truth, rng);
        try {
            const FitResult fit = cfg.fitter ? cfg.fitter(sample, truth) : fit_bgn(sample, fit_opts);
            if (fit.converged) ise[task] = integrated_squared_error(truth, fit.params, cfg.grid_points);
        } catch (const Error&) {
            // counted as excluded below
        }
    });

    McTable table;
    table.scenario = cfg.scenario;
    for (std::size_t i = 0; i < n_sweep; ++i)
        for (std::size_t j = 0; j < n_sizes; ++j) {
            McRow row;
            row.value = cfg.sweep[i];
            row.sample_size = cfg.sample_sizes[j];
            double total = 0.0;
            for (std::size_t r = 0; r < reps; ++r) {
                const double v = ise[(i * n_sizes + j) * reps + r];
                if (std::isfinite(v)) {
                    total += v;
                    ++row.used;
                } else {
                    ++row.excluded;
                }
            }
            row.mse = row.used ? total / row.used : std::numeric_limits<double>::quiet_NaN();
            table.rows.push_back(row);
        }
    return table;
}

RngCheck rng_check(const BgnParams& p, std::size_t n, int bins, std::uint64_t seed) {
    p.validate();
    if (n < 1000) throw DomainError("rng_check: need at least 1000 draws");
    if (bins < 1) throw InvalidArgument("rng_check: bins must be positive");
    const auto batch = bgn_sample(n, p, seed);
    const auto& x = batch.values;
    RngCheck out;
    out.ks_stat = stats::ks_statistic(x, [&](double v) { return bgn_cdf(v, p); });
    out.ks_critical = stats::ks_critical_value(n, 0.01);
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = hi > lo ? (hi - lo) / bins : 1.0;
    std::vector<std::size_t> counts(bins, 0);
    for (double v : x) {
        auto b = static_cast<std::ptrdiff_t>((v - lo) / width);
        counts[std::clamp<std::ptrdiff_t>(b, 0, bins - 1)] += 1;
    }
    for (int b = 0; b < bins; ++b) {
        const double center = lo + (b + 0.5) * width;
        out.bin_centers.push_back(center);
        out.histogram.push_back(static_cast<double>(counts[b]) / (static_cast<double>(n) * width));
        out.density_curve.push_back(bgn_pdf(center, p));
    }
    return out;
}

std::string to_json(const Descriptive& d) { return descriptive_json(d).dump(2); }

std::string to_json(const ComparisonReport& r) {
    nlohmann::json models = nlohmann::json::array();
    for (const auto& m : r.models) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto& [k, v] : m.params) params[k] = v;
        nlohmann::json rec = {{"name", m.name},
                              {"params", params},
                              {"loglik", number_or_null(m.loglik)},
                              {"k", m.k},
                              {"converged", m.converged}};
        if (std::isfinite(m.loglik)) {
            rec["aic"] = m.criteria.aic;
            rec["aicc"] = m.criteria.aicc ? nlohmann::json(*m.criteria.aicc) : nlohmann::json(nullptr);
            rec["bic"] = m.criteria.bic;
        }
        if (!m.error.empty()) rec["error"] = m.error;
        models.push_back(rec);
    }
    return nlohmann::json{{"source", r.source},
                          {"channel", r.channel},
                          {"n", r.n},
                          {"descriptive", descriptive_json(r.descriptive)},
                          {"models", models},
                          {"winner_by", r.winner_by}}
        .dump(2);
}

std::string to_json(const McTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows)
        rows.push_back({{"value", row.value},
                        {"sample_size", row.sample_size},
                        {"mse", number_or_null(row.mse)},
                        {"used", row.used},
                        {"excluded", row.excluded}});
    return nlohmann::json{{"scenario", scenario_name(t.scenario)}, {"rows", rows}}.dump(2);
}

std::string to_json(const RngCheck& c) {
    return nlohmann::json{{"ks_stat", c.ks_stat},
                          {"ks_critical_1pct", c.ks_critical},
                          {"bin_centers", c.bin_centers},
                          {"histogram", c.histogram},
                          {"density_curve", c.density_curve}}
        .dump(2);
}

std::string to_text(const Descriptive& d) {
    return align({{"mean", "median", "sd", "cv(%)"}, {fmt_sig(d.mean), fmt_sig(d.median), fmt_sig(d.sd), fmt_sig(d.cv)}});
}

std::string to_text(const ComparisonReport& r) {
    std::ostringstream os;
    os << "source: " << r.source;
    if (!r.channel.empty()) os << "  channel: " << r.channel;
    os << "  n: " << r.n << "\n\n" << to_text(r.descriptive) << '\n';
    std::vector<std::vector<std::string>> table{{"model", "k", "loglik", "AIC", "AICc", "BIC", "converged", "params"}};
    for (const auto& m : r.models) {
        std::string params;
        for (const auto& [k, v] : m.params) params += (params.empty() ? "" : " ") + k + "=" + fmt_sig(v);
        if (!m.error.empty()) params = "error: " + m.error;
        const bool ok = std::isfinite(m.loglik);
        table.push_back({m.name, std::to_string(m.k), ok ? fmt_fixed2(m.loglik) : "-",
                         ok ? fmt_fixed2(m.criteria.aic) : "-",
                         ok && m.criteria.aicc ? fmt_fixed2(*m.criteria.aicc) : "-", ok ? fmt_fixed2(m.criteria.bic) : "-",
                         m.converged ? "yes" : "no", params});
    }
    os << align(table) << '\n';
    for (const auto& [crit, model] : r.winner_by) os << "best by " << crit << ": " << model << '\n';
    return os.str();
}

std::string to_text(const McTable& t) {
    std::vector<std::vector<std::string>> table{{std::string(scenario_name(t.scenario)), "N", "mse", "used", "excluded"}};
    for (const auto& row : t.rows)
        table.push_back({fmt_sig(row.value), std::to_string(row.sample_size), fmt_sig(row.mse), std::to_string(row.used),
                         std::to_string(row.excluded)});
    return align(table);
}

std::string to_text(const RngCheck& c) {
    std::ostringstream os;
    os << "ks_stat " << fmt_sig(c.ks_stat) << "  critical(1%) " << fmt_sig(c.ks_critical) << "\n\n";
    std::vector<std::vector<std::string>> table{{"center", "histogram", "density"}};
    for (std::size_t i = 0; i < c.bin_centers.size(); ++i)
        table.push_back({fmt_sig(c.bin_centers[i]), fmt_sig(c.histogram[i]), fmt_sig(c.density_curve[i])});
    os << align(table);
    return os.str();
}

}  // namespace bgn
