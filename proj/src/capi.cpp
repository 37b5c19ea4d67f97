#include "bgn/bgn.h"

#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bgn/distribution.hpp"
#include "bgn/error.hpp"
#include "bgn/mle.hpp"
#include "bgn/moments.hpp"
#include "bgn/sarfit.hpp"

struct bgn_region {
    bgn::IntensityRegion region;
};

struct bgn_report {
    std::string json;
    std::string text;
    bool converged = true;
};

namespace {

thread_local std::string last_error;

bgn_status fail(bgn_status status, const char* what) {
    last_error = what;
    return status;
}

// Runs body, translating exceptions into status codes.
template <class Body>
bgn_status guarded(Body&& body) {
    try {
        body();
        last_error.clear();
        return BGN_OK;
    } catch (const bgn::Error& e) {
        return fail(static_cast<bgn_status>(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(BGN_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BGN_E_INTERNAL, e.what());
    } catch (...) {
        return fail(BGN_E_INTERNAL, "unknown error");
    }
}

void require(const void* ptr, const char* what) {
    if (!ptr) throw bgn::InvalidArgument(std::string(what) + " must not be null");
}

bgn::BgnParams to_cpp(const bgn_params* p) {
    require(p, "params");
    return {p->alpha, p->beta, p->mu, p->sigma, p->s};
}

bgn_params to_c(const bgn::BgnParams& p) { return {p.alpha, p.beta, p.mu, p.sigma, p.s}; }

bgn::FitOptions to_cpp(const bgn_fit_options* o) {
    bgn::FitOptions out;
    if (!o) return out;
    out.max_iter = o->max_iter;
    out.grad_tol = o->grad_tol;
    out.n_starts = o->n_starts;
    out.seed = o->seed;
    out.workers = o->workers;
    return out;
}

template <class T>
bgn_report* make_report(const T& value, bool converged) {
    auto* r = new bgn_report;
    r->json = bgn::to_json(value);
    r->text = bgn::to_text(value);
    r->converged = converged;
    return r;
}

}  // namespace

extern "C" {

const char* bgn_last_error(void) { return last_error.c_str(); }

const char* bgn_status_name(bgn_status status) {
    if (status == BGN_OK) return "ok";
    if (status == BGN_E_INTERNAL) return "internal";
    if (status >= BGN_E_DOMAIN && status <= BGN_E_INVALID_ARGUMENT)
        return bgn::to_string(static_cast<bgn::ErrorCode>(status));
    return "unknown";
}

void bgn_params_default(bgn_params* p) {
    if (p) *p = to_c(bgn::BgnParams{});
}

void bgn_fit_options_default(bgn_fit_options* opts) {
    if (!opts) return;
    const bgn::FitOptions d;
    *opts = {d.max_iter, d.grad_tol, d.n_starts, d.seed, d.workers};
}

void bgn_mc_config_default(bgn_mc_config* cfg) {
    if (!cfg) return;
    static const int kSizes[] = {49, 121, 400};
    const bgn::McConfig d;
    cfg->replications = d.replications;
    cfg->sample_sizes = kSizes;
    cfg->n_sample_sizes = 3;
    cfg->scenario = "s";
    cfg->sweep = nullptr;
    cfg->n_sweep = 0;
    cfg->base = to_c(d.base);
    cfg->grid_points = d.grid_points;
    cfg->seed = d.seed;
    cfg->workers = d.workers;
    bgn_fit_options_default(&cfg->fit);
}

bgn_status bgn_pdf(const bgn_params* p, double x, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = bgn::bgn_pdf(x, to_cpp(p));
    });
}

bgn_status bgn_log_pdf(const bgn_params* p, double x, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = bgn::bgn_log_pdf(x, to_cpp(p));
    });
}

bgn_status bgn_cdf(const bgn_params* p, double x, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = bgn::bgn_cdf(x, to_cpp(p));
    });
}

bgn_status bgn_quantile(const bgn_params* p, double prob, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = bgn::bgn_quantile(prob, to_cpp(p));
    });
}

bgn_status bgn_sample(const bgn_params* p, size_t n, uint64_t seed, double* out) {
    return guarded([&] {
        if (n == 0) return;
        require(out, "out");
        const auto batch = bgn::bgn_sample(n, to_cpp(p), seed);
        std::copy(batch.values.begin(), batch.values.end(), out);
    });
}

bgn_status bgn_moment(const bgn_params* p, int order, bgn_moment_method method, double* out, int* validated) {
    return guarded([&] {
        require(out, "out");
        switch (method) {
            case BGN_MOMENT_SERIES: {
                const auto m = bgn::moment_series_checked(order, to_cpp(p));
                *out = m.value;
                if (validated) *validated = m.validated ? 1 : 0;
                break;
            }
            case BGN_MOMENT_QUADRATURE:
                *out = bgn::moment_quadrature(order, to_cpp(p));
                if (validated) *validated = 0;
                break;
            default:
                throw bgn::InvalidArgument("unknown moment method");
        }
    });
}

bgn_status bgn_loglik(const bgn_params* p, const double* data, size_t n, double* out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) require(data, "data");
        *out = bgn::loglik(std::span<const double>(data, n), to_cpp(p));
    });
}

bgn_status bgn_fit(const double* data, size_t n, const bgn_fit_options* opts, bgn_fit_result* out) {
    return guarded([&] {
        require(out, "out");
        if (n > 0) require(data, "data");
        const auto f = bgn::fit_bgn(std::span<const double>(data, n), to_cpp(opts));
        *out = {to_c(f.params), f.loglik, f.converged ? 1 : 0, f.iterations, f.grad_norm, f.start_index};
    });
}

bgn_status bgn_region_load(const char* path, const char* format, const bgn_rect* rect, const char* channel,
                           int raw_width, int raw_height, bgn_region** out) {
    return guarded([&] {
        require(out, "out");
        require(path, "path");
        require(format, "format");
        *out = nullptr;
        std::optional<bgn::Rect> r;
        if (rect) r = bgn::Rect{rect->x0, rect->y0, rect->width, rect->height};
        std::optional<std::pair<int, int>> shape;
        if (raw_width > 0 || raw_height > 0) shape = std::pair{raw_width, raw_height};
        auto region =
            bgn::load_region(path, bgn::parse_image_format(format), r, channel ? channel : "", shape);
        *out = new bgn_region{std::move(region)};
    });
}

bgn_status bgn_region_from_values(const double* values, size_t n, const char* source, const char* channel,
                                  bgn_region** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        if (n > 0) require(values, "values");
        auto region = bgn::make_region(std::span<const double>(values, n), source ? source : "",
                                       channel ? channel : "");
        *out = new bgn_region{std::move(region)};
    });
}

void bgn_region_free(bgn_region* region) { delete region; }

size_t bgn_region_size(const bgn_region* region) { return region ? region->region.values.size() : 0; }

const double* bgn_region_values(const bgn_region* region) {
    return region ? region->region.values.data() : nullptr;
}

size_t bgn_region_rejected(const bgn_region* region) { return region ? region->region.rejected : 0; }

bgn_status bgn_region_write_csv(const bgn_region* region, const char* path) {
    return guarded([&] {
        require(region, "region");
        require(path, "path");
        bgn::write_region_csv(region->region, path);
    });
}

bgn_status bgn_describe(const bgn_region* region, bgn_descriptive* out) {
    return guarded([&] {
        require(region, "region");
        require(out, "out");
        const auto d = bgn::describe(region->region);
        *out = {d.mean, d.median, d.sd, d.cv};
    });
}

bgn_status bgn_describe_report(const bgn_region* region, bgn_report** out) {
    return guarded([&] {
        require(region, "region");
        require(out, "out");
        *out = make_report(bgn::describe(region->region), true);
    });
}

bgn_status bgn_compare(const bgn_region* region, const bgn_fit_options* opts, bgn_report** out) {
    return guarded([&] {
        require(region, "region");
        require(out, "out");
        *out = nullptr;
        const auto report = bgn::compare(region->region, to_cpp(opts));
        const bool all = std::all_of(report.models.begin(), report.models.end(),
                                     [](const bgn::ModelRecord& m) { return m.converged; });
        *out = make_report(report, all);
    });
}

bgn_status bgn_mc_study(const bgn_mc_config* cfg, bgn_report** out) {
    return guarded([&] {
        require(cfg, "config");
        require(out, "out");
        *out = nullptr;
        bgn::McConfig c;
        c.replications = cfg->replications;
        if (cfg->n_sample_sizes > 0) {
            require(cfg->sample_sizes, "sample_sizes");
            c.sample_sizes.assign(cfg->sample_sizes, cfg->sample_sizes + cfg->n_sample_sizes);
        } else {
            c.sample_sizes.clear();
        }
        c.scenario = bgn::parse_scenario(cfg->scenario ? cfg->scenario : "s");
        if (cfg->sweep) c.sweep.assign(cfg->sweep, cfg->sweep + cfg->n_sweep);
        c.base = to_cpp(&cfg->base);
        c.grid_points = cfg->grid_points;
        c.seed = cfg->seed;
        c.workers = cfg->workers;
        c.fit = to_cpp(&cfg->fit);
        const auto table = bgn::mc_study(c);
        const bool all = std::all_of(table.rows.begin(), table.rows.end(),
                                     [](const bgn::McRow& r) { return r.excluded == 0; });
        *out = make_report(table, all);
    });
}

bgn_status bgn_rng_check(const bgn_params* p, size_t n, int bins, uint64_t seed, bgn_report** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        *out = make_report(bgn::rng_check(to_cpp(p), n, bins, seed), true);
    });
}

const char* bgn_report_json(const bgn_report* report) { return report ? report->json.c_str() : ""; }

const char* bgn_report_text(const bgn_report* report) { return report ? report->text.c_str() : ""; }

int bgn_report_converged(const bgn_report* report) { return report && report->converged ? 1 : 0; }

void bgn_report_free(bgn_report* report) { delete report; }

}  // extern "C"
