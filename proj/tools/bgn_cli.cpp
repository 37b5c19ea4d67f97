// Command-line front end over the C interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "bgn/bgn.h"

namespace {

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kData = 3, kConvergence = 4 };

struct Failure {
    int code;
    std::string message;
};

int exit_code(bgn_status s) {
    switch (s) {
        case BGN_OK: return kOk;
        case BGN_E_INVALID_ARGUMENT: return kUsage;
        case BGN_E_CONVERGENCE:
        case BGN_E_DIVERGENCE: return kConvergence;
        case BGN_E_INTERNAL: return kInternal;
        default: return kData;
    }
}

void check(bgn_status s) {
    if (s != BGN_OK) throw Failure{exit_code(s), std::string(bgn_status_name(s)) + ": " + bgn_last_error()};
}

struct RegionDeleter {
    void operator()(bgn_region* r) const { bgn_region_free(r); }
};
struct ReportDeleter {
    void operator()(bgn_report* r) const { bgn_report_free(r); }
};
using RegionPtr = std::unique_ptr<bgn_region, RegionDeleter>;
using ReportPtr = std::unique_ptr<bgn_report, ReportDeleter>;

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s, const char* flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw Failure{kUsage, std::string(flag) + ": cannot parse '" + s + "'"};
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(to_double(item, flag));
    if (out.empty()) throw Failure{kUsage, std::string(flag) + ": empty list"};
    return out;
}

// "a:b:step" or a comma list.
std::vector<double> parse_sweep(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return parse_list(text, "--sweep");
    if (parts.size() != 3) throw Failure{kUsage, "--sweep: expected start:stop:step"};
    const double a = to_double(parts[0], "--sweep");
    const double b = to_double(parts[1], "--sweep");
    const double step = to_double(parts[2], "--sweep");
    if (!(step > 0.0) || b < a) throw Failure{kUsage, "--sweep: need step > 0 and stop >= start"};
    std::vector<double> out;
    const long count = std::lround(std::floor((b - a) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(a + step * static_cast<double>(i));
    return out;
}

struct Output {
    std::string path;
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream out(path);
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        if (!out) throw Failure{kData, "cannot write " + path};
    }
};

struct ParamFlags {
    bgn_params p{1.0, 1.0, 0.0, 1.0, 2.0};
    void add(CLI::App* app) {
        app->add_option("--alpha", p.alpha, "shape alpha > 0")->capture_default_str();
        app->add_option("--beta", p.beta, "shape beta > 0")->capture_default_str();
        app->add_option("--mu", p.mu, "location")->capture_default_str();
        app->add_option("--sigma", p.sigma, "scale > 0")->capture_default_str();
        app->add_option("--s", p.s, "GN shape s > 0")->capture_default_str();
    }
};

struct InputFlags {
    std::string path;
    std::string format = "csv";
    std::string rect;
    std::string channel;
    int width = 0;
    int height = 0;
    void add(CLI::App* app) {
        app->add_option("--input", path, "image or sample file")->required();
        app->add_option("--format", format, "csv, pgm16 or raw")->capture_default_str();
        app->add_option("--rect", rect, "x0,y0,w,h");
        app->add_option("--channel", channel, "channel label");
        app->add_option("--width", width, "raw raster width");
        app->add_option("--height", height, "raw raster height");
    }
    RegionPtr load() const {
        bgn_rect r{};
        const bgn_rect* rp = nullptr;
        if (!rect.empty()) {
            const auto v = parse_list(rect, "--rect");
            if (v.size() != 4) throw Failure{kUsage, "--rect: expected x0,y0,w,h"};
            r = {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
            rp = &r;
        }
        bgn_region* out = nullptr;
        check(bgn_region_load(path.c_str(), format.c_str(), rp, channel.c_str(), width, height, &out));
        return RegionPtr(out);
    }
};

struct FitFlags {
    bgn_fit_options o{};
    FitFlags() { bgn_fit_options_default(&o); }
    void add(CLI::App* app) {
        app->add_option("--starts", o.n_starts, "start points")->capture_default_str();
        app->add_option("--max-iter", o.max_iter, "iterations per start")->capture_default_str();
        app->add_option("--grad-tol", o.grad_tol, "gradient tolerance")->capture_default_str();
        app->add_option("--workers", o.workers, "threads, 0 = all cores")->capture_default_str();
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json params_json(const bgn_params& p) {
    return {{"alpha", p.alpha}, {"beta", p.beta}, {"mu", p.mu}, {"sigma", p.sigma}, {"s", p.s}};
}

// Evaluates fn at each point, one "point value" line each or a JSON array.
template <class Fn>
std::string tabulate(const std::vector<double>& points, const char* key, bool json, Fn fn) {
    nlohmann::json arr = nlohmann::json::array();
    std::string text;
    for (double x : points) {
        double v = 0.0;
        check(fn(x, &v));
        arr.push_back({{key, x}, {"value", std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(fmt(v))}});
        text += fmt(x) + " " + fmt(v) + "\n";
    }
    return json ? arr.dump(2) : text;
}

int strict_exit(bool strict, bool converged) { return strict && !converged ? kConvergence : kOk; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Beta generalized normal distribution and SAR intensity fitting"};
    app.require_subcommand(1);
    Output out;
    bool json = false;
    bool strict = false;
    std::uint64_t seed = 0;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", out.path, "write output here instead of stdout");
        sub->add_flag("--json", json, "JSON output");
        sub->add_option("--seed", seed, "random seed")->capture_default_str();
    };

    ParamFlags params;
    InputFlags input;
    FitFlags fit;
    std::string points;
    std::size_t n = 1000;
    int order = 1;
    std::string method = "series";
    int bins = 50;

    auto* pdf = app.add_subcommand("pdf", "density at --x points");
    auto* cdf = app.add_subcommand("cdf", "distribution function at --x points");
    for (auto* sub : {pdf, cdf}) {
        params.add(sub);
        common(sub);
        sub->add_option("--x", points, "comma separated points")->required();
    }
    auto* quantile = app.add_subcommand("quantile", "quantiles at --p probabilities");
    params.add(quantile);
    common(quantile);
    quantile->add_option("--p", points, "comma separated probabilities")->required();

    auto* sample = app.add_subcommand("sample", "draw a sample, one value per line");
    params.add(sample);
    common(sample);
    sample->add_option("--n", n, "sample size")->capture_default_str();

    auto* moment = app.add_subcommand("moment", "raw moment E(X^order)");
    params.add(moment);
    common(moment);
    moment->add_option("--order", order, "moment order")->capture_default_str();
    moment->add_option("--method", method, "series or quadrature")->capture_default_str();

    auto* fit_cmd = app.add_subcommand("fit", "maximum likelihood fit of the BGN law");
    auto* compare = app.add_subcommand("compare", "fit BGN, Gamma, K and G0 and rank them");
    for (auto* sub : {fit_cmd, compare}) {
        input.add(sub);
        fit.add(sub);
        common(sub);
        sub->add_flag("--strict", strict, "exit 4 when a fit does not converge");
    }

    auto* describe = app.add_subcommand("describe", "mean, median, sd and CV in percent");
    input.add(describe);
    common(describe);

    bgn_mc_config mc;
    bgn_mc_config_default(&mc);
    std::string sizes = "49,121,400";
    std::string scenario = "s";
    std::string sweep = "1:5:0.5";
    auto* mc_cmd = app.add_subcommand("mc-study", "Monte Carlo MSE of the fitted density");
    common(mc_cmd);
    params.add(mc_cmd);
    fit.add(mc_cmd);
    mc_cmd->add_option("--replications", mc.replications, "replications per cell")->capture_default_str();
    mc_cmd->add_option("--sizes", sizes, "comma separated sample sizes")->capture_default_str();
    mc_cmd->add_option("--scenario", scenario, "s, beta or alpha")->capture_default_str();
    mc_cmd->add_option("--sweep", sweep, "start:stop:step or a comma list")->capture_default_str();
    mc_cmd->add_option("--grid-points", mc.grid_points, "ISE grid size")->capture_default_str();
    mc_cmd->add_option("--mc-workers", mc.workers, "threads over replications, 0 = all cores")
        ->capture_default_str();
    mc_cmd->add_flag("--strict", strict, "exit 4 when any replication is excluded");

    auto* rng = app.add_subcommand("rng-check", "KS statistic and histogram of a large sample");
    params.add(rng);
    common(rng);
    rng->add_option("--n", n, "sample size")->capture_default_str();
    rng->add_option("--bins", bins, "histogram bins")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const bgn_params& p = params.p;
        fit.o.seed = seed;
        if (pdf->parsed() || cdf->parsed()) {
            const bool is_pdf = pdf->parsed();
            out.write(tabulate(parse_list(points, "--x"), "x", json, [&](double x, double* v) {
                return is_pdf ? bgn_pdf(&p, x, v) : bgn_cdf(&p, x, v);
            }));
        } else if (quantile->parsed()) {
            out.write(tabulate(parse_list(points, "--p"), "p", json,
                               [&](double q, double* v) { return bgn_quantile(&p, q, v); }));
        } else if (sample->parsed()) {
            std::vector<double> values(n);
            check(bgn_sample(&p, n, seed, values.data()));
            if (json) {
                out.write(nlohmann::json{{"seed", seed}, {"params", params_json(p)}, {"values", values}}.dump());
            } else {
                std::string text;
                for (double v : values) text += fmt(v) + "\n";
                out.write(text);
            }
        } else if (moment->parsed()) {
            bgn_moment_method m;
            if (method == "series") m = BGN_MOMENT_SERIES;
            else if (method == "quadrature") m = BGN_MOMENT_QUADRATURE;
            else throw Failure{kUsage, "--method: expected series or quadrature"};
            double v = 0.0;
            int validated = 0;
            check(bgn_moment(&p, order, m, &v, &validated));
            if (json)
                out.write(nlohmann::json{{"order", order}, {"method", method}, {"value", v},
                                         {"validated", validated != 0}}
                              .dump(2));
            else
                out.write(fmt(v));
        } else if (fit_cmd->parsed()) {
            const auto region = input.load();
            bgn_fit_result r{};
            check(bgn_fit(bgn_region_values(region.get()), bgn_region_size(region.get()), &fit.o, &r));
            if (json) {
                out.write(nlohmann::json{{"params", params_json(r.params)},
                                         {"loglik", r.loglik},
                                         {"converged", r.converged != 0},
                                         {"iterations", r.iterations},
                                         {"grad_norm", r.grad_norm},
                                         {"start_index", r.start_index},
                                         {"n", bgn_region_size(region.get())},
                                         {"rejected", bgn_region_rejected(region.get())}}
                              .dump(2));
            } else {
                std::ostringstream s;
                s.precision(6);
                s << "alpha " << r.params.alpha << "\nbeta " << r.params.beta << "\nmu " << r.params.mu
                  << "\nsigma " << r.params.sigma << "\ns " << r.params.s << "\nloglik " << r.loglik
                  << "\nconverged " << (r.converged ? "yes" : "no") << "\n";
                out.write(s.str());
            }
            return strict_exit(strict, r.converged != 0);
        } else if (compare->parsed() || describe->parsed()) {
            const auto region = input.load();
            bgn_report* raw = nullptr;
            if (compare->parsed()) check(bgn_compare(region.get(), &fit.o, &raw));
            else check(bgn_describe_report(region.get(), &raw));
            const ReportPtr report(raw);
            out.write(json ? bgn_report_json(raw) : bgn_report_text(raw));
            return strict_exit(strict, bgn_report_converged(raw) != 0);
        } else if (mc_cmd->parsed()) {
            std::vector<int> size_list;
            for (double v : parse_list(sizes, "--sizes")) {
                if (v != std::floor(v) || v < 1) throw Failure{kUsage, "--sizes: expected positive integers"};
                size_list.push_back(static_cast<int>(v));
            }
            const auto sweep_values = parse_sweep(sweep);
            mc.sample_sizes = size_list.data();
            mc.n_sample_sizes = size_list.size();
            mc.scenario = scenario.c_str();
            mc.sweep = sweep_values.data();
            mc.n_sweep = sweep_values.size();
            mc.base = p;
            mc.seed = seed;
            mc.fit = fit.o;
            bgn_report* raw = nullptr;
            check(bgn_mc_study(&mc, &raw));
            const ReportPtr report(raw);
            out.write(json ? bgn_report_json(raw) : bgn_report_text(raw));
            return strict_exit(strict, bgn_report_converged(raw) != 0);
        } else if (rng->parsed()) {
            bgn_report* raw = nullptr;
            check(bgn_rng_check(&p, n, bins, seed, &raw));
            const ReportPtr report(raw);
            out.write(json ? bgn_report_json(raw) : bgn_report_text(raw));
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
    return kOk;
}
