// laser: simulate test signals, fit the adaptive estimator, tune lambda by
// cross-validation, run Monte Carlo benchmarks, and run scaling studies.
//
// Exit codes: 0 ok, 2 usage, 3 parse/file, 4 numeric/domain, 1 unexpected.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "laser/experiments.hpp"
#include "laser/io.hpp"
#include "laser/laser.hpp"
#include "laser/signals.hpp"
#include "laser/tuning.hpp"

namespace {

using nlohmann::json;

constexpr const char* kSignalNames[] = {"blocks", "bumps", "heavisine", "doppler", "check"};

laser::Variant variant_from_string(const std::string& s) {
    if (s == "full") return laser::Variant::full;
    if (s == "dyadic") return laser::Variant::dyadic;
    throw std::invalid_argument("unknown variant: " + s);
}

std::string to_string(laser::Variant v) {
    return v == laser::Variant::full ? "full" : "dyadic";
}

laser::Semantics semantics_from_string(const std::string& s) {
    if (s == "max-good") return laser::Semantics::max_good;
    if (s == "first-failure") return laser::Semantics::first_failure;
    throw std::invalid_argument("unknown semantics: " + s);
}

std::string to_string(laser::Semantics s) {
    return s == laser::Semantics::max_good ? "max-good" : "first-failure";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw laser::io::ParseError("cannot open output file: " + path);
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw laser::io::ParseError("cannot open input file: " + path);
    return in;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out = open_output(path);
    out << text;
    if (!out) throw laser::io::ParseError("write failed: " + path);
}

// ---- simulate ----------------------------------------------------------

struct SimulateArgs {
    std::string signal;
    int n = 2048;
    double snr = 4.0;
    double sigma = 0.5;
    std::uint64_t seed = 1;
    std::string output;
};

int cmd_simulate(const SimulateArgs& a) {
    laser::SignalSpec spec;
    spec.kind = laser::signal_kind_from_string(a.signal);
    spec.n = a.n;
    const std::vector<double> base = laser::generate(spec);
    // sigma = 0 means noiseless output; the SNR scaling then falls back to a
    // unit noise scale so --snr still sets the amplitude (and --snr 0 still
    // zeroes theta).
    const double scale_sigma = a.sigma > 0.0 ? a.sigma : 1.0;
    const std::vector<double> theta = laser::scale_to_snr(base, a.snr, scale_sigma);
    std::vector<double> y = theta;
    if (a.sigma > 0.0) y = laser::add_noise(theta, {a.sigma, a.seed});
    const std::vector<double> x = laser::default_design(a.n);

    std::ostringstream body;
    laser::io::write_simulate_csv(body, x, theta, y);
    write_text(a.output, body.str());
    return 0;
}

// ---- fit ---------------------------------------------------------------

struct FitArgs {
    std::string input;
    int degree = 2;
    std::string lambda = "auto";
    std::string variant = "dyadic";
    std::string semantics = "max-good";
    std::string output;
    int threads = 1;
};

int cmd_fit(const FitArgs& a) {
    std::ifstream in = open_input(a.input);
    const laser::io::FitInput data = laser::io::read_fit_input(in, a.input);
    const int n = static_cast<int>(data.y.size());

    laser::FitOptions opts;
    opts.degree = a.degree;
    opts.variant = variant_from_string(a.variant);
    opts.semantics = semantics_from_string(a.semantics);
    opts.threads = a.threads;

    const double sigma_hat = n >= 2 ? laser::estimate_sigma(data.y) : 0.0;
    std::string lambda_mode = "fixed";
    if (a.lambda == "auto") {
        lambda_mode = "auto";
    } else if (a.lambda == "cv") {
        lambda_mode = "cv";
        const std::vector<double> grid = laser::default_lambda_grid(sigma_hat, n);
        const laser::CvReport report =
            laser::cv_lambda(data.y, a.degree, grid, 5, 0, opts.variant, data.x);
        opts.lambda = report.lambda_star;
    } else {
        opts.lambda = laser::io::parse_double(a.lambda, "--lambda");
    }

    const laser::FitResult fit = laser::fit(data.y, opts, data.x);

    const std::vector<double> x =
        data.x.empty() ? laser::default_design(n) : data.x;
    std::ostringstream body;
    laser::io::write_fit_csv(body, x, data.y, fit);
    write_text(a.output, body.str());

    json sidecar;
    sidecar["n"] = n;
    sidecar["degree"] = fit.degree;
    sidecar["variant"] = to_string(fit.variant);
    sidecar["semantics"] = to_string(fit.semantics);
    sidecar["lambda"] = fit.lambda;
    sidecar["lambda_mode"] = lambda_mode;
    sidecar["sigma_hat"] = sigma_hat;
    sidecar["threads"] = a.threads;
    sidecar["timings"] = {{"select_ms", fit.select_ms}, {"evaluate_ms", fit.evaluate_ms}};
    write_text(a.output + ".json", sidecar.dump(2) + "\n");
    return 0;
}

// ---- tune --------------------------------------------------------------

struct TuneArgs {
    std::string input;
    int degree = 2;
    int folds = 5;
    double grid_min = 0.1;
    double grid_max = 10.0;
    int grid_size = 15;
    std::uint64_t seed = 0;
    std::string variant = "dyadic";
    std::string output;
};

int cmd_tune(const TuneArgs& a) {
    std::ifstream in = open_input(a.input);
    const laser::io::FitInput data = laser::io::read_fit_input(in, a.input);
    const int n = static_cast<int>(data.y.size());

    const double sigma_hat = n >= 2 ? laser::estimate_sigma(data.y) : 0.0;
    std::vector<double> grid;
    if (a.grid_min == 0.1 && a.grid_max == 10.0) {
        grid = laser::default_lambda_grid(sigma_hat, n, a.grid_size);
    } else {
        const double lambda0 = laser::default_lambda(sigma_hat, n);
        const double lo = std::log10(a.grid_min), hi = std::log10(a.grid_max);
        for (int g = 0; g < a.grid_size; ++g)
            grid.push_back(lambda0 *
                           std::pow(10.0, lo + (hi - lo) * g / (a.grid_size - 1)));
    }

    const laser::CvReport report = laser::cv_lambda(
        data.y, a.degree, grid, a.folds, a.seed, variant_from_string(a.variant), data.x);

    json out;
    out["lambda_grid"] = report.lambda_grid;
    out["cv_error"] = report.cv_error;
    out["lambda_star"] = report.lambda_star;
    out["folds"] = report.folds;
    out["seed"] = report.seed;
    out["sigma_hat"] = sigma_hat;
    out["degree"] = a.degree;
    out["variant"] = a.variant;
    write_text(a.output, out.dump(2) + "\n");
    return 0;
}

// ---- bench -------------------------------------------------------------

laser::ExperimentConfig parse_bench_config(const json& j) {
    static const std::vector<std::string> allowed = {
        "signal", "n", "snr", "sigma", "degree", "variant",
        "lambda", "reps", "base_seed", "threads"};
    for (const auto& item : j.items())
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw laser::io::ParseError("config: unknown field '" + item.key() + "'");

    auto fail = [](const std::string& field, const std::string& what) -> laser::io::ParseError {
        return laser::io::ParseError("config: field '" + field + "' " + what);
    };
    auto get_int = [&](const json& o, const std::string& field, int dflt, int lo) {
        if (!o.contains(field)) return dflt;
        if (!o.at(field).is_number_integer()) throw fail(field, "must be an integer");
        const int v = o.at(field).get<int>();
        if (v < lo) throw fail(field, "must be >= " + std::to_string(lo));
        return v;
    };
    auto get_double = [&](const json& o, const std::string& field, double dflt) {
        if (!o.contains(field)) return dflt;
        if (!o.at(field).is_number()) throw fail(field, "must be a number");
        return o.at(field).get<double>();
    };

    laser::ExperimentConfig config;
    if (!j.contains("signal")) throw fail("signal", "is required");
    if (!j.at("signal").is_string()) throw fail("signal", "must be a string");
    const std::string signal = j.at("signal").get<std::string>();
    if (std::find(std::begin(kSignalNames), std::end(kSignalNames), signal) ==
        std::end(kSignalNames))
        throw fail("signal", "must be one of blocks|bumps|heavisine|doppler|check");
    config.signal.kind = laser::signal_kind_from_string(signal);

    if (!j.contains("n")) throw fail("n", "is required");
    config.signal.n = get_int(j, "n", 0, 2);

    config.snr = get_double(j, "snr", config.snr);
    if (config.snr < 0.0) throw fail("snr", "must be >= 0");
    config.sigma = get_double(j, "sigma", config.sigma);
    if (!(config.sigma > 0.0)) throw fail("sigma", "must be > 0");
    config.degree = get_int(j, "degree", config.degree, 0);
    if (j.contains("variant")) {
        if (!j.at("variant").is_string()) throw fail("variant", "must be a string");
        const std::string v = j.at("variant").get<std::string>();
        if (v != "full" && v != "dyadic") throw fail("variant", "must be full|dyadic");
        config.variant = variant_from_string(v);
    }
    if (j.contains("lambda")) {
        const json& l = j.at("lambda");
        if (!l.is_object()) throw fail("lambda", "must be an object");
        for (const auto& item : l.items())
            if (item.key() != "rule" && item.key() != "value" && item.key() != "folds" &&
                item.key() != "grid_size")
                throw laser::io::ParseError("config: unknown field 'lambda." + item.key() + "'");
        if (!l.contains("rule") || !l.at("rule").is_string())
            throw fail("lambda.rule", "is required and must be a string");
        const std::string rule = l.at("rule").get<std::string>();
        if (rule == "fixed") {
            config.lambda_rule.kind = laser::LambdaRule::Kind::fixed;
            if (!l.contains("value")) throw fail("lambda.value", "is required for rule=fixed");
            config.lambda_rule.lambda = get_double(l, "value", 0.0);
            if (config.lambda_rule.lambda < 0.0) throw fail("lambda.value", "must be >= 0");
        } else if (rule == "auto") {
            config.lambda_rule.kind = laser::LambdaRule::Kind::auto_default;
        } else if (rule == "cv") {
            config.lambda_rule.kind = laser::LambdaRule::Kind::cv;
            config.lambda_rule.folds = get_int(l, "folds", config.lambda_rule.folds, 2);
            config.lambda_rule.grid_size =
                get_int(l, "grid_size", config.lambda_rule.grid_size, 2);
        } else {
            throw fail("lambda.rule", "must be fixed|auto|cv");
        }
    }
    config.reps = get_int(j, "reps", config.reps, 1);
    if (j.contains("base_seed")) {
        if (!j.at("base_seed").is_number_integer()) throw fail("base_seed", "must be an integer");
        config.base_seed = j.at("base_seed").get<std::uint64_t>();
    }
    config.threads = get_int(j, "threads", config.threads, 0);
    return config;
}

struct BenchArgs {
    std::string config;
    std::string metrics = "metrics.csv";
    std::string summary = "summary.json";
};

int cmd_bench(const BenchArgs& a) {
    std::ifstream in = open_input(a.config);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw laser::io::ParseError(std::string("config: ") + e.what());
    }
    const laser::ExperimentConfig config = parse_bench_config(j);
    const std::vector<laser::MetricsRow> rows = laser::run_monte_carlo(config);

    std::ostringstream body;
    laser::io::write_metrics_csv(body, rows);
    write_text(a.metrics, body.str());

    std::vector<double> rmse_values;
    double rmse_sum = 0.0, lambda_sum = 0.0, mean_h_sum = 0.0, runtime_sum = 0.0;
    for (const laser::MetricsRow& row : rows) {
        rmse_values.push_back(row.rmse);
        rmse_sum += row.rmse;
        lambda_sum += row.lambda_used;
        mean_h_sum += row.mean_h;
        runtime_sum += row.runtime_ms;
    }
    std::sort(rmse_values.begin(), rmse_values.end());
    const std::size_t mid = rmse_values.size() / 2;
    const double median_rmse = rmse_values.size() % 2 == 1
                                   ? rmse_values[mid]
                                   : 0.5 * (rmse_values[mid - 1] + rmse_values[mid]);
    const double k = static_cast<double>(rows.size());

    json summary;
    summary["signal"] = to_string(config.signal.kind);
    summary["n"] = config.signal.n;
    summary["degree"] = config.degree;
    summary["variant"] = to_string(config.variant);
    summary["reps"] = config.reps;
    summary["mean_rmse"] = rmse_sum / k;
    summary["median_rmse"] = median_rmse;
    summary["mean_lambda"] = lambda_sum / k;
    summary["mean_h"] = mean_h_sum / k;
    summary["timings"] = {{"total_runtime_ms", runtime_sum}, {"mean_runtime_ms", runtime_sum / k}};
    write_text(a.summary, summary.dump(2) + "\n");
    return 0;
}

// ---- scaling -----------------------------------------------------------

struct ScalingArgs {
    std::string study;
    std::vector<int> n_list;
    double sigma = 1.0;
    int degree = -1;  // -1: study default (0 for bandwidth, 1 for runtime)
    std::string variant = "dyadic";
    int reps = 3;
    std::string output;
};

int cmd_scaling(const ScalingArgs& a) {
    json out;
    out["study"] = a.study;
    if (a.study == "bandwidth") {
        const int degree = a.degree < 0 ? 0 : a.degree;
        const laser::BandwidthScalingResult res =
            laser::bandwidth_scaling_study(a.n_list, a.sigma, degree);
        out["sigma"] = a.sigma;
        out["degree"] = degree;
        json points = json::array();
        for (const laser::ScalingPoint& p : res.points)
            points.push_back({{"n", p.n}, {"h_ramp", p.h_ramp}, {"h_flat", p.h_flat}});
        out["points"] = points;
        out["slope"] = res.slope;
    } else {
        const int degree = a.degree < 0 ? 1 : a.degree;
        const std::vector<laser::RuntimePoint> res = laser::runtime_scaling(
            a.n_list, variant_from_string(a.variant), degree, a.reps);
        out["variant"] = a.variant;
        out["degree"] = degree;
        out["reps"] = a.reps;
        json points = json::array();
        for (const laser::RuntimePoint& p : res)
            points.push_back({{"n", p.n}, {"ms", p.ms}});
        out["timings"] = points;
    }
    write_text(a.output, out.dump(2) + "\n");
    return 0;
}

// ---- wiring ------------------------------------------------------------

int run(int argc, char** argv) {
    CLI::App app{"Locally adaptive smoothing: variable-bandwidth local polynomial regression"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Generate a noisy test signal as CSV");
    simulate->add_option("--signal", sim.signal, "Signal name")
        ->required()
        ->check(CLI::IsMember(std::vector<std::string>(std::begin(kSignalNames),
                                                       std::end(kSignalNames))));
    simulate->add_option("--n", sim.n, "Number of samples")->check(CLI::Range(2, 1 << 22));
    simulate->add_option("--snr", sim.snr, "Signal-to-noise ratio sd(theta)/sigma")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--sigma", sim.sigma, "Noise standard deviation (0: noiseless)")
        ->check(CLI::NonNegativeNumber);
    simulate->add_option("--seed", sim.seed, "Noise seed");
    simulate->add_option("--output", sim.output, "Output CSV path (default: stdout)");

    FitArgs fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit the adaptive estimator to a CSV input");
    fit_cmd->add_option("--input", fit.input, "Input CSV with column y (optionally x)")
        ->required();
    fit_cmd->add_option("--degree", fit.degree, "Local polynomial degree")
        ->check(CLI::Range(0, 10));
    fit_cmd->add_option("--lambda", fit.lambda, "Threshold: auto, cv, or a number >= 0")
        ->check([](const std::string& s) -> std::string {
            if (s == "auto" || s == "cv") return {};
            try {
                if (laser::io::parse_double(s, "--lambda") >= 0.0) return {};
            } catch (const laser::io::ParseError&) {
            }
            return "must be auto, cv, or a number >= 0";
        });
    fit_cmd->add_option("--variant", fit.variant, "Split-scan variant")
        ->check(CLI::IsMember({"full", "dyadic"}));
    fit_cmd->add_option("--semantics", fit.semantics, "Bandwidth selection semantics")
        ->check(CLI::IsMember({"max-good", "first-failure"}));
    fit_cmd->add_option("--output", fit.output, "Output CSV path (sidecar: <path>.json)")
        ->required();
    fit_cmd->add_option("--threads", fit.threads, "Worker threads (0: all cores)")
        ->envname("LASER_THREADS")
        ->check(CLI::Range(0, 4096));

    TuneArgs tune;
    CLI::App* tune_cmd =
        app.add_subcommand("tune", "Cross-validate lambda on a CSV input; emits JSON");
    tune_cmd->add_option("--input", tune.input, "Input CSV with column y (optionally x)")
        ->required();
    tune_cmd->add_option("--degree", tune.degree, "Local polynomial degree")
        ->check(CLI::Range(0, 10));
    tune_cmd->add_option("--folds", tune.folds, "Cross-validation folds")
        ->check(CLI::Range(2, 1024));
    tune_cmd->add_option("--grid-min", tune.grid_min, "Grid lower bound, x default lambda")
        ->check(CLI::PositiveNumber);
    tune_cmd->add_option("--grid-max", tune.grid_max, "Grid upper bound, x default lambda")
        ->check(CLI::PositiveNumber);
    tune_cmd->add_option("--grid-size", tune.grid_size, "Grid size")
        ->check(CLI::Range(2, 1024));
    tune_cmd->add_option("--seed", tune.seed, "Recorded in the report");
    tune_cmd->add_option("--variant", tune.variant, "Split-scan variant")
        ->check(CLI::IsMember({"full", "dyadic"}));
    tune_cmd->add_option("--output", tune.output, "Output JSON path (default: stdout)");

    BenchArgs bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "Monte Carlo benchmark from a JSON config");
    bench_cmd->add_option("--config", bench.config, "Experiment config JSON path")->required();
    bench_cmd->add_option("--metrics", bench.metrics, "Metrics CSV output path");
    bench_cmd->add_option("--summary", bench.summary, "Summary JSON output path");

    ScalingArgs scaling;
    CLI::App* scaling_cmd = app.add_subcommand("scaling", "Bandwidth/runtime scaling studies");
    scaling_cmd->add_option("--study", scaling.study, "Study kind")
        ->required()
        ->check(CLI::IsMember({"bandwidth", "runtime"}));
    scaling_cmd->add_option("--n-list", scaling.n_list, "Comma-separated sample sizes")
        ->required()
        ->delimiter(',');
    scaling_cmd->add_option("--sigma", scaling.sigma, "Noise scale in the threshold")
        ->check(CLI::PositiveNumber);
    scaling_cmd->add_option("--degree", scaling.degree, "Local polynomial degree")
        ->check(CLI::Range(0, 10));
    scaling_cmd->add_option("--variant", scaling.variant, "Split-scan variant (runtime study)")
        ->check(CLI::IsMember({"full", "dyadic"}));
    scaling_cmd->add_option("--reps", scaling.reps, "Timing repetitions (runtime study)")
        ->check(CLI::Range(1, 100));
    scaling_cmd->add_option("--output", scaling.output, "Output JSON path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (simulate->parsed()) return cmd_simulate(sim);
    if (fit_cmd->parsed()) return cmd_fit(fit);
    if (tune_cmd->parsed()) return cmd_tune(tune);
    if (bench_cmd->parsed()) return cmd_bench(bench);
    return cmd_scaling(scaling);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const laser::io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
