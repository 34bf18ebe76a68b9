#include "laser/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "laser/poly_basis.hpp"
#include "laser/tuning.hpp"

namespace laser {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

double rmse(std::span<const double> theta_hat, std::span<const double> theta) {
    if (theta_hat.size() != theta.size())
        throw std::invalid_argument("rmse: length mismatch");
    if (theta.empty()) throw std::invalid_argument("rmse: empty input");
    double s = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double d = theta_hat[i] - theta[i];
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(theta.size()));
}

std::vector<MetricsRow> run_monte_carlo(const ExperimentConfig& config) {
    if (config.reps < 1) throw std::invalid_argument("run_monte_carlo: reps must be >= 1");
    const std::vector<double> raw = generate(config.signal);
    const std::vector<double> theta = scale_to_snr(raw, config.snr, config.sigma);

    std::vector<MetricsRow> rows;
    rows.reserve(static_cast<std::size_t>(config.reps));
    for (int rep = 0; rep < config.reps; ++rep) {
        const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(rep);
        const std::vector<double> y = add_noise(theta, NoiseSpec{config.sigma, seed});

        const auto t0 = Clock::now();
        FitOptions options;
        options.degree = config.degree;
        options.variant = config.variant;
        options.threads = config.threads;
        switch (config.lambda_rule.kind) {
            case LambdaRule::Kind::fixed:
                options.lambda = config.lambda_rule.lambda;
                break;
            case LambdaRule::Kind::auto_default:
                break;  // resolved inside fit from the estimated sigma
            case LambdaRule::Kind::cv: {
                const std::vector<double> grid = default_lambda_grid(
                    estimate_sigma(y), config.signal.n, config.lambda_rule.grid_size);
                options.lambda = cv_lambda(y, config.degree, grid, config.lambda_rule.folds,
                                           seed, config.variant)
                                     .lambda_star;
                break;
            }
        }
        const FitResult fit_result = fit(y, options);

        MetricsRow row;
        row.rep = rep;
        row.rmse = rmse(fit_result.theta_hat, theta);
        row.lambda_used = fit_result.lambda;
        double h_sum = 0.0;
        for (int h : fit_result.h_hat) h_sum += h;
        row.mean_h = h_sum / static_cast<double>(fit_result.h_hat.size());
        row.runtime_ms = ms_since(t0);
        rows.push_back(row);
    }
    return rows;
}

std::vector<double> baseline_fixed_bandwidth(std::span<const double> y, int degree, int h,
                                             std::span<const double> design) {
    const int n = static_cast<int>(y.size());
    if (n < 1) throw std::invalid_argument("baseline_fixed_bandwidth: empty input");
    if (h < 0 || h > n - 1)
        throw std::invalid_argument("baseline_fixed_bandwidth: h outside [0, n-1]");
    const std::vector<double> x = resolve_design(design, n);

    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i0 = 1; i0 <= n; ++i0) {
        const IndexSet set(IntInterval::window(i0, h, n), n);
        std::vector<double> v(static_cast<std::size_t>(set.size()));
        for (int k = 0; k < set.size(); ++k)
            v[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(set[k] - 1)];
        out[static_cast<std::size_t>(i0 - 1)] =
            eval_fit_at(build_basis(set, degree, x), v, x[static_cast<std::size_t>(i0 - 1)]).value;
    }
    return out;
}

BandwidthScalingResult bandwidth_scaling_study(std::span<const int> n_list, double sigma,
                                               int degree) {
    if (n_list.size() < 4)
        throw std::invalid_argument("bandwidth_scaling_study: need at least 4 sizes");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("bandwidth_scaling_study: sizes must increase");

    BandwidthScalingResult res;
    for (int n : n_list) {
        const std::vector<double> theta = generate(SignalSpec{SignalKind::check, n});
        DiscrepancyEngine engine(theta, degree);
        const double lam = sigma * std::sqrt(std::log(static_cast<double>(n)));
        auto oracle_h = [&](int i0) {
            for (int h = n - 1; h > 0; --h) {
                if (engine.t_plain(IntInterval::window(i0, h, n), Variant::dyadic) <= lam)
                    return h;
            }
            return 0;
        };
        res.points.push_back(ScalingPoint{n, oracle_h(3 * n / 4), oracle_h(3 * n / 8)});
    }

    // Least-squares slope of log h on log n at the ramp location.
    const std::size_t m = res.points.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const ScalingPoint& p : res.points) {
        const double lx = std::log(static_cast<double>(p.n));
        const double ly = std::log(static_cast<double>(std::max(p.h_ramp, 1)));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    res.slope = (sxy - sx * sy / static_cast<double>(m)) /
                (sxx - sx * sx / static_cast<double>(m));
    return res;
}

std::vector<RuntimePoint> runtime_scaling(std::span<const int> n_list, Variant variant,
                                          int degree, int reps) {
    if (reps < 1) throw std::invalid_argument("runtime_scaling: reps must be >= 1");
    for (std::size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw std::invalid_argument("runtime_scaling: sizes must increase");

    std::vector<RuntimePoint> out;
    for (int n : n_list) {
        if (variant == Variant::full && n > 256)
            throw std::invalid_argument(
                "runtime_scaling: full variant guarded to n <= 256 (cost grows as n^5)");
        std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
        const std::vector<double> y = add_noise(zero, NoiseSpec{1.0, 7u + static_cast<std::uint64_t>(n)});
        FitOptions options;
        options.degree = degree;
        options.lambda = default_lambda(1.0, n);
        options.variant = variant;

        std::vector<double> times(static_cast<std::size_t>(reps));
        for (int rep = 0; rep < reps; ++rep) {
            const auto t0 = Clock::now();
            fit(y, options);
            times[static_cast<std::size_t>(rep)] = ms_since(t0);
        }
        std::nth_element(times.begin(), times.begin() + static_cast<std::ptrdiff_t>(reps / 2),
                         times.end());
        out.push_back(RuntimePoint{n, times[static_cast<std::size_t>(reps / 2)]});
    }
    return out;
}

}  // namespace laser
