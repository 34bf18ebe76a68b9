#include "laser/laser.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "laser/poly_basis.hpp"
#include "laser/tuning.hpp"

namespace laser {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void validate_input(std::span<const double> y) {
    if (y.empty()) throw std::invalid_argument("fit: empty input");
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!std::isfinite(y[i]))
            throw std::invalid_argument("fit: non-finite value at position " +
                                        std::to_string(i + 1));
}

double resolve_lambda(std::span<const double> y, const FitOptions& options) {
    if (options.lambda) {
        if (!(*options.lambda >= 0.0)) throw std::invalid_argument("fit: lambda must be >= 0");
        return *options.lambda;
    }
    const int n = static_cast<int>(y.size());
    if (n < 2) return 0.0;
    return default_lambda(estimate_sigma(y), n);
}

/// Estimate at i0 = the window's fitted polynomial evaluated at x_{i0}.
double evaluate_window(std::span<const double> y, std::span<const double> x,
                       const IntInterval& window, int degree, int i0) {
    const IndexSet set(window, static_cast<int>(y.size()));
    std::vector<double> v(static_cast<std::size_t>(set.size()));
    for (int k = 0; k < set.size(); ++k)
        v[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(set[k] - 1)];
    const PolyBasis basis = build_basis(set, degree, x);
    return eval_fit_at(basis, v, x[static_cast<std::size_t>(i0 - 1)]).value;
}

}  // namespace

FitResult fit(std::span<const double> y, const FitOptions& options,
              std::span<const double> design) {
    validate_input(y);
    const int n = static_cast<int>(y.size());
    const std::vector<double> x = resolve_design(design, n);
    const double lambda = resolve_lambda(y, options);

    FitResult res;
    res.theta_hat.resize(static_cast<std::size_t>(n));
    res.h_hat.resize(static_cast<std::size_t>(n));
    res.lambda = lambda;
    res.degree = options.degree;
    res.variant = options.variant;
    res.semantics = options.semantics;

    int workers = options.threads;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n));

    std::vector<double> select_ms(static_cast<std::size_t>(workers), 0.0);
    std::vector<double> evaluate_ms(static_cast<std::size_t>(workers), 0.0);

    auto run_block = [&](int worker, int i_begin, int i_end) {
        DiscrepancyEngine engine(y, options.degree, x);
        for (int i0 = i_begin; i0 <= i_end; ++i0) {
            const auto t0 = Clock::now();
            const BandwidthResult b = select_bandwidth(engine, i0, lambda, options.variant,
                                                       options.semantics, /*record_trace=*/false);
            select_ms[static_cast<std::size_t>(worker)] += ms_since(t0);
            const auto t1 = Clock::now();
            res.theta_hat[static_cast<std::size_t>(i0 - 1)] =
                evaluate_window(y, x, b.window, options.degree, i0);
            res.h_hat[static_cast<std::size_t>(i0 - 1)] = b.h_hat;
            evaluate_ms[static_cast<std::size_t>(worker)] += ms_since(t1);
        }
    };

    if (workers == 1) {
        run_block(0, 1, n);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const int chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int lo = 1 + w * chunk;
            const int hi = std::min(n, lo + chunk - 1);
            if (lo > hi) break;
            pool.emplace_back(run_block, w, lo, hi);
        }
        for (std::thread& t : pool) t.join();
    }
    for (double v : select_ms) res.select_ms += v;
    for (double v : evaluate_ms) res.evaluate_ms += v;
    return res;
}

FitAtResult fit_at(std::span<const double> y, int i0, const FitOptions& options,
                   std::span<const double> design) {
    validate_input(y);
    const int n = static_cast<int>(y.size());
    const std::vector<double> x = resolve_design(design, n);
    const double lambda = resolve_lambda(y, options);

    DiscrepancyEngine engine(y, options.degree, x);
    FitAtResult res;
    res.bandwidth = select_bandwidth(engine, i0, lambda, options.variant, options.semantics);
    res.estimate = evaluate_window(y, x, res.bandwidth.window, options.degree, i0);
    return res;
}

double predict_at(std::span<const double> y, double x_query, const FitOptions& options,
                  std::span<const double> design) {
    validate_input(y);
    if (!(x_query >= 0.0 && x_query <= 1.0))
        throw std::domain_error("predict_at: query abscissa outside [0, 1]");
    const int n = static_cast<int>(y.size());
    const std::vector<double> x = resolve_design(design, n);

    // Nearest design index; on default abscissae i/n this is round(x*n),
    // half-way queries rounding up. General designs search the sorted x.
    int i0;
    if (design.empty()) {
        i0 = std::max(1, std::min(n, static_cast<int>(std::floor(x_query * n + 0.5))));
    } else {
        i0 = 1;
        double best = std::abs(x[0] - x_query);
        for (int i = 2; i <= n; ++i) {
            const double dist = std::abs(x[static_cast<std::size_t>(i - 1)] - x_query);
            if (dist < best) {
                best = dist;
                i0 = i;
            }
        }
    }

    DiscrepancyEngine engine(y, options.degree, x);
    const double lambda = resolve_lambda(y, options);
    const BandwidthResult b = select_bandwidth(engine, i0, lambda, options.variant,
                                               options.semantics, /*record_trace=*/false);
    const IndexSet set(b.window, n);
    std::vector<double> v(static_cast<std::size_t>(set.size()));
    for (int k = 0; k < set.size(); ++k)
        v[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(set[k] - 1)];
    return eval_fit_at(build_basis(set, options.degree, x), v, x_query).value;
}

}  // namespace laser
