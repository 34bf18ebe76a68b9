#include "laser/bandwidth.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace laser {

namespace {

void validate_location(int i0, int n, double lambda) {
    if (i0 < 1 || i0 > n)
        throw std::invalid_argument("bandwidth: location " + std::to_string(i0) +
                                    " outside [1, " + std::to_string(n) + "]");
    if (!(lambda >= 0.0))
        throw std::invalid_argument("bandwidth: lambda must be >= 0");
}

}  // namespace

std::vector<int> default_h_grid(int n, Variant variant) {
    std::vector<int> grid{0};
    if (variant == Variant::full) {
        for (int h = 1; h <= n - 1; ++h) grid.push_back(h);
    } else {
        for (int h = 1; h <= n - 1; h <<= 1) grid.push_back(h);
    }
    return grid;
}

std::vector<BandwidthProbe> good_set(DiscrepancyEngine& engine, int i0, double lambda,
                                     Variant variant, std::span<const int> h_grid) {
    const int n = engine.n();
    validate_location(i0, n, lambda);
    std::vector<int> grid;
    if (h_grid.empty()) {
        grid = default_h_grid(n, variant);
    } else {
        grid.assign(h_grid.begin(), h_grid.end());
        for (int h : grid)
            if (h < 0 || h > n - 1)
                throw std::invalid_argument("good_set: bandwidth " + std::to_string(h) +
                                            " outside [0, " + std::to_string(n - 1) + "]");
    }
    std::vector<BandwidthProbe> probes;
    probes.reserve(grid.size());
    for (int h : grid) {
        const double t = engine.t_exact(IntInterval::window(i0, h, n), variant).t_value;
        probes.push_back(BandwidthProbe{h, t, t <= lambda});
    }
    return probes;
}

std::vector<BandwidthProbe> good_set(std::span<const double> y, int i0, int degree,
                                     double lambda, Variant variant, std::span<const int> h_grid,
                                     std::span<const double> design) {
    DiscrepancyEngine engine(y, degree, design);
    return good_set(engine, i0, lambda, variant, h_grid);
}

BandwidthResult select_bandwidth(DiscrepancyEngine& engine, int i0, double lambda,
                                 Variant variant, Semantics semantics, bool record_trace) {
    const int n = engine.n();
    validate_location(i0, n, lambda);
    const std::vector<int> grid = default_h_grid(n, variant);

    BandwidthResult res;
    res.i0 = i0;
    res.semantics = semantics;
    res.variant = variant;

    if (semantics == Semantics::max_good) {
        // Scan from the top; the first good h is the max of the good set.
        // h = 0 is always good (singleton windows have T = 0), so the scan
        // terminates.
        for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
            double t = 0.0;
            const bool good = engine.is_good(IntInterval::window(i0, *it, n), lambda, variant, &t);
            if (record_trace) res.trace.push_back(BandwidthProbe{*it, t, good});
            if (good) {
                res.h_hat = *it;
                break;
            }
        }
    } else {
        res.h_hat = 0;
        for (int h : grid) {
            double t = 0.0;
            const bool good = engine.is_good(IntInterval::window(i0, h, n), lambda, variant, &t);
            if (record_trace) res.trace.push_back(BandwidthProbe{h, t, good});
            if (!good) break;
            res.h_hat = h;
        }
    }
    res.window = IntInterval::window(i0, res.h_hat, n);
    return res;
}

BandwidthResult select_bandwidth(std::span<const double> y, int i0, int degree, double lambda,
                                 Variant variant, Semantics semantics,
                                 std::span<const double> design) {
    DiscrepancyEngine engine(y, degree, design);
    return select_bandwidth(engine, i0, lambda, variant, semantics);
}

BseReport check_bse(std::span<const double> theta_star, std::span<const double> eps,
                    const std::vector<BandwidthResult>& fit, double lambda, int degree) {
    if (theta_star.size() != eps.size())
        throw std::invalid_argument("check_bse: theta_star and eps length mismatch");
    const int n = static_cast<int>(theta_star.size());
    constexpr double kSlack = 1e-9;

    BseReport report;
    report.effective_noise_value = effective_noise(eps, degree, Variant::full);
    const double e = report.effective_noise_value;

    DiscrepancyEngine engine(theta_star, degree);
    const IntInterval whole(1, n);
    for (const BandwidthResult& b : fit) {
        BseRow row{b.i0, 0.0, std::numeric_limits<double>::quiet_NaN(), false, true};
        row.t_window = engine.t_exact(b.window, Variant::full).t_value;
        row.upper_ok = row.t_window <= lambda + e + kSlack;
        if (!(b.window == whole)) {
            const IntInterval grown = IntInterval::window(b.i0, b.h_hat + 1, n);
            row.t_grown = engine.t_exact(grown, Variant::full).t_value;
            row.lower_ok = row.t_grown >= lambda - e - kSlack;
        }
        if (row.upper_ok && row.lower_ok) ++report.n_pass;
        report.rows.push_back(row);
    }
    report.pass_fraction = fit.empty() ? 1.0 : double(report.n_pass) / double(fit.size());
    return report;
}

}  // namespace laser
