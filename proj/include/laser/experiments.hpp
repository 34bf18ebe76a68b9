// Monte Carlo benchmark harness, metrics, fixed-bandwidth baselines, and the
// bandwidth/runtime scaling studies.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "laser/laser.hpp"
#include "laser/signals.hpp"

namespace laser {

struct LambdaRule {
    enum class Kind { fixed, auto_default, cv } kind = Kind::auto_default;
    double lambda = 0.0;  // fixed only
    int folds = 5;        // cv only
    int grid_size = 15;   // cv only
};

struct ExperimentConfig {
    SignalSpec signal;
    double snr = 4.0;
    double sigma = 0.5;
    int degree = 2;
    Variant variant = Variant::dyadic;
    LambdaRule lambda_rule;
    int reps = 1;
    std::uint64_t base_seed = 1;
    int threads = 1;
};

struct MetricsRow {
    int rep = 0;
    double rmse = 0.0;
    double lambda_used = 0.0;
    double mean_h = 0.0;
    double runtime_ms = 0.0;
};

double rmse(std::span<const double> theta_hat, std::span<const double> theta);

/// Replication k uses seed base_seed + k: theta from scale_to_snr, y from
/// add_noise, lambda per the rule, then a fit; bit-reproducible apart from
/// the runtime column.
std::vector<MetricsRow> run_monte_carlo(const ExperimentConfig& config);

/// Degree-r fit on the truncated window [i0 +- h] at every i0 (the
/// non-adaptive comparison baseline).
std::vector<double> baseline_fixed_bandwidth(std::span<const double> y, int degree, int h,
                                             std::span<const double> design = {});

/// Noiseless-oracle bandwidth growth on the ramp signal f(x) = (x-1/2)1{x>=1/2}:
/// for each n, the largest h with T(theta, [i0 +- h]) <= sigma*sqrt(log n)
/// under the dyadic split scan, at i0 = floor(3n/4) (ramp interior) and
/// i0 = floor(3n/8) (flat region, where any window inside the flat half is
/// free). Returns the least-squares slope of log h vs log n at the ramp
/// location.
struct ScalingPoint {
    int n;
    int h_ramp;  // i0 = floor(3n/4)
    int h_flat;  // i0 = floor(3n/8)
};
struct BandwidthScalingResult {
    std::vector<ScalingPoint> points;
    double slope = 0.0;
};
BandwidthScalingResult bandwidth_scaling_study(std::span<const int> n_list, double sigma,
                                               int degree = 0);

/// Wall-times of whole fits on seeded white noise, median over `reps` runs
/// per n. The full variant is guarded to n <= 256; only ratios between
/// consecutive n are meaningful.
struct RuntimePoint {
    int n;
    double ms;
};
std::vector<RuntimePoint> runtime_scaling(std::span<const int> n_list, Variant variant,
                                          int degree = 1, int reps = 3);

}  // namespace laser
