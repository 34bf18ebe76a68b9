// Good-bandwidth sets and the per-location bandwidth selector.
//
// A bandwidth h is "good" at location i0 when T_y([i0 +- h]) <= lambda, with
// the window truncated at the sample boundary. The selector returns, under
// max_good semantics, the largest good h on the grid (the definition: scan
// from the top, stop at the first good h); under first_failure semantics it
// grows h from 0 and stops just before the first bad h. The two coincide
// exactly when the good set is downward-closed.

#pragma once

#include <span>
#include <vector>

#include "laser/discrepancy.hpp"
#include "laser/interval.hpp"

namespace laser {

enum class Semantics { max_good, first_failure };

/// One scanned bandwidth. For good probes t_value is the exact T of the
/// window; for rejected probes under max_good it may be a witness: the
/// sqrt(Q) of a scanned split that exceeds lambda (still a true lower bound
/// of T, so the trace invariant t_value > lambda holds at every rejected h).
struct BandwidthProbe {
    int h;
    double t_value;
    bool good;
};

struct BandwidthResult {
    int i0 = 0;
    int h_hat = 0;
    IntInterval window;
    std::vector<BandwidthProbe> trace;  // in scan order
    Semantics semantics = Semantics::max_good;
    Variant variant = Variant::full;
};

/// Default bandwidth grid: all of {0, ..., n-1} (full) or {0} plus the powers
/// of two below n (dyadic), ascending.
std::vector<int> default_h_grid(int n, Variant variant);

/// Exact T and goodness flag for every h in the grid, ascending.
std::vector<BandwidthProbe> good_set(std::span<const double> y, int i0, int degree,
                                     double lambda, Variant variant,
                                     std::span<const int> h_grid = {},
                                     std::span<const double> design = {});
std::vector<BandwidthProbe> good_set(DiscrepancyEngine& engine, int i0, double lambda,
                                     Variant variant, std::span<const int> h_grid = {});

BandwidthResult select_bandwidth(std::span<const double> y, int i0, int degree, double lambda,
                                 Variant variant, Semantics semantics = Semantics::max_good,
                                 std::span<const double> design = {});
BandwidthResult select_bandwidth(DiscrepancyEngine& engine, int i0, double lambda,
                                 Variant variant, Semantics semantics = Semantics::max_good,
                                 bool record_trace = true);

/// Per-location check of the bandwidth selection inequalities on one noise
/// realization: with E = effective_noise(eps, degree, full) and windows from
/// a full-variant max_good fit of y = theta_star + eps,
///   T_theta_star(window)            <= lambda + E   (upper), and
///   T_theta_star(window grown by 1) >= lambda - E   (lower, skipped when the
///                                                    window is all of [1,n]).
/// Both hold deterministically for the realized E; comparisons carry 1e-9
/// slack for the floating-point reductions.
struct BseRow {
    int i0;
    double t_window;
    double t_grown;  // NaN when the window is already maximal
    bool upper_ok;
    bool lower_ok;
};
struct BseReport {
    double effective_noise_value = 0.0;
    std::vector<BseRow> rows;
    int n_pass = 0;
    double pass_fraction = 0.0;
};

BseReport check_bse(std::span<const double> theta_star, std::span<const double> eps,
                    const std::vector<BandwidthResult>& fit, double lambda, int degree);

}  // namespace laser
