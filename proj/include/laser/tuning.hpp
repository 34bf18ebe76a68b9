// Noise-scale estimation, the default lambda rule, and K-fold
// cross-validation for lambda.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "laser/discrepancy.hpp"

namespace laser {

/// First-difference MAD estimator: median(|y_{i+1} - y_i|) / (0.6745 * sqrt 2).
double estimate_sigma(std::span<const double> y);

/// 2*sqrt(2) * sigma * sqrt(log n). The constant multiplier is a documented
/// implementation default; only the sigma*sqrt(log n) shape is prescribed.
double default_lambda(double sigma, int n);

/// 15 log-spaced values spanning [0.1, 10] x default_lambda(sigma, n).
std::vector<double> default_lambda_grid(double sigma, int n, int size = 15);

struct CvReport {
    std::vector<double> lambda_grid;
    std::vector<double> cv_error;  // mean held-out squared prediction error per lambda
    double lambda_star = 0.0;
    int folds = 0;
    std::uint64_t seed = 0;
};

/// K-fold cross-validation for lambda. Folds interleave by index residue
/// (fold k holds out {i : i-1 ≡ k mod K}), so every held-out point keeps
/// training neighbors within ~K grid steps. Each held-out point is predicted
/// by the window selected at the nearest training index (ties to the left),
/// evaluating that window's fitted polynomial at the held-out abscissa; the
/// training subsequence keeps its original abscissae. Ties in the argmin
/// break to the largest lambda. The seed is recorded for provenance; the
/// residue folds make the report deterministic without it.
CvReport cv_lambda(std::span<const double> y, int degree, std::span<const double> lambda_grid,
                   int folds, std::uint64_t seed, Variant variant,
                   std::span<const double> design = {});

}  // namespace laser
