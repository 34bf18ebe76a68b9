// Test-signal generation, SNR scaling, and seedable Gaussian noise.
//
// The four classic denoising test functions (blocks, bumps, heavisine,
// doppler) use the constants of the standard 1994 reference suite; `check` is
// the ramp f(x) = (x - 1/2) * 1{x >= 1/2}; `piecewise_poly` evaluates custom
// per-piece polynomial coefficients between breakpoints. Signals are sampled
// at x_i = i/n for i = 1..n.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace laser {

enum class SignalKind { blocks, bumps, heavisine, doppler, check, piecewise_poly };

struct SignalSpec {
    SignalKind kind = SignalKind::doppler;
    int n = 2;
    // piecewise_poly only: pieces are [0, b_1), [b_1, b_2), ..., [b_k, 1];
    // piece_coeffs[j] holds ascending-power coefficients in x for piece j.
    std::vector<double> breakpoints;
    std::vector<std::vector<double>> piece_coeffs;
};

struct NoiseSpec {
    double sigma = 1.0;
    std::uint64_t seed = 0;
    enum class Dist { gaussian } distribution = Dist::gaussian;
};

/// Sample the signal at i/n, i = 1..n.
std::vector<double> generate(const SignalSpec& spec);

/// Population standard deviation sqrt(mean(v^2) - mean(v)^2).
double signal_sd(std::span<const double> v);

/// theta = snr * sigma * v / sd(v), so that sd(theta)/sigma = snr.
std::vector<double> scale_to_snr(std::span<const double> v, double snr, double sigma);

/// y = theta + sigma * z with z iid standard Gaussian from the seeded
/// generator (Box-Muller over a 64-bit Mersenne Twister); bit-reproducible
/// for a fixed seed.
std::vector<double> add_noise(std::span<const double> theta, const NoiseSpec& noise);

SignalKind signal_kind_from_string(const std::string& name);
std::string to_string(SignalKind kind);

}  // namespace laser
