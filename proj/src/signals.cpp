#include "laser/signals.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace laser {

namespace {

// Breakpoints shared by blocks and bumps, and the per-signal heights/widths,
// from the standard 1994 test-function suite.
constexpr double kKnots[11] = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                               0.44, 0.65, 0.76, 0.78, 0.81};
constexpr double kBlockHeights[11] = {4.0, -5.0, 3.0, -4.0, 5.0, -4.2,
                                      2.1, 4.3, -3.1, 2.1, -4.2};
constexpr double kBumpHeights[11] = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                                     2.1, 4.3, 3.1, 5.1, 4.2};
constexpr double kBumpWidths[11] = {0.005, 0.005, 0.006, 0.01,  0.01, 0.03,
                                    0.01,  0.01,  0.005, 0.008, 0.005};

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double eval_blocks(double x) {
    double s = 0.0;
    for (int j = 0; j < 11; ++j) s += kBlockHeights[j] * 0.5 * (1.0 + sgn(x - kKnots[j]));
    return s;
}

double eval_bumps(double x) {
    double s = 0.0;
    for (int j = 0; j < 11; ++j) {
        const double t = (x - kKnots[j]) / kBumpWidths[j];
        const double b = 1.0 + std::abs(t);
        s += kBumpHeights[j] / (b * b * b * b);
    }
    return s;
}

double eval_heavisine(double x) {
    return 4.0 * std::sin(4.0 * M_PI * x) - sgn(x - 0.3) - sgn(0.72 - x);
}

double eval_doppler(double x) {
    return std::sqrt(x * (1.0 - x)) * std::sin(2.0 * M_PI * 1.05 / (x + 0.05));
}

double eval_check(double x) { return x >= 0.5 ? x - 0.5 : 0.0; }

double eval_piecewise(const SignalSpec& spec, double x) {
    std::size_t piece = 0;
    while (piece < spec.breakpoints.size() && x >= spec.breakpoints[piece]) ++piece;
    const std::vector<double>& c = spec.piece_coeffs[piece];
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

}  // namespace

std::vector<double> generate(const SignalSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("generate: n must be >= 2");
    if (spec.kind == SignalKind::piecewise_poly) {
        if (spec.piece_coeffs.size() != spec.breakpoints.size() + 1)
            throw std::invalid_argument(
                "generate: piecewise_poly needs one coefficient set per piece");
        for (std::size_t j = 1; j < spec.breakpoints.size(); ++j)
            if (!(spec.breakpoints[j] > spec.breakpoints[j - 1]))
                throw std::invalid_argument("generate: breakpoints must increase");
    }

    std::vector<double> out(static_cast<std::size_t>(spec.n));
    for (int i = 1; i <= spec.n; ++i) {
        const double x = static_cast<double>(i) / spec.n;
        double v;
        switch (spec.kind) {
            case SignalKind::blocks: v = eval_blocks(x); break;
            case SignalKind::bumps: v = eval_bumps(x); break;
            case SignalKind::heavisine: v = eval_heavisine(x); break;
            case SignalKind::doppler: v = eval_doppler(x); break;
            case SignalKind::check: v = eval_check(x); break;
            case SignalKind::piecewise_poly: v = eval_piecewise(spec, x); break;
            default: throw std::invalid_argument("generate: unknown signal kind");
        }
        out[static_cast<std::size_t>(i - 1)] = v;
    }
    return out;
}

double signal_sd(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("signal_sd: empty input");
    double mean = 0.0, mean_sq = 0.0;
    for (double x : v) {
        mean += x;
        mean_sq += x * x;
    }
    mean /= static_cast<double>(v.size());
    mean_sq /= static_cast<double>(v.size());
    return std::sqrt(std::max(mean_sq - mean * mean, 0.0));
}

std::vector<double> scale_to_snr(std::span<const double> v, double snr, double sigma) {
    const double sd = signal_sd(v);
    if (!(sd > 0.0))
        throw std::invalid_argument("scale_to_snr: constant signal has no scale");
    const double factor = snr * sigma / sd;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = factor * v[i];
    return out;
}

std::vector<double> add_noise(std::span<const double> theta, const NoiseSpec& noise) {
    if (!(std::isfinite(noise.sigma) && noise.sigma > 0.0))
        throw std::invalid_argument("add_noise: sigma must be finite and positive");
    std::mt19937_64 rng(noise.seed);
    // Box-Muller, hand-rolled for a stable cross-version stream: u1 in (0,1],
    // u2 in [0,1), both from the top 53 bits of the generator.
    bool have_spare = false;
    double spare = 0.0;
    auto gauss = [&]() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        const double u1 = 1.0 - std::ldexp(static_cast<double>(rng() >> 11), -53);
        const double u2 = std::ldexp(static_cast<double>(rng() >> 11), -53);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare = rad * std::sin(2.0 * M_PI * u2);
        have_spare = true;
        return rad * std::cos(2.0 * M_PI * u2);
    };
    std::vector<double> out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) out[i] = theta[i] + noise.sigma * gauss();
    return out;
}

SignalKind signal_kind_from_string(const std::string& name) {
    if (name == "blocks") return SignalKind::blocks;
    if (name == "bumps") return SignalKind::bumps;
    if (name == "heavisine") return SignalKind::heavisine;
    if (name == "doppler") return SignalKind::doppler;
    if (name == "check") return SignalKind::check;
    if (name == "piecewise_poly") return SignalKind::piecewise_poly;
    throw std::invalid_argument("unknown signal kind: " + name);
}

std::string to_string(SignalKind kind) {
    switch (kind) {
        case SignalKind::blocks: return "blocks";
        case SignalKind::bumps: return "bumps";
        case SignalKind::heavisine: return "heavisine";
        case SignalKind::doppler: return "doppler";
        case SignalKind::check: return "check";
        case SignalKind::piecewise_poly: return "piecewise_poly";
    }
    throw std::invalid_argument("unknown signal kind");
}

}  // namespace laser
