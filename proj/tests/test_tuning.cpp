#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "laser/signals.hpp"
#include "laser/tuning.hpp"

using laser::CvReport;
using laser::SignalKind;
using laser::Variant;

TEST_CASE("first-difference MAD noise estimate") {
    SUBCASE("constant data has zero noise") {
        const std::vector<double> flat(32, 7.0);
        CHECK(laser::estimate_sigma(flat) == 0.0);
    }
    SUBCASE("alternating data has |differences| equal to the step") {
        // |y_{i+1} - y_i| = 2 everywhere, so sigma_hat = 2 / (0.6745 sqrt 2).
        std::vector<double> y(64);
        for (int i = 0; i < 64; ++i) y[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(laser::estimate_sigma(y) - 2.0 / (0.6745 * std::sqrt(2.0))) < 1e-12);
    }
    SUBCASE("gaussian noise is recovered within 10 percent") {
        const std::vector<double> zero(10000, 0.0);
        const std::vector<double> z = laser::add_noise(zero, {.sigma = 1.0, .seed = 5});
        const double s = laser::estimate_sigma(z);
        CHECK(s > 0.9);
        CHECK(s < 1.1);
    }
    SUBCASE("a smooth trend barely inflates the estimate") {
        const int n = 2048;
        const std::vector<double> theta = laser::scale_to_snr(
            laser::generate({.kind = SignalKind::doppler, .n = n}), 4.0, 0.5);
        const std::vector<double> y = laser::add_noise(theta, {.sigma = 0.5, .seed = 9});
        const double s = laser::estimate_sigma(y);
        CHECK(std::abs(s - 0.5) < 0.075);  // within 15 percent despite the signal
    }
    SUBCASE("needs at least two points") {
        const std::vector<double> one{1.0};
        CHECK_THROWS_AS(laser::estimate_sigma(one), std::invalid_argument);
    }
}

TEST_CASE("default lambda rule") {
    CHECK(laser::default_lambda(0.0, 100) == 0.0);
    CHECK(std::abs(laser::default_lambda(1.0, 3) -
                   2.0 * std::sqrt(2.0) * std::sqrt(std::log(3.0))) < 1e-12);
    CHECK(std::abs(laser::default_lambda(0.5, 2048) -
                   std::sqrt(2.0) * std::sqrt(std::log(2048.0))) < 1e-12);
    // Monotone in both arguments.
    CHECK(laser::default_lambda(1.0, 4096) > laser::default_lambda(1.0, 512));
    CHECK(laser::default_lambda(2.0, 512) > laser::default_lambda(1.0, 512));
}

TEST_CASE("default lambda grid") {
    const double sigma = 0.7;
    const int n = 512;
    const double center = laser::default_lambda(sigma, n);
    const std::vector<double> grid = laser::default_lambda_grid(sigma, n);
    REQUIRE(grid.size() == 15);
    CHECK(std::abs(grid.front() - 0.1 * center) < 1e-12 * center);
    CHECK(std::abs(grid.back() - 10.0 * center) < 1e-12 * center);
    CHECK(std::is_sorted(grid.begin(), grid.end()));
    // Log-spaced: constant ratio between neighbors.
    const double ratio = grid[1] / grid[0];
    for (std::size_t k = 1; k + 1 < grid.size(); ++k)
        CHECK(std::abs(grid[k + 1] / grid[k] - ratio) < 1e-9);
}

TEST_CASE("cross-validation on a noiseless trend prefers large lambda") {
    const int n = 64;
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        const double x = double(i) / n;
        y[static_cast<std::size_t>(i - 1)] = 1.0 + 0.5 * x;
    }
    const std::vector<double> grid{0.01, 0.1, 1.0};
    const CvReport report = laser::cv_lambda(y, 1, grid, 4, 0, Variant::full);
    REQUIRE(report.cv_error.size() == 3);
    // Every lambda reproduces the line exactly, so the argmin tie breaks to
    // the largest lambda.
    for (double e : report.cv_error) CHECK(e < 1e-16);
    CHECK(report.lambda_star == 1.0);
    CHECK(report.folds == 4);
}

TEST_CASE("cross-validation separates under- from over-smoothing") {
    const int n = 512;
    const std::vector<double> theta = laser::scale_to_snr(
        laser::generate({.kind = SignalKind::blocks, .n = n}), 4.0, 0.5);
    const std::vector<double> y = laser::add_noise(theta, {.sigma = 0.5, .seed = 17});
    const double sigma_hat = laser::estimate_sigma(y);
    const std::vector<double> grid = laser::default_lambda_grid(sigma_hat, n);
    const CvReport report = laser::cv_lambda(y, 0, grid, 5, 0, Variant::dyadic);

    REQUIRE(report.lambda_grid.size() == grid.size());
    const auto star_pos =
        std::find(grid.begin(), grid.end(), report.lambda_star) - grid.begin();
    const double star_err = report.cv_error[static_cast<std::size_t>(star_pos)];
    // The selected lambda clearly beats both grid endpoints.
    CHECK(star_err < report.cv_error.front());
    CHECK(star_err < report.cv_error.back());
    // And sits in the grid interior for this standard setup.
    CHECK(star_pos > 0);
    CHECK(star_pos + 1 < static_cast<long>(grid.size()));
    // Held-out squared error cannot drop below the noise floor by much.
    CHECK(star_err > 0.5 * 0.25);

    SUBCASE("the report is deterministic") {
        const CvReport again = laser::cv_lambda(y, 0, grid, 5, 0, Variant::dyadic);
        CHECK(again.lambda_star == report.lambda_star);
        CHECK(again.cv_error == report.cv_error);
    }
}

TEST_CASE("leave-one-out runs and stays finite") {
    const int n = 16;
    const std::vector<double> theta = laser::scale_to_snr(
        laser::generate({.kind = SignalKind::check, .n = n}), 4.0, 1.0);
    const std::vector<double> y = laser::add_noise(theta, {.sigma = 1.0, .seed = 23});
    const std::vector<double> grid{0.5, 2.0};
    const CvReport report = laser::cv_lambda(y, 0, grid, n, 0, Variant::full);
    for (double e : report.cv_error) {
        CHECK(std::isfinite(e));
        CHECK(e >= 0.0);
    }
    CHECK((report.lambda_star == 0.5 || report.lambda_star == 2.0));
}

TEST_CASE("cross-validation input validation") {
    const std::vector<double> y{1, 2, 3, 4, 5, 6, 7, 8};
    const std::vector<double> grid{0.5, 1.0};
    CHECK_THROWS_AS(laser::cv_lambda(y, 0, grid, 1, 0, Variant::full), std::invalid_argument);
    CHECK_THROWS_AS(laser::cv_lambda(y, 0, grid, 9, 0, Variant::full), std::invalid_argument);
    const std::vector<double> bad{0.5, -1.0};
    CHECK_THROWS_AS(laser::cv_lambda(y, 0, bad, 2, 0, Variant::full), std::domain_error);
    const std::vector<double> empty;
    CHECK_THROWS_AS(laser::cv_lambda(y, 0, empty, 2, 0, Variant::full), std::invalid_argument);

    SUBCASE("lambda = 0 in the grid is legal") {
        const std::vector<double> with_zero{0.0, 1.0};
        const CvReport report = laser::cv_lambda(y, 0, with_zero, 2, 0, Variant::full);
        CHECK(report.cv_error.size() == 2);
    }
}
