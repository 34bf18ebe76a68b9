#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "laser/interval.hpp"
#include "support/oracle.hpp"

using laser::IndexSet;
using laser::IntInterval;

// Sanity checks of the slow reference implementations themselves, on inputs
// simple enough to verify by hand.

TEST_CASE("oracle least squares on tiny inputs") {
    const int n = 8;
    SUBCASE("degree-r polynomials have zero residual") {
        for (int r = 0; r <= 3; ++r) {
            std::vector<double> y(n);
            for (int i = 1; i <= n; ++i)
                y[static_cast<std::size_t>(i - 1)] = std::pow(double(i) / n, r) - 2.0;
            const IndexSet all(IntInterval(1, n), n);
            CHECK(laser::oracle::oracle_rss(all, r, y) < 1e-12);
        }
    }
    SUBCASE("an interpolating set has zero residual by convention") {
        const std::vector<double> pair_values{4, -1};
        const IndexSet pair(IntInterval(3, 4), n);
        CHECK(laser::oracle::oracle_rss(pair, 1, pair_values) == 0.0);
    }
    SUBCASE("the centered mean residual is exact") {
        const std::vector<double> window_values{0, 0, 1, 1};
        const IndexSet all(IntInterval(1, 4), n);
        // rss = sum (y - 1/2)^2 = 4 * 1/4.
        CHECK(std::abs(laser::oracle::oracle_rss(all, 0, window_values) - 1.0) < 1e-12);
    }
    SUBCASE("the size guard trips") {
        const int big = 600;
        std::vector<double> y(static_cast<std::size_t>(big), 1.0);
        const IndexSet all(IntInterval(1, big), big);
        CHECK_THROWS_AS(laser::oracle::oracle_rss(all, 0, y), std::invalid_argument);
    }
}

TEST_CASE("oracle split statistic on the step") {
    const std::vector<double> y{0, 0, 1, 1};
    const auto res = laser::oracle::oracle_t_stat(y, IntInterval(1, 4), 0);
    CHECK(std::abs(res.t_value - 1.0) < 1e-12);
    CHECK(res.argmax.inner == IntInterval(1, 2));
    CHECK(res.n_splits_scanned == 9);

    SUBCASE("degenerate windows") {
        const auto single = laser::oracle::oracle_t_stat(y, IntInterval(2, 2), 0);
        CHECK(single.t_value == 0.0);
        CHECK(single.n_splits_scanned == 0);
        const auto small = laser::oracle::oracle_t_stat(y, IntInterval(2, 3), 1);
        CHECK(small.t_value == 0.0);
        CHECK(small.argmax.inner == IntInterval(2, 2));
    }
    SUBCASE("the size guard trips") {
        const int big = 200;
        std::vector<double> data(static_cast<std::size_t>(big), 0.0);
        CHECK_THROWS_AS(laser::oracle::oracle_t_stat(data, IntInterval(1, big), 0),
                        std::invalid_argument);
    }
}

TEST_CASE("oracle fit implements the literal definition") {
    SUBCASE("a huge lambda keeps the global fit everywhere") {
        const std::vector<double> y{5, 1, 4, 2, 3, 3, 4, 2};
        const auto res = laser::oracle::oracle_fit(y, 0, 1e9);
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= 8.0;
        for (int i = 0; i < 8; ++i) {
            CHECK(res.h_hat[static_cast<std::size_t>(i)] == 7);
            CHECK(std::abs(res.theta_hat[static_cast<std::size_t>(i)] - mean) < 1e-12);
        }
    }
    SUBCASE("lambda = 0 on rough data returns the data itself") {
        const std::vector<double> y{5, 1, 4, 2, 3, 7, 4, 2};
        const auto res = laser::oracle::oracle_fit(y, 0, 0.0);
        for (int i = 0; i < 8; ++i) {
            CHECK(res.h_hat[static_cast<std::size_t>(i)] == 0);
            CHECK(res.theta_hat[static_cast<std::size_t>(i)] == y[static_cast<std::size_t>(i)]);
        }
    }
    SUBCASE("the step keeps windows inside each plateau") {
        const std::vector<double> y{0, 0, 0, 0, 1, 1, 1, 1};
        const auto res = laser::oracle::oracle_fit(y, 0, 0.5);
        CHECK(res.h_hat[1] == 2);
        CHECK(std::abs(res.theta_hat[1]) < 1e-12);
        CHECK(std::abs(res.theta_hat[6] - 1.0) < 1e-12);
    }
    SUBCASE("the size guard trips") {
        std::vector<double> y(65, 0.0);
        CHECK_THROWS_AS(laser::oracle::oracle_fit(y, 0, 1.0), std::invalid_argument);
    }
}
