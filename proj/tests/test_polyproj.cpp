#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "laser/poly_basis.hpp"
#include "support/oracle.hpp"

using laser::IndexSet;
using laser::IntInterval;
using laser::PolyBasis;

namespace {

std::vector<int> range_set(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double a : v) s += a * a;
    return s;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> random_vector(std::mt19937_64& rng, int m) {
    std::normal_distribution<double> g;
    std::vector<double> v(static_cast<std::size_t>(m));
    for (double& a : v) a = g(rng);
    return v;
}

// Degree-`deg` polynomial in x with given coefficients, sampled on a set.
std::vector<double> poly_on_set(const IndexSet& set, const std::vector<double>& coef) {
    std::vector<double> v;
    for (int k = 0; k < set.size(); ++k) {
        const double x = double(set[k]) / set.ambient_size();
        double p = 0.0;
        for (std::size_t j = coef.size(); j-- > 0;) p = p * x + coef[j];
        v.push_back(p);
    }
    return v;
}

}  // namespace

TEST_CASE("constant basis over four points") {
    const IndexSet set(IntInterval(1, 4), 4);
    const PolyBasis basis = laser::build_basis(set, 0);
    REQUIRE(basis.effective_dim == 1);
    for (int k = 0; k < 4; ++k) CHECK(basis.columns[k] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("singleton set collapses to dimension one") {
    const IndexSet set({5}, 10);
    const PolyBasis basis = laser::build_basis(set, 2);
    CHECK(basis.effective_dim == 1);
    CHECK(std::abs(basis.columns[0]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("degree-1 basis columns are orthonormal") {
    const IndexSet set(IntInterval(1, 8), 8);
    const PolyBasis basis = laser::build_basis(set, 1);
    REQUIRE(basis.effective_dim == 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            double g = 0.0;
            for (int i = 0; i < 8; ++i) g += basis.columns[a * 8 + i] * basis.columns[b * 8 + i];
            CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
}

TEST_CASE("empty index set is rejected at construction") {
    CHECK_THROWS_AS(IndexSet(std::vector<int>{}, 4), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet(IntInterval(3, 2), 4), std::invalid_argument);
}

TEST_CASE("projection examples") {
    const IndexSet set(IntInterval(1, 4), 4);
    const PolyBasis basis = laser::build_basis(set, 0);

    SUBCASE("constant vector is invariant") {
        const std::vector<double> v{1, 1, 1, 1};
        const std::vector<double> p = laser::project(basis, v);
        for (double a : p) CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("step projects to its mean") {
        const std::vector<double> v{0, 0, 1, 1};
        const std::vector<double> p = laser::project(basis, v);
        for (double a : p) CHECK(a == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("length mismatch throws") {
        CHECK_THROWS_AS(laser::project(basis, std::vector<double>{1, 2}), std::invalid_argument);
    }
}

TEST_CASE("linear vector is reproduced at degree 1") {
    const IndexSet set(IntInterval(1, 6), 6);
    const PolyBasis basis = laser::build_basis(set, 1);
    const std::vector<double> v = poly_on_set(set, {0.0, 1.0});  // v_i = x_i
    const std::vector<double> p = laser::project(basis, v);
    for (int k = 0; k < 6; ++k) CHECK(std::abs(p[k] - v[k]) < 1e-10);
}

TEST_CASE("projection is idempotent") {
    std::mt19937_64 rng(11);
    const IndexSet set(IntInterval(3, 19), 32);
    for (int r = 0; r <= 3; ++r) {
        const PolyBasis basis = laser::build_basis(set, r);
        const std::vector<double> v = random_vector(rng, set.size());
        const std::vector<double> p1 = laser::project(basis, v);
        const std::vector<double> p2 = laser::project(basis, p1);
        for (int k = 0; k < set.size(); ++k) CHECK(std::abs(p2[k] - p1[k]) < 1e-10);
    }
}

TEST_CASE("rss examples") {
    const IndexSet set(IntInterval(1, 4), 4);
    const PolyBasis basis = laser::build_basis(set, 0);
    const std::vector<double> step{0, 0, 1, 1};
    CHECK(laser::rss(basis, step) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("interpolating window has zero rss") {
        const IndexSet pair(IntInterval(2, 3), 4);
        const PolyBasis interp = laser::build_basis(pair, 1);  // |S| = r+1
        CHECK(laser::rss(interp, std::vector<double>{-7.0, 3.5}) == 0.0);
    }
    SUBCASE("in-span vector has zero rss") {
        std::vector<double> scaled(4);
        for (int k = 0; k < 4; ++k) scaled[k] = 3.0 * basis.columns[k];
        CHECK(laser::rss(basis, scaled) < 1e-18);
    }
    SUBCASE("length mismatch throws") {
        CHECK_THROWS_AS(laser::rss(basis, std::vector<double>{1.0}), std::invalid_argument);
    }
}

TEST_CASE("rss agrees with the dense normal-equations oracle") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> pick_n(4, 64);
    std::uniform_int_distribution<int> pick_r(0, 3);
    for (int rep = 0; rep < 1000; ++rep) {
        const int n = pick_n(rng);
        const int r = pick_r(rng);
        std::uniform_int_distribution<int> pick_lo(1, n);
        const int lo = pick_lo(rng);
        std::uniform_int_distribution<int> pick_hi(lo, n);
        const IndexSet set(IntInterval(lo, pick_hi(rng)), n);
        const std::vector<double> v = random_vector(rng, set.size());
        const double fast = laser::rss(laser::build_basis(set, r), v);
        const double slow = laser::oracle::oracle_rss(set, r, v);
        CHECK(std::abs(fast - slow) <= 1e-8 * std::max(1.0, std::abs(slow)));
    }
}

TEST_CASE("leverage examples") {
    SUBCASE("constant projection gives 1/m") {
        const IndexSet set(IntInterval(1, 10), 10);
        const PolyBasis basis = laser::build_basis(set, 0);
        for (int i = 1; i <= 10; ++i)
            CHECK(laser::leverage(basis, i) == doctest::Approx(0.1).epsilon(1e-12));
    }
    SUBCASE("interpolating window has unit leverage") {
        const IndexSet set(IntInterval(1, 2), 4);
        const PolyBasis basis = laser::build_basis(set, 1);
        CHECK(laser::leverage(basis, 1) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(laser::leverage(basis, 2) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("degree-2 window of 64 is capped") {
        const IndexSet set(IntInterval(1, 64), 64);
        const PolyBasis basis = laser::build_basis(set, 2);
        double max_lev = 0.0;
        for (int i = 1; i <= 64; ++i) max_lev = std::max(max_lev, laser::leverage(basis, i));
        CHECK(max_lev <= 10.0 * 3.0 / 64.0);
    }
    SUBCASE("non-member index throws") {
        const IndexSet set(IntInterval(1, 4), 8);
        const PolyBasis basis = laser::build_basis(set, 0);
        CHECK_THROWS_AS(laser::leverage(basis, 5), std::invalid_argument);
    }
}

TEST_CASE("leverage sums to the effective dimension and decays like 1/|I|") {
    for (int r = 0; r <= 3; ++r) {
        for (int m = 8; m <= 1024; m *= 2) {
            const IndexSet set(IntInterval(1, m), m);
            const PolyBasis basis = laser::build_basis(set, r);
            double sum = 0.0, max_lev = 0.0;
            for (int i = 1; i <= m; ++i) {
                const double lev = laser::leverage(basis, i);
                CHECK(lev >= 0.0);
                CHECK(lev <= 1.0 + 1e-12);
                sum += lev;
                max_lev = std::max(max_lev, lev);
            }
            CHECK(std::abs(sum - basis.effective_dim) < 1e-10);
            CHECK(max_lev * m <= 10.0 * (r + 1));
        }
    }
}

TEST_CASE("projection sup-norm is controlled by the mean square norm") {
    std::mt19937_64 rng(23);
    for (int r = 0; r <= 3; ++r) {
        for (int m = 8; m <= 1024; m *= 2) {
            const IndexSet set(IntInterval(1, m), m);
            const PolyBasis basis = laser::build_basis(set, r);
            const std::vector<double> v = random_vector(rng, m);
            const std::vector<double> p = laser::project(basis, v);
            double sup = 0.0;
            for (double a : p) sup = std::max(sup, std::abs(a));
            CHECK(sup <= 10.0 * (r + 1) * std::sqrt(norm2(p)) / std::sqrt(double(m)) + 1e-12);
        }
    }
}

TEST_CASE("projection is symmetric, contractive, and Pythagorean") {
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> pick_m(2, 48);
    std::uniform_int_distribution<int> pick_r(0, 3);
    for (int rep = 0; rep < 200; ++rep) {
        const int m = pick_m(rng);
        const IndexSet set(IntInterval(1, m), m);
        const PolyBasis basis = laser::build_basis(set, pick_r(rng));
        const std::vector<double> v = random_vector(rng, m);
        const std::vector<double> w = random_vector(rng, m);
        const std::vector<double> pv = laser::project(basis, v);
        const std::vector<double> pw = laser::project(basis, w);
        CHECK(std::abs(dot(pv, w) - dot(v, pw)) < 1e-9);
        CHECK(std::sqrt(norm2(pv)) <= std::sqrt(norm2(v)) + 1e-9);
        const double total = norm2(v);
        CHECK(std::abs(total - (norm2(pv) + laser::rss(basis, v))) < 1e-9 * std::max(1.0, total));
    }
}

TEST_CASE("polynomials of degree <= r have vanishing rss") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int r = 0; r <= 3; ++r) {
        for (int rep = 0; rep < 25; ++rep) {
            const IndexSet set(IntInterval(1, 100), 128);
            const PolyBasis basis = laser::build_basis(set, r);
            std::vector<double> c;
            for (int j = 0; j <= r; ++j) c.push_back(coef(rng));
            const std::vector<double> p = poly_on_set(set, c);
            CHECK(laser::rss(basis, p) < 1e-18 * std::max(1.0, norm2(p)));
        }
    }
}

TEST_CASE("basis handles repeated abscissae by dropping columns") {
    // Three samples sharing one abscissa: the quadratic space collapses.
    const std::vector<double> design{0.25, 0.25, 0.25, 0.5, 1.0};
    const IndexSet set(IntInterval(1, 5), 5);
    const PolyBasis basis = laser::build_basis(set, 2, design);
    CHECK(basis.effective_dim == 3);  // distinct abscissae, not degree+1 blindly

    const std::vector<double> all_same{0.25, 0.25, 0.25, 0.25, 0.25};
    const PolyBasis collapsed = laser::build_basis(set, 2, all_same);
    CHECK(collapsed.effective_dim == 1);
    double sum = 0.0;
    for (int i = 1; i <= 5; ++i) sum += laser::leverage(collapsed, i);
    CHECK(std::abs(sum - collapsed.effective_dim) < 1e-10);
}

TEST_CASE("eval_fit_at examples") {
    SUBCASE("constant fit returns the mean everywhere") {
        const IndexSet set(IntInterval(1, 4), 4);
        const PolyBasis basis = laser::build_basis(set, 0);
        const std::vector<double> v{0, 0, 1, 1};
        const laser::EvalResult at = laser::eval_fit_at(basis, v, 0.6);
        CHECK(at.value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK_FALSE(at.extrapolated);  // 0.6 inside [0.25, 1]
        CHECK(laser::eval_fit_at(basis, v, -2.0).value == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(laser::eval_fit_at(basis, v, -2.0).extrapolated);
    }
    SUBCASE("linear data is reproduced exactly off-grid") {
        const IndexSet set(IntInterval(2, 9), 16);
        const PolyBasis basis = laser::build_basis(set, 1);
        const double a = 0.7, b = -2.3;
        const std::vector<double> v = poly_on_set(set, {a, b});
        for (double x : {0.125, 0.3, 0.99, 0.5625}) {
            const laser::EvalResult at = laser::eval_fit_at(basis, v, x);
            CHECK(std::abs(at.value - (a + b * x)) < 1e-9);
        }
    }
    SUBCASE("extrapolation flag tracks the abscissa hull") {
        const IndexSet set(IntInterval(4, 8), 16);  // hull [0.25, 0.5]
        const PolyBasis basis = laser::build_basis(set, 1);
        const std::vector<double> v{1, 2, 3, 4, 5};
        CHECK_FALSE(laser::eval_fit_at(basis, v, 0.3).extrapolated);
        CHECK(laser::eval_fit_at(basis, v, 0.2).extrapolated);
        CHECK(laser::eval_fit_at(basis, v, 0.51).extrapolated);
    }
}
