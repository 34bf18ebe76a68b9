#include "laser/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "laser/bandwidth.hpp"
#include "laser/poly_basis.hpp"

namespace laser {

double estimate_sigma(std::span<const double> y) {
    if (y.size() < 2) throw std::invalid_argument("estimate_sigma: need at least 2 samples");
    std::vector<double> d(y.size() - 1);
    for (std::size_t i = 0; i + 1 < y.size(); ++i) d[i] = std::abs(y[i + 1] - y[i]);
    const std::size_t mid = d.size() / 2;
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid), d.end());
    double med = d[mid];
    if (d.size() % 2 == 0) {
        // lower middle = max of the left partition
        const double lower = *std::max_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(mid));
        med = 0.5 * (med + lower);
    }
    return med / (0.6745 * std::sqrt(2.0));
}

double default_lambda(double sigma, int n) {
    if (!(sigma >= 0.0)) throw std::invalid_argument("default_lambda: sigma must be >= 0");
    if (n < 2) throw std::invalid_argument("default_lambda: n must be >= 2");
    return 2.0 * std::sqrt(2.0) * sigma * std::sqrt(std::log(static_cast<double>(n)));
}

std::vector<double> default_lambda_grid(double sigma, int n, int size) {
    if (size < 1) throw std::invalid_argument("default_lambda_grid: size must be >= 1");
    const double base = default_lambda(sigma, n);
    std::vector<double> grid(static_cast<std::size_t>(size));
    if (size == 1) {
        grid[0] = base;
        return grid;
    }
    for (int g = 0; g < size; ++g)  // log-spaced multipliers from 0.1 to 10
        grid[static_cast<std::size_t>(g)] =
            base * std::pow(10.0, -1.0 + 2.0 * g / (size - 1));
    return grid;
}

CvReport cv_lambda(std::span<const double> y, int degree, std::span<const double> lambda_grid,
                   int folds, std::uint64_t seed, Variant variant,
                   std::span<const double> design) {
    const int n = static_cast<int>(y.size());
    if (folds < 2) throw std::invalid_argument("cv_lambda: need at least 2 folds");
    if (folds > n)
        throw std::invalid_argument("cv_lambda: folds " + std::to_string(folds) +
                                    " exceed sample size " + std::to_string(n));
    if (lambda_grid.empty()) throw std::invalid_argument("cv_lambda: empty lambda grid");
    for (double l : lambda_grid)
        if (!(l >= 0.0)) throw std::domain_error("cv_lambda: negative lambda in grid");

    const std::vector<double> x = resolve_design(design, n);
    const int g_count = static_cast<int>(lambda_grid.size());
    std::vector<double> sq_sum(static_cast<std::size_t>(g_count), 0.0);

    for (int k = 0; k < folds; ++k) {
        std::vector<int> train;  // original 1-based indices kept for training
        std::vector<int> held;
        train.reserve(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) ((i - 1) % folds == k ? held : train).push_back(i);

        const int nt = static_cast<int>(train.size());
        std::vector<double> ty(static_cast<std::size_t>(nt)), tx(static_cast<std::size_t>(nt));
        for (int p = 0; p < nt; ++p) {
            ty[static_cast<std::size_t>(p)] = y[static_cast<std::size_t>(train[static_cast<std::size_t>(p)] - 1)];
            tx[static_cast<std::size_t>(p)] = x[static_cast<std::size_t>(train[static_cast<std::size_t>(p)] - 1)];
        }

        DiscrepancyEngine engine(ty, degree, tx);
        const std::vector<int> h_grid = default_h_grid(nt, variant);
        // Exact T per (training position, h), shared across the lambda grid:
        // window goodness is the only place lambda enters.
        std::unordered_map<int, std::vector<double>> t_columns;
        auto t_column = [&](int pos) -> const std::vector<double>& {
            auto it = t_columns.find(pos);
            if (it != t_columns.end()) return it->second;
            std::vector<double> col;
            col.reserve(h_grid.size());
            for (int h : h_grid)
                col.push_back(engine.t_exact(IntInterval::window(pos, h, nt), variant).t_value);
            return t_columns.emplace(pos, std::move(col)).first->second;
        };

        for (int j : held) {
            const double xq = x[static_cast<std::size_t>(j - 1)];
            int pos = 1;
            double best = std::abs(tx[0] - xq);
            for (int p = 2; p <= nt; ++p) {
                const double dist = std::abs(tx[static_cast<std::size_t>(p - 1)] - xq);
                if (dist < best) {
                    best = dist;
                    pos = p;
                }
            }

            const std::vector<double>& col = t_column(pos);
            std::map<int, double> pred_by_h;
            for (int g = 0; g < g_count; ++g) {
                const double lam = lambda_grid[static_cast<std::size_t>(g)];
                int h_hat = 0;
                for (std::size_t hi = h_grid.size(); hi-- > 0;) {
                    if (col[hi] <= lam) {
                        h_hat = h_grid[hi];
                        break;
                    }
                }
                auto [it, inserted] = pred_by_h.try_emplace(h_hat, 0.0);
                if (inserted) {
                    const IndexSet set(IntInterval::window(pos, h_hat, nt), nt);
                    std::vector<double> v(static_cast<std::size_t>(set.size()));
                    for (int q = 0; q < set.size(); ++q)
                        v[static_cast<std::size_t>(q)] = ty[static_cast<std::size_t>(set[q] - 1)];
                    it->second = eval_fit_at(build_basis(set, degree, tx), v, xq).value;
                }
                const double err = it->second - y[static_cast<std::size_t>(j - 1)];
                sq_sum[static_cast<std::size_t>(g)] += err * err;
            }
        }
    }

    CvReport report;
    report.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
    report.cv_error.resize(static_cast<std::size_t>(g_count));
    report.folds = folds;
    report.seed = seed;
    int best_g = 0;
    for (int g = 0; g < g_count; ++g) {
        report.cv_error[static_cast<std::size_t>(g)] = sq_sum[static_cast<std::size_t>(g)] / n;
        const double e = report.cv_error[static_cast<std::size_t>(g)];
        const double b = report.cv_error[static_cast<std::size_t>(best_g)];
        const double lg = report.lambda_grid[static_cast<std::size_t>(g)];
        const double lb = report.lambda_grid[static_cast<std::size_t>(best_g)];
        if (g > 0 && (e < b || (e == b && lg > lb))) best_g = g;
    }
    report.lambda_star = report.lambda_grid[static_cast<std::size_t>(best_g)];
    return report;
}

}  // namespace laser
