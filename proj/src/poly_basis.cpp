#include "laser/poly_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace laser {

namespace {

double dot(const double* a, const double* b, int m) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += a[i] * b[i];
    return s;
}

void check_length(const PolyBasis& basis, std::span<const double> v, const char* op) {
    if (static_cast<int>(v.size()) != basis.index_set.size())
        throw std::invalid_argument(std::string(op) + ": vector length " +
                                    std::to_string(v.size()) + " does not match index set size " +
                                    std::to_string(basis.index_set.size()));
}

}  // namespace

PolyBasis build_basis(const IndexSet& index_set, int degree, std::span<const double> design) {
    if (degree < 0) throw std::invalid_argument("build_basis: negative degree");
    const int m = index_set.size();
    const int n = index_set.ambient_size();
    const std::vector<double> x_all = resolve_design(design, n);

    PolyBasis basis{index_set, degree};
    basis.abscissae.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        basis.abscissae[static_cast<std::size_t>(k)] =
            x_all[static_cast<std::size_t>(index_set[k] - 1)];

    double xmin = basis.abscissae.front(), xmax = basis.abscissae.front();
    for (double xv : basis.abscissae) {
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
    }
    basis.center = 0.5 * (xmin + xmax);
    basis.scale = 0.5 * (xmax - xmin);
    if (basis.scale <= 0.0) basis.scale = 1.0;

    std::vector<double> t(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        t[static_cast<std::size_t>(k)] =
            (basis.abscissae[static_cast<std::size_t>(k)] - basis.center) / basis.scale;

    const int max_dim = std::min(degree + 1, m);
    const int cstride = degree + 1;
    basis.columns.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(max_dim));
    basis.coef.reserve(static_cast<std::size_t>(cstride) * static_cast<std::size_t>(max_dim));

    // Modified Gram-Schmidt with one reorthogonalization pass over the
    // monomial columns t^0, t^1, ..., tracking each retained column's
    // polynomial coefficients in t alongside the numeric column.
    std::vector<double> col(static_cast<std::size_t>(m));
    std::vector<double> ccoef(static_cast<std::size_t>(cstride));
    for (int p = 0; p <= degree && basis.effective_dim < max_dim; ++p) {
        for (int k = 0; k < m; ++k)
            col[static_cast<std::size_t>(k)] = std::pow(t[static_cast<std::size_t>(k)], p);
        std::fill(ccoef.begin(), ccoef.end(), 0.0);
        ccoef[static_cast<std::size_t>(p)] = 1.0;

        const double pre_norm = std::sqrt(dot(col.data(), col.data(), m));
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < basis.effective_dim; ++j) {
                const double* bj = basis.columns.data() + static_cast<std::size_t>(j) * m;
                const double alpha = dot(bj, col.data(), m);
                for (int k = 0; k < m; ++k) col[static_cast<std::size_t>(k)] -= alpha * bj[k];
                const double* cj = basis.coef.data() + static_cast<std::size_t>(j) * cstride;
                for (int k = 0; k < cstride; ++k)
                    ccoef[static_cast<std::size_t>(k)] -= alpha * cj[k];
            }
        }
        const double post_norm = std::sqrt(dot(col.data(), col.data(), m));
        if (pre_norm <= 0.0 || post_norm < 1e-12 * pre_norm) continue;  // rank-deficient

        for (int k = 0; k < m; ++k) col[static_cast<std::size_t>(k)] /= post_norm;
        for (int k = 0; k < cstride; ++k) ccoef[static_cast<std::size_t>(k)] /= post_norm;
        basis.columns.insert(basis.columns.end(), col.begin(), col.end());
        basis.coef.insert(basis.coef.end(), ccoef.begin(), ccoef.end());
        ++basis.effective_dim;
    }
    return basis;
}

std::vector<double> project(const PolyBasis& basis, std::span<const double> v) {
    check_length(basis, v, "project");
    const int m = basis.index_set.size();
    // Full-rank subspace: the projection is the identity (interpolation).
    if (basis.effective_dim == m) return std::vector<double>(v.begin(), v.end());
    std::vector<double> out(static_cast<std::size_t>(m), 0.0);
    for (int j = 0; j < basis.effective_dim; ++j) {
        const double* bj = basis.columns.data() + static_cast<std::size_t>(j) * m;
        const double alpha = dot(bj, v.data(), m);
        for (int k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] += alpha * bj[k];
    }
    return out;
}

double rss(const PolyBasis& basis, std::span<const double> v) {
    check_length(basis, v, "rss");
    const int m = basis.index_set.size();
    if (basis.effective_dim == m) return 0.0;  // interpolation
    std::vector<double> resid(v.begin(), v.end());
    for (int j = 0; j < basis.effective_dim; ++j) {
        const double* bj = basis.columns.data() + static_cast<std::size_t>(j) * m;
        const double alpha = dot(bj, resid.data(), m);
        for (int k = 0; k < m; ++k) resid[static_cast<std::size_t>(k)] -= alpha * bj[k];
    }
    return dot(resid.data(), resid.data(), m);
}

double leverage(const PolyBasis& basis, int i) {
    const int pos = basis.index_set.position_of(i);
    if (pos < 0)
        throw std::invalid_argument("leverage: index " + std::to_string(i) +
                                    " not in the index set");
    const int m = basis.index_set.size();
    double s = 0.0;
    for (int j = 0; j < basis.effective_dim; ++j) {
        const double b = basis.columns[static_cast<std::size_t>(j) * m + pos];
        s += b * b;
    }
    return s;
}

EvalResult eval_fit_at(const PolyBasis& basis, std::span<const double> v, double x) {
    check_length(basis, v, "eval_fit_at");
    const int m = basis.index_set.size();
    const int cstride = basis.degree + 1;
    const double t = (x - basis.center) / basis.scale;

    // Fitted polynomial = sum_j <b_j, v> * poly_j(t), Horner per column sum.
    std::vector<double> poly(static_cast<std::size_t>(cstride), 0.0);
    for (int j = 0; j < basis.effective_dim; ++j) {
        const double* bj = basis.columns.data() + static_cast<std::size_t>(j) * m;
        const double alpha = dot(bj, v.data(), m);
        const double* cj = basis.coef.data() + static_cast<std::size_t>(j) * cstride;
        for (int k = 0; k < cstride; ++k) poly[static_cast<std::size_t>(k)] += alpha * cj[k];
    }
    double value = 0.0;
    for (int k = cstride - 1; k >= 0; --k) value = value * t + poly[static_cast<std::size_t>(k)];

    double xmin = basis.abscissae.front(), xmax = basis.abscissae.front();
    for (double xv : basis.abscissae) {
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
    }
    return EvalResult{value, x < xmin || x > xmax};
}

}  // namespace laser
