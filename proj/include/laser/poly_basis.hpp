// Discrete polynomial subspaces on index sets: orthonormal basis construction,
// projection, residual sums of squares, leverage, and off-grid evaluation.
//
// The subspace for degree r on an index set S is span{(x_i)^k : 0 <= k <= r}
// restricted to the members of S. Abscissae default to x_i = i/n. Coordinates
// are centered and rescaled to [-1, 1] before orthogonalization; the raw
// Vandermonde in i/n is numerically unusable at |S| ~ 2048.

#pragma once

#include <span>
#include <vector>

#include "laser/interval.hpp"

namespace laser {

/// Orthonormal basis of the degree-r polynomial subspace over an index set.
/// Columns are stored column-major (member-sample order). Each column also
/// carries its polynomial coefficients in the local coordinate
/// t = (x - center)/scale so the fitted polynomial can be evaluated off-grid.
struct PolyBasis {
    IndexSet index_set;
    int degree = 0;
    int effective_dim = 0;          // columns retained (rank of the projection)
    std::vector<double> columns;    // |S| * effective_dim, column-major
    std::vector<double> coef;       // (degree+1) * effective_dim, column-major
    double center = 0.0;            // local coordinate map: t = (x - center)/scale
    double scale = 1.0;
    std::vector<double> abscissae;  // x-values of the members, in set order
};

/// Value of a fitted polynomial at a query abscissa, with an extrapolation
/// flag set when the query lies outside the hull of the member abscissae.
struct EvalResult {
    double value = 0.0;
    bool extrapolated = false;
};

/// Build the orthonormal degree-r basis over `index_set`. `design` supplies
/// abscissae for the whole ambient sample (empty means x_i = i/n). Columns
/// whose post-orthogonalization norm falls below 1e-12 of their raw norm are
/// dropped and effective_dim reduced (repeated abscissae degrade gracefully).
PolyBasis build_basis(const IndexSet& index_set, int degree,
                      std::span<const double> design = {});

/// Orthogonal projection of v (given over the index set, in set order).
std::vector<double> project(const PolyBasis& basis, std::span<const double> v);

/// Squared norm of the projection residual, ||v - P v||^2. Exactly 0 when the
/// subspace interpolates (|S| <= degree+1). Never negative: the residual is
/// formed explicitly and then squared.
double rss(const PolyBasis& basis, std::span<const double> v);

/// Diagonal entry of the projection at member sample index i (1-based,
/// must belong to the index set); equals the squared row norm of the columns.
double leverage(const PolyBasis& basis, int i);

/// Evaluate the fitted degree-r polynomial for data v at abscissa x.
/// The fit is the same least-squares fit `project` applies; coefficients are
/// recovered from the basis columns' polynomial representation.
EvalResult eval_fit_at(const PolyBasis& basis, std::span<const double> v, double x);

}  // namespace laser
