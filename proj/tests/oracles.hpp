#pragma once

// Test-side oracles, independent of the library paths they check: monomial
// expansions evaluated by Horner, quadrature projections of pointwise
// polynomials, and brute-force counts.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "rinv/quadrature.hpp"
#include "rinv/series.hpp"

namespace oracles {

/// Monomial coefficients of the physicists' Hermite polynomial H_k from the
/// raw recurrence H_{k+1} = 2x H_k - 2k H_{k-1}; coefficients are exact
/// integers well past k = 12.
inline std::vector<double> hermite_monomial_coefficients(int k) {
    std::vector<double> prev{1.0};
    if (k == 0) return prev;
    std::vector<double> cur{0.0, 2.0};
    for (int j = 1; j < k; ++j) {
        std::vector<double> next(static_cast<std::size_t>(j) + 2, 0.0);
        for (std::size_t p = 0; p < cur.size(); ++p) next[p + 1] += 2.0 * cur[p];
        for (std::size_t p = 0; p < prev.size(); ++p) next[p] -= 2.0 * j * prev[p];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// h_k(x) via the monomial expansion: an evaluation route independent of the
/// nested recurrence used by the library.
inline double hermite_normalized_by_monomials(int k, double x) {
    const std::vector<double> coeffs = hermite_monomial_coefficients(k);
    double value = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) value = value * x + *it;
    double norm_sq = std::sqrt(std::numbers::pi);
    for (int j = 1; j <= k; ++j) norm_sq *= 2.0 * j;
    return value / std::sqrt(norm_sq);
}

/// Gaussian moments: integral of x^k e^{-x^2} over R.
inline double gaussian_moment(int k) {
    if (k % 2 == 1) return 0.0;
    double value = std::sqrt(std::numbers::pi);
    for (int j = 1; j <= k / 2; ++j) value *= (2.0 * j - 1.0) / 2.0;
    return value;
}

/// Projection of a pointwise function onto the basis by quadrature chosen
/// exact through 2*(degree+1)+1; an assembly-independent route to the
/// coefficients of a polynomial of degree <= degree+2.
inline rinv::HermiteSeries project_pointwise(
    const std::function<rinv::Complex(const std::vector<double>&)>& fn, int dim, int degree) {
    const rinv::QuadratureRule rule = rinv::gauss_hermite_rule(degree + 3);
    return rinv::project_samples(fn, rinv::TruncationConfig{dim, degree}, rule);
}

/// Count of n-tuples with total degree <= d by brute-force enumeration.
inline long brute_force_basis_count(int dim, int degree) {
    if (dim == 1) return degree + 1;
    long total = 0;
    for (int first = 0; first <= degree; ++first) {
        total += brute_force_basis_count(dim - 1, degree - first);
    }
    return total;
}

}  // namespace oracles
