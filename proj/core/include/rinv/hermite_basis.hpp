#pragma once

#include <vector>

#include "rinv/multi_index.hpp"

namespace rinv {

/// Value at x of the physicists' Hermite polynomial H_k normalized to unit
/// norm in L^2(R, e^{-x^2}): h_k = H_k / sqrt(sqrt(pi) 2^k k!). Evaluated by
/// the normalized three-term recurrence
///   h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}.
double eval_hermite_1d(int k, double x);

/// h_0(x) .. h_{max_degree}(x) in one call; shares the recurrence sweep.
std::vector<double> eval_hermite_1d_all(int max_degree, double x);

/// Value of the orthonormal tensor basis function h_idx at a point.
double eval_basis(const MultiIndex& idx, const std::vector<double>& x);

}  // namespace rinv
