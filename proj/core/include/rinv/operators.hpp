#pragma once

#include "rinv/operator_matrix.hpp"

namespace rinv {

// Coefficient-space actions on the orthonormal basis, all exact three-term
// recurrences of the physicists' Hermite family:
//   d/dx   h_k = sqrt(2k) h_{k-1}
//   x      h_k = sqrt((k+1)/2) h_{k+1} + sqrt(k/2) h_{k-1}
//   d2/dx2 h_k = 2 sqrt(k(k-1)) h_{k-2}

/// Partial derivative along one axis; codomain degree = domain degree - 1
/// (clamped at 0).
OperatorMatrix matrix_derivative(int axis, const TruncationConfig& domain);

/// Multiplication by the coordinate x_j; codomain degree = domain degree + 1.
OperatorMatrix matrix_coordinate(int axis, const TruncationConfig& domain);

/// Laplacian, summed over axes; strictly degree-lowering by 2.
OperatorMatrix matrix_laplacian(const TruncationConfig& domain);

/// Euler-type operator sum_j x_j d/dx_j; degree-preserving band.
OperatorMatrix matrix_x_dot_grad(const TruncationConfig& domain);

/// Formal adjoint of the Laplacian in L^2(R^n, e^{-|x|^2}):
///   A psi = Delta psi + 4|x|^2 psi - 2n psi - 4 x . grad psi,
/// assembled from the primitive matrices above. Codomain degree = domain
/// degree + 2.
OperatorMatrix matrix_weighted_adjoint(const TruncationConfig& domain);

}  // namespace rinv
