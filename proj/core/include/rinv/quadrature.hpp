#pragma once

#include <stdexcept>
#include <vector>

namespace rinv {

/// Gauss-Hermite rule for the weight e^{-x^2} on one axis. Tensorized over
/// axes by the projection routines. A Q-point rule integrates polynomials of
/// degree <= 2Q-1 exactly; the weights sum to sqrt(pi).
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int exactness_degree = 0;

    std::size_t size() const { return nodes.size(); }
};

/// Raised when an iterative numerical routine fails to converge. The message
/// carries the best iterate so the failure is diagnosable.
class NonConvergenceError : public std::runtime_error {
public:
    explicit NonConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Nodes and weights from the symmetric tridiagonal Jacobi-matrix
/// eigenproblem for Hermite polynomials (Golub-Welsch). Nodes are returned
/// in ascending order and symmetrized about 0.
QuadratureRule gauss_hermite_rule(int points_per_axis);

}  // namespace rinv
