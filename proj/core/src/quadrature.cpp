#include "rinv/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

namespace rinv {

QuadratureRule gauss_hermite_rule(int points_per_axis) {
    if (points_per_axis < 1) {
        throw std::invalid_argument("gauss_hermite_rule: points_per_axis must be >= 1");
    }
    const int q = points_per_axis;
    const double sqrt_pi = std::sqrt(std::numbers::pi);

    QuadratureRule rule;
    rule.exactness_degree = 2 * q - 1;
    if (q == 1) {
        rule.nodes = {0.0};
        rule.weights = {sqrt_pi};
        return rule;
    }

    // Jacobi matrix of the (monic) Hermite recurrence: zero diagonal,
    // off-diagonal sqrt(k/2).
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(q);
    Eigen::VectorXd subdiag(q - 1);
    for (int k = 1; k < q; ++k) {
        subdiag[k - 1] = std::sqrt(0.5 * k);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw NonConvergenceError(
            "gauss_hermite_rule: tridiagonal eigensolver did not converge for " +
            std::to_string(q) + " points");
    }

    rule.nodes.resize(static_cast<std::size_t>(q));
    rule.weights.resize(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = sqrt_pi * v0 * v0;
    }

    // Enforce the +/- symmetry of the rule exactly, pairing i with q-1-i.
    for (int i = 0, j = q - 1; i < j; ++i, --j) {
        const double x = 0.5 * (rule.nodes[static_cast<std::size_t>(j)] -
                                rule.nodes[static_cast<std::size_t>(i)]);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(j)] = x;
        const double w = 0.5 * (rule.weights[static_cast<std::size_t>(i)] +
                                rule.weights[static_cast<std::size_t>(j)]);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(j)] = w;
    }
    if (q % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(q / 2)] = 0.0;
    }
    return rule;
}

}  // namespace rinv
