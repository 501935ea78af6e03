#include "rinv/operators.hpp"

#include <algorithm>
#include <cmath>

namespace rinv {

namespace {

void check_axis(int axis, const TruncationConfig& domain) {
    domain.validate();
    if (axis < 0 || axis >= domain.dim) {
        throw std::invalid_argument("operator builder: axis out of range");
    }
}

}  // namespace

OperatorMatrix matrix_derivative(int axis, const TruncationConfig& domain) {
    check_axis(axis, domain);
    Basis dom(domain);
    Basis cod(TruncationConfig{domain.dim, std::max(domain.max_degree - 1, 0)});
    OperatorMatrix m(dom, cod);
    for (std::size_t col = 0; col < dom.size(); ++col) {
        const MultiIndex& alpha = dom.index(col);
        const int k = alpha[axis];
        if (k >= 1) {
            m.add(cod.position(alpha.shifted(axis, -1)), col, std::sqrt(2.0 * k));
        }
    }
    return m;
}

OperatorMatrix matrix_coordinate(int axis, const TruncationConfig& domain) {
    check_axis(axis, domain);
    Basis dom(domain);
    Basis cod(TruncationConfig{domain.dim, domain.max_degree + 1});
    OperatorMatrix m(dom, cod);
    for (std::size_t col = 0; col < dom.size(); ++col) {
        const MultiIndex& alpha = dom.index(col);
        const int k = alpha[axis];
        m.add(cod.position(alpha.shifted(axis, +1)), col, std::sqrt(0.5 * (k + 1)));
        if (k >= 1) {
            m.add(cod.position(alpha.shifted(axis, -1)), col, std::sqrt(0.5 * k));
        }
    }
    return m;
}

OperatorMatrix matrix_laplacian(const TruncationConfig& domain) {
    domain.validate();
    Basis dom(domain);
    Basis cod(TruncationConfig{domain.dim, std::max(domain.max_degree - 2, 0)});
    OperatorMatrix m(dom, cod);
    for (std::size_t col = 0; col < dom.size(); ++col) {
        const MultiIndex& alpha = dom.index(col);
        for (int j = 0; j < domain.dim; ++j) {
            const int k = alpha[j];
            if (k >= 2) {
                m.add(cod.position(alpha.shifted(j, -2)), col,
                      2.0 * std::sqrt(static_cast<double>(k) * (k - 1)));
            }
        }
    }
    return m;
}

OperatorMatrix matrix_x_dot_grad(const TruncationConfig& domain) {
    domain.validate();
    Basis dom(domain);
    OperatorMatrix m(dom, dom);
    // x_j d/dx_j h_k = k h_k + sqrt(k(k-1)) h_{k-2} on each axis.
    for (std::size_t col = 0; col < dom.size(); ++col) {
        const MultiIndex& alpha = dom.index(col);
        for (int j = 0; j < domain.dim; ++j) {
            const int k = alpha[j];
            if (k >= 1) {
                m.add(col, col, static_cast<double>(k));
            }
            if (k >= 2) {
                m.add(dom.position(alpha.shifted(j, -2)), col,
                      std::sqrt(static_cast<double>(k) * (k - 1)));
            }
        }
    }
    return m;
}

OperatorMatrix matrix_weighted_adjoint(const TruncationConfig& domain) {
    domain.validate();
    const TruncationConfig target{domain.dim, domain.max_degree + 2};
    Basis dom(domain);
    Basis cod(target);

    // Assembled from the primitives so the closed-form adjoint is exercised
    // as a sum of recurrences rather than re-derived entry by entry.
    OperatorMatrix result = matrix_laplacian(domain).with_codomain(cod);
    result += OperatorMatrix::identity(dom, cod).scaled(-2.0 * domain.dim);
    for (int j = 0; j < domain.dim; ++j) {
        OperatorMatrix coord = matrix_coordinate(j, domain);
        OperatorMatrix coord_up = matrix_coordinate(j, coord.codomain().config());
        result += coord_up.compose(coord).scaled(4.0);

        OperatorMatrix deriv = matrix_derivative(j, domain);
        OperatorMatrix coord_back = matrix_coordinate(j, deriv.codomain().config());
        result += coord_back.compose(deriv).with_codomain(cod).scaled(-4.0);
    }
    return result;
}

}  // namespace rinv
