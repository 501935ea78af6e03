#include "rinv/identities.hpp"

namespace rinv {

double check_adjointness(const TruncationConfig& config) {
    config.validate();
    const OperatorMatrix adjoint = matrix_weighted_adjoint(config);
    const OperatorMatrix laplacian =
        matrix_laplacian(TruncationConfig{config.dim, config.max_degree + 2});
    return adjoint.max_abs_diff(laplacian.adjoint());
}

double check_commutator_identity(const TruncationConfig& config) {
    config.validate();
    const int n = config.dim;
    Basis dom(config);

    const OperatorMatrix adjoint_up = matrix_weighted_adjoint(config);
    const OperatorMatrix lap_down = matrix_laplacian(adjoint_up.codomain().config());
    OperatorMatrix lhs = lap_down.compose(adjoint_up);  // degree d -> d

    const OperatorMatrix lap = matrix_laplacian(config);
    const OperatorMatrix adjoint_back = matrix_weighted_adjoint(lap.codomain().config());
    lhs -= adjoint_back.compose(lap).with_codomain(dom);

    OperatorMatrix rhs = OperatorMatrix::identity(dom, dom).scaled(8.0 * n);
    rhs += matrix_x_dot_grad(config).scaled(16.0);
    rhs -= matrix_laplacian(config).with_codomain(dom).scaled(8.0);

    return lhs.max_abs_diff(rhs);
}

HermiteSeries apply_shifted_adjoint(Complex xi, const HermiteSeries& phi) {
    const TruncationConfig cfg = phi.config();
    HermiteSeries out = matrix_weighted_adjoint(cfg).apply(phi);
    out += std::conj(xi) * phi.with_max_degree(cfg.max_degree + 2);
    return out;
}

HermiteSeries apply_shifted_laplacian(Complex xi, const HermiteSeries& phi) {
    const TruncationConfig cfg = phi.config();
    HermiteSeries out = matrix_laplacian(cfg).apply(phi).with_max_degree(cfg.max_degree);
    out += xi * phi;
    return out;
}

HermiteSeries apply_commutator(const HermiteSeries& phi) {
    const TruncationConfig cfg = phi.config();
    const HermiteSeries adj_phi = matrix_weighted_adjoint(cfg).apply(phi);
    HermiteSeries first = matrix_laplacian(adj_phi.config()).apply(adj_phi);

    const HermiteSeries lap_phi = matrix_laplacian(cfg).apply(phi);
    const HermiteSeries second = matrix_weighted_adjoint(lap_phi.config()).apply(lap_phi);

    // Both terms have true degree <= deg(phi); bring them to a common cap.
    return first.with_max_degree(cfg.max_degree) - second.with_max_degree(cfg.max_degree);
}

IdentityCheck check_norm_identity(Complex xi, const HermiteSeries& phi) {
    IdentityCheck check;
    check.lhs = apply_shifted_adjoint(xi, phi).norm_sq();
    const double applied = apply_shifted_laplacian(xi, phi).norm_sq();
    check.rhs = applied + inner_product(phi, apply_commutator(phi));
    check.residual = std::abs(check.lhs - check.rhs);
    return check;
}

IdentityCheck check_key_step(const HermiteSeries& phi) {
    const TruncationConfig cfg = phi.config();
    HermiteSeries combo = Complex(2.0, 0.0) * matrix_x_dot_grad(cfg).apply(phi);
    combo -= matrix_laplacian(cfg).apply(phi).with_max_degree(cfg.max_degree);

    IdentityCheck check;
    check.lhs = inner_product(phi, combo);
    double gradient_norm_sq = 0.0;
    for (int j = 0; j < cfg.dim; ++j) {
        gradient_norm_sq += matrix_derivative(j, cfg).apply(phi).norm_sq();
    }
    check.rhs = gradient_norm_sq;
    check.residual = std::abs(check.lhs - check.rhs);
    return check;
}

CoercivityCheck check_coercivity(Complex xi, const HermiteSeries& phi) {
    CoercivityCheck check;
    check.adjoint_norm_sq = apply_shifted_adjoint(xi, phi).norm_sq();
    check.lower_bound = 8.0 * phi.dim() * phi.norm_sq();
    check.margin = check.adjoint_norm_sq - check.lower_bound;
    return check;
}

}  // namespace rinv
