#pragma once

#include <algorithm>
#include <cmath>

#include "rinv/operators.hpp"

namespace rinv {

/// Two sides of a scalar identity plus the deviation between them.
struct IdentityCheck {
    Complex lhs;
    Complex rhs;
    double residual = 0.0;  // |lhs - rhs|

    double relative() const {
        const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        return residual / scale;
    }
};

/// Coercivity margin ||H* phi||^2 - 8n ||phi||^2 (nonnegative up to roundoff).
struct CoercivityCheck {
    double adjoint_norm_sq = 0.0;
    double lower_bound = 0.0;
    double margin = 0.0;
};

/// Max entry deviation between the weighted adjoint on degrees <= N and the
/// conjugate transpose of the Laplacian on degrees <= N+2.
double check_adjointness(const TruncationConfig& config);

/// Max entry deviation of
///   M(Delta Delta* - Delta* Delta) - (8n I + 16 M(x.grad) - 8 M(Delta))
/// with both compositions carried through the enlarged degree+2 space.
double check_commutator_identity(const TruncationConfig& config);

/// ||(Delta+xi)* phi||^2 against ||(Delta+xi) phi||^2 + <phi, C phi> where
/// C phi = Delta(Delta* phi) - Delta*(Delta phi).
IdentityCheck check_norm_identity(Complex xi, const HermiteSeries& phi);

/// <phi, 2(x.grad)phi - Delta phi> against sum_j ||d_j phi||^2.
IdentityCheck check_key_step(const HermiteSeries& phi);

/// Margin of ||(Delta+xi)* phi||^2 >= 8n ||phi||^2.
CoercivityCheck check_coercivity(Complex xi, const HermiteSeries& phi);

/// (Delta + xi)* phi = Delta* phi + conj(xi) phi, in the degree+2 space.
HermiteSeries apply_shifted_adjoint(Complex xi, const HermiteSeries& phi);

/// (Delta + xi) phi within phi's own degree cap.
HermiteSeries apply_shifted_laplacian(Complex xi, const HermiteSeries& phi);

/// C phi = Delta(Delta* phi) - Delta*(Delta phi), degree-preserving.
HermiteSeries apply_commutator(const HermiteSeries& phi);

}  // namespace rinv
