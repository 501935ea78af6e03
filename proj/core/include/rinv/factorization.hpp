#pragma once

#include <complex>
#include <vector>

#include "rinv/quadrature.hpp"  // NonConvergenceError

namespace rinv {

using Complex = std::complex<double>;

/// Monic polynomial z^m + a_{m-1} z^{m-1} + ... + a_0 standing for the
/// operator polynomial P(Delta). Coefficients are stored a_0 .. a_{m-1}.
struct PolynomialSpec {
    std::vector<Complex> coefficients;

    explicit PolynomialSpec(std::vector<Complex> coeffs);

    int degree() const { return static_cast<int>(coefficients.size()); }
    Complex eval(Complex z) const;
    double max_coeff_abs() const;
};

/// P(Delta) split into commuting linear factors (Delta + xi_1) ... (Delta + xi_m).
/// Shifts are kept in canonical order (by real part, then imaginary part) so
/// chains are reproducible; factors commute, so the order is a convention.
struct FactoredOperator {
    std::vector<Complex> shifts;
    PolynomialSpec source;

    FactoredOperator(std::vector<Complex> shift_list, PolynomialSpec spec);
};

/// Durand-Kerner simultaneous iteration from perturbed-circle initial
/// guesses. Returns the m roots with multiplicity, canonically sorted.
/// Throws NonConvergenceError (carrying the best iterate) if the residual
/// target |P(r)| <= 1e-10 (1 + max|a_j|) is not met within the iteration cap.
std::vector<Complex> find_roots(const PolynomialSpec& spec);

/// Shifts xi_j = -root_j; validates the reconstruction invariant.
FactoredOperator factor_operator(const PolynomialSpec& spec);

/// Expand prod (z + xi_j) into a monic PolynomialSpec.
PolynomialSpec expand_shifts(const std::vector<Complex>& shifts);

/// Expansion of a factored operator back into its polynomial.
PolynomialSpec reconstruct(const FactoredOperator& factored);

}  // namespace rinv
