#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "rinv/multi_index.hpp"
#include "rinv/quadrature.hpp"

namespace rinv {

using Complex = std::complex<double>;

/// Gaussian weight e^{-lambda |x - center|^2}. The default (lambda = 1,
/// center = 0) is the unit weight e^{-|x|^2}.
struct WeightSpec {
    double lambda = 1.0;
    std::vector<double> center;

    static WeightSpec unit(int dim) { return WeightSpec{1.0, std::vector<double>(dim, 0.0)}; }
    bool is_unit() const;
    void validate(int dim) const;
};

/// Finite series over the orthonormal tensor Hermite basis. Coefficients are
/// stored densely in the global graded-lexicographic order, so the squared
/// weighted norm is the plain coefficient 2-norm (Parseval).
class HermiteSeries {
public:
    explicit HermiteSeries(const Basis& basis);
    explicit HermiteSeries(const TruncationConfig& config);

    static HermiteSeries basis_element(const Basis& basis, const MultiIndex& idx);

    const Basis& basis() const { return basis_; }
    const TruncationConfig& config() const { return basis_.config(); }
    int dim() const { return basis_.dim(); }
    std::size_t size() const { return coeffs_.size(); }

    Complex coeff(const MultiIndex& idx) const { return coeffs_[basis_.position(idx)]; }
    void set_coeff(const MultiIndex& idx, Complex value) { coeffs_[basis_.position(idx)] = value; }

    Complex operator[](std::size_t linear) const { return coeffs_[linear]; }
    Complex& operator[](std::size_t linear) { return coeffs_[linear]; }
    const std::vector<Complex>& coefficients() const { return coeffs_; }

    double norm_sq() const;
    double norm() const;

    /// Largest degree carrying a nonzero coefficient; -1 for the zero series.
    int effective_degree() const;

    /// Same coefficients in a basis with a different degree cap. Enlarging
    /// pads with zeros; shrinking throws if a nonzero coefficient would be
    /// dropped unless `allow_truncation` is set.
    HermiteSeries with_max_degree(int max_degree, bool allow_truncation = false) const;

    HermiteSeries& operator+=(const HermiteSeries& other);
    HermiteSeries& operator-=(const HermiteSeries& other);
    HermiteSeries& operator*=(Complex scalar);

    friend HermiteSeries operator+(HermiteSeries a, const HermiteSeries& b) { return a += b; }
    friend HermiteSeries operator-(HermiteSeries a, const HermiteSeries& b) { return a -= b; }
    friend HermiteSeries operator*(Complex scalar, HermiteSeries s) { return s *= scalar; }

private:
    Basis basis_;
    std::vector<Complex> coeffs_;
};

/// Weighted inner product <a,b> = sum conj(a_alpha) b_alpha; conjugate-linear
/// in the first argument. Throws std::invalid_argument on config mismatch.
Complex inner_product(const HermiteSeries& a, const HermiteSeries& b);

/// Coefficients of a pointwise function against the basis by tensorized
/// Gauss-Hermite quadrature: c_alpha = sum_nodes w f(node) h_alpha(node).
/// Exact for polynomial f within the rule's exactness budget; aliasing for
/// non-polynomial f is not detected.
HermiteSeries project_samples(const std::function<Complex(const std::vector<double>&)>& fn,
                              const TruncationConfig& config, const QuadratureRule& rule);

/// Pointwise value of the series at x (unit weight basis).
Complex eval_series(const HermiteSeries& series, const std::vector<double>& x);

/// Pointwise value when the coefficients are taken over the basis of
/// L^2(R^n, e^{-lambda|x-x0|^2}), i.e. lambda^{n/4} h_alpha(sqrt(lambda)(x-x0)).
Complex eval_series_weighted(const HermiteSeries& series, const WeightSpec& weight,
                             const std::vector<double>& x);

/// Tensor iteration over an axis-wise quadrature rule in `dim` dimensions.
/// Calls visit(point, weight) for every node of the product rule.
void for_each_tensor_node(const QuadratureRule& rule, int dim,
                          const std::function<void(const std::vector<double>&, double)>& visit);

}  // namespace rinv
