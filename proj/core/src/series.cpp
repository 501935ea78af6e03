#include "rinv/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rinv/hermite_basis.hpp"

namespace rinv {

bool WeightSpec::is_unit() const {
    if (lambda != 1.0) return false;
    return std::all_of(center.begin(), center.end(), [](double c) { return c == 0.0; });
}

void WeightSpec::validate(int dim) const {
    if (lambda <= 0.0) throw std::invalid_argument("WeightSpec: lambda must be positive");
    if (static_cast<int>(center.size()) != dim) {
        throw std::invalid_argument("WeightSpec: center dimension mismatch");
    }
}

HermiteSeries::HermiteSeries(const Basis& basis) : basis_(basis), coeffs_(basis.size()) {}

HermiteSeries::HermiteSeries(const TruncationConfig& config) : HermiteSeries(Basis(config)) {}

HermiteSeries HermiteSeries::basis_element(const Basis& basis, const MultiIndex& idx) {
    HermiteSeries s(basis);
    s.set_coeff(idx, Complex(1.0, 0.0));
    return s;
}

double HermiteSeries::norm_sq() const {
    double total = 0.0;
    for (const Complex& c : coeffs_) total += std::norm(c);
    return total;
}

double HermiteSeries::norm() const { return std::sqrt(norm_sq()); }

int HermiteSeries::effective_degree() const {
    int degree = -1;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != Complex(0.0, 0.0)) {
            degree = std::max(degree, basis_.index(i).degree());
        }
    }
    return degree;
}

HermiteSeries HermiteSeries::with_max_degree(int max_degree, bool allow_truncation) const {
    if (max_degree == basis_.max_degree()) return *this;
    if (max_degree < basis_.max_degree() && !allow_truncation &&
        effective_degree() > max_degree) {
        throw std::invalid_argument(
            "HermiteSeries::with_max_degree: nonzero coefficients above the new cap");
    }
    Basis target(TruncationConfig{basis_.dim(), max_degree});
    HermiteSeries out(target);
    const std::size_t common = std::min(out.size(), size());
    // Graded order makes the first min(...) positions coincide.
    for (std::size_t i = 0; i < common; ++i) out.coeffs_[i] = coeffs_[i];
    return out;
}

HermiteSeries& HermiteSeries::operator+=(const HermiteSeries& other) {
    if (config() != other.config()) {
        throw std::invalid_argument("HermiteSeries: config mismatch in +=");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

HermiteSeries& HermiteSeries::operator-=(const HermiteSeries& other) {
    if (config() != other.config()) {
        throw std::invalid_argument("HermiteSeries: config mismatch in -=");
    }
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

HermiteSeries& HermiteSeries::operator*=(Complex scalar) {
    for (Complex& c : coeffs_) c *= scalar;
    return *this;
}

Complex inner_product(const HermiteSeries& a, const HermiteSeries& b) {
    if (a.config() != b.config()) {
        throw std::invalid_argument("inner_product: series configs do not match");
    }
    Complex total(0.0, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) total += std::conj(a[i]) * b[i];
    return total;
}

void for_each_tensor_node(const QuadratureRule& rule, int dim,
                          const std::function<void(const std::vector<double>&, double)>& visit) {
    const std::size_t q = rule.size();
    std::vector<std::size_t> digits(static_cast<std::size_t>(dim), 0);
    std::vector<double> point(static_cast<std::size_t>(dim));
    while (true) {
        double weight = 1.0;
        for (int j = 0; j < dim; ++j) {
            point[static_cast<std::size_t>(j)] = rule.nodes[digits[static_cast<std::size_t>(j)]];
            weight *= rule.weights[digits[static_cast<std::size_t>(j)]];
        }
        visit(point, weight);
        int axis = 0;
        while (axis < dim) {
            if (++digits[static_cast<std::size_t>(axis)] < q) break;
            digits[static_cast<std::size_t>(axis)] = 0;
            ++axis;
        }
        if (axis == dim) break;
    }
}

HermiteSeries project_samples(const std::function<Complex(const std::vector<double>&)>& fn,
                              const TruncationConfig& config, const QuadratureRule& rule) {
    Basis basis(config);
    HermiteSeries out(basis);
    const int d = config.max_degree;

    std::vector<std::vector<double>> tables(static_cast<std::size_t>(config.dim));
    for_each_tensor_node(rule, config.dim, [&](const std::vector<double>& point, double w) {
        for (int j = 0; j < config.dim; ++j) {
            tables[static_cast<std::size_t>(j)] =
                eval_hermite_1d_all(d, point[static_cast<std::size_t>(j)]);
        }
        const Complex sample = w * fn(point);
        if (sample == Complex(0.0, 0.0)) return;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const MultiIndex& alpha = basis.index(i);
            double basis_value = 1.0;
            for (int j = 0; j < config.dim; ++j) {
                basis_value *= tables[static_cast<std::size_t>(j)][static_cast<std::size_t>(alpha[j])];
            }
            out[i] += sample * basis_value;
        }
    });
    return out;
}

Complex eval_series(const HermiteSeries& series, const std::vector<double>& x) {
    const Basis& basis = series.basis();
    if (static_cast<int>(x.size()) != basis.dim()) {
        throw std::invalid_argument("eval_series: point dimension mismatch");
    }
    std::vector<std::vector<double>> tables(static_cast<std::size_t>(basis.dim()));
    for (int j = 0; j < basis.dim(); ++j) {
        tables[static_cast<std::size_t>(j)] =
            eval_hermite_1d_all(basis.max_degree(), x[static_cast<std::size_t>(j)]);
    }
    Complex total(0.0, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const Complex c = series[i];
        if (c == Complex(0.0, 0.0)) continue;
        const MultiIndex& alpha = basis.index(i);
        double basis_value = 1.0;
        for (int j = 0; j < basis.dim(); ++j) {
            basis_value *= tables[static_cast<std::size_t>(j)][static_cast<std::size_t>(alpha[j])];
        }
        total += c * basis_value;
    }
    return total;
}

Complex eval_series_weighted(const HermiteSeries& series, const WeightSpec& weight,
                             const std::vector<double>& x) {
    weight.validate(series.dim());
    const double root = std::sqrt(weight.lambda);
    std::vector<double> y(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = root * (x[j] - weight.center[j]);
    const double scale = std::pow(weight.lambda, 0.25 * series.dim());
    return scale * eval_series(series, y);
}

}  // namespace rinv
