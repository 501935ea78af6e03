#include "rinv/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rinv {

namespace {

constexpr int kMaxIterations = 500;

void sort_canonical(std::vector<Complex>& values) {
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
}

std::string describe(const std::vector<Complex>& values) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << values[i].real() << (values[i].imag() < 0 ? "" : "+") << values[i].imag() << "i";
    }
    return os.str();
}

}  // namespace

PolynomialSpec::PolynomialSpec(std::vector<Complex> coeffs) : coefficients(std::move(coeffs)) {
    if (coefficients.empty()) {
        throw std::invalid_argument("PolynomialSpec: degree must be >= 1");
    }
}

Complex PolynomialSpec::eval(Complex z) const {
    Complex result(1.0, 0.0);  // monic leading term
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        result = result * z + *it;
    }
    return result;
}

double PolynomialSpec::max_coeff_abs() const {
    double m = 0.0;
    for (const Complex& a : coefficients) m = std::max(m, std::abs(a));
    return m;
}

FactoredOperator::FactoredOperator(std::vector<Complex> shift_list, PolynomialSpec spec)
    : shifts(std::move(shift_list)), source(std::move(spec)) {
    if (static_cast<int>(shifts.size()) != source.degree()) {
        throw std::invalid_argument("FactoredOperator: shift count must equal degree");
    }
    sort_canonical(shifts);
    const PolynomialSpec expanded = reconstruct(*this);
    for (int j = 0; j < source.degree(); ++j) {
        const double deviation =
            std::abs(expanded.coefficients[static_cast<std::size_t>(j)] -
                     source.coefficients[static_cast<std::size_t>(j)]);
        if (deviation > 1e-8 * (1.0 + std::abs(source.coefficients[static_cast<std::size_t>(j)]))) {
            throw std::invalid_argument(
                "FactoredOperator: shifts do not reconstruct the source polynomial");
        }
    }
}

std::vector<Complex> find_roots(const PolynomialSpec& spec) {
    const int m = spec.degree();
    const double residual_target = 1e-10 * (1.0 + spec.max_coeff_abs());

    if (m == 1) {
        return {-spec.coefficients[0]};
    }

    // Perturbed circle inside the Cauchy root bound; the angular offset
    // breaks real-axis symmetry so conjugate pairs separate.
    const double radius = 0.5 + 0.9 * (1.0 + spec.max_coeff_abs());
    std::vector<Complex> roots(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / m + 0.4;
        roots[static_cast<std::size_t>(k)] = std::polar(radius * (1.0 + 1e-3 * k), angle);
    }

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        double max_step = 0.0;
        for (int i = 0; i < m; ++i) {
            Complex denom(1.0, 0.0);
            const Complex w = roots[static_cast<std::size_t>(i)];
            for (int j = 0; j < m; ++j) {
                if (j != i) denom *= w - roots[static_cast<std::size_t>(j)];
            }
            if (denom == Complex(0.0, 0.0)) {
                // Coincident iterates: nudge apart and continue.
                roots[static_cast<std::size_t>(i)] += Complex(1e-8, 1e-8);
                max_step = 1.0;
                continue;
            }
            const Complex correction = spec.eval(w) / denom;
            roots[static_cast<std::size_t>(i)] = w - correction;
            max_step = std::max(max_step, std::abs(correction));
        }
        if (max_step < 1e-14 * (1.0 + radius)) break;
    }

    double worst = 0.0;
    for (const Complex& r : roots) worst = std::max(worst, std::abs(spec.eval(r)));
    if (worst > residual_target) {
        throw NonConvergenceError(
            "find_roots: residual " + std::to_string(worst) + " above target " +
            std::to_string(residual_target) + " after " + std::to_string(kMaxIterations) +
            " iterations; best iterate: " + describe(roots));
    }
    sort_canonical(roots);
    return roots;
}

FactoredOperator factor_operator(const PolynomialSpec& spec) {
    std::vector<Complex> shifts = find_roots(spec);
    for (Complex& s : shifts) s = -s;
    return FactoredOperator(std::move(shifts), spec);
}

PolynomialSpec expand_shifts(const std::vector<Complex>& shifts) {
    if (shifts.empty()) {
        throw std::invalid_argument("expand_shifts: need at least one shift");
    }
    // prod (z + xi_j), expanded low degree first.
    std::vector<Complex> coeffs{Complex(1.0, 0.0)};
    for (const Complex& xi : shifts) {
        std::vector<Complex> next(coeffs.size() + 1, Complex(0.0, 0.0));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            next[i] += coeffs[i] * xi;
            next[i + 1] += coeffs[i];
        }
        coeffs = std::move(next);
    }
    coeffs.pop_back();  // drop the monic leading 1
    return PolynomialSpec(std::move(coeffs));
}

PolynomialSpec reconstruct(const FactoredOperator& factored) {
    return expand_shifts(factored.shifts);
}

}  // namespace rinv
