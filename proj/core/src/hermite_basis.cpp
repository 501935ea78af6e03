#include "rinv/hermite_basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rinv {

namespace {
const double kInvPiQuarter = std::pow(std::numbers::pi, -0.25);
}

double eval_hermite_1d(int k, double x) {
    if (k < 0) throw std::invalid_argument("eval_hermite_1d: negative degree");
    double prev = 0.0;
    double cur = kInvPiQuarter;
    for (int j = 0; j < k; ++j) {
        const double next =
            x * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(static_cast<double>(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> eval_hermite_1d_all(int max_degree, double x) {
    std::vector<double> values(static_cast<std::size_t>(max_degree) + 1);
    values[0] = kInvPiQuarter;
    if (max_degree == 0) return values;
    values[1] = x * std::sqrt(2.0) * values[0];
    for (int j = 1; j < max_degree; ++j) {
        values[static_cast<std::size_t>(j) + 1] =
            x * std::sqrt(2.0 / (j + 1)) * values[static_cast<std::size_t>(j)] -
            std::sqrt(static_cast<double>(j) / (j + 1)) * values[static_cast<std::size_t>(j) - 1];
    }
    return values;
}

double eval_basis(const MultiIndex& idx, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != idx.dim()) {
        throw std::invalid_argument("eval_basis: point dimension does not match index");
    }
    double product = 1.0;
    for (int j = 0; j < idx.dim(); ++j) {
        product *= eval_hermite_1d(idx[j], x[static_cast<std::size_t>(j)]);
    }
    return product;
}

}  // namespace rinv
