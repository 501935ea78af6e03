#include "rinv/operator_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rinv {

void OperatorMatrix::add(std::size_t row, std::size_t col, Complex value) {
    if (row >= rows() || col >= cols()) {
        throw std::invalid_argument("OperatorMatrix::add: index out of range");
    }
    if (value == Complex(0.0, 0.0)) return;
    auto [it, inserted] = entries_.try_emplace(Key{row, col}, value);
    if (!inserted) {
        it->second += value;
        if (it->second == Complex(0.0, 0.0)) entries_.erase(it);
    }
}

void OperatorMatrix::add(const MultiIndex& row, const MultiIndex& col, Complex value) {
    add(codomain_.position(row), domain_.position(col), value);
}

Complex OperatorMatrix::entry(std::size_t row, std::size_t col) const {
    auto it = entries_.find(Key{row, col});
    return it == entries_.end() ? Complex(0.0, 0.0) : it->second;
}

Complex OperatorMatrix::entry(const MultiIndex& row, const MultiIndex& col) const {
    return entry(codomain_.position(row), domain_.position(col));
}

OperatorMatrix OperatorMatrix::identity(const Basis& domain, const Basis& codomain) {
    if (codomain.dim() != domain.dim() || codomain.max_degree() < domain.max_degree()) {
        throw std::invalid_argument("OperatorMatrix::identity: codomain cannot hold domain");
    }
    OperatorMatrix id(domain, codomain);
    for (std::size_t col = 0; col < domain.size(); ++col) {
        id.add(codomain.position(domain.index(col)), col, Complex(1.0, 0.0));
    }
    return id;
}

HermiteSeries OperatorMatrix::apply(const HermiteSeries& input) const {
    if (input.config() != domain_.config()) {
        throw std::invalid_argument("OperatorMatrix::apply: input config mismatch");
    }
    HermiteSeries out(codomain_);
    for (const auto& [key, value] : entries_) {
        out[key.first] += value * input[key.second];
    }
    return out;
}

OperatorMatrix OperatorMatrix::compose(const OperatorMatrix& rhs) const {
    if (rhs.codomain_.config() != domain_.config()) {
        throw std::invalid_argument(
            "OperatorMatrix::compose: intermediate spaces do not match");
    }
    // Group this matrix's entries by column = rhs row.
    std::vector<std::vector<std::pair<std::size_t, Complex>>> by_col(cols());
    for (const auto& [key, value] : entries_) {
        by_col[key.second].emplace_back(key.first, value);
    }
    OperatorMatrix out(rhs.domain_, codomain_);
    for (const auto& [key, w] : rhs.entries_) {
        for (const auto& [row, v] : by_col[key.first]) {
            out.add(row, key.second, v * w);
        }
    }
    return out;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    OperatorMatrix out(codomain_, domain_);
    for (const auto& [key, value] : entries_) {
        out.add(key.second, key.first, std::conj(value));
    }
    return out;
}

OperatorMatrix OperatorMatrix::with_codomain(const Basis& codomain) const {
    if (codomain.dim() != codomain_.dim()) {
        throw std::invalid_argument("OperatorMatrix::with_codomain: dimension mismatch");
    }
    OperatorMatrix out(domain_, codomain);
    for (const auto& [key, value] : entries_) {
        const MultiIndex& row = codomain_.index(key.first);
        if (!codomain.contains(row)) {
            throw std::invalid_argument(
                "OperatorMatrix::with_codomain: nonzero entry outside the target space");
        }
        out.add(codomain.position(row), key.second, value);
    }
    return out;
}

OperatorMatrix OperatorMatrix::scaled(Complex factor) const {
    OperatorMatrix out(domain_, codomain_);
    if (factor == Complex(0.0, 0.0)) return out;
    for (const auto& [key, value] : entries_) {
        out.entries_[key] = factor * value;
    }
    return out;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& other) {
    if (domain_.config() != other.domain_.config() ||
        codomain_.config() != other.codomain_.config()) {
        throw std::invalid_argument("OperatorMatrix: shape mismatch in +=");
    }
    for (const auto& [key, value] : other.entries_) {
        add(key.first, key.second, value);
    }
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& other) {
    if (domain_.config() != other.domain_.config() ||
        codomain_.config() != other.codomain_.config()) {
        throw std::invalid_argument("OperatorMatrix: shape mismatch in -=");
    }
    for (const auto& [key, value] : other.entries_) {
        add(key.first, key.second, -value);
    }
    return *this;
}

double OperatorMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& [key, value] : entries_) m = std::max(m, std::abs(value));
    return m;
}

double OperatorMatrix::max_abs_diff(const OperatorMatrix& other) const {
    if (domain_.config() != other.domain_.config() ||
        codomain_.config() != other.codomain_.config()) {
        throw std::invalid_argument("OperatorMatrix::max_abs_diff: shape mismatch");
    }
    double m = 0.0;
    auto it = entries_.begin();
    auto jt = other.entries_.begin();
    while (it != entries_.end() || jt != other.entries_.end()) {
        if (jt == other.entries_.end() || (it != entries_.end() && it->first < jt->first)) {
            m = std::max(m, std::abs(it->second));
            ++it;
        } else if (it == entries_.end() || jt->first < it->first) {
            m = std::max(m, std::abs(jt->second));
            ++jt;
        } else {
            m = std::max(m, std::abs(it->second - jt->second));
            ++it;
            ++jt;
        }
    }
    return m;
}

}  // namespace rinv
