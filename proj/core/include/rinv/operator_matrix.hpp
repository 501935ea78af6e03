#pragma once

#include <map>
#include <utility>

#include "rinv/series.hpp"

namespace rinv {

/// Exact sparse matrix of an operator between two truncated coefficient
/// spaces. Rows index the codomain basis, columns the domain basis, both in
/// the global graded-lexicographic enumeration. Entries live in an ordered
/// map so assembly and iteration are reproducible bit-for-bit.
class OperatorMatrix {
public:
    using Key = std::pair<std::size_t, std::size_t>;  // (row, col)
    using EntryMap = std::map<Key, Complex>;

    OperatorMatrix(Basis domain, Basis codomain)
        : domain_(std::move(domain)), codomain_(std::move(codomain)) {}

    const Basis& domain() const { return domain_; }
    const Basis& codomain() const { return codomain_; }
    std::size_t rows() const { return codomain_.size(); }
    std::size_t cols() const { return domain_.size(); }
    const EntryMap& entries() const { return entries_; }
    std::size_t nonzeros() const { return entries_.size(); }

    void add(std::size_t row, std::size_t col, Complex value);
    void add(const MultiIndex& row, const MultiIndex& col, Complex value);
    Complex entry(std::size_t row, std::size_t col) const;
    Complex entry(const MultiIndex& row, const MultiIndex& col) const;

    /// Embedding identity: domain coefficients copied into a codomain space
    /// that must contain the domain degrees.
    static OperatorMatrix identity(const Basis& domain, const Basis& codomain);

    HermiteSeries apply(const HermiteSeries& input) const;

    /// Composition this * rhs (apply rhs first). Requires rhs.codomain ==
    /// this->domain; compositions through enlarged intermediate spaces are
    /// the caller's responsibility and never truncated silently here.
    OperatorMatrix compose(const OperatorMatrix& rhs) const;

    /// Conjugate transpose; swaps domain and codomain.
    OperatorMatrix adjoint() const;

    /// Same entries re-embedded into a codomain with a different degree cap
    /// (same dim). Row indices are remapped through the multi-indices; a
    /// smaller target throws if any nonzero entry would be dropped.
    OperatorMatrix with_codomain(const Basis& codomain) const;

    OperatorMatrix scaled(Complex factor) const;
    OperatorMatrix& operator+=(const OperatorMatrix& other);
    OperatorMatrix& operator-=(const OperatorMatrix& other);
    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }

    /// Largest entry magnitude; 0 for an empty matrix.
    double max_abs() const;
    /// Largest entrywise deviation |this - other| over the union of supports.
    double max_abs_diff(const OperatorMatrix& other) const;

private:
    Basis domain_;
    Basis codomain_;
    EntryMap entries_;
};

}  // namespace rinv
