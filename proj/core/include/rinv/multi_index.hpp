#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rinv {

/// n-tuple of nonnegative integers indexing one tensor-product Hermite
/// basis function. The total degree is the sum of the entries.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    MultiIndex(std::initializer_list<int> entries);

    int dim() const { return static_cast<int>(entries_.size()); }
    int degree() const;
    int operator[](int axis) const { return entries_[static_cast<std::size_t>(axis)]; }
    const std::vector<int>& entries() const { return entries_; }

    /// Index with entry on `axis` shifted by `delta`. Throws if the result
    /// would be negative.
    MultiIndex shifted(int axis, int delta) const;

    bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }
    bool operator!=(const MultiIndex& other) const { return entries_ != other.entries_; }
    bool operator<(const MultiIndex& other) const { return entries_ < other.entries_; }

private:
    std::vector<int> entries_;
};

/// Truncation of the basis: dimension n and total-degree cap.
struct TruncationConfig {
    int dim = 1;
    int max_degree = 0;

    bool operator==(const TruncationConfig& o) const {
        return dim == o.dim && max_degree == o.max_degree;
    }
    bool operator!=(const TruncationConfig& o) const { return !(*this == o); }

    void validate() const;
};

/// binomial(n, k) as an exact 64-bit integer; throws on overflow.
std::int64_t binomial(int n, int k);

/// Number of multi-indices of length `dim` with total degree <= max_degree,
/// i.e. binomial(dim + max_degree, dim).
std::int64_t basis_size(const TruncationConfig& config);

/// All multi-indices of length n and total degree <= max_degree, in graded
/// lexicographic order: ascending degree, then descending lexicographic
/// within a degree. This order is fixed globally so coefficient vectors and
/// operator matrices are reproducible across runs.
std::vector<MultiIndex> enumerate_basis(const TruncationConfig& config);

/// Immutable enumeration of a truncated basis with O(log) index lookup.
/// Cheap to copy; copies share the underlying tables.
class Basis {
public:
    explicit Basis(TruncationConfig config);

    const TruncationConfig& config() const { return config_; }
    int dim() const { return config_.dim; }
    int max_degree() const { return config_.max_degree; }
    std::size_t size() const { return impl_->indices.size(); }

    const std::vector<MultiIndex>& indices() const { return impl_->indices; }
    const MultiIndex& index(std::size_t linear) const { return impl_->indices[linear]; }

    /// Linear position of `idx` in the enumeration; throws std::invalid_argument
    /// if the index does not belong to this basis.
    std::size_t position(const MultiIndex& idx) const;

    /// True if `idx` has the right length and degree within the cap.
    bool contains(const MultiIndex& idx) const;

    bool operator==(const Basis& o) const { return config_ == o.config_; }
    bool operator!=(const Basis& o) const { return config_ != o.config_; }

private:
    struct Impl {
        std::vector<MultiIndex> indices;
        std::map<MultiIndex, std::size_t> positions;
    };
    TruncationConfig config_;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace rinv
