#include "rinv/multi_index.hpp"

#include <limits>
#include <numeric>
#include <string>

namespace rinv {

namespace {

void append_compositions(int remaining, int slots, std::vector<int>& prefix,
                         std::vector<MultiIndex>& out) {
    if (slots == 1) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    // Descending first entry yields descending lexicographic order per degree.
    for (int first = remaining; first >= 0; --first) {
        prefix.push_back(first);
        append_compositions(remaining - first, slots - 1, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw std::invalid_argument("MultiIndex: entries must be nonnegative");
    }
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

int MultiIndex::degree() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex MultiIndex::shifted(int axis, int delta) const {
    std::vector<int> e = entries_;
    e[static_cast<std::size_t>(axis)] += delta;
    if (e[static_cast<std::size_t>(axis)] < 0) {
        throw std::invalid_argument("MultiIndex::shifted: entry would become negative");
    }
    return MultiIndex(std::move(e));
}

void TruncationConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("TruncationConfig: dim must be >= 1");
    if (max_degree < 0) throw std::invalid_argument("TruncationConfig: max_degree must be >= 0");
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        const std::int64_t num = n - k + i;
        if (result > std::numeric_limits<std::int64_t>::max() / num) {
            throw std::overflow_error("binomial: result exceeds 64 bits");
        }
        result = result * num / i;
    }
    return result;
}

std::int64_t basis_size(const TruncationConfig& config) {
    config.validate();
    return binomial(config.dim + config.max_degree, config.dim);
}

std::vector<MultiIndex> enumerate_basis(const TruncationConfig& config) {
    config.validate();
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(basis_size(config)));
    std::vector<int> prefix;
    for (int degree = 0; degree <= config.max_degree; ++degree) {
        append_compositions(degree, config.dim, prefix, out);
    }
    return out;
}

Basis::Basis(TruncationConfig config) : config_(config) {
    auto impl = std::make_shared<Impl>();
    impl->indices = enumerate_basis(config_);
    for (std::size_t i = 0; i < impl->indices.size(); ++i) {
        impl->positions.emplace(impl->indices[i], i);
    }
    impl_ = std::move(impl);
}

std::size_t Basis::position(const MultiIndex& idx) const {
    auto it = impl_->positions.find(idx);
    if (it == impl_->positions.end()) {
        throw std::invalid_argument("Basis::position: multi-index not in basis (dim " +
                                    std::to_string(config_.dim) + ", max degree " +
                                    std::to_string(config_.max_degree) + ")");
    }
    return it->second;
}

bool Basis::contains(const MultiIndex& idx) const {
    return idx.dim() == config_.dim && idx.degree() <= config_.max_degree;
}

}  // namespace rinv
