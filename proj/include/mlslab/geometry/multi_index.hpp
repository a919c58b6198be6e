#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mlslab::geom {

// Multi-index alpha in N^d. Entries are small non-negative integers; orders
// used in practice stay below 10, so factorials fit comfortably in 64 bits.
class MultiIndex {
  public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<int> entries);
    // Zero multi-index of dimension d.
    static MultiIndex zero(int d);
    // m * e_axis.
    static MultiIndex axis(int d, int axis, int m = 1);

    int dim() const { return static_cast<int>(entries_.size()); }
    int order() const;  // |alpha| = sum of entries
    int operator[](int j) const { return entries_[j]; }
    const std::vector<int>& entries() const { return entries_; }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator!=(const MultiIndex& o) const { return entries_ != o.entries_; }

    // Componentwise comparison; partial order.
    bool leq(const MultiIndex& o) const;
    // Componentwise difference; requires o.leq(*this).
    MultiIndex minus(const MultiIndex& o) const;
    MultiIndex plus(const MultiIndex& o) const;

    // alpha! = prod alpha_j!
    std::uint64_t factorial() const;

    std::string to_string() const;  // "(a0,a1,...)"

  private:
    std::vector<int> entries_;
};

// prod_j binom(a_j, b_j); zero when b exceeds a in any component.
std::uint64_t binomial(const MultiIndex& a, const MultiIndex& b);

std::uint64_t factorial(std::uint64_t n);
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// All multi-indices with |alpha| <= max_order in graded lexicographic order:
// ascending total order, lexicographic within each grade.
// Count is binom(d + max_order, d).
std::vector<MultiIndex> enumerate_multi_indices(int d, int max_order);

}  // namespace mlslab::geom
