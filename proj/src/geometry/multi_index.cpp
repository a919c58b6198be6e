#include "mlslab/geometry/multi_index.hpp"

#include <algorithm>
#include <string>

#include "mlslab/errors.hpp"

namespace mlslab::geom {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
    for (int e : entries_) {
        if (e < 0) throw ArgumentError("multi-index entries must be non-negative");
    }
}

MultiIndex MultiIndex::zero(int d) { return MultiIndex(std::vector<int>(d, 0)); }

MultiIndex MultiIndex::axis(int d, int axis, int m) {
    std::vector<int> e(d, 0);
    e.at(axis) = m;
    return MultiIndex(std::move(e));
}

int MultiIndex::order() const {
    int s = 0;
    for (int e : entries_) s += e;
    return s;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (dim() != o.dim()) throw ArgumentError("multi-index dimension mismatch");
    for (int j = 0; j < dim(); ++j)
        if (entries_[j] > o.entries_[j]) return false;
    return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
    if (!o.leq(*this)) throw ArgumentError("multi-index subtraction would be negative");
    std::vector<int> e(entries_);
    for (int j = 0; j < dim(); ++j) e[j] -= o.entries_[j];
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
    if (dim() != o.dim()) throw ArgumentError("multi-index dimension mismatch");
    std::vector<int> e(entries_);
    for (int j = 0; j < dim(); ++j) e[j] += o.entries_[j];
    return MultiIndex(std::move(e));
}

std::uint64_t MultiIndex::factorial() const {
    std::uint64_t f = 1;
    for (int e : entries_) f *= geom::factorial(e);
    return f;
}

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (int j = 0; j < dim(); ++j) {
        if (j) s += ",";
        s += std::to_string(entries_[j]);
    }
    return s + ")";
}

std::uint64_t factorial(std::uint64_t n) {
    std::uint64_t f = 1;
    for (std::uint64_t i = 2; i <= n; ++i) f *= i;
    return f;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t binomial(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw ArgumentError("multi-index dimension mismatch");
    std::uint64_t r = 1;
    for (int j = 0; j < a.dim(); ++j) r *= binomial(std::uint64_t(a[j]), std::uint64_t(b[j]));
    return r;
}

namespace {

void emit_grade(int d, int grade, int pos, std::vector<int>& cur,
                std::vector<MultiIndex>& out) {
    if (pos == d - 1) {
        cur[pos] = grade;
        out.emplace_back(cur);
        return;
    }
    for (int e = 0; e <= grade; ++e) {
        cur[pos] = e;
        emit_grade(d, grade - e, pos + 1, cur, out);
    }
}

}  // namespace

std::vector<MultiIndex> enumerate_multi_indices(int d, int max_order) {
    if (d < 1) throw ArgumentError("dimension must be positive");
    if (max_order < 0) throw ArgumentError("max_order must be non-negative");
    std::vector<MultiIndex> out;
    std::vector<int> cur(d, 0);
    for (int grade = 0; grade <= max_order; ++grade) emit_grade(d, grade, 0, cur, out);
    return out;
}

}  // namespace mlslab::geom
