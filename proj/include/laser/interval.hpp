// Index intervals and (possibly gapped) index sets over a 1-based sample grid.
//
// All observation indices in this library are 1-based: a sample of size n is
// indexed 1..n, and abscissae default to x_i = i/n unless a caller supplies
// its own design points. IntInterval is a contiguous, inclusive range of
// indices; IndexSet is a sorted set of distinct indices that may have gaps
// (it shows up as the complement of an interval inside a window).

#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace laser {

/// Contiguous inclusive index range [lo, hi], 1-based.
struct IntInterval {
    int lo = 1;
    int hi = 0;  // hi < lo denotes an empty interval

    IntInterval() = default;
    IntInterval(int lo_, int hi_) : lo(lo_), hi(hi_) {}

    int length() const { return hi >= lo ? hi - lo + 1 : 0; }
    bool empty() const { return hi < lo; }
    bool contains(int i) const { return i >= lo && i <= hi; }
    bool contains(const IntInterval& other) const {
        return other.empty() || (other.lo >= lo && other.hi <= hi);
    }

    bool operator==(const IntInterval& other) const {
        if (empty() && other.empty()) return true;
        return lo == other.lo && hi == other.hi;
    }

    /// Symmetric window of half-width h around i0, truncated to [1, n].
    /// h = 0 gives the singleton {i0}.
    static IntInterval window(int i0, int h, int n) {
        if (n < 1) throw std::invalid_argument("window: n must be >= 1");
        if (i0 < 1 || i0 > n)
            throw std::invalid_argument("window: center " + std::to_string(i0) +
                                        " outside [1, " + std::to_string(n) + "]");
        if (h < 0) throw std::invalid_argument("window: negative half-width");
        return IntInterval(std::max(i0 - h, 1), std::min(i0 + h, n));
    }
};

/// Sorted set of distinct 1-based indices inside an ambient sample of size n.
/// May be non-contiguous; empty sets are disallowed (projections onto nothing
/// are never meaningful here).
class IndexSet {
  public:
    IndexSet(std::vector<int> indices, int ambient_size)
        : idx_(std::move(indices)), n_(ambient_size) {
        if (n_ < 1) throw std::invalid_argument("IndexSet: ambient size must be >= 1");
        if (idx_.empty()) throw std::invalid_argument("IndexSet: empty index set");
        std::sort(idx_.begin(), idx_.end());
        for (std::size_t k = 0; k < idx_.size(); ++k) {
            if (idx_[k] < 1 || idx_[k] > n_)
                throw std::invalid_argument("IndexSet: index " + std::to_string(idx_[k]) +
                                            " outside [1, " + std::to_string(n_) + "]");
            if (k > 0 && idx_[k] == idx_[k - 1])
                throw std::invalid_argument("IndexSet: duplicate index " +
                                            std::to_string(idx_[k]));
        }
    }

    IndexSet(const IntInterval& iv, int ambient_size)
        : IndexSet(expand(iv), ambient_size) {}

    int size() const { return static_cast<int>(idx_.size()); }
    int ambient_size() const { return n_; }
    const std::vector<int>& indices() const { return idx_; }
    int operator[](int k) const { return idx_[static_cast<std::size_t>(k)]; }

    bool contiguous() const {
        return idx_.back() - idx_.front() + 1 == static_cast<int>(idx_.size());
    }

    /// Position of sample index i within this set, or -1 if absent.
    int position_of(int i) const {
        auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
        if (it == idx_.end() || *it != i) return -1;
        return static_cast<int>(it - idx_.begin());
    }

    /// Set difference this \ iv, as a new IndexSet. Throws if the result is empty.
    IndexSet minus(const IntInterval& iv) const {
        std::vector<int> out;
        out.reserve(idx_.size());
        for (int i : idx_)
            if (!iv.contains(i)) out.push_back(i);
        return IndexSet(std::move(out), n_);
    }

  private:
    static std::vector<int> expand(const IntInterval& iv) {
        if (iv.empty()) throw std::invalid_argument("IndexSet: empty interval");
        std::vector<int> v(static_cast<std::size_t>(iv.length()));
        for (int i = iv.lo; i <= iv.hi; ++i) v[static_cast<std::size_t>(i - iv.lo)] = i;
        return v;
    }

    std::vector<int> idx_;
    int n_;
};

/// Default equispaced abscissae x_i = i/n for i = 1..n.
inline std::vector<double> default_design(int n) {
    if (n < 1) throw std::invalid_argument("default_design: n must be >= 1");
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) x[static_cast<std::size_t>(i - 1)] = double(i) / double(n);
    return x;
}

/// Resolve a caller-supplied design span: empty means "use i/n".
/// Returns a vector either copied from `design` or freshly generated.
inline std::vector<double> resolve_design(std::span<const double> design, int n) {
    if (design.empty()) return default_design(n);
    if (static_cast<int>(design.size()) != n)
        throw std::invalid_argument("design size " + std::to_string(design.size()) +
                                    " does not match sample size " + std::to_string(n));
    return std::vector<double>(design.begin(), design.end());
}

}  // namespace laser
