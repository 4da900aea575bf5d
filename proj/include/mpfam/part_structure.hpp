#pragma once

#include <compare>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mpfam {

/// One ground element: 1-based part index, 1-based value inside that part.
struct Element {
    int part = 0;
    int value = 0;

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;
};

/// Immutable description of a partitioned ground set: p >= 1 parts, part s
/// holding values 1..n_s, with uniformity 1 <= k_s <= n_s. Members of the
/// layer pick exactly k_s values in every part.
///
/// Parts are indexed 1..p throughout the public interface. The canonical
/// packed encoding assigns element (s, v) the bit offset(s) + v - 1, so part 1
/// occupies the lowest bits.
class PartStructure {
public:
    PartStructure(std::vector<int> n, std::vector<int> k)
        : n_(std::move(n)), k_(std::move(k)) {
        if (n_.empty())
            throw ZeroOrNegativeError("part structure: need at least one part");
        if (n_.size() != k_.size())
            throw BadParametersError("part structure: n and k lists differ in length");
        offset_.resize(n_.size() + 1, 0);
        for (std::size_t s = 0; s < n_.size(); ++s) {
            if (n_[s] <= 0 || k_[s] <= 0)
                throw ZeroOrNegativeError("part structure: n and k must be positive in part " +
                                          std::to_string(s + 1));
            if (k_[s] > n_[s])
                throw UniformityTooLargeError("part structure: k > n in part " +
                                              std::to_string(s + 1));
            offset_[s + 1] = offset_[s] + n_[s];
        }
    }

    int parts() const { return static_cast<int>(n_.size()); }
    int n(int s) const { return n_[index(s)]; }
    int k(int s) const { return k_[index(s)]; }

    /// First bit of part s in the packed encoding.
    int offset(int s) const { return offset_[index(s)]; }

    /// Total number of ground elements (= width of the packed encoding).
    int ground_size() const { return offset_.back(); }

    /// True when 2 k_s <= n_s holds in every part.
    bool ekr_regime() const {
        for (std::size_t s = 0; s < n_.size(); ++s)
            if (2 * k_[s] > n_[s]) return false;
        return true;
    }

    int bit_of(Element e) const {
        if (e.part < 1 || e.part > parts())
            throw OutOfRangeError("element part index out of range");
        if (e.value < 1 || e.value > n_[e.part - 1])
            throw OutOfRangeError("element value out of range for its part");
        return offset_[e.part - 1] + e.value - 1;
    }

    Element element_of(int bit) const {
        if (bit < 0 || bit >= ground_size())
            throw OutOfRangeError("ground bit out of range");
        int s = 1;
        while (offset_[s] <= bit) ++s;
        return Element{s, bit - offset_[s - 1] + 1};
    }

    const std::vector<int>& sizes() const { return n_; }
    const std::vector<int>& uniformities() const { return k_; }

    friend bool operator==(const PartStructure& a, const PartStructure& b) {
        return a.n_ == b.n_ && a.k_ == b.k_;
    }

private:
    std::size_t index(int s) const {
        if (s < 1 || s > parts())
            throw OutOfRangeError("part index out of range: " + std::to_string(s));
        return static_cast<std::size_t>(s - 1);
    }

    std::vector<int> n_;
    std::vector<int> k_;
    std::vector<int> offset_;
};

}  // namespace mpfam
