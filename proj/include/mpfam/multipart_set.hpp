#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "part_structure.hpp"

namespace mpfam {

/// Packed characteristic vector over the ground set, part 1 in the lowest bits.
using Bits = boost::dynamic_bitset<>;

namespace detail {

/// Number of set bits in [lo, hi).
inline int count_in_range(const Bits& b, int lo, int hi) {
    int c = 0;
    for (auto pos = b.find_first(); pos != Bits::npos && static_cast<int>(pos) < hi;
         pos = b.find_next(pos))
        if (static_cast<int>(pos) >= lo) ++c;
    return c;
}

inline Bits pack_lists(const PartStructure& ps, const std::vector<std::vector<int>>& lists) {
    if (static_cast<int>(lists.size()) != ps.parts())
        throw StructureMismatchError("set literal: expected " + std::to_string(ps.parts()) +
                                     " parts, got " + std::to_string(lists.size()));
    Bits b(ps.ground_size());
    for (int s = 1; s <= ps.parts(); ++s)
        for (int v : lists[static_cast<std::size_t>(s - 1)]) {
            int bit = ps.bit_of(Element{s, v});  // validates the range
            if (b.test(static_cast<std::size_t>(bit)))
                throw StructureMismatchError("set literal: duplicate value " + std::to_string(v) +
                                             " in part " + std::to_string(s));
            b.set(static_cast<std::size_t>(bit));
        }
    return b;
}

inline std::vector<std::vector<int>> unpack_lists(const PartStructure& ps, const Bits& b) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(ps.parts()));
    for (auto pos = b.find_first(); pos != Bits::npos; pos = b.find_next(pos)) {
        Element e = ps.element_of(static_cast<int>(pos));
        out[static_cast<std::size_t>(e.part - 1)].push_back(e.value);
    }
    return out;  // ascending inside each part by construction
}

}  // namespace detail

/// One layer member: exactly k_s values chosen inside every part.
///
/// Canonical order on members is colexicographic on the packed encoding,
/// which coincides with numeric order of the bit-vectors.
class MultiPartSet {
public:
    MultiPartSet(const PartStructure& ps, const std::vector<std::vector<int>>& values)
        : bits_(detail::pack_lists(ps, values)) {
        check_block_sizes(ps);
    }

    static MultiPartSet from_bits(const PartStructure& ps, Bits b) {
        if (static_cast<int>(b.size()) != ps.ground_size())
            throw StructureMismatchError("set bits: wrong ground size");
        MultiPartSet f(std::move(b));
        f.check_block_sizes(ps);
        return f;
    }

    /// No validation; caller guarantees exactly k_s bits in every block.
    static MultiPartSet from_bits_unchecked(Bits b) { return MultiPartSet(std::move(b)); }

    const Bits& bits() const { return bits_; }

    bool contains(const PartStructure& ps, Element e) const {
        return bits_.test(static_cast<std::size_t>(ps.bit_of(e)));
    }

    /// Per-part sorted value lists.
    std::vector<std::vector<int>> values(const PartStructure& ps) const {
        return detail::unpack_lists(ps, bits_);
    }

    friend bool operator==(const MultiPartSet& a, const MultiPartSet& b) {
        return a.bits_ == b.bits_;
    }
    friend bool operator!=(const MultiPartSet& a, const MultiPartSet& b) {
        return !(a == b);
    }
    /// Colexicographic (canonical) order.
    friend bool operator<(const MultiPartSet& a, const MultiPartSet& b) {
        return a.bits_ < b.bits_;
    }

private:
    explicit MultiPartSet(Bits b) : bits_(std::move(b)) {}

    void check_block_sizes(const PartStructure& ps) const {
        for (int s = 1; s <= ps.parts(); ++s) {
            int c = detail::count_in_range(bits_, ps.offset(s), ps.offset(s) + ps.n(s));
            if (c != ps.k(s))
                throw StructureMismatchError("set has " + std::to_string(c) + " values in part " +
                                             std::to_string(s) + ", expected " +
                                             std::to_string(ps.k(s)));
        }
    }

    Bits bits_;
};

/// A partial choice: at most k_s values inside every part. Used for superset
/// counting and projections.
class PartialSet {
public:
    PartialSet(const PartStructure& ps, const std::vector<std::vector<int>>& values)
        : bits_(detail::pack_lists(ps, values)) {
        check_block_sizes(ps);
    }

    static PartialSet from_bits(const PartStructure& ps, Bits b) {
        if (static_cast<int>(b.size()) != ps.ground_size())
            throw StructureMismatchError("partial set bits: wrong ground size");
        PartialSet z(std::move(b));
        z.check_block_sizes(ps);
        return z;
    }

    const Bits& bits() const { return bits_; }

    std::vector<std::vector<int>> values(const PartStructure& ps) const {
        return detail::unpack_lists(ps, bits_);
    }

    /// |Z_s| for each part, 1-based indexing via s - 1.
    std::vector<int> block_sizes(const PartStructure& ps) const {
        std::vector<int> out(static_cast<std::size_t>(ps.parts()));
        for (int s = 1; s <= ps.parts(); ++s)
            out[static_cast<std::size_t>(s - 1)] =
                detail::count_in_range(bits_, ps.offset(s), ps.offset(s) + ps.n(s));
        return out;
    }

    friend bool operator==(const PartialSet& a, const PartialSet& b) {
        return a.bits_ == b.bits_;
    }

private:
    explicit PartialSet(Bits b) : bits_(std::move(b)) {}

    void check_block_sizes(const PartStructure& ps) const {
        for (int s = 1; s <= ps.parts(); ++s) {
            int c = detail::count_in_range(bits_, ps.offset(s), ps.offset(s) + ps.n(s));
            if (c > ps.k(s))
                throw StructureMismatchError("partial set exceeds k in part " + std::to_string(s));
        }
    }

    Bits bits_;
};

}  // namespace mpfam
