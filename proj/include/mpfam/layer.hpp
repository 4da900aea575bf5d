#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "binomial.hpp"
#include "family.hpp"

namespace mpfam {

/// Default cap on materialized layer members. Enumeration refuses larger
/// layers instead of exhausting memory; streaming visits have no cap.
inline constexpr std::uint64_t default_layer_cap = 10'000'000;

/// Number of layer members: the product of C(n_s, k_s) over parts.
inline BigCount layer_size(const PartStructure& ps) {
    BigCount r = 1;
    for (int s = 1; s <= ps.parts(); ++s) r *= binomial(ps.n(s), ps.k(s));
    return r;
}

namespace detail {

/// Advance a sorted k-subset of [n] to its colexicographic successor.
/// Returns false at the last subset ({n-k+1, .., n}).
inline bool next_colex_subset(std::vector<int>& c, int n) {
    const std::size_t k = c.size();
    for (std::size_t i = 0; i < k; ++i) {
        int limit = (i + 1 < k) ? c[i + 1] - 1 : n;
        if (c[i] < limit) {
            ++c[i];
            for (std::size_t r = 0; r < i; ++r) c[r] = static_cast<int>(r) + 1;
            return true;
        }
    }
    return false;
}

inline void write_block(Bits& b, const PartStructure& ps, int s, const std::vector<int>& sub) {
    const int lo = ps.offset(s);
    for (int v = 0; v < ps.n(s); ++v) b.reset(static_cast<std::size_t>(lo + v));
    for (int v : sub) b.set(static_cast<std::size_t>(lo + v - 1));
}

}  // namespace detail

/// Visit every layer member exactly once, in canonical (colexicographic)
/// order of the packed encoding: part 1 varies fastest. Nothing is stored.
template <class Fn>
void for_each_in_layer(const PartStructure& ps, Fn&& fn) {
    const int p = ps.parts();
    std::vector<std::vector<int>> subs(static_cast<std::size_t>(p));
    Bits buf(static_cast<std::size_t>(ps.ground_size()));
    for (int s = 1; s <= p; ++s) {
        auto& c = subs[static_cast<std::size_t>(s - 1)];
        c.resize(static_cast<std::size_t>(ps.k(s)));
        std::iota(c.begin(), c.end(), 1);
        detail::write_block(buf, ps, s, c);
    }
    for (;;) {
        fn(MultiPartSet::from_bits_unchecked(buf));
        int s = 1;
        while (s <= p && !detail::next_colex_subset(subs[static_cast<std::size_t>(s - 1)], ps.n(s))) {
            auto& c = subs[static_cast<std::size_t>(s - 1)];
            std::iota(c.begin(), c.end(), 1);
            detail::write_block(buf, ps, s, c);
            ++s;
        }
        if (s > p) break;
        detail::write_block(buf, ps, s, subs[static_cast<std::size_t>(s - 1)]);
    }
}

/// Materialize the whole layer in canonical order.
/// Throws LayerTooLargeError when the layer exceeds the cap.
inline Family enumerate_layer(const PartStructure& ps, std::uint64_t cap = default_layer_cap) {
    BigCount total = layer_size(ps);
    if (total > cap)
        throw LayerTooLargeError("layer has " + total.str() + " members, cap is " +
                                 std::to_string(cap));
    std::vector<MultiPartSet> v;
    v.reserve(static_cast<std::size_t>(total));
    for_each_in_layer(ps, [&](const MultiPartSet& f) { v.push_back(f); });
    return Family(ps, std::move(v), already_canonical);
}

/// Number of layer members containing the partial set Z:
/// the product of C(n_s - |Z_s|, k_s - |Z_s|).
inline BigCount count_supersets(const PartStructure& ps, const PartialSet& z) {
    if (static_cast<int>(z.bits().size()) != ps.ground_size())
        throw StructureMismatchError("count_supersets: partial set does not match the structure");
    BigCount r = 1;
    std::vector<int> sizes = z.block_sizes(ps);
    for (int s = 1; s <= ps.parts(); ++s) {
        int zs = sizes[static_cast<std::size_t>(s - 1)];
        if (zs > ps.k(s))
            throw StructureMismatchError("count_supersets: |Z_s| > k_s in part " +
                                         std::to_string(s));
        r *= binomial(ps.n(s) - zs, ps.k(s) - zs);
    }
    return r;
}

}  // namespace mpfam
