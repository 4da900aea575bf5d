#pragma once

// Slow, independent re-derivations used only by the tests. Nothing here
// shares code with the library: binomials come from the addition recurrence,
// layers from a plain odometer over per-part value combinations, and maxima
// from direct clique recursion over bit masks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include <mpfam/mpfam.hpp>

namespace testutil {

using mpfam::BigCount;
using mpfam::Family;
using mpfam::MultiPartSet;
using mpfam::PartStructure;

// C(n, k) by the addition recurrence.
inline BigCount pascal(int n, int k) {
    if (k < 0 || n < 0 || k > n) return BigCount(0);
    std::vector<BigCount> row(static_cast<std::size_t>(n) + 1);
    row[0] = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
    return row[static_cast<std::size_t>(k)];
}

// every member of the layer, as per-part 1-based value lists
inline std::vector<std::vector<std::vector<int>>> oracle_layer(const PartStructure& ps) {
    std::vector<std::vector<std::vector<int>>> per_part;
    for (int s = 1; s <= ps.parts(); ++s) {
        std::vector<std::vector<int>> combos;
        std::vector<int> cur(static_cast<std::size_t>(ps.k(s)));
        for (int i = 0; i < ps.k(s); ++i) cur[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            combos.push_back(cur);
            int i = ps.k(s) - 1;
            while (i >= 0 && cur[static_cast<std::size_t>(i)] == ps.n(s) - (ps.k(s) - 1 - i)) --i;
            if (i < 0) break;
            ++cur[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < ps.k(s); ++j)
                cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
        per_part.push_back(std::move(combos));
    }
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(ps.parts()), 0);
    while (true) {
        std::vector<std::vector<int>> member;
        for (int s = 0; s < ps.parts(); ++s)
            member.push_back(per_part[static_cast<std::size_t>(s)][idx[static_cast<std::size_t>(s)]]);
        out.push_back(std::move(member));
        int s = ps.parts() - 1;
        while (s >= 0 && ++idx[static_cast<std::size_t>(s)] == per_part[static_cast<std::size_t>(s)].size())
            idx[static_cast<std::size_t>(s--)] = 0;
        if (s < 0) break;
    }
    return out;
}

inline MultiPartSet to_set(const PartStructure& ps, const std::vector<std::vector<int>>& values) {
    return MultiPartSet(ps, values);
}

// one mask bit per ground element; parts occupy disjoint ranges, so two
// members intersect exactly when their masks share a bit
inline std::uint64_t ground_mask(const PartStructure& ps, const std::vector<std::vector<int>>& values) {
    std::uint64_t m = 0;
    for (int s = 1; s <= ps.parts(); ++s)
        for (const int v : values[static_cast<std::size_t>(s - 1)])
            m |= std::uint64_t(1) << (ps.offset(s) + v - 1);
    return m;
}

struct BruteResult {
    bool feasible = false;
    std::size_t size = 0;
};

namespace detail {

inline void brute_extend(const std::vector<std::uint64_t>& masks, std::size_t idx,
                         std::vector<std::uint64_t>& chosen, std::uint64_t common,
                         bool nontrivial, BruteResult& best) {
    const bool counts = !nontrivial || (common == 0 && !chosen.empty());
    if (counts && (!best.feasible || chosen.size() > best.size)) {
        best.feasible = true;
        best.size = chosen.size();
    }
    if (idx == masks.size()) return;
    if (chosen.size() + (masks.size() - idx) <= best.size && best.feasible) return;
    for (std::size_t i = idx; i < masks.size(); ++i) {
        bool ok = true;
        for (const std::uint64_t c : chosen)
            if ((c & masks[i]) == 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen.push_back(masks[i]);
        brute_extend(masks, i + 1, chosen, chosen.size() == 1 ? masks[i] : (common & masks[i]),
                     nontrivial, best);
        chosen.pop_back();
    }
}

}  // namespace detail

// exact maximum intersecting (or non-trivially intersecting) family size by
// direct recursion over every clique; only meant for small layers
inline BruteResult brute_max(const PartStructure& ps, bool nontrivial) {
    const auto layer = oracle_layer(ps);
    std::vector<std::uint64_t> masks;
    masks.reserve(layer.size());
    for (const auto& m : layer) masks.push_back(ground_mask(ps, m));
    BruteResult best;
    std::vector<std::uint64_t> chosen;
    detail::brute_extend(masks, 0, chosen, 0, nontrivial, best);
    return best;
}

// random family: a uniformly drawn subset of the layer with this many members
inline Family random_family(const PartStructure& ps, std::mt19937& rng, int members) {
    const auto layer = oracle_layer(ps);
    std::vector<std::size_t> idx(layer.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(members), layer.size());
    std::vector<MultiPartSet> sets;
    for (std::size_t i = 0; i < take; ++i) sets.push_back(to_set(ps, layer[idx[i]]));
    return Family(ps, std::move(sets));
}

// random intersecting family grown by rejection: every added member must
// meet all previous ones
inline Family random_intersecting_family(const PartStructure& ps, std::mt19937& rng, int members) {
    const auto layer = oracle_layer(ps);
    std::vector<std::size_t> idx(layer.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::uint64_t> chosen_masks;
    std::vector<MultiPartSet> sets;
    for (const std::size_t i : idx) {
        if (sets.size() >= static_cast<std::size_t>(members)) break;
        const std::uint64_t m = ground_mask(ps, layer[i]);
        bool ok = true;
        for (const std::uint64_t c : chosen_masks)
            if ((c & m) == 0) {
                ok = false;
                break;
            }
        if (!ok) continue;
        chosen_masks.push_back(m);
        sets.push_back(to_set(ps, layer[i]));
    }
    return Family(ps, std::move(sets));
}

}  // namespace testutil
