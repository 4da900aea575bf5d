#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "layer.hpp"

namespace mpfam {

/// Parameter pair for the parameterized candidates: a distinguished part t and
/// a set S of other parts (kept sorted ascending).
struct TSPair {
    int t = 1;
    std::vector<int> S;

    friend bool operator==(const TSPair&, const TSPair&) = default;
};

inline void validate(const PartStructure& ps, const TSPair& ts) {
    if (ts.t < 1 || ts.t > ps.parts())
        throw StructureMismatchError("(t,S): part t out of range");
    int prev = 0;
    for (int s : ts.S) {
        if (s < 1 || s > ps.parts())
            throw StructureMismatchError("(t,S): member of S out of range");
        if (s == ts.t) throw StructureMismatchError("(t,S): S must not contain t");
        if (s <= prev) throw StructureMismatchError("(t,S): S must be strictly ascending");
        prev = s;
    }
}

/// Excluded pairs carry no non-trivially intersecting candidate:
/// S empty with k_t = 1, or S = {r} with k_t = k_r = 1.
inline bool is_excluded(const PartStructure& ps, const TSPair& ts) {
    validate(ps, ts);
    if (ts.S.empty() && ps.k(ts.t) == 1) return true;
    if (ts.S.size() == 1 && ps.k(ts.t) == 1 && ps.k(ts.S.front()) == 1) return true;
    return false;
}

/// Family given by a membership predicate over one structure. Supports
/// membership tests and streaming counts without storage; materializes only
/// under the layer cap.
class LazyFamily {
public:
    LazyFamily(PartStructure ps, std::function<bool(const MultiPartSet&)> pred)
        : ps_(std::move(ps)), pred_(std::move(pred)) {}

    const PartStructure& structure() const { return ps_; }

    bool contains(const MultiPartSet& f) const {
        if (static_cast<int>(f.bits().size()) != ps_.ground_size())
            throw StructureMismatchError("lazy family: set does not match the structure");
        return pred_(f);
    }

    /// Exact member count by streaming the layer.
    BigCount count() const {
        std::uint64_t c = 0;
        for_each_in_layer(ps_, [&](const MultiPartSet& f) {
            if (pred_(f)) ++c;
        });
        return BigCount(c);
    }

    /// Throws LayerTooLargeError when the layer exceeds the cap.
    Family materialize(std::uint64_t cap = default_layer_cap) const {
        BigCount total = layer_size(ps_);
        if (total > cap)
            throw LayerTooLargeError("cannot materialize: layer has " + total.str() +
                                     " members, cap is " + std::to_string(cap));
        std::vector<MultiPartSet> v;
        for_each_in_layer(ps_, [&](const MultiPartSet& f) {
            if (pred_(f)) v.push_back(f);
        });
        return Family(ps_, std::move(v), already_canonical);
    }

private:
    PartStructure ps_;
    std::function<bool(const MultiPartSet&)> pred_;
};

namespace detail {

/// Bits of values start .. start+len-1 inside part s (1-based start).
inline Bits value_run(const PartStructure& ps, int s, int start, int len) {
    Bits b(static_cast<std::size_t>(ps.ground_size()));
    for (int v = start; v < start + len; ++v)
        b.set(static_cast<std::size_t>(ps.bit_of(Element{s, v})));
    return b;
}

/// Full block mask of part s.
inline Bits block_mask(const PartStructure& ps, int s) {
    return value_run(ps, s, 1, ps.n(s));
}

}  // namespace detail

/// All layer members whose part-t choice contains the value 1: the product of
/// a star with the full layers of the other parts. Trivially intersecting.
inline LazyFamily frankl_product_view(const PartStructure& ps, int t) {
    if (t < 1 || t > ps.parts()) throw OutOfRangeError("frankl_product: part index out of range");
    const auto bit1 = static_cast<std::size_t>(ps.bit_of(Element{t, 1}));
    return LazyFamily(ps, [bit1](const MultiPartSet& f) { return f.bits().test(bit1); });
}

inline Family frankl_product(const PartStructure& ps, int t,
                             std::uint64_t cap = default_layer_cap) {
    return frankl_product_view(ps, t).materialize(cap);
}

/// Single-part candidate on C([n], k): the fixed set {2, .., k+1} together
/// with every k-set containing 1 that meets it. Requires k < n so the fixed
/// set avoids the star center.
inline LazyFamily hilton_milner_view(int n, int k) {
    PartStructure ps({n}, {k});  // validates 1 <= k <= n
    if (k >= n)
        throw OutOfRangeError("hilton_milner_family: need k < n so {2,..,k+1} fits");
    Bits fixed = detail::value_run(ps, 1, 2, k);
    const auto bit1 = static_cast<std::size_t>(ps.bit_of(Element{1, 1}));
    return LazyFamily(ps, [fixed, bit1](const MultiPartSet& f) {
        if (f.bits().test(bit1)) return f.bits().intersects(fixed);
        return fixed.is_subset_of(f.bits());  // |F| = k forces equality
    });
}

inline Family hilton_milner_family(int n, int k, std::uint64_t cap = default_layer_cap) {
    return hilton_milner_view(n, k).materialize(cap);
}

/// The (t, S) candidate family.
///
/// k_t > 1: members with F_t = {2,..,k_t+1} and F_s = [k_s] for all s in S,
/// together with members where 1 is chosen in part t and part t meets
/// {2,..,k_t+1} or some part s in S meets [k_s].
///
/// k_t = 1: members with F_s = [k_s] for all s in S, together with members
/// where part t chose {1} and some part s in S meets [k_s].
///
/// Excluded pairs throw ExcludedPairError unless allow_trivial is set (the
/// degenerate family is then still well defined, just trivially intersecting).
inline LazyFamily hm_ts_view(const PartStructure& ps, const TSPair& ts,
                             bool allow_trivial = false) {
    validate(ps, ts);
    if (is_excluded(ps, ts) && !allow_trivial)
        throw ExcludedPairError("(t,S) pair is excluded; pass allow_trivial to build anyway");
    const int t = ts.t;
    const auto bit1 = static_cast<std::size_t>(ps.bit_of(Element{t, 1}));

    Bits pattern(static_cast<std::size_t>(ps.ground_size()));
    Bits blocks(static_cast<std::size_t>(ps.ground_size()));
    for (int s : ts.S) {
        pattern |= detail::value_run(ps, s, 1, ps.k(s));
        blocks |= detail::block_mask(ps, s);
    }
    if (ps.k(t) > 1) {
        if (ps.k(t) >= ps.n(t))
            throw OutOfRangeError("hm_ts_family: need k_t < n_t so {2,..,k_t+1} fits");
        pattern |= detail::value_run(ps, t, 2, ps.k(t));
        blocks |= detail::block_mask(ps, t);
    }

    return LazyFamily(ps, [pattern, blocks, bit1](const MultiPartSet& f) {
        if ((f.bits() & blocks) == pattern) return true;
        return f.bits().test(bit1) && f.bits().intersects(pattern);
    });
}

inline Family hm_ts_family(const PartStructure& ps, const TSPair& ts, bool allow_trivial = false,
                           std::uint64_t cap = default_layer_cap) {
    return hm_ts_view(ps, ts, allow_trivial).materialize(cap);
}

/// Admissible per-part pin counts for the layered candidate at part t:
/// 0 <= ell_s <= k_s, total at least 2, ell_t = 0 when k_t = 1, and
/// ell_t = k_t when the total exceeds 2 and k_t > 1.
inline bool is_admissible_ell(const PartStructure& ps, int t, const std::vector<int>& ell) {
    if (t < 1 || t > ps.parts()) throw OutOfRangeError("ell: part index out of range");
    if (static_cast<int>(ell.size()) != ps.parts()) return false;
    int sum = 0;
    for (int s = 1; s <= ps.parts(); ++s) {
        int e = ell[static_cast<std::size_t>(s - 1)];
        if (e < 0 || e > ps.k(s)) return false;
        sum += e;
    }
    if (sum < 2) return false;
    int et = ell[static_cast<std::size_t>(t - 1)];
    if (ps.k(t) == 1 && et != 0) return false;
    if (sum > 2 && ps.k(t) > 1 && et != ps.k(t)) return false;
    return true;
}

/// The pin counts realizing the (t, S) candidate as a layered candidate:
/// ell_s = k_s for s in S and for s = t when k_t > 1, otherwise 0.
inline std::vector<int> ell_of(const PartStructure& ps, const TSPair& ts) {
    validate(ps, ts);
    std::vector<int> ell(static_cast<std::size_t>(ps.parts()), 0);
    for (int s : ts.S) ell[static_cast<std::size_t>(s - 1)] = ps.k(s);
    if (ps.k(ts.t) > 1) ell[static_cast<std::size_t>(ts.t - 1)] = ps.k(ts.t);
    return ell;
}

namespace detail {

/// The pinned witness set: values 1..ell_s in part s for s != t, and values
/// 2..ell_t+1 in part t (skipping the star center).
inline Bits pinned_witness(const PartStructure& ps, int t, const std::vector<int>& ell) {
    Bits y(static_cast<std::size_t>(ps.ground_size()));
    for (int s = 1; s <= ps.parts(); ++s) {
        int e = ell[static_cast<std::size_t>(s - 1)];
        if (e == 0) continue;
        int start = (s == t) ? 2 : 1;
        if (start + e - 1 > ps.n(s))
            throw InvalidEllError("ell: pinned set does not fit inside part " + std::to_string(s));
        y |= value_run(ps, s, start, e);
    }
    return y;
}

}  // namespace detail

/// The layered candidate at (t, ell): members where 1 is chosen in part t and
/// the member meets the pinned witness set, together with members containing
/// the whole pinned witness set.
inline LazyFamily ell_view(const PartStructure& ps, int t, const std::vector<int>& ell) {
    if (!is_admissible_ell(ps, t, ell))
        throw InvalidEllError("ell vector is not admissible for part t");
    Bits y = detail::pinned_witness(ps, t, ell);
    const auto bit1 = static_cast<std::size_t>(ps.bit_of(Element{t, 1}));
    return LazyFamily(ps, [y, bit1](const MultiPartSet& f) {
        if (f.bits().test(bit1) && f.bits().intersects(y)) return true;
        return y.is_subset_of(f.bits());
    });
}

inline Family ell_family(const PartStructure& ps, int t, const std::vector<int>& ell,
                         std::uint64_t cap = default_layer_cap) {
    return ell_view(ps, t, ell).materialize(cap);
}

/// All members containing at least two of the three witnesses.
/// Witnesses must be pairwise distinct, and two witnesses sharing a part need
/// that part's uniformity to be at least 2.
inline LazyFamily triangle_view(const PartStructure& ps, Element x, Element y, Element z) {
    Bits w(static_cast<std::size_t>(ps.ground_size()));
    const Element es[3] = {x, y, z};
    for (const Element& e : es) w.set(static_cast<std::size_t>(ps.bit_of(e)));
    if (x == y || x == z || y == z)
        throw InfeasibleWitnessesError("triangle: witnesses must be pairwise distinct");
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (es[a].part == es[b].part && ps.k(es[a].part) < 2)
                throw InfeasibleWitnessesError(
                    "triangle: witnesses share part " + std::to_string(es[a].part) +
                    " whose uniformity is 1");
    return LazyFamily(ps, [w](const MultiPartSet& f) { return (f.bits() & w).count() >= 2; });
}

inline Family triangle_family(const PartStructure& ps, Element x, Element y, Element z,
                              std::uint64_t cap = default_layer_cap) {
    return triangle_view(ps, x, y, z).materialize(cap);
}

/// Relabel values inside every part: perms[s-1] must be a permutation of
/// [n_s], sending value v to perms[s-1][v-1].
inline Family permute_values(const Family& fam, const std::vector<std::vector<int>>& perms) {
    const PartStructure& ps = fam.structure();
    if (static_cast<int>(perms.size()) != ps.parts())
        throw BadParametersError("permute_values: need one permutation per part");
    for (int s = 1; s <= ps.parts(); ++s) {
        const auto& pi = perms[static_cast<std::size_t>(s - 1)];
        if (static_cast<int>(pi.size()) != ps.n(s))
            throw BadParametersError("permute_values: wrong length in part " + std::to_string(s));
        std::vector<bool> seen(pi.size(), false);
        for (int v : pi) {
            if (v < 1 || v > ps.n(s) || seen[static_cast<std::size_t>(v - 1)])
                throw BadParametersError("permute_values: not a permutation in part " +
                                         std::to_string(s));
            seen[static_cast<std::size_t>(v - 1)] = true;
        }
    }
    std::vector<MultiPartSet> out;
    out.reserve(fam.size());
    for (const auto& f : fam.members()) {
        auto lists = f.values(ps);
        for (int s = 1; s <= ps.parts(); ++s)
            for (int& v : lists[static_cast<std::size_t>(s - 1)])
                v = perms[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(v - 1)];
        out.emplace_back(ps, lists);
    }
    return Family(ps, std::move(out));
}

}  // namespace mpfam
