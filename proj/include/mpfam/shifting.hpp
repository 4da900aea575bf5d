#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "family.hpp"

namespace mpfam {

/// Shift parameters: inside part t, replace value j by value i.
/// Valid when 1 <= i < j <= n_t.
struct ShiftIndex {
    int t = 1;
    int i = 1;
    int j = 2;

    friend bool operator==(const ShiftIndex&, const ShiftIndex&) = default;
};

inline void validate(const PartStructure& ps, const ShiftIndex& ix) {
    if (ix.t < 1 || ix.t > ps.parts())
        throw InvalidShiftIndexError("shift: part index " + std::to_string(ix.t) + " out of range");
    if (ix.i < 1 || ix.i >= ix.j || ix.j > ps.n(ix.t))
        throw InvalidShiftIndexError("shift: need 1 <= i < j <= n_t, got i=" +
                                     std::to_string(ix.i) + " j=" + std::to_string(ix.j));
}

/// One-member shift: if i is already chosen in part t, or j is not, the member
/// is unchanged; otherwise j is swapped for i.
inline MultiPartSet shift_set(const PartStructure& ps, const MultiPartSet& f,
                              const ShiftIndex& ix) {
    validate(ps, ix);
    const auto bi = static_cast<std::size_t>(ps.bit_of(Element{ix.t, ix.i}));
    const auto bj = static_cast<std::size_t>(ps.bit_of(Element{ix.t, ix.j}));
    if (f.bits().test(bi) || !f.bits().test(bj)) return f;
    Bits b = f.bits();
    b.reset(bj);
    b.set(bi);
    return MultiPartSet::from_bits_unchecked(std::move(b));
}

/// Family shift with the conflict rule: a member whose image already lies in
/// the family stays as it is. |shift_family(F)| == |F| always.
inline Family shift_family(const Family& fam, const ShiftIndex& ix) {
    const PartStructure& ps = fam.structure();
    validate(ps, ix);
    std::vector<MultiPartSet> out;
    out.reserve(fam.size());
    bool changed = false;
    for (const auto& f : fam.members()) {
        MultiPartSet g = shift_set(ps, f, ix);
        if (g == f || fam.contains(g)) {
            out.push_back(f);
        } else {
            out.push_back(std::move(g));
            changed = true;
        }
    }
    if (!changed) return fam;
    Family shifted(ps, std::move(out));
    assert(shifted.size() == fam.size());
    return shifted;
}

/// Fixed under every shift inside part t. Equivalent to
/// shift_family(fam, {t,i,j}) == fam for all 1 <= i < j <= n_t.
inline bool is_shifted_in_part(const Family& fam, int t) {
    const PartStructure& ps = fam.structure();
    if (t < 1 || t > ps.parts()) throw OutOfRangeError("is_shifted_in_part: bad part index");
    for (int i = 1; i < ps.n(t); ++i)
        for (int j = i + 1; j <= ps.n(t); ++j) {
            ShiftIndex ix{t, i, j};
            for (const auto& f : fam.members()) {
                MultiPartSet g = shift_set(ps, f, ix);
                if (g != f && !fam.contains(g)) return false;
            }
        }
    return true;
}

inline bool is_shifted(const Family& fam, const std::vector<int>& parts) {
    for (int t : parts)
        if (!is_shifted_in_part(fam, t)) return false;
    return true;
}

/// Fixed under every shift in every part.
inline bool is_shifted(const Family& fam) {
    for (int t = 1; t <= fam.structure().parts(); ++t)
        if (!is_shifted_in_part(fam, t)) return false;
    return true;
}

/// Sum of all chosen values over all members and parts. Any family shift that
/// changes the family strictly decreases this, which bounds every sweep loop.
inline std::int64_t family_order(const Family& fam) {
    const PartStructure& ps = fam.structure();
    std::int64_t total = 0;
    for (const auto& f : fam.members())
        for (auto pos = f.bits().find_first(); pos != Bits::npos; pos = f.bits().find_next(pos))
            total += ps.element_of(static_cast<int>(pos)).value;
    return total;
}

/// Apply shifts in the deterministic sweep order (t ascending, then i, then j)
/// until a full sweep changes nothing. The result passes is_shifted.
inline Family shifted_closure(const Family& fam) {
    const PartStructure& ps = fam.structure();
    Family cur = fam;
    bool any = true;
    while (any) {
        any = false;
        for (int t = 1; t <= ps.parts(); ++t)
            for (int i = 1; i < ps.n(t); ++i)
                for (int j = i + 1; j <= ps.n(t); ++j) {
                    Family nxt = shift_family(cur, ShiftIndex{t, i, j});
                    if (nxt != cur) {
                        cur = std::move(nxt);
                        any = true;
                    }
                }
    }
    return cur;
}

/// Outcome of stabilize_nontrivial. shifted_parts lists every part the family
/// is fully shifted in; for each remaining part, trivializing_shift holds the
/// lexicographically least (i, j) whose shift changes the family (at the fixed
/// point such a shift necessarily collapses it to a trivially intersecting one).
struct StabilizeReport {
    Family family;
    std::vector<int> shifted_parts;
    std::map<int, std::pair<int, int>> trivializing_shift;
};

/// Greedy stabilization inside the non-trivially intersecting class: apply the
/// first sweep-order shift that changes the family while keeping it
/// non-trivially intersecting; restart the sweep after every application.
/// Terminates because the order functional strictly decreases.
inline StabilizeReport stabilize_nontrivial(const Family& fam) {
    const PartStructure& ps = fam.structure();
    if (classify(fam) != FamilyClass::nontrivial)
        throw NotNontrivialError("stabilize_nontrivial: family is not non-trivially intersecting");
    Family cur = fam;
    for (;;) {
        bool applied = false;
        for (int t = 1; t <= ps.parts() && !applied; ++t)
            for (int i = 1; i < ps.n(t) && !applied; ++i)
                for (int j = i + 1; j <= ps.n(t) && !applied; ++j) {
                    Family nxt = shift_family(cur, ShiftIndex{t, i, j});
                    if (nxt != cur && classify(nxt) == FamilyClass::nontrivial) {
                        cur = std::move(nxt);
                        applied = true;
                    }
                }
        if (!applied) break;
    }

    StabilizeReport rep{cur, {}, {}};
    for (int t = 1; t <= ps.parts(); ++t) {
        if (is_shifted_in_part(cur, t)) {
            rep.shifted_parts.push_back(t);
            continue;
        }
        bool found = false;
        for (int i = 1; i < ps.n(t) && !found; ++i)
            for (int j = i + 1; j <= ps.n(t) && !found; ++j) {
                Family nxt = shift_family(cur, ShiftIndex{t, i, j});
                if (nxt != cur) {
                    assert(classify(nxt) == FamilyClass::trivial);
                    rep.trivializing_shift.emplace(t, std::make_pair(i, j));
                    found = true;
                }
            }
        assert(found);
    }
    return rep;
}

/// P(F): inside every part, the values not exceeding 2 k_s.
inline PartialSet project(const PartStructure& ps, const MultiPartSet& f) {
    if (static_cast<int>(f.bits().size()) != ps.ground_size())
        throw StructureMismatchError("project: set does not match the structure");
    Bits mask(static_cast<std::size_t>(ps.ground_size()));
    for (int s = 1; s <= ps.parts(); ++s) {
        int hi = std::min(2 * ps.k(s), ps.n(s));
        for (int v = 0; v < hi; ++v) mask.set(static_cast<std::size_t>(ps.offset(s) + v));
    }
    return PartialSet::from_bits(ps, f.bits() & mask);
}

/// Every distinct member projection, in first-appearance order. Duplicates
/// fold away: the collection carries set semantics.
inline std::vector<PartialSet> family_projections(const Family& fam) {
    const PartStructure& ps = fam.structure();
    std::vector<Bits> seen;
    std::vector<PartialSet> out;
    for (const auto& f : fam.members()) {
        PartialSet z = project(ps, f);
        if (std::find(seen.begin(), seen.end(), z.bits()) == seen.end()) {
            seen.push_back(z.bits());
            out.push_back(std::move(z));
        }
    }
    return out;
}

/// Every ordered pair of members has intersecting projections. Self-pairs are
/// included, so any member with an empty projection makes this false.
inline bool projections_intersect(const Family& fam) {
    const PartStructure& ps = fam.structure();
    std::vector<Bits> proj;
    proj.reserve(fam.size());
    for (const auto& f : fam.members()) proj.push_back(project(ps, f).bits());
    for (std::size_t a = 0; a < proj.size(); ++a)
        for (std::size_t b = a; b < proj.size(); ++b)
            if (!proj[a].intersects(proj[b])) return false;
    return true;
}

}  // namespace mpfam
