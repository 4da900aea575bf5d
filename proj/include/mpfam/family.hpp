#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "multipart_set.hpp"

namespace mpfam {

/// Classification of a family of layer members.
///
/// The empty family is its own class: it is vacuously intersecting but has no
/// common element, so neither `trivial` nor `nontrivial` would be honest.
/// A single-member family is trivial (its member is a common element source).
enum class FamilyClass { empty, not_intersecting, trivial, nontrivial };

inline const char* to_string(FamilyClass c) {
    switch (c) {
        case FamilyClass::empty: return "empty";
        case FamilyClass::not_intersecting: return "not_intersecting";
        case FamilyClass::trivial: return "trivial";
        case FamilyClass::nontrivial: return "nontrivial";
    }
    return "?";
}

/// Tag for constructing a Family from members already in canonical order.
struct already_canonical_t {};
inline constexpr already_canonical_t already_canonical{};

/// Finite set of distinct layer members over one structure. Members are kept
/// deduplicated and sorted in canonical (colexicographic) order.
class Family {
public:
    explicit Family(PartStructure ps) : ps_(std::move(ps)) {}

    Family(PartStructure ps, std::vector<MultiPartSet> members)
        : ps_(std::move(ps)), members_(std::move(members)) {
        for (const auto& f : members_)
            if (static_cast<int>(f.bits().size()) != ps_.ground_size())
                throw StructureMismatchError("family member has wrong ground size");
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    /// Members must already be strictly ascending in canonical order.
    Family(PartStructure ps, std::vector<MultiPartSet> members, already_canonical_t)
        : ps_(std::move(ps)), members_(std::move(members)) {}

    const PartStructure& structure() const { return ps_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<MultiPartSet>& members() const { return members_; }

    bool contains(const MultiPartSet& f) const {
        return std::binary_search(members_.begin(), members_.end(), f);
    }

    friend bool operator==(const Family& a, const Family& b) {
        return a.ps_ == b.ps_ && a.members_ == b.members_;
    }
    friend bool operator!=(const Family& a, const Family& b) { return !(a == b); }

private:
    PartStructure ps_;
    std::vector<MultiPartSet> members_;
};

/// True when F and G share an element (necessarily inside some part).
inline bool intersects(const PartStructure& ps, const MultiPartSet& f, const MultiPartSet& g) {
    if (static_cast<int>(f.bits().size()) != ps.ground_size() ||
        static_cast<int>(g.bits().size()) != ps.ground_size())
        throw StructureMismatchError("intersects: operands do not match the structure");
    return f.bits().intersects(g.bits());
}

/// Elements lying in every member. Disengaged for the empty family (the
/// distinguished Empty result); an engaged empty vector means "no common
/// element" for a nonempty family.
inline std::optional<std::vector<Element>> common_elements(const Family& fam) {
    if (fam.empty()) return std::nullopt;
    Bits acc = fam.members().front().bits();
    for (const auto& f : fam.members()) acc &= f.bits();
    std::vector<Element> out;
    for (auto pos = acc.find_first(); pos != Bits::npos; pos = acc.find_next(pos))
        out.push_back(fam.structure().element_of(static_cast<int>(pos)));
    return out;
}

/// Every unordered pair of members intersects (vacuously true when |family| <= 1).
inline bool is_intersecting(const Family& fam) {
    const auto& ms = fam.members();
    for (std::size_t a = 0; a < ms.size(); ++a)
        for (std::size_t b = a + 1; b < ms.size(); ++b)
            if (!ms[a].bits().intersects(ms[b].bits())) return false;
    return true;
}

inline FamilyClass classify(const Family& fam) {
    if (fam.empty()) return FamilyClass::empty;
    if (!is_intersecting(fam)) return FamilyClass::not_intersecting;
    auto common = common_elements(fam);
    return common->empty() ? FamilyClass::nontrivial : FamilyClass::trivial;
}

}  // namespace mpfam
