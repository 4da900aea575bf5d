#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <mpfam/constructions.hpp>
#include <mpfam/shifting.hpp>

#include "oracle_helpers.hpp"

using namespace mpfam;

namespace {

Family one_part_family(const PartStructure& ps, const std::vector<std::vector<int>>& sets) {
    std::vector<MultiPartSet> ms;
    for (const auto& s : sets) ms.emplace_back(ps, std::vector<std::vector<int>>{s});
    return Family(ps, std::move(ms));
}

}  // namespace

TEST_CASE("single set shifts follow the replacement rule") {
    const PartStructure ps({5}, {2});
    const ShiftIndex ix{1, 1, 2};
    const auto apply = [&](std::vector<int> vals) {
        return shift_set(ps, MultiPartSet(ps, {vals}), ix).values(ps)[0];
    };
    CHECK(apply({2, 3}) == std::vector<int>{1, 3});
    CHECK(apply({1, 2}) == std::vector<int>{1, 2});
    CHECK(apply({3, 4}) == std::vector<int>{3, 4});

    CHECK_THROWS_AS(validate(ps, ShiftIndex{1, 2, 2}), InvalidShiftIndexError);
    CHECK_THROWS_AS(validate(ps, ShiftIndex{1, 0, 2}), InvalidShiftIndexError);
    CHECK_THROWS_AS(validate(ps, ShiftIndex{1, 1, 6}), InvalidShiftIndexError);
    CHECK_THROWS_AS(validate(ps, ShiftIndex{2, 1, 2}), InvalidShiftIndexError);
}

TEST_CASE("family shifts keep colliding members in place") {
    const PartStructure ps({5}, {2});
    const ShiftIndex ix{1, 1, 2};

    const Family collide = one_part_family(ps, {{2, 3}, {1, 3}});
    CHECK(shift_family(collide, ix) == collide);

    const Family lone = one_part_family(ps, {{2, 3}});
    CHECK(shift_family(lone, ix) == one_part_family(ps, {{1, 3}}));

    const Family apart = one_part_family(ps, {{1, 2}, {3, 4}});
    const Family moved = shift_family(apart, ShiftIndex{1, 1, 3});
    CHECK(moved == one_part_family(ps, {{1, 2}, {1, 4}}));
    CHECK(moved.size() == 2);
}

TEST_CASE("shiftedness predicate") {
    const PartStructure ps({5}, {2});
    Family star(ps);
    {
        std::vector<MultiPartSet> ms;
        for (int v = 2; v <= 5; ++v) ms.emplace_back(ps, std::vector<std::vector<int>>{{1, v}});
        star = Family(ps, std::move(ms));
    }
    CHECK(is_shifted(star));
    CHECK(is_shifted(one_part_family(ps, {{2, 3}, {1, 2}, {1, 3}})));
    CHECK_FALSE(is_shifted(one_part_family(ps, {{2, 3}})));
}

TEST_CASE("closures reach the hand derived fixpoints") {
    const PartStructure ps({5}, {2});
    CHECK(shifted_closure(one_part_family(ps, {{2, 3}})) == one_part_family(ps, {{1, 2}}));
    CHECK(shifted_closure(one_part_family(ps, {{4, 5}})) == one_part_family(ps, {{1, 2}}));
    const Family fixed = one_part_family(ps, {{2, 3}, {1, 2}, {1, 3}});
    CHECK(shifted_closure(fixed) == fixed);
}

TEST_CASE("order functional sums every chosen value") {
    const PartStructure two({3, 2}, {2, 1});
    CHECK(family_order(Family(two, {MultiPartSet(two, {{1, 2}, {1}})})) == 4);
    CHECK(family_order(Family(two)) == 0);
    const PartStructure ps({5}, {2});
    CHECK(family_order(one_part_family(ps, {{2, 3}, {1, 3}})) == 9);
}

TEST_CASE("randomized shift properties hold") {
    std::mt19937 rng(20260815);
    const std::vector<PartStructure> structures = {
        PartStructure({5}, {2}), PartStructure({4, 3}, {2, 1}), PartStructure({3, 3, 2}, {1, 1, 1}),
        PartStructure({6}, {3})};
    std::uniform_int_distribution<int> member_count(1, 12);
    for (int round = 0; round < 250; ++round) {
        const PartStructure& ps = structures[static_cast<std::size_t>(round) % structures.size()];
        const Family fam = testutil::random_family(ps, rng, member_count(rng));

        std::uniform_int_distribution<int> part_pick(1, ps.parts());
        const int t = part_pick(rng);
        std::uniform_int_distribution<int> value_pick(1, ps.n(t));
        int i = value_pick(rng), j = value_pick(rng);
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        const ShiftIndex ix{t, i, j};

        const Family shifted = shift_family(fam, ix);
        CHECK(shifted.size() == fam.size());
        CHECK(family_order(shifted) <= family_order(fam));
        if (shifted != fam) CHECK(family_order(shifted) < family_order(fam));

        if (classify(fam) == FamilyClass::trivial || classify(fam) == FamilyClass::nontrivial)
            CHECK(is_intersecting(shifted));

        const Family closed = shifted_closure(fam);
        CHECK(closed.size() == fam.size());
        CHECK(is_shifted(closed));
        CHECK(shifted_closure(closed) == closed);
    }
}

TEST_CASE("projection restricts to the low values per part") {
    const PartStructure ten({10}, {3});
    CHECK(project(ten, MultiPartSet(ten, {{1, 5, 9}})).values(ten)[0] == std::vector<int>{1, 5});
    CHECK(project(ten, MultiPartSet(ten, {{7, 8, 9}})).bits().none());

    const PartStructure ps({5, 5}, {2, 2});
    const auto z = project(ps, MultiPartSet(ps, {{1, 2}, {4, 5}}));
    CHECK(z.values(ps)[0] == std::vector<int>{1, 2});
    CHECK(z.values(ps)[1] == std::vector<int>{4});
}

TEST_CASE("projection collection folds duplicates") {
    const PartStructure ten({10}, {3});
    const Family fam(ten, {MultiPartSet(ten, {{1, 2, 9}}), MultiPartSet(ten, {{1, 2, 10}}),
                           MultiPartSet(ten, {{1, 2, 3}})});
    const auto projections = family_projections(fam);
    CHECK(projections.size() == 2);
}

TEST_CASE("pairwise projection intersection detects the failure case") {
    const PartStructure ten({10}, {3});
    const Family bad(ten, {MultiPartSet(ten, {{1, 5, 9}}), MultiPartSet(ten, {{2, 6, 10}})});
    CHECK_FALSE(projections_intersect(bad));

    const Family lonely(ten, {MultiPartSet(ten, {{1, 2, 3}})});
    CHECK(projections_intersect(lonely));
    const Family degenerate(ten, {MultiPartSet(ten, {{7, 8, 9}})});
    CHECK_FALSE(projections_intersect(degenerate));
}

TEST_CASE("projection intersection holds after closure of intersecting families") {
    std::mt19937 rng(77);
    const std::vector<PartStructure> structures = {
        PartStructure({5}, {2}), PartStructure({7}, {3}), PartStructure({4, 4}, {2, 1}),
        PartStructure({3, 3, 3}, {1, 1, 1})};
    for (int round = 0; round < 200; ++round) {
        const PartStructure& ps = structures[static_cast<std::size_t>(round) % structures.size()];
        const Family fam = testutil::random_intersecting_family(ps, rng, 8);
        if (fam.empty()) continue;
        const Family closed = shifted_closure(fam);
        CHECK(is_shifted(closed));
        CHECK(is_intersecting(closed));
        CHECK(projections_intersect(closed));
    }
}

TEST_CASE("stabilization keeps families nontrivial and reports per part shifts") {
    const PartStructure ps({5}, {2});
    const Family fixed = one_part_family(ps, {{2, 3}, {1, 2}, {1, 3}});
    const StabilizeReport rep = stabilize_nontrivial(fixed);
    CHECK(rep.family == fixed);
    CHECK(rep.shifted_parts == std::vector<int>{1});
    CHECK(rep.trivializing_shift.empty());

    const StabilizeReport moved = stabilize_nontrivial(one_part_family(ps, {{2, 3}, {2, 4}, {3, 4}}));
    CHECK(moved.family.size() == 3);
    CHECK(classify(moved.family) == FamilyClass::nontrivial);
    for (const int t : moved.shifted_parts) CHECK(is_shifted_in_part(moved.family, t));
    for (const auto& [t, ij] : moved.trivializing_shift) {
        const Family collapsed = shift_family(moved.family, ShiftIndex{t, ij.first, ij.second});
        CHECK(collapsed != moved.family);
        CHECK(classify(collapsed) == FamilyClass::trivial);
    }

    CHECK_THROWS_AS(stabilize_nontrivial(one_part_family(ps, {{1, 2}, {1, 3}})),
                    NotNontrivialError);
}

TEST_CASE("fully shifted stabilized families project to two or more elements") {
    std::mt19937 rng(4242);
    const std::vector<PartStructure> structures = {PartStructure({5}, {2}),
                                                   PartStructure({6}, {2}),
                                                   PartStructure({3, 3}, {1, 1})};
    int checked = 0;
    for (int round = 0; round < 300; ++round) {
        const PartStructure& ps = structures[static_cast<std::size_t>(round) % structures.size()];
        const Family fam = testutil::random_intersecting_family(ps, rng, 10);
        if (classify(fam) != FamilyClass::nontrivial) continue;
        const StabilizeReport rep = stabilize_nontrivial(fam);
        if (static_cast<int>(rep.shifted_parts.size()) != ps.parts()) continue;
        ++checked;
        for (const auto& f : rep.family.members()) {
            int total = 0;
            for (const int c : project(ps, f).block_sizes(ps)) total += c;
            CHECK(total >= 2);
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("construction families are already shifted") {
    const PartStructure ps({5, 5}, {2, 2});
    const Family fam = hm_ts_family(ps, TSPair{1, {2}});
    CHECK(is_shifted(fam));
    CHECK(shifted_closure(fam) == fam);
    const StabilizeReport rep = stabilize_nontrivial(fam);
    CHECK(rep.family == fam);
    CHECK(rep.shifted_parts.size() == 2);
}
