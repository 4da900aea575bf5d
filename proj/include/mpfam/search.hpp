#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "family.hpp"
#include "formulas.hpp"
#include "layer.hpp"

namespace mpfam {

/// Vertex cap of the primary solver's graph construction.
inline constexpr std::size_t default_vertex_cap = 5000;
/// The oracle enumerates maximal cliques outright up to this many vertices.
inline constexpr std::size_t oracle_enum_cap = 64;
/// Above oracle_enum_cap the oracle falls back to a bound-only search up to here.
inline constexpr std::size_t oracle_search_cap = 512;

/// Graph on the layer: one vertex per member in canonical order, an edge
/// between every intersecting pair. Intersecting families are exactly the
/// cliques of this graph.
class IntersectionGraph {
public:
    explicit IntersectionGraph(const PartStructure& ps, std::size_t vertex_cap = default_vertex_cap)
        : ps_(ps) {
        BigCount total = layer_size(ps);
        if (total > vertex_cap)
            throw TooLargeError("intersection graph would have " + total.str() +
                                " vertices, cap is " + std::to_string(vertex_cap));
        verts_.reserve(static_cast<std::size_t>(total));
        for_each_in_layer(ps, [&](const MultiPartSet& f) { verts_.push_back(f); });
        const std::size_t v = verts_.size();
        adj_.assign(v, Bits(v));
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = a + 1; b < v; ++b)
                if (verts_[a].bits().intersects(verts_[b].bits())) {
                    adj_[a].set(b);
                    adj_[b].set(a);
                }
    }

    const PartStructure& structure() const { return ps_; }
    std::size_t size() const { return verts_.size(); }
    const MultiPartSet& vertex(std::size_t v) const { return verts_[v]; }
    const Bits& neighbors(std::size_t v) const { return adj_[v]; }
    bool adjacent(std::size_t a, std::size_t b) const { return adj_[a].test(b); }
    std::size_t degree(std::size_t v) const { return adj_[v].count(); }

    /// Index of a member in the canonical vertex order.
    std::size_t index_of(const MultiPartSet& m) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), m);
        assert(it != verts_.end() && *it == m);
        return static_cast<std::size_t>(it - verts_.begin());
    }

private:
    PartStructure ps_;
    std::vector<MultiPartSet> verts_;
    std::vector<Bits> adj_;
};

enum class SearchMode { intersecting, nontrivial };
enum class SearchStatus { optimal, infeasible };

inline const char* to_string(SearchMode m) {
    return m == SearchMode::intersecting ? "intersecting" : "nontrivial";
}
inline const char* to_string(SearchStatus s) {
    return s == SearchStatus::optimal ? "optimal" : "infeasible";
}

/// Exact search outcome. status == infeasible (only possible in nontrivial
/// mode) means no family of the requested class exists; size is then 0 and
/// the witness is empty. The witness optional is engaged after every
/// completed search and attains the optimal size when status == optimal.
struct SearchResult {
    SearchStatus status = SearchStatus::optimal;
    std::size_t size = 0;
    std::optional<Family> witness;
    std::uint64_t nodes = 0;
    double ms = 0.0;
};

namespace detail {

/// Vertex order shared by the exact engines: descending degree, canonical
/// order breaking ties. The oracle walks it backwards.
inline std::vector<std::size_t> degree_order(const IntersectionGraph& g) {
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return g.degree(a) > g.degree(b); });
    return order;
}

/// For each ground element, the set of graph positions whose member contains
/// it, under the given vertex order.
inline std::vector<Bits> element_positions(const IntersectionGraph& g,
                                           const std::vector<std::size_t>& order) {
    const auto ground = static_cast<std::size_t>(g.structure().ground_size());
    std::vector<Bits> has(ground, Bits(order.size()));
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const Bits& b = g.vertex(order[pos]).bits();
        for (auto e = b.find_first(); e != Bits::npos; e = b.find_next(e)) has[e].set(pos);
    }
    return has;
}

/// Largest non-trivially intersecting family reachable by closed form: the
/// best (t, S) construction when some pair is admissible. Used only to seed
/// incumbents, which never affects the exactness of a branch-and-bound run.
inline std::optional<Family> construction_seed(const PartStructure& ps,
                                               const IntersectionGraph& g) {
    try {
        MaxCandidate mc = max_hm_size(ps);
        std::vector<MultiPartSet> ms;
        LazyFamily view = hm_ts_view(ps, mc.maximizers.front());
        for (std::size_t i = 0; i < g.size(); ++i)
            if (view.contains(g.vertex(i))) ms.push_back(g.vertex(i));
        Family fam(ps, std::move(ms), already_canonical);
        if (classify(fam) != FamilyClass::nontrivial) return std::nullopt;
        return fam;
    } catch (const Error&) {
        return std::nullopt;  // no admissible pair, or a degenerate shape
    }
}

/// Largest product star in the layer, for seeding intersecting-mode searches.
/// classify re-checks it before use, so a construction bug cannot leak into a
/// search result: a verified pairwise-intersecting family is a true lower
/// bound and never changes the optimum.
inline std::optional<Family> star_seed(const PartStructure& ps) {
    std::optional<Family> best;
    for (int t = 1; t <= ps.parts(); ++t) {
        Family fam = frankl_product(ps, t);
        const FamilyClass cls = classify(fam);
        if (cls != FamilyClass::trivial && cls != FamilyClass::nontrivial) continue;
        if (!best || fam.size() > best->size()) best = std::move(fam);
    }
    return best;
}

/// Primary exact solver: branch and bound with a greedy-coloring bound,
/// candidates processed in decreasing color order, vertices preordered by
/// descending degree.
///
/// Non-trivial mode uses an incumbent filter: the incumbent is only replaced
/// by cliques whose members have no common element. Pruning against the
/// incumbent stays sound because a cut subtree cannot contain any strictly
/// larger clique of either kind. One extra prune is specific to this mode,
/// the avoider bound: for an element x lying in every chosen member, a
/// qualifying completion must pick some candidate a missing x, and the rest
/// of it must then sit inside N(a); so nothing qualifying beats
/// |chosen| + 1 + max over avoiders a of |P intersect N(a)|, and when no
/// candidate misses x the subtree cannot qualify at all. This is what makes
/// the mode tractable on star-dominated layers, where the coloring bound
/// alone cannot separate the big trivial cliques from the non-trivial ones.
///
/// Both modes root the search at the first vertex of the order: part-wise
/// permutations of ground elements act transitively on the layer and preserve
/// adjacency and shared elements alike, so every clique of either kind maps
/// to one of equal size through any chosen vertex, and non-trivial
/// infeasibility through the root is global infeasibility.
class ColorSolver {
public:
    ColorSolver(const IntersectionGraph& g, SearchMode mode) : g_(g), mode_(mode) {}

    SearchResult run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t v = g_.size();
        order_ = degree_order(g_);
        adj_.assign(v, Bits(v));
        vbits_.clear();
        vbits_.reserve(v);
        for (std::size_t a = 0; a < v; ++a) vbits_.push_back(g_.vertex(order_[a]).bits());
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = 0; b < v; ++b)
                if (g_.adjacent(order_[a], order_[b])) adj_[a].set(b);
        hlist_.assign(v, {});
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = 0; b < v; ++b)
                if (a != b && !adj_[a].test(b)) hlist_[a].push_back(b);
        if (mode_ == SearchMode::nontrivial) has_ = element_positions(g_, order_);

        seed_incumbent(v);

        frames_.assign(v + 1, Frame{});
        cur_.clear();
        cur_.push_back(0);
        Bits p = adj_[0];
        Bits common = vbits_[0];
        expand(0, p, common);
        cur_.clear();

        SearchResult res;
        res.nodes = nodes_;
        if (!found_) {
            res.status = SearchStatus::infeasible;
            res.witness = Family(g_.structure());
        } else {
            res.status = SearchStatus::optimal;
            res.size = best_;
            std::vector<MultiPartSet> ms;
            ms.reserve(best_clique_.size());
            for (std::size_t pos : best_clique_) ms.push_back(g_.vertex(order_[pos]));
            res.witness = Family(g_.structure(), std::move(ms));
        }
        res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                     .count();
        return res;
    }

private:
    struct Frame {
        Bits p2, c2, unc, cand, avoid, tmp;
        std::vector<std::size_t> ord, col;
        std::vector<int> hdeg;
    };

    void seed_incumbent(std::size_t v) {
        // greedy maximal clique along the vertex order; valid as is in
        // intersecting mode and when it happens to be common-free
        std::vector<std::size_t> clique;
        Bits p(v);
        p.set();
        Bits common(static_cast<std::size_t>(g_.structure().ground_size()));
        common.set();
        for (auto pos = p.find_first(); pos != Bits::npos; pos = p.find_first()) {
            clique.push_back(pos);
            common &= vbits_[pos];
            p &= adj_[pos];
        }
        if (mode_ == SearchMode::intersecting || common.none()) {
            best_ = clique.size();
            best_clique_ = std::move(clique);
            found_ = true;
        }
        const auto seed = mode_ == SearchMode::nontrivial ? construction_seed(g_.structure(), g_)
                                                          : star_seed(g_.structure());
        if (seed && seed->size() > best_) {
            best_ = seed->size();
            best_clique_.clear();
            for (const MultiPartSet& m : seed->members()) {
                const std::size_t orig = g_.index_of(m);
                const auto it = std::find(order_.begin(), order_.end(), orig);
                best_clique_.push_back(static_cast<std::size_t>(it - order_.begin()));
            }
            found_ = true;
        }
    }

    Frame& frame(std::size_t depth) {
        Frame& f = frames_[depth];
        if (f.p2.size() != adj_.size()) {
            f.p2.resize(adj_.size());
            f.unc.resize(adj_.size());
            f.cand.resize(adj_.size());
            f.avoid.resize(adj_.size());
            f.tmp.resize(adj_.size());
            f.c2.resize(vbits_.empty() ? 0 : vbits_.front().size());
        }
        return f;
    }

    void expand(std::size_t depth, Bits& p, const Bits& common) {
        ++nodes_;
        if (p.none()) {
            if (cur_.size() > best_ && (mode_ == SearchMode::intersecting || common.none())) {
                best_ = cur_.size();
                best_clique_ = cur_;
                found_ = true;
            }
            return;
        }
        Frame& f = frame(depth);
        if (mode_ == SearchMode::nontrivial) {
            const std::size_t slack = best_ > cur_.size() ? best_ - cur_.size() : 0;
            for (auto x = common.find_first(); x != Bits::npos; x = common.find_next(x)) {
                f.avoid = p;
                f.avoid -= has_[x];
                if (f.avoid.none()) return;  // x can never leave the core
                std::size_t most = 0;
                for (auto a = f.avoid.find_first(); a != Bits::npos; a = f.avoid.find_next(a)) {
                    f.tmp = p;
                    f.tmp &= adj_[a];
                    most = std::max(most, f.tmp.count());
                    if (most >= slack) break;  // bound can no longer fire
                }
                if (cur_.size() + 1 + most <= best_) return;  // avoider bound
            }
        }

        // greedy independent-set coloring: classes in creation order, so the
        // emitted sequence carries non-decreasing color numbers. Every pick,
        // class opener and growth alike, takes the unclassed vertex with the
        // fewest unclassed non-neighbours (ties to the lowest position):
        // consuming scarce partners first keeps the class count near optimal
        // on layers whose disjointness graph is sparse, where a plain
        // ascending scan strands whole blocks in singleton classes and the
        // bound never closes the gap to the incumbent.
        f.ord.clear();
        f.col.clear();
        f.unc = p;
        if (f.hdeg.size() != adj_.size()) f.hdeg.assign(adj_.size(), 0);
        const int in_p = static_cast<int>(p.count());
        for (auto q = p.find_first(); q != Bits::npos; q = p.find_next(q)) {
            f.tmp = p;
            f.tmp &= adj_[q];
            f.hdeg[q] = in_p - 1 - static_cast<int>(f.tmp.count());
        }
        std::size_t color = 0;
        while (f.unc.any()) {
            ++color;
            std::size_t pos = Bits::npos;
            int fewest = std::numeric_limits<int>::max();
            for (auto q = f.unc.find_first(); q != Bits::npos; q = f.unc.find_next(q))
                if (f.hdeg[q] < fewest) {
                    fewest = f.hdeg[q];
                    pos = q;
                }
            f.cand = f.unc;
            while (pos != Bits::npos) {
                f.ord.push_back(pos);
                f.col.push_back(color);
                f.unc.reset(pos);
                f.cand.reset(pos);
                f.cand -= adj_[pos];
                for (const std::size_t w : hlist_[pos])
                    if (f.unc.test(w)) --f.hdeg[w];
                pos = Bits::npos;
                fewest = std::numeric_limits<int>::max();
                for (auto q = f.cand.find_first(); q != Bits::npos; q = f.cand.find_next(q))
                    if (f.hdeg[q] < fewest) {
                        fewest = f.hdeg[q];
                        pos = q;
                    }
            }
        }

        for (std::size_t idx = f.ord.size(); idx-- > 0;) {
            const std::size_t pos = f.ord[idx];
            if (cur_.size() + f.col[idx] <= best_) return;  // colors only shrink leftwards
            f.p2 = p;
            f.p2 &= adj_[pos];
            cur_.push_back(pos);
            if (mode_ == SearchMode::nontrivial) {
                f.c2 = common;
                f.c2 &= vbits_[pos];
                expand(depth + 1, f.p2, f.c2);
            } else {
                expand(depth + 1, f.p2, common);
            }
            cur_.pop_back();
            p.reset(pos);
        }
    }

    const IntersectionGraph& g_;
    SearchMode mode_;
    std::vector<std::size_t> order_;
    std::vector<Bits> adj_;
    std::vector<std::vector<std::size_t>> hlist_;
    std::vector<Bits> vbits_;
    std::vector<Bits> has_;
    std::vector<Frame> frames_;
    std::vector<std::size_t> cur_;
    std::vector<std::size_t> best_clique_;
    std::size_t best_ = 0;
    bool found_ = false;
    std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact maximum intersecting / non-trivially intersecting family via the
/// primary solver. Deterministic: size and status never vary between runs.
inline SearchResult max_family(const IntersectionGraph& g, SearchMode mode) {
    return detail::ColorSolver(g, mode).run();
}

inline SearchResult max_family(const PartStructure& ps, SearchMode mode,
                               std::size_t vertex_cap = default_vertex_cap) {
    IntersectionGraph g(ps, vertex_cap);
    return max_family(g, mode);
}

namespace detail {

/// Oracle route one (<= 64 vertices): plain recursion over all maximal
/// cliques, no ordering tricks, no bound, just the class filter at leaves.
class Enum64 {
public:
    Enum64(const IntersectionGraph& g, SearchMode mode, bool collect)
        : g_(g), mode_(mode), collect_(collect) {
        const std::size_t v = g_.size();
        adj_.assign(v, 0);
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = 0; b < v; ++b)
                if (g_.adjacent(a, b)) adj_[a] |= std::uint64_t{1} << b;
        all_ = (v == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << v) - 1);
    }

    void run() { rec(0, all_, 0); }

    std::size_t best = 0;
    bool found = false;
    std::uint64_t leaf_mask = 0;
    std::uint64_t nodes = 0;
    std::vector<std::uint64_t> optima;

private:
    bool accept(std::uint64_t r) const {
        if (mode_ == SearchMode::intersecting) return true;
        Bits common(static_cast<std::size_t>(g_.structure().ground_size()));
        common.set();
        for (std::uint64_t m = r; m != 0; m &= m - 1)
            common &= g_.vertex(static_cast<std::size_t>(std::countr_zero(m))).bits();
        return common.none();
    }

    void rec(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
        ++nodes;
        if (p == 0 && x == 0) {
            const auto size = static_cast<std::size_t>(std::popcount(r));
            if ((size > best || (collect_ && size == best)) && accept(r)) {
                if (size > best) {
                    best = size;
                    leaf_mask = r;
                    found = true;
                    optima.clear();
                }
                if (collect_) optima.push_back(r);
            }
            return;
        }
        std::uint64_t ext = p;
        while (ext != 0) {
            const int v = std::countr_zero(ext);
            const std::uint64_t bit = std::uint64_t{1} << v;
            ext &= ext - 1;
            rec(r | bit, p & adj_[static_cast<std::size_t>(v)],
                x & adj_[static_cast<std::size_t>(v)]);
            p &= ~bit;
            x |= bit;
        }
    }

    const IntersectionGraph& g_;
    SearchMode mode_;
    bool collect_;
    std::vector<std::uint64_t> adj_;
    std::uint64_t all_ = 0;
};

/// Oracle route two (<= 512 vertices): the dual view. A family is pairwise
/// intersecting exactly when it is an independent set in the disjointness
/// graph (members adjacent when disjoint in every part), and while the
/// intersection graph is dense, the disjointness graph is sparse: regular of
/// degree prod_s C(n_s - k_s, k_s). Route two is therefore a textbook
/// independent-set branch and bound over the disjointness graph: vertices
/// with no live neighbour are taken outright, the degree-one rule applies in
/// intersecting mode (take the pendant, drop its neighbour; swapping the
/// neighbour out never shrinks a maximal solution), the one size bound is the
/// matching bound (each matching edge inside the live set costs at least one
/// vertex, so nothing beats |chosen| + |live| - |matching|, with the matching
/// grown greedily and then by alternating-path augmentation), and otherwise
/// the search branches on a vertex of maximum live degree, taking it before
/// leaving it. Vertices are ranked in the reverse of the primary engine's
/// order and ties go to the later position. No coloring is involved and no
/// search or pruning code is shared with the primary engine.
///
/// Both modes root the search at a fixed vertex: part-wise permutations of
/// ground elements act transitively on the layer and preserve disjointness
/// and shared elements alike, so every family of either kind maps to one of
/// equal size through any chosen vertex, and non-trivial infeasibility
/// through the root is global infeasibility. Incumbents are preloaded from
/// the closed-form constructions (the product star, and the exchange family
/// in non-trivial mode), each re-checked by classify first, so a construction
/// bug cannot leak in: a verified family's size is a true lower bound and
/// never changes the optimum.
///
/// Non-trivial mode accepts an incumbent only at leaves whose members share
/// no element; pruning against it stays sound because a cut subtree cannot
/// contain a larger independent set of any kind. Recording only leaves loses
/// nothing: growing a family only shrinks what its members share, so any
/// non-trivial set extends to a non-trivial leaf at least as large. When some
/// element shared by all chosen members lies in every live vertex, the
/// subtree holds only trivial families and is cut. The degree-one rule stays
/// off in this mode: the swap argument can re-introduce a shared element.
class ComplementMIS {
public:
    ComplementMIS(const IntersectionGraph& g, SearchMode mode) : g_(g), mode_(mode) {}

    void run() {
        const std::size_t v = g_.size();
        order_ = degree_order(g_);
        std::reverse(order_.begin(), order_.end());
        pos_of_.assign(v, 0);
        for (std::size_t pos = 0; pos < v; ++pos) pos_of_[order_[pos]] = pos;
        hadj_.assign(v, Bits(v));
        for (std::size_t a = 0; a < v; ++a) {
            hadj_[a].set();
            hadj_[a].reset(a);
            for (std::size_t b = 0; b < v; ++b)
                if (g_.adjacent(order_[a], order_[b])) hadj_[a].reset(b);
        }
        vbits_.clear();
        vbits_.reserve(v);
        for (std::size_t a = 0; a < v; ++a) vbits_.push_back(g_.vertex(order_[a]).bits());
        if (mode_ == SearchMode::nontrivial) has_ = element_positions(g_, order_);
        frames_.assign(v + 2, Frame{});

        best = 0;
        found = false;
        best_clique.clear();
        const auto seed = mode_ == SearchMode::nontrivial ? construction_seed(g_.structure(), g_)
                                                          : star_seed(g_.structure());
        if (seed) {
            best = seed->size();
            for (const MultiPartSet& m : seed->members())
                best_clique.push_back(pos_of_[g_.index_of(m)]);
            found = true;
        }

        cur_.clear();
        cur_.push_back(0);
        Frame& f = frames_[v + 1];
        resize_frame(f);
        f.take = hadj_[0];
        f.take.flip();
        f.take.reset(0);
        f.c2 = vbits_[0];
        descend(0, f.take, f.c2);
        cur_.clear();
    }

    std::size_t best = 0;
    bool found = false;
    std::vector<std::size_t> best_clique;
    std::uint64_t nodes = 0;

    std::vector<std::size_t> original(const std::vector<std::size_t>& positions) const {
        std::vector<std::size_t> out;
        out.reserve(positions.size());
        for (std::size_t pos : positions) out.push_back(order_[pos]);
        return out;
    }

private:
    struct Frame {
        Bits take, c2, iso, tmp;
        std::vector<int> match;
        std::vector<char> seen;
    };

    void resize_frame(Frame& f) {
        const std::size_t v = hadj_.size();
        f.take.resize(v);
        f.iso.resize(v);
        f.tmp.resize(v);
        f.c2.resize(static_cast<std::size_t>(g_.structure().ground_size()));
    }

    // callers never reuse the buffers behind live/common after this returns,
    // so reductions may edit them in place
    void descend(std::size_t depth, Bits& live, Bits& common) {
        ++nodes;
        const std::size_t base = cur_.size();
        Frame& f = frames_[depth];
        if (f.take.size() != hadj_.size()) resize_frame(f);

        // reductions, rescanning whenever a removal changed a live degree
        std::size_t branch_v = 0;
        while (true) {
            f.iso.reset();
            branch_v = Bits::npos;
            std::size_t branch_deg = 0;
            auto pair_v = Bits::npos, pair_u = Bits::npos;
            for (auto a = live.find_first(); a != Bits::npos; a = live.find_next(a)) {
                f.tmp = hadj_[a];
                f.tmp &= live;
                const std::size_t deg = f.tmp.count();
                if (deg == 0) {
                    f.iso.set(a);
                } else if (deg == 1 && mode_ == SearchMode::intersecting) {
                    if (pair_v == Bits::npos) {
                        pair_v = a;
                        pair_u = f.tmp.find_first();
                    }
                } else if (deg >= branch_deg) {
                    branch_deg = deg;
                    branch_v = a;
                }
            }
            if (f.iso.any()) {  // taking an isolated vertex changes no degree
                for (auto a = f.iso.find_first(); a != Bits::npos; a = f.iso.find_next(a)) {
                    cur_.push_back(a);
                    if (mode_ == SearchMode::nontrivial) common &= vbits_[a];
                }
                live -= f.iso;
            }
            if (pair_v != Bits::npos) {
                cur_.push_back(pair_v);
                live.reset(pair_v);
                live.reset(pair_u);
                continue;
            }
            break;
        }

        if (live.none()) {
            if (cur_.size() > best &&
                (mode_ == SearchMode::intersecting || common.none())) {
                best = cur_.size();
                best_clique = cur_;
                found = true;
            }
            cur_.resize(base);
            return;
        }

        if (mode_ == SearchMode::nontrivial) {
            // subtrees whose every live vertex keeps a shared element are trivial
            for (auto x = common.find_first(); x != Bits::npos; x = common.find_next(x)) {
                if (live.is_subset_of(has_[x])) {
                    cur_.resize(base);
                    return;
                }
            }
        }

        if (cur_.size() + live.count() - matching_size(live, f) <= best) {
            cur_.resize(base);
            return;
        }

        // take the branch vertex, then leave it
        f.take = live;
        f.take -= hadj_[branch_v];
        f.take.reset(branch_v);
        if (mode_ == SearchMode::nontrivial) {
            f.c2 = common;
            f.c2 &= vbits_[branch_v];
        }
        cur_.push_back(branch_v);
        descend(depth + 1, f.take, mode_ == SearchMode::nontrivial ? f.c2 : common);
        cur_.pop_back();

        live.reset(branch_v);
        descend(depth + 1, live, common);
        cur_.resize(base);
    }

    // matching on the live disjointness subgraph: greedy pass, then
    // alternating-path augmentation from every exposed vertex. Odd-cycle
    // augmentations are not chased; missing one only undercounts the
    // matching, which weakens the bound without unsounding it, while paths
    // alone already make it exact on the bipartite components that sparse
    // product layers produce.
    std::size_t matching_size(const Bits& live, Frame& f) {
        f.match.assign(hadj_.size(), -1);
        std::size_t m = 0;
        for (auto a = live.find_first(); a != Bits::npos; a = live.find_next(a)) {
            if (f.match[a] != -1) continue;
            f.tmp = hadj_[a];
            f.tmp &= live;
            for (auto b = f.tmp.find_first(); b != Bits::npos; b = f.tmp.find_next(b)) {
                if (f.match[b] == -1) {
                    f.match[a] = static_cast<int>(b);
                    f.match[b] = static_cast<int>(a);
                    ++m;
                    break;
                }
            }
        }
        for (auto a = live.find_first(); a != Bits::npos; a = live.find_next(a)) {
            if (f.match[a] != -1) continue;
            f.seen.assign(hadj_.size(), 0);
            f.seen[a] = 1;
            if (augment(a, live, f)) ++m;
        }
        return m;
    }

    bool augment(std::size_t a, const Bits& live, Frame& f) {
        for (auto b = hadj_[a].find_first(); b != Bits::npos; b = hadj_[a].find_next(b)) {
            if (!live.test(b) || f.seen[b]) continue;
            f.seen[b] = 1;
            const int mb = f.match[b];
            if (mb == -1) {
                f.match[b] = static_cast<int>(a);
                f.match[a] = static_cast<int>(b);
                return true;
            }
            const auto w = static_cast<std::size_t>(mb);
            if (!f.seen[w]) {
                f.seen[w] = 1;
                if (augment(w, live, f)) {
                    f.match[b] = static_cast<int>(a);
                    f.match[a] = static_cast<int>(b);
                    return true;
                }
            }
        }
        return false;
    }

    const IntersectionGraph& g_;
    SearchMode mode_;
    std::vector<std::size_t> order_;
    std::vector<std::size_t> pos_of_;
    std::vector<Bits> hadj_;
    std::vector<Bits> vbits_;
    std::vector<Bits> has_;
    std::vector<Frame> frames_;
    std::vector<std::size_t> cur_;
};

}  // namespace detail

/// Independent oracle with the same contract as max_family, used for engine
/// cross-validation. Dispatches on the vertex count: plain maximal-clique
/// enumeration up to oracle_enum_cap, an uncolored independent-set search on
/// the disjointness graph up to oracle_search_cap, TooLargeError beyond.
inline SearchResult oracle_max(const IntersectionGraph& g, SearchMode mode) {
    const auto t0 = std::chrono::steady_clock::now();
    SearchResult res;
    if (g.size() <= oracle_enum_cap) {
        detail::Enum64 e(g, mode, false);
        e.run();
        res.nodes = e.nodes;
        if (e.found) {
            res.status = SearchStatus::optimal;
            res.size = e.best;
            std::vector<MultiPartSet> ms;
            for (std::uint64_t m = e.leaf_mask; m != 0; m &= m - 1)
                ms.push_back(g.vertex(static_cast<std::size_t>(std::countr_zero(m))));
            res.witness = Family(g.structure(), std::move(ms));
        } else {
            res.status = SearchStatus::infeasible;
            res.witness = Family(g.structure());
        }
    } else if (g.size() <= oracle_search_cap) {
        detail::ComplementMIS bb(g, mode);
        bb.run();
        res.nodes = bb.nodes;
        if (bb.found) {
            res.status = SearchStatus::optimal;
            res.size = bb.best;
            std::vector<MultiPartSet> ms;
            for (std::size_t v : bb.original(bb.best_clique)) ms.push_back(g.vertex(v));
            res.witness = Family(g.structure(), std::move(ms));
        } else {
            res.status = SearchStatus::infeasible;
            res.witness = Family(g.structure());
        }
    } else {
        throw TooLargeError("oracle_max: " + std::to_string(g.size()) +
                            " vertices exceeds the oracle cap of " +
                            std::to_string(oracle_search_cap));
    }
    res.ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

inline SearchResult oracle_max(const PartStructure& ps, SearchMode mode) {
    IntersectionGraph g(ps, oracle_search_cap);
    return oracle_max(g, mode);
}

/// Every optimal family of the given class (vertex count <= oracle_enum_cap).
/// Built on the plain enumeration, so it is exhaustive by construction.
inline std::vector<Family> enumerate_optimal(const IntersectionGraph& g, SearchMode mode) {
    if (g.size() > oracle_enum_cap)
        throw TooLargeError("enumerate_optimal: only available up to " +
                            std::to_string(oracle_enum_cap) + " vertices");
    detail::Enum64 e(g, mode, true);
    e.run();
    std::vector<Family> out;
    out.reserve(e.optima.size());
    for (std::uint64_t m : e.optima) {
        std::vector<MultiPartSet> ms;
        for (std::uint64_t r = m; r != 0; r &= r - 1)
            ms.push_back(g.vertex(static_cast<std::size_t>(std::countr_zero(r))));
        out.emplace_back(g.structure(), std::move(ms));
    }
    return out;
}

namespace detail {

/// Cross-check route for the non-trivial optimum: while the chosen members
/// still share some element x, branch on which vertex avoiding x joins the
/// family, taking candidates in ascending position and banning already-tried
/// avoiders so each family is reached once; when nothing is shared any
/// clique completion is non-trivial, and a bounded clique extension finishes
/// the job. Every ground element thus gets a member missing it, which is the
/// defining property being cross-checked against the incumbent-filter route.
///
/// The search is rooted at vertex 0: part-wise permutations of ground
/// elements act transitively on the layer and preserve adjacency and shared
/// elements alike, so every non-trivial family maps to one of equal size
/// through any chosen vertex. The avoider scheme only needs its invariant
/// (candidates adjacent to every chosen member, common = their shared
/// elements), which the rooted start satisfies just as the empty one did.
class StarCoverSolver {
public:
    explicit StarCoverSolver(const IntersectionGraph& g) : g_(g) {}

    void run() {
        const std::size_t v = g_.size();
        order_.resize(v);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        has_ = element_positions(g_, order_);
        above_.assign(v, Bits(v));
        for (std::size_t a = 0; a < v; ++a)
            for (std::size_t b = a + 1; b < v; ++b) above_[a].set(b);
        if (auto seed = construction_seed(g_.structure(), g_)) {
            best = seed->size();
            best_clique.clear();
            for (const MultiPartSet& m : seed->members()) best_clique.push_back(g_.index_of(m));
            found = true;
        }
        frames_.assign(v + 1, Frame{});
        cur_.clear();
        cur_.push_back(0);
        Bits p = g_.neighbors(0);
        Bits common = g_.vertex(0).bits();
        branch(0, p, common);
        cur_.clear();
    }

    std::size_t best = 0;
    bool found = false;
    std::vector<std::size_t> best_clique;
    std::uint64_t nodes = 0;

private:
    struct Frame {
        Bits p2, c2, avoid, picked, unc, cand;
        std::vector<std::size_t> ord, col;
    };

    Frame& frame(std::size_t depth) {
        Frame& f = frames_[depth];
        if (f.p2.size() != g_.size()) {
            f.p2.resize(g_.size());
            f.avoid.resize(g_.size());
            f.picked.resize(g_.size());
            f.unc.resize(g_.size());
            f.cand.resize(g_.size());
            f.c2.resize(has_.size());
        }
        return f;
    }

    void branch(std::size_t depth, const Bits& p, const Bits& common) {
        ++nodes;
        if (common.none()) {
            extend(depth, p);
            return;
        }
        const auto x = common.find_first();
        Frame& f = frame(depth);
        f.avoid = p;
        f.avoid -= has_[x];
        f.picked.reset();
        for (auto v = f.avoid.find_first(); v != Bits::npos; v = f.avoid.find_next(v)) {
            f.p2 = p;
            f.p2 &= g_.neighbors(v);
            f.p2 -= f.picked;  // families through an earlier avoider are already covered
            f.picked.set(v);
            if (cur_.size() + 1 + f.p2.count() <= best) continue;
            f.c2 = common;
            f.c2 &= g_.vertex(v).bits();
            cur_.push_back(v);
            branch(depth + 1, f.p2, f.c2);
            cur_.pop_back();
        }
    }

    // plain max-clique extension; everything reachable here is non-trivial
    void extend(std::size_t depth, const Bits& p) {
        ++nodes;
        if (cur_.size() > best) {
            best = cur_.size();
            best_clique = cur_;
            found = true;
        }
        if (p.none()) return;
        Frame& f = frame(depth);
        f.ord.clear();
        f.col.clear();
        f.unc = p;
        std::size_t color = 0;
        while (f.unc.any()) {
            ++color;
            f.cand = f.unc;
            for (auto v = f.cand.find_first(); v != Bits::npos; v = f.cand.find_next(v)) {
                f.ord.push_back(v);
                f.col.push_back(color);
                f.unc.reset(v);
                f.cand -= g_.neighbors(v);
            }
        }
        for (std::size_t idx = f.ord.size(); idx-- > 0;) {
            if (cur_.size() + f.col[idx] <= best) return;
            const std::size_t v = f.ord[idx];
            f.p2 = p;
            f.p2 &= g_.neighbors(v);
            f.p2 &= above_[v];
            cur_.push_back(v);
            extend(depth + 1, f.p2);
            cur_.pop_back();
        }
    }

    const IntersectionGraph& g_;
    std::vector<std::size_t> order_;
    std::vector<Bits> has_;
    std::vector<Bits> above_;
    std::vector<Frame> frames_;
    std::vector<std::size_t> cur_;
};

}  // namespace detail

/// Third route to the non-trivial optimum (see StarCoverSolver). Must agree
/// with max_family(nontrivial) on size and status.
inline SearchResult max_nontrivial_star_cover(const IntersectionGraph& g) {
    const auto t0 = std::chrono::steady_clock::now();
    detail::StarCoverSolver s(g);
    s.run();
    SearchResult res;
    res.nodes = s.nodes;
    if (s.found) {
        res.status = SearchStatus::optimal;
        res.size = s.best;
        std::vector<MultiPartSet> ms;
        ms.reserve(s.best_clique.size());
        for (std::size_t v : s.best_clique) ms.push_back(g.vertex(v));
        res.witness = Family(g.structure(), std::move(ms));
    } else {
        res.status = SearchStatus::infeasible;
        res.witness = Family(g.structure());
    }
    res.ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

/// One-stop exact verification of a structure: exact optima of both modes,
/// agreement with the closed-form candidates, witness sanity, and oracle
/// agreement when the instance is small enough for the oracle.
struct InstanceReport {
    PartStructure ps;
    bool ekr = false;
    BigCount frankl_value;
    SearchResult intersecting;
    bool frankl_matches = false;
    SearchResult nontrivial;
    std::optional<BigCount> candidate_bound;  // best closed-form (t, S) size
    std::vector<TSPair> maximizers;
    std::string nontrivial_vs_bound;  // equal | above_bound | below_bound | no_bound | infeasible
    bool witnesses_valid = false;
    std::optional<bool> oracle_agrees;  // engaged when within the oracle cap

    explicit InstanceReport(PartStructure s) : ps(std::move(s)) {}
};

inline InstanceReport verify_instance(const PartStructure& ps,
                                      std::size_t vertex_cap = default_vertex_cap) {
    InstanceReport rep(ps);
    IntersectionGraph g(ps, vertex_cap);
    rep.ekr = ps.ekr_regime();
    rep.frankl_value = frankl_bound(ps);
    rep.intersecting = max_family(g, SearchMode::intersecting);
    rep.nontrivial = max_family(g, SearchMode::nontrivial);
    rep.frankl_matches = BigCount(rep.intersecting.size) == rep.frankl_value;

    try {
        MaxCandidate mc = max_hm_size(ps);
        rep.candidate_bound = mc.value;
        rep.maximizers = std::move(mc.maximizers);
    } catch (const NoAdmissiblePairError&) {
    }

    if (rep.nontrivial.status == SearchStatus::infeasible) {
        rep.nontrivial_vs_bound = "infeasible";
    } else if (!rep.candidate_bound) {
        rep.nontrivial_vs_bound = "no_bound";
    } else if (BigCount(rep.nontrivial.size) == *rep.candidate_bound) {
        rep.nontrivial_vs_bound = "equal";
    } else if (BigCount(rep.nontrivial.size) > *rep.candidate_bound) {
        rep.nontrivial_vs_bound = "above_bound";
    } else {
        rep.nontrivial_vs_bound = "below_bound";
    }

    bool ok = true;
    FamilyClass ic = classify(*rep.intersecting.witness);
    if (ic != FamilyClass::trivial && ic != FamilyClass::nontrivial) ok = false;
    if (rep.nontrivial.status == SearchStatus::optimal &&
        classify(*rep.nontrivial.witness) != FamilyClass::nontrivial)
        ok = false;
    rep.witnesses_valid = ok;

    if (g.size() <= oracle_search_cap) {
        SearchResult oi = oracle_max(g, SearchMode::intersecting);
        SearchResult on = oracle_max(g, SearchMode::nontrivial);
        rep.oracle_agrees = oi.size == rep.intersecting.size &&
                            oi.status == rep.intersecting.status &&
                            on.size == rep.nontrivial.size && on.status == rep.nontrivial.status;
    }
    return rep;
}

}  // namespace mpfam
