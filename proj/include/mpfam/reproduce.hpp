#pragma once

// Reproduction suites. Each suite recomputes a headline quantity two
// independent ways (closed form vs construction, search vs formula) and
// reports one claim per comparison. Claims pinned to an exact value resolve
// to pass or fail; measured quantities with no pinned value resolve to
// recorded.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "formulas.hpp"
#include "json_io.hpp"
#include "search.hpp"

namespace mpfam {

enum class ClaimStatus { pass, fail, recorded };

inline const char* to_string(ClaimStatus st) {
    switch (st) {
        case ClaimStatus::pass: return "pass";
        case ClaimStatus::fail: return "fail";
        default: return "recorded";
    }
}

struct Claim {
    std::string id;
    std::string statement;
    std::string computed;
    std::string expected;
    ClaimStatus status = ClaimStatus::fail;
};

struct ReproductionReport {
    std::string suite;
    std::vector<Claim> claims;

    bool passed() const {
        for (const Claim& c : claims)
            if (c.status == ClaimStatus::fail) return false;
        return true;
    }
};

namespace detail {

inline Claim equal_claim(std::string id, std::string statement, const BigCount& got,
                         const BigCount& want) {
    Claim c{std::move(id), std::move(statement), got.str(), want.str(),
            got == want ? ClaimStatus::pass : ClaimStatus::fail};
    return c;
}

}  // namespace detail

/// The two-part instance n=(5,5), k=(2,2): the exchange candidate at
/// (t=1, S={2}) counts 35, strictly above the best single-part product 30,
/// and the materialized family is non-trivially intersecting. The exact
/// search optimum is recorded alongside; any excess over the candidate is a
/// finding, not a failure.
inline ReproductionReport reproduce_counterexample() {
    ReproductionReport rep{"counterexample", {}};
    const PartStructure ps({5, 5}, {2, 2});
    const TSPair ts{1, {2}};

    const BigCount cand = hm_ts_size(ps, ts);
    rep.claims.push_back(detail::equal_claim(
        "candidate-size", "exchange candidate (t=1, S={2}) at n=(5,5), k=(2,2) counts 35", cand,
        BigCount(35)));

    const Family fam = hm_ts_family(ps, ts);
    rep.claims.push_back(detail::equal_claim(
        "family-size", "materialized candidate family matches the counted size",
        BigCount(fam.size()), cand));

    const BigCount product = hm_size(5, 2) * binomial(5, 2);
    rep.claims.push_back(detail::equal_claim(
        "product-size", "best single-part exchange times the full other layer counts 30", product,
        BigCount(30)));

    Claim beats{"beats-product", "candidate strictly exceeds the single-part product",
                cand.str() + " > " + product.str(), "strict inequality",
                cand > product ? ClaimStatus::pass : ClaimStatus::fail};
    rep.claims.push_back(std::move(beats));

    const FamilyClass cls = classify(fam);
    Claim cl{"classification", "candidate family is non-trivially intersecting", to_string(cls),
             "nontrivial", cls == FamilyClass::nontrivial ? ClaimStatus::pass : ClaimStatus::fail};
    rep.claims.push_back(std::move(cl));

    const SearchResult res = max_family(ps, SearchMode::nontrivial);
    Claim opt{"exact-optimum",
              "exact non-trivial optimum at n=(5,5), k=(2,2); 35 is the known candidate and any "
              "larger value is a finding",
              std::to_string(res.size), "recorded (candidate 35)",
              res.size >= fam.size() ? ClaimStatus::recorded : ClaimStatus::fail};
    rep.claims.push_back(std::move(opt));
    return rep;
}

/// All parts of size n with uniformity 1, p parts: the exact non-trivial
/// optimum equals n^(p-1) - (n-1)^(p-1) + n - 1, both as a search result and
/// as the best exchange candidate.
inline ReproductionReport reproduce_k1_table(int p = 3, int n_max = 4) {
    if (p < 3) throw BadParametersError("k1-table needs at least 3 parts");
    if (n_max < 2) throw BadParametersError("k1-table needs n_max >= 2");
    ReproductionReport rep{"k1-table", {}};
    for (int n = 2; n <= n_max; ++n) {
        const PartStructure ps(std::vector<int>(static_cast<std::size_t>(p), n),
                               std::vector<int>(static_cast<std::size_t>(p), 1));
        const BigCount formula = k1_bound(n, p);
        const BigCount cand = max_hm_size(ps).value;
        const SearchResult res = max_family(ps, SearchMode::nontrivial);
        std::ostringstream id;
        id << "p=" << p << ",n=" << n;
        std::ostringstream got;
        got << "search " << res.size << ", candidate " << cand.str();
        Claim c{id.str(),
                "non-trivial optimum equals n^(p-1) - (n-1)^(p-1) + n - 1 by search and by "
                "candidate maximization",
                got.str(), formula.str(),
                BigCount(res.size) == formula && cand == formula ? ClaimStatus::pass
                                                                 : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }
    return rep;
}

/// Single-part instances: the exact non-trivial optimum equals
/// C(n-1,k-1) - C(n-k-1,k-1) + 1.
inline ReproductionReport reproduce_hm_table() {
    ReproductionReport rep{"hm-table", {}};
    const std::vector<std::pair<int, int>> rows = {{5, 2}, {6, 2}, {7, 3}, {8, 3}};
    for (const auto& [n, k] : rows) {
        const PartStructure ps({n}, {k});
        const BigCount formula = hm_size(n, k);
        const SearchResult res = max_family(ps, SearchMode::nontrivial);
        std::ostringstream id;
        id << "n=" << n << ",k=" << k;
        Claim c{id.str(), "single-part non-trivial optimum equals C(n-1,k-1) - C(n-k-1,k-1) + 1",
                std::to_string(res.size), formula.str(),
                BigCount(res.size) == formula ? ClaimStatus::pass : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }
    return rep;
}

/// Exact identities: the three-witness family against the exchange candidate
/// in both the q=3 difference form and the q=2 equality form, the 11/10
/// ratio threshold, binomial-difference unimodality, and the k=1 collapse of
/// the candidate maximum to its closed form.
inline ReproductionReport reproduce_identities() {
    ReproductionReport rep{"identities", {}};

    {
        int cases = 0;
        std::string bad;
        for (int n1 = 3; n1 <= 8 && bad.empty(); ++n1)
            for (int n2 = 2; n2 <= 8 && bad.empty(); ++n2)
                for (int n3 = n2; n3 <= 8 && bad.empty(); ++n3) {
                    const PartStructure ps({n1, n2, n3}, {2, 1, 1});
                    const Family tri =
                        triangle_family(ps, Element{1, 1}, Element{2, 1}, Element{3, 1});
                    const BigCount lhs = hm_ts_size(ps, TSPair{2, {1, 3}}) - BigCount(tri.size());
                    const BigCount rhs = BigCount(n3 - n2) * BigCount(n1 - 2);
                    ++cases;
                    if (lhs != rhs) {
                        std::ostringstream o;
                        o << "(" << n1 << "," << n2 << "," << n3 << "): " << lhs.str()
                          << " != " << rhs.str();
                        bad = o.str();
                    }
                }
        std::ostringstream got;
        if (bad.empty())
            got << cases << " cases exact";
        else
            got << "mismatch at " << bad;
        Claim c{"triangle-identity",
                "k=(2,1,1), n2 <= n3: candidate (t=2, S={1,3}) minus the three-witness family "
                "equals (n3-n2)(n1-2) on 3<=n1<=8, 2<=n2<=n3<=8",
                got.str(), "difference (n3-n2)(n1-2) in every case",
                bad.empty() ? ClaimStatus::pass : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }

    {
        int cases = 0;
        std::string bad;
        for (int n1 = 3; n1 <= 8 && bad.empty(); ++n1)
            for (int n2 = 2; n2 <= 8 && bad.empty(); ++n2) {
                const PartStructure ps({n1, n2}, {2, 1});
                const Family tri = triangle_family(ps, Element{1, 1}, Element{1, 2}, Element{2, 1});
                const BigCount want = hm_ts_size(ps, TSPair{2, {1}});
                ++cases;
                if (BigCount(tri.size()) != want) {
                    std::ostringstream o;
                    o << "(" << n1 << "," << n2 << "): " << tri.size() << " != " << want.str();
                    bad = o.str();
                }
            }
        std::ostringstream got;
        if (bad.empty())
            got << cases << " cases equal";
        else
            got << "mismatch at " << bad;
        Claim c{"two-part-equality",
                "k=(2,1): the three-witness family has exactly the candidate (t=2, S={1}) size on "
                "3<=n1<=8, 2<=n2<=8",
                got.str(), "set sizes equal in every case",
                bad.empty() ? ClaimStatus::pass : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }

    {
        const Rational bound(11, 10);
        bool all_above = true;
        std::string bad;
        for (int k1 = 1; k1 <= 6; ++k1)
            for (int k2 = 1; k2 <= 6; ++k2)
                for (int k3 = 1; k3 <= 6; ++k3) {
                    const int ones = (k1 == 1) + (k2 == 1) + (k3 == 1);
                    if (ones > 1) continue;
                    if (triangle_ratio(k1, k2, k3) < bound) {
                        all_above = false;
                        std::ostringstream o;
                        o << "(" << k1 << "," << k2 << "," << k3 << ")";
                        bad = o.str();
                    }
                }
        const bool tight = triangle_ratio(1, 2, 2) == bound;
        Claim c{"ratio-threshold",
                "(k1^2 + k2^2 + k1 k3 + k2 k3) / (2 (k1 + k2 + k3)) >= 11/10 on [1,6]^3 with at "
                "most one argument equal to 1, with equality at (1,2,2)",
                all_above ? (tight ? "all above, tight at (1,2,2)" : "all above, not tight")
                          : "below threshold at " + bad,
                "minimum exactly 11/10",
                all_above && tight ? ClaimStatus::pass : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }

    {
        int cases = 0;
        std::string bad;
        const std::vector<Rational> gammas = {Rational(1, 4), Rational(1, 2), Rational(1),
                                              Rational(2), Rational(4)};
        for (int b = 1; b <= 5 && bad.empty(); ++b)
            for (int d = 0; d <= 4 && bad.empty(); ++d)
                for (const Rational& g : gammas) {
                    ++cases;
                    if (!is_binomial_diff_unimodal(b, d, g, 200)) {
                        std::ostringstream o;
                        o << "(b=" << b << ",d=" << d << ",gamma=" << g << ")";
                        bad = o.str();
                        break;
                    }
                }
        Claim c{"unimodality",
                "y -> C(y,b) - gamma C(y,b+d) never strictly increases after strictly decreasing, "
                "for b in [1,5], d in [0,4], gamma in {1/4,1/2,1,2,4}, y up to 200",
                bad.empty() ? std::to_string(cases) + " cases unimodal" : "violated at " + bad,
                "unimodal in every case", bad.empty() ? ClaimStatus::pass : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }

    {
        int cases = 0;
        std::string bad;
        for (int p = 3; p <= 6 && bad.empty(); ++p)
            for (int n = 2; n <= 10; ++n) {
                const PartStructure ps(std::vector<int>(static_cast<std::size_t>(p), n),
                                       std::vector<int>(static_cast<std::size_t>(p), 1));
                ++cases;
                if (max_hm_size(ps).value != k1_bound(n, p)) {
                    std::ostringstream o;
                    o << "(p=" << p << ",n=" << n << ")";
                    bad = o.str();
                    break;
                }
            }
        Claim c{"k1-closed-form",
                "with every uniformity 1 and equal part sizes, the best exchange candidate equals "
                "n^(p-1) - (n-1)^(p-1) + n - 1, for p in [3,6], n in [2,10]",
                bad.empty() ? std::to_string(cases) + " cases equal" : "mismatch at " + bad,
                "closed form in every case", bad.empty() ? ClaimStatus::pass : ClaimStatus::fail};
        rep.claims.push_back(std::move(c));
    }

    return rep;
}

/// Suite dispatch. "all" runs every suite with default parameters.
inline std::vector<ReproductionReport> reproduce_suites(const std::string& name, int p = 3,
                                                        int n_max = 4) {
    std::vector<ReproductionReport> reps;
    if (name == "counterexample" || name == "all") reps.push_back(reproduce_counterexample());
    if (name == "k1-table" || name == "all") reps.push_back(reproduce_k1_table(p, n_max));
    if (name == "hm-table" || name == "all") reps.push_back(reproduce_hm_table());
    if (name == "identities" || name == "all") reps.push_back(reproduce_identities());
    if (reps.empty()) throw BadParametersError("unknown suite: " + name);
    return reps;
}

inline Json reproduction_to_json(const ReproductionReport& rep) {
    Json claims = Json::array();
    for (const Claim& c : rep.claims) {
        Json j;
        j["id"] = c.id;
        j["statement"] = c.statement;
        j["computed"] = c.computed;
        j["expected"] = c.expected;
        j["status"] = to_string(c.status);
        claims.push_back(std::move(j));
    }
    Json out;
    out["suite"] = rep.suite;
    out["claims"] = std::move(claims);
    out["pass"] = rep.passed();
    return out;
}

inline std::string reproduction_to_text(const ReproductionReport& rep) {
    std::size_t idw = 0;
    for (const Claim& c : rep.claims) idw = std::max(idw, c.id.size());
    std::ostringstream out;
    out << "suite " << rep.suite << (rep.passed() ? "  [pass]" : "  [FAIL]") << "\n";
    for (const Claim& c : rep.claims) {
        out << "  [" << to_string(c.status) << "]";
        for (std::size_t i = std::string(to_string(c.status)).size(); i < 9; ++i) out << ' ';
        out << c.id;
        for (std::size_t i = c.id.size(); i < idw + 2; ++i) out << ' ';
        out << "computed: " << c.computed << "  expected: " << c.expected << "\n";
        out << "            " << c.statement << "\n";
    }
    return out.str();
}

}  // namespace mpfam
