#pragma once

#include <string>
#include <vector>

#include "binomial.hpp"
#include "constructions.hpp"

namespace mpfam {

/// Single-part candidate size: C(n-1, k-1) - C(n-k-1, k-1) + 1.
inline BigCount hm_size(long long n, long long k) {
    if (k < 1 || k > n) throw OutOfRangeError("hm_size: need 1 <= k <= n");
    return binomial(n - 1, k - 1) - binomial(n - k - 1, k - 1) + 1;
}

/// Size of the (t, S) candidate, evaluated verbatim (defined for excluded
/// pairs as well; coherence with the construction is only claimed for
/// admissible pairs).
inline BigCount hm_ts_size(const PartStructure& ps, const TSPair& ts) {
    validate(ps, ts);
    const int t = ts.t;
    std::vector<bool> in_s(static_cast<std::size_t>(ps.parts()) + 1, false);
    for (int s : ts.S) in_s[static_cast<std::size_t>(s)] = true;

    BigCount outside = 1;
    for (int s = 1; s <= ps.parts(); ++s)
        if (s != t && !in_s[static_cast<std::size_t>(s)]) outside *= binomial(ps.n(s), ps.k(s));

    BigCount full = 1, avoid = 1;
    for (int s : ts.S) {
        full *= binomial(ps.n(s), ps.k(s));
        avoid *= binomial(ps.n(s) - ps.k(s), ps.k(s));
    }

    if (ps.k(t) > 1) {
        BigCount inner = binomial(ps.n(t) - 1, ps.k(t) - 1) * full -
                         binomial(ps.n(t) - ps.k(t) - 1, ps.k(t) - 1) * avoid + 1;
        return inner * outside;
    }
    BigCount inner = full - avoid + (ps.n(t) - 1);
    return inner * outside;
}

/// Two-part alternative value: alias of the (t=1, S={2}) candidate size.
inline BigCount m_alt(int n1, int n2, int k1, int k2) {
    PartStructure ps({n1, n2}, {k1, k2});
    return hm_ts_size(ps, TSPair{1, {2}});
}

/// Size of the layered candidate at (t, ell):
///   C(n_t-ell_t-1, k_t-ell_t) prod_{s!=t} C(n_s-ell_s, k_s-ell_s)
/// + C(n_t-1, k_t-1)           prod_{s!=t} C(n_s, k_s)
/// - C(n_t-ell_t-1, k_t-1)     prod_{s!=t} C(n_s-ell_s, k_s).
/// The zero conventions of binomial make this valid verbatim at boundary ells.
inline BigCount ell_size(const PartStructure& ps, int t, const std::vector<int>& ell) {
    if (!is_admissible_ell(ps, t, ell))
        throw InvalidEllError("ell_size: ell vector is not admissible for part t");
    const int et = ell[static_cast<std::size_t>(t - 1)];
    BigCount t1 = binomial(ps.n(t) - et - 1, ps.k(t) - et);
    BigCount t2 = binomial(ps.n(t) - 1, ps.k(t) - 1);
    BigCount t3 = binomial(ps.n(t) - et - 1, ps.k(t) - 1);
    for (int s = 1; s <= ps.parts(); ++s) {
        if (s == t) continue;
        int es = ell[static_cast<std::size_t>(s - 1)];
        t1 *= binomial(ps.n(s) - es, ps.k(s) - es);
        t2 *= binomial(ps.n(s), ps.k(s));
        t3 *= binomial(ps.n(s) - es, ps.k(s));
    }
    return t1 + t2 - t3;
}

/// Every admissible (t, S) pair in canonical order: t ascending, S by
/// ascending subset mask over the other parts.
inline std::vector<TSPair> admissible_pairs(const PartStructure& ps) {
    const int p = ps.parts();
    std::vector<TSPair> out;
    for (int t = 1; t <= p; ++t) {
        std::vector<int> others;
        for (int s = 1; s <= p; ++s)
            if (s != t) others.push_back(s);
        const auto m = others.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            TSPair ts{t, {}};
            for (std::size_t b = 0; b < m; ++b)
                if (mask >> b & 1u) ts.S.push_back(others[b]);
            if (!is_excluded(ps, ts)) out.push_back(std::move(ts));
        }
    }
    return out;
}

/// Maximum candidate size over the admissible pairs, with every maximizer in
/// canonical order.
struct MaxCandidate {
    BigCount value;
    std::vector<TSPair> maximizers;
};

inline MaxCandidate max_hm_size(const PartStructure& ps) {
    std::vector<TSPair> pairs = admissible_pairs(ps);
    if (pairs.empty())
        throw NoAdmissiblePairError(
            "no admissible (t,S) pair: no non-trivially intersecting family exists here");
    MaxCandidate best{BigCount(0), {}};
    bool first = true;
    for (auto& ts : pairs) {
        BigCount v = hm_ts_size(ps, ts);
        if (first || v > best.value) {
            best.value = v;
            best.maximizers.clear();
            best.maximizers.push_back(std::move(ts));
            first = false;
        } else if (v == best.value) {
            best.maximizers.push_back(std::move(ts));
        }
    }
    return best;
}

/// max over t of C(n_t-1, k_t-1) prod_{s!=t} C(n_s, k_s). This equals the
/// maximum intersecting family size whenever 2 k_s <= n_s holds in every part;
/// outside that regime it is only a candidate value.
inline BigCount frankl_bound(const PartStructure& ps) {
    BigCount best = 0;
    for (int t = 1; t <= ps.parts(); ++t) {
        BigCount v = binomial(ps.n(t) - 1, ps.k(t) - 1);
        for (int s = 1; s <= ps.parts(); ++s)
            if (s != t) v *= binomial(ps.n(s), ps.k(s));
        if (v > best) best = v;
    }
    return best;
}

/// n^(p-1) - (n-1)^(p-1) + n - 1: the exact maximum size of a non-trivially
/// intersecting family when there are p >= 3 parts, all of size n >= 2 with
/// uniformity 1. Coincides with max_hm_size on those structures.
inline BigCount k1_bound(long long n, int p) {
    if (n < 2 || p < 3) throw OutOfRangeError("k1_bound: need n >= 2 and p >= 3");
    return ipow(BigCount(n), static_cast<unsigned long>(p - 1)) -
           ipow(BigCount(n - 1), static_cast<unsigned long>(p - 1)) + n - 1;
}

/// Checks that y -> C(y, b) - gamma * C(y, b+d) on 0..y_max never strictly
/// increases after having strictly decreased. Exact rational arithmetic.
inline bool is_binomial_diff_unimodal(int b, int d, const Rational& gamma, int y_max) {
    if (b < 1 || d < 0 || y_max < 0 || gamma <= 0)
        throw BadParametersError("is_binomial_diff_unimodal: need b >= 1, d >= 0, gamma > 0");
    bool seen_decrease = false;
    Rational prev;
    for (int y = 0; y <= y_max; ++y) {
        Rational cur = Rational(binomial(y, b)) - gamma * Rational(binomial(y, b + d));
        if (y > 0) {
            if (cur > prev && seen_decrease) return false;
            if (cur < prev) seen_decrease = true;
        }
        prev = cur;
    }
    return true;
}

/// (k1^2 + k2^2 + k1 k3 + k2 k3) / (2 (k1 + k2 + k3)), exact. Symmetric in
/// its first two arguments; at least 11/10 on [1,6]^3 whenever at most one
/// argument equals 1.
inline Rational triangle_ratio(int k1, int k2, int k3) {
    if (k1 < 1 || k2 < 1 || k3 < 1)
        throw OutOfRangeError("triangle_ratio: arguments must be positive");
    BigCount num = BigCount(k1) * k1 + BigCount(k2) * k2 + BigCount(k1) * k3 + BigCount(k2) * k3;
    BigCount den = 2 * (BigCount(k1) + k2 + k3);
    return Rational(num) / Rational(den);
}

}  // namespace mpfam
