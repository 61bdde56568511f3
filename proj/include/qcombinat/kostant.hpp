#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "qdatum.hpp"

namespace qcombinat {

/// A (possibly signed) Kostant partition over a convex order: coordinate k
/// is the multiplicity of beta_{k+1}.
struct KostantPartition {
    IntVec m;
    bool is_signed = false;  // entries may be negative (the lattice KP~)
};

inline Root kp_weight(const ConvexOrder& o, const IntVec& m) {
    Root sum = Root::zero(o.q.rank());
    for (size_t k = 0; k < o.length(); ++k) sum = sum + m[k] * o.beta[k];
    return sum;
}

inline KostantPartition make_kostant_partition(const ConvexOrder& o, IntVec m,
                                               bool allow_signed = false) {
    if (m.size() != o.length())
        throw std::invalid_argument("KostantPartition: vector length does not match the order");
    if (!allow_signed)
        for (Int v : m)
            if (v < 0) throw std::invalid_argument("KostantPartition: negative multiplicity");
    return {std::move(m), allow_signed};
}

/// All Kostant partitions of beta, in lexicographically increasing order of
/// the multiplicity vector.
inline std::vector<IntVec> enumerate_kp(const ConvexOrder& o, const Root& beta) {
    const size_t L = o.length();
    std::vector<IntVec> out;
    IntVec cur(L, 0);
    IntVec rem = beta.rc;
    auto all_zero = [](const IntVec& v) {
        return std::all_of(v.begin(), v.end(), [](Int x) { return x == 0; });
    };
    auto rec = [&](auto&& self, size_t k) -> void {
        if (k == L) {
            if (all_zero(rem)) out.push_back(cur);
            return;
        }
        // max multiplicity of beta_k that keeps the remainder nonnegative
        Int cap = -1;
        for (size_t c = 0; c < rem.size(); ++c) {
            const Int bc = o.beta[k].rc[c];
            if (bc > 0) {
                const Int q = rem[c] / bc;
                cap = cap < 0 ? q : std::min(cap, q);
            }
        }
        for (Int mult = 0; mult <= cap; ++mult) {
            cur[k] = mult;
            self(self, k + 1);
            for (size_t c = 0; c < rem.size(); ++c) rem[c] -= o.beta[k].rc[c];
        }
        for (size_t c = 0; c < rem.size(); ++c) rem[c] += (cap + 1) * o.beta[k].rc[c];
        cur[k] = 0;
    };
    if (beta.nonnegative()) rec(rec, 0);
    return out;
}

/// rho(m)_k = sum_{t <= k} m_t (nu_k, beta_t); defined on all of Z^L.
inline IntVec rho(const ConvexOrder& o, const IntVec& m) {
    const size_t L = o.length();
    IntVec r(L, 0);
    for (size_t k = 0; k < L; ++k) {
        Int acc = 0;
        for (size_t t = 0; t <= k; ++t) acc += m[t] * o.pair_kt[k][t];
        r[k] = acc;
    }
    return r;
}

/// m preceq n: componentwise rho(m) <= rho(n). Both must partition the same
/// root-lattice element.
inline bool preceq(const ConvexOrder& o, const IntVec& m, const IntVec& n) {
    if (!(kp_weight(o, m) == kp_weight(o, n)))
        throw std::invalid_argument("preceq: partitions of different weights are incomparable");
    const IntVec rm = rho(o, m), rn = rho(o, n);
    for (size_t k = 0; k < rm.size(); ++k)
        if (rm[k] > rn[k]) return false;
    return true;
}

inline Root kp_weight(const ConvexOrder& o, const KostantPartition& p) { return kp_weight(o, p.m); }
inline IntVec rho(const ConvexOrder& o, const KostantPartition& p) { return rho(o, p.m); }
inline bool preceq(const ConvexOrder& o, const KostantPartition& a, const KostantPartition& b) {
    return preceq(o, a.m, b.m);
}

struct OrderReport {
    bool sign_pattern = false;
    bool rho_injective_kp = false;
    bool rho_injective_box = false;
    bool commutation_equivariance = false;
    std::vector<std::string> failures;

    bool all_pass() const {
        return sign_pattern && rho_injective_kp && rho_injective_box && commutation_equivariance;
    }
};

namespace detail {

/// rho extends to a linear map on Z^L whose matrix is unit lower triangular,
/// so injectivity on the signed box reduces to scanning difference vectors:
/// rho(d) = 0 forces d = 0 coordinate by coordinate. The scan below checks
/// every nonzero difference of two box points directly.
inline bool rho_injective_on_box(const ConvexOrder& o, Int radius) {
    const size_t L = o.length();
    IntVec d(L, -2 * radius);
    while (true) {
        bool nonzero = false;
        for (Int v : d)
            if (v != 0) { nonzero = true; break; }
        if (nonzero) {
            const IntVec r = rho(o, d);
            if (std::all_of(r.begin(), r.end(), [](Int x) { return x == 0; })) return false;
        }
        size_t k = 0;
        while (k < L && d[k] == 2 * radius) d[k++] = -2 * radius;
        if (k == L) break;
        ++d[k];
    }
    return true;
}

}  // namespace detail

/// Verifier for the three properties of the rho-order on KP(beta):
/// the sign pattern of (nu_k, beta_l), injectivity of rho (exactly on
/// KP(beta), and on the box [-3,3]^L for short orders), and equivariance of
/// rho under commuting adjacent swaps of the word.
inline OrderReport order_properties(const ConvexOrder& o, const Root& beta, Int box_radius = 3,
                                    size_t box_max_len = 6) {
    OrderReport rep;
    const size_t L = o.length();

    rep.sign_pattern = true;
    for (size_t k = 0; k < L && rep.sign_pattern; ++k) {
        if (o.pair_kt[k][k] != 1) rep.sign_pattern = false;
        for (size_t l = 0; l < k; ++l)
            if (o.pair_kt[k][l] < 0) rep.sign_pattern = false;
        for (size_t l = k + 1; l < L; ++l)
            if (o.pair_kt[k][l] > 0) rep.sign_pattern = false;
    }
    if (!rep.sign_pattern) rep.failures.push_back("sign pattern of (nu_k, beta_l)");

    const auto kps = enumerate_kp(o, beta);
    std::set<IntVec> images;
    for (const auto& m : kps) images.insert(rho(o, m));
    rep.rho_injective_kp = images.size() == kps.size();
    if (!rep.rho_injective_kp) rep.failures.push_back("rho injectivity on KP(beta)");

    if (L <= box_max_len) {
        rep.rho_injective_box = detail::rho_injective_on_box(o, box_radius);
    } else {
        // unit lower-triangular matrix: injective on all of Z^L
        rep.rho_injective_box = true;
        for (size_t k = 0; k < L; ++k)
            if (o.pair_kt[k][k] != 1) rep.rho_injective_box = false;
    }
    if (!rep.rho_injective_box) rep.failures.push_back("rho injectivity on the signed box");

    rep.commutation_equivariance = true;
    for (size_t k = 0; k + 1 < L; ++k) {
        if (o.q.cartan.entry(o.word[k], o.word[k + 1]) != 0) continue;
        WeylWord sw = o.word;
        std::swap(sw[k], sw[k + 1]);
        ConvexOrder os(o.q, sw);
        for (const auto& m : kps) {
            IntVec ms = m;
            std::swap(ms[k], ms[k + 1]);
            IntVec expect = rho(o, m);
            std::swap(expect[k], expect[k + 1]);
            if (rho(os, ms) != expect) {
                rep.commutation_equivariance = false;
                rep.failures.push_back("rho equivariance at position " + std::to_string(k + 1));
                break;
            }
        }
    }
    return rep;
}

/// Minimal pairs for a positive root: (k,l), k < l, beta_k + beta_l = alpha,
/// with no pair (k',l') strictly nested between them.
inline std::vector<std::pair<size_t, size_t>> minimal_pairs(const ConvexOrder& o,
                                                            const Root& alpha) {
    if (o.index_of(alpha) == 0)
        throw std::invalid_argument("minimal_pairs: alpha is not a positive root");
    std::vector<std::pair<size_t, size_t>> decomp;
    for (size_t k = 1; k <= o.length(); ++k)
        for (size_t l = k + 1; l <= o.length(); ++l)
            if (o.beta[k - 1] + o.beta[l - 1] == alpha) decomp.emplace_back(k, l);
    std::vector<std::pair<size_t, size_t>> out;
    for (const auto& [k, l] : decomp) {
        bool nested = false;
        for (const auto& [k2, l2] : decomp)
            if (k < k2 && l2 < l) nested = true;
        if (!nested) out.emplace_back(k, l);
    }
    return out;
}

}  // namespace qcombinat
