#pragma once

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kostant.hpp"
#include "lweight.hpp"
#include "qcartan.hpp"
#include "qdatum.hpp"
#include "twisted.hpp"

namespace qcombinat {

struct CheckResult {
    std::string name;       // short identifier, stable across runs
    std::string statement;  // which identity/property was exercised
    bool pass = false;
    std::string detail;
};

namespace detail {
inline CheckResult make_check(std::string name, std::string statement, bool pass,
                              std::string det = "") {
    return {std::move(name), std::move(statement), pass, std::move(det)};
}
}  // namespace detail

// ---------------------------------------------------------------------------
// height-function generation (deterministic, seeded)
// ---------------------------------------------------------------------------

/// One valid height function for the pair (g, sigma), found by a pruned
/// backtracking search anchored at xi_1 = 0.
inline IntVec base_height_function(const CartanData& g, const DiagramAutomorphism& sigma) {
    QDatum probe(g, sigma, IntVec(g.n, 0));  // for orbit data only
    const int n = g.n;
    // BFS order from vertex 1, remembering one assigned neighbor
    std::vector<int> order{1}, anchor(n + 1, 0);
    std::vector<bool> seen(n + 1, false);
    seen[1] = true;
    for (size_t h = 0; h < order.size(); ++h)
        for (int nb : g.neighbors(order[h]))
            if (!seen[nb]) {
                seen[nb] = true;
                anchor[nb] = order[h];
                order.push_back(nb);
            }
    IntVec xi(n, 0);
    auto rec = [&](auto&& self, size_t idx) -> bool {
        if (idx == order.size()) return QDatum(g, sigma, xi).is_valid();
        const int v = order[idx];
        const int u = anchor[v];
        const Int su = probe.s_of_vertex(u), sv = probe.s_of_vertex(v);
        IntVec cands;
        if (su == sv) {
            cands = {xi[u - 1] + su, xi[u - 1] - su};
        } else {
            for (Int d : {1, -1, 3, -3, 5, -5}) cands.push_back(xi[u - 1] + d);
        }
        for (Int cand : cands) {
            xi[v - 1] = cand;
            bool ok = true;
            for (int nb : g.neighbors(v)) {
                if (nb == v || !seen[nb]) continue;
                size_t pos_nb = std::find(order.begin(), order.end(), nb) - order.begin();
                if (pos_nb >= idx) continue;  // not assigned yet
                if (probe.s_of_vertex(nb) == sv) {
                    Int d = xi[v - 1] - xi[nb - 1];
                    if (d < 0) d = -d;
                    if (d != sv) ok = false;
                }
            }
            if (ok && self(self, idx + 1)) return true;
        }
        return false;
    };
    if (!rec(rec, 1)) throw std::logic_error("base_height_function: search failed");
    return xi;
}

/// Deterministic pseudo-random walk over valid Q-data: source reflections,
/// undo of earlier reflections, and constant shifts. Every visited datum is
/// re-validated before it is emitted.
inline std::vector<QDatum> random_valid_data(const CartanData& g, const DiagramAutomorphism& sigma,
                                             size_t count, std::uint64_t seed) {
    std::uint64_t state = seed ? seed : 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    std::vector<QDatum> trail{QDatum(g, sigma, base_height_function(g, sigma))};
    if (!trail.back().is_valid()) throw std::logic_error("random_valid_data: base datum invalid");
    Int shift = 0;
    std::vector<QDatum> out;
    std::set<IntVec> seen;
    size_t guard = 0;
    while (out.size() < count && ++guard < 400 * count + 400) {
        const auto kind = next() % 4;
        if (kind == 3 && trail.size() > 1) {
            trail.pop_back();
        } else if (kind == 2) {
            shift = static_cast<Int>(next() % 9) - 4;
        } else {
            auto src = trail.back().sources();
            trail.push_back(trail.back().reflect_source(src[next() % src.size()]));
        }
        const QDatum cur = trail.back().shifted(shift);
        if (!cur.is_valid())
            throw std::logic_error("random_valid_data: walk left the valid region");
        if (seen.insert(cur.xi).second) out.push_back(cur);
    }
    if (out.size() < count) throw std::logic_error("random_valid_data: could not reach count");
    return out;
}

// ---------------------------------------------------------------------------
// verification suites
// ---------------------------------------------------------------------------

inline CheckResult suite_axioms(const QDatum& q) {
    auto v = q.validate();
    std::ostringstream os;
    for (auto& viol : v) os << viol.axiom << " at {" << viol.detail << "} ";
    return detail::make_check("axioms", "height-function axioms (i) and (ii)", v.empty(), os.str());
}

/// Congruences of heights along orbits and between equal-size neighbors.
inline CheckResult suite_orbit_congruences(const QDatum& q) {
    bool ok = true;
    std::ostringstream os;
    for (int v = 1; v <= q.rank(); ++v) {
        const Int s2 = 2 * q.s_of_vertex(v);
        int u = v;
        for (int l = 1; l <= q.sigma_order(); ++l) {
            u = q.sigma.apply(u);
            const Int want = ((q.height(v) - 2 * l) % s2 + s2) % s2;
            if (((q.height(u) % s2) + s2) % s2 != want) {
                ok = false;
                os << "orbit congruence fails at (" << v << "," << l << ") ";
            }
        }
    }
    for (int i = 1; i <= q.rank0(); ++i)
        for (int j = 1; j <= q.rank0(); ++j) {
            if (i == j || q.g0.entry(i, j) == 0) continue;
            if (q.s_of_node(i) != q.s_of_node(j)) continue;
            const Int s = q.s_of_node(i);
            for (int iota : q.orbit_vertices(i))
                for (int jm : q.orbit_vertices(j)) {
                    const bool cong =
                        (((q.height(jm) - q.height(iota) - s) % (2 * s)) + 2 * s) % (2 * s) == 0;
                    if (cong != q.cartan.adjacent(iota, jm)) {
                        ok = false;
                        os << "neighbor congruence fails at (" << iota << "," << jm << ") ";
                    }
                }
        }
    return detail::make_check("congruences", "orbit height congruences and the adjacency criterion",
                              ok, os.str());
}

inline CheckResult suite_image_formula(const QDatum& q) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    const auto lhs = computed_image(o);
    const auto rhs = image_formula(q);
    const bool ok = lhs == rhs && lhs.size() == o.length();
    std::ostringstream os;
    os << "computed " << lhs.size() << " points, formula " << rhs.size() << ", L = " << o.length();
    return detail::make_check("image-formula", "closed form of Im Omega~ and its cardinality L", ok,
                              os.str());
}

inline CheckResult suite_convexity(const ConvexOrder& o) {
    return detail::make_check("convexity", "convexity of the beta_k listing",
                              is_convex_listing(o.beta));
}

inline CheckResult suite_adapted_class(const QDatum& q, size_t budget = 2000000) {
    const auto words = enumerate_adapted_words(q, budget);
    const ConvexOrder ref(q, words.front());
    const auto nf = commutation_normal_form(q.cartan, ref.word);
    const auto img = omega_tilde(ref);
    bool ok = true;
    std::ostringstream os;
    for (const auto& w : words) {
        if (commutation_normal_form(q.cartan, w) != nf) {
            ok = false;
            os << "commutation class differs ";
            break;
        }
        if (!(omega_tilde(ConvexOrder(q, w)) == img)) {
            ok = false;
            os << "Omega~ differs between adapted words ";
            break;
        }
    }
    os << words.size() << " adapted words";
    return detail::make_check("adapted-class",
                              "all adapted words form one commutation class with one Omega~", ok,
                              os.str());
}

inline CheckResult suite_tau(const QDatum& q) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    try {
        const TauQ tau = tau_q(q);
        const bool ok = detail::tau_properties_hold(tau, o);
        std::string det = tau.used_linear_fallback ? "linear-solve construction"
                                                   : "orbit-representative source product";
        return detail::make_check("tau", "Coxeter-element properties (i) and (ii) for tau_Q", ok,
                                  det);
    } catch (const std::exception& e) {
        return detail::make_check("tau", "Coxeter-element properties (i) and (ii) for tau_Q", false,
                                  e.what());
    }
}

inline CheckResult suite_inverse_cartan(const QDatum& q, Int cutoff = 0) {
    const Int U = cutoff > 0 ? cutoff : default_cutoff(q);
    const auto qc = QuantumCartan::build(q.g0);
    const auto s = InverseSeries::invert(qc, U);  // back-multiplication asserted inside
    const TauQ tau = tau_q(q);
    bool ok = true;
    std::ostringstream os;
    const Int umax = U - (q.xi_spread() + q.s_max());
    for (int i = 1; i <= q.rank0() && ok; ++i)
        for (int j = 1; j <= q.rank0() && ok; ++j) {
            for (Int u = 0; u <= umax && ok; ++u) {
                const auto chk = pairing_identity(q, tau, s, i, j, u);
                if (!chk.equal) {
                    ok = false;
                    os << "pairing identity fails at (" << i << "," << j << "," << u << "): " << chk.lhs
                       << " vs " << chk.rhs;
                }
            }
            if (ok && !vanishing_check(q, s, i, j)) {
                ok = false;
                os << "vanishing fails at (" << i << "," << j << ")";
            }
        }
    os << " [U=" << U << "]";
    return detail::make_check("inverse-cartan",
                              "inverse quantum Cartan identities: antisymmetrized pairing and vanishing",
                              ok, os.str());
}

inline CheckResult suite_bridge(const QDatum& q, Int cutoff = 0) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    const Int U = cutoff > 0 ? cutoff : default_cutoff(q);
    const auto s = InverseSeries::invert(QuantumCartan::build(q.g0), U);
    bool ok = true;
    std::ostringstream os;
    for (size_t k = 1; k <= o.length() && ok; ++k)
        for (size_t t = 1; t <= o.length() && ok; ++t) {
            const auto chk = nu_beta_bridge(o, s, k, t);
            if (!chk.equal) {
                ok = false;
                os << "(nu_k,beta_t) bridge fails at (" << k << "," << t << ")";
            }
        }
    return detail::make_check("nu-beta-bridge",
                              "(nu_k, beta_t) equals the a~ difference for all pairs", ok, os.str());
}

inline CheckResult suite_mcnamara(const QDatum& q, Int max_height = 4) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    bool ok = true;
    std::ostringstream os;
    // every beta in Q+ up to the height bound
    IntVec coords(q.rank(), 0);
    std::vector<Root> betas;
    auto gen = [&](auto&& self, size_t idx, Int left) -> void {
        if (idx == coords.size()) {
            Root b(coords);
            if (b.height() > 0) betas.push_back(b);
            return;
        }
        for (Int v = 0; v <= left; ++v) {
            coords[idx] = v;
            self(self, idx + 1, left - v);
        }
        coords[idx] = 0;
    };
    gen(gen, 0, max_height);
    for (const auto& b : betas) {
        const auto rep = order_properties(o, b);
        if (!rep.all_pass()) {
            ok = false;
            for (auto& f : rep.failures) os << f << "; ";
        }
    }
    os << betas.size() << " weights tested";
    return detail::make_check("rho-order",
                              "sign pattern, rho injectivity, and commutation equivariance", ok,
                              os.str());
}

inline CheckResult suite_khat(const QDatum& q, std::uint64_t seed = 7) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    const auto rep = khat(q, o, seed);
    std::ostringstream os;
    os << "|K^| = " << rep.khat.size();
    for (auto& n : rep.notes) os << "; " << n;
    return detail::make_check("khat", "lattice coincidence: P_Q cap Q is spanned by K^-indexed l-roots",
                              rep.all_pass(), os.str());
}

inline CheckResult suite_delta(const QDatum& q) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    const auto rep = khat(q, o);
    bool ok = true;
    std::ostringstream os;
    for (auto& [i, p] : rep.khat) {
        const auto dr = delta_identity(q, o, i, p);
        if (!dr.hypothesis_ok || !dr.holds) {
            ok = false;
            os << "delta identity fails at (" << i << "," << p << ") ";
        }
    }
    os << rep.khat.size() << " points";
    return detail::make_check("delta-identity",
                              "partial sums of Omega^{-1}(alpha_{i,p}) equal delta_{k,k0}", ok,
                              os.str());
}

inline CheckResult suite_poset_iso(const QDatum& q, Int max_height = 4, size_t budget = 200000) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    bool ok = true;
    size_t total = 0;
    std::ostringstream os;
    IntVec coords(q.rank(), 0);
    auto gen = [&](auto&& self, size_t idx, Int left) -> void {
        if (!ok) return;
        if (idx == coords.size()) {
            Root b(coords);
            if (b.height() == 0) return;
            const auto rep = poset_iso_check(q, o, b, budget);
            total += rep.partitions;
            if (rep.mismatches) {
                ok = false;
                os << "mismatch at beta height " << b.height() << "; ";
            }
            return;
        }
        for (Int v = 0; v <= left; ++v) {
            coords[idx] = v;
            self(self, idx + 1, left - v);
        }
        coords[idx] = 0;
    };
    gen(gen, 0, max_height);
    os << total << " partitions compared";
    return detail::make_check("poset-iso",
                              "Omega_Q is a poset isomorphism KP(beta) -> (P+_{Q,beta}, <=)", ok,
                              os.str());
}

inline CheckResult suite_blocks(const QDatum& q) {
    const ConvexOrder o = ConvexOrder::adapted(q);
    // all KP elements of a few small betas, pushed through Omega
    std::vector<LWeight> pis;
    IntVec coords(q.rank(), 0);
    auto gen = [&](auto&& self, size_t idx, Int left) -> void {
        if (idx == coords.size()) {
            Root b(coords);
            if (b.height() == 0) return;
            for (const auto& m : enumerate_kp(o, b)) pis.push_back(omega_q(o, m));
            return;
        }
        for (Int v = 0; v <= left; ++v) {
            coords[idx] = v;
            self(self, idx + 1, left - v);
        }
        coords[idx] = 0;
    };
    gen(gen, 0, 3);
    try {
        const auto blks = blocks(pis, q, o);
        std::ostringstream os;
        os << pis.size() << " weights in " << blks.size() << " blocks";
        return detail::make_check("blocks", "block decomposition of P+_Q by root-lattice weight",
                                  true, os.str());
    } catch (const std::exception& e) {
        return detail::make_check("blocks", "block decomposition of P+_Q by root-lattice weight",
                                  false, e.what());
    }
}

inline CheckResult suite_reflect_validity(const QDatum& q, std::uint64_t seed = 23,
                                          size_t steps = 60) {
    std::uint64_t state = seed ? seed : 1;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    QDatum cur = q;
    bool ok = cur.is_valid();
    for (size_t t = 0; t < steps && ok; ++t) {
        const auto src = cur.sources();
        cur = cur.reflect_source(src[next() % src.size()]);
        ok = cur.is_valid();
    }
    return detail::make_check("reflect-valid", "source reflections preserve the axioms", ok);
}

/// The full per-datum battery, in a fixed order. Identical inputs give
/// byte-identical reports.
inline std::vector<CheckResult> verify_all(const QDatum& q, Int cutoff = 0, Int poset_height = 3,
                                           std::uint64_t seed = 1, size_t budget = 200000) {
    std::vector<CheckResult> out;
    out.push_back(suite_axioms(q));
    if (!out.back().pass) {
        for (const char* n : {"congruences", "image-formula", "convexity", "adapted-class", "tau",
                              "inverse-cartan", "nu-beta-bridge", "rho-order", "khat",
                              "delta-identity", "poset-iso", "blocks", "reflect-valid"})
            out.push_back({n, "skipped: datum invalid", false, "SKIPPED"});
        return out;
    }
    out.push_back(suite_orbit_congruences(q));
    out.push_back(suite_image_formula(q));
    out.push_back(suite_convexity(ConvexOrder::adapted(q)));
    if (num_positive_roots(q.cartan) <= 16)
        out.push_back(suite_adapted_class(q, budget));
    out.push_back(suite_tau(q));
    out.push_back(suite_inverse_cartan(q, cutoff));
    out.push_back(suite_bridge(q, cutoff));
    out.push_back(suite_mcnamara(q, std::min<Int>(poset_height + 1, 4)));
    out.push_back(suite_khat(q, seed));
    out.push_back(suite_delta(q));
    out.push_back(suite_poset_iso(q, poset_height, budget));
    out.push_back(suite_blocks(q));
    out.push_back(suite_reflect_validity(q, seed + 22));
    return out;
}

}  // namespace qcombinat
