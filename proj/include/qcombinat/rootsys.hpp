#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace qcombinat {

/// Finite Dynkin type, e.g. {A,2} or {G,2}.
struct TypeLabel {
    char family = 'A';
    int rank = 1;

    std::string str() const { return std::string(1, family) + std::to_string(rank); }

    static TypeLabel parse(const std::string& s) {
        if (s.size() < 2) throw std::invalid_argument("bad type label: " + s);
        char f = static_cast<char>(std::toupper(s[0]));
        int r = 0;
        for (size_t i = 1; i < s.size(); ++i) {
            if (!std::isdigit(s[i])) throw std::invalid_argument("bad type label: " + s);
            r = r * 10 + (s[i] - '0');
        }
        TypeLabel t{f, r};
        t.check();
        return t;
    }

    void check() const {
        bool ok = false;
        switch (family) {
            case 'A': ok = rank >= 1; break;
            case 'B': ok = rank >= 2; break;
            case 'C': ok = rank >= 2; break;
            case 'D': ok = rank >= 3; break;
            case 'E': ok = rank >= 6 && rank <= 8; break;
            case 'F': ok = rank == 4; break;
            case 'G': ok = rank == 2; break;
            default: ok = false;
        }
        if (!ok) throw std::invalid_argument("unsupported finite type " + str());
    }

    bool simply_laced() const { return family == 'A' || family == 'D' || family == 'E'; }
    friend bool operator==(const TypeLabel& a, const TypeLabel& b) {
        return a.family == b.family && a.rank == b.rank;
    }
};

/// A weight in the fundamental-weight basis: coordinate i-1 is <h_i, lambda>.
struct Weight {
    IntVec fw;

    Weight() = default;
    explicit Weight(IntVec v) : fw(std::move(v)) {}
    static Weight zero(size_t n) { return Weight(IntVec(n, 0)); }
    static Weight fundamental(size_t n, int vertex) {
        Weight w = zero(n);
        w.fw[vertex - 1] = 1;
        return w;
    }
    Int at(int vertex) const { return fw[vertex - 1]; }

    friend Weight operator+(Weight a, const Weight& b) {
        for (size_t i = 0; i < a.fw.size(); ++i) a.fw[i] += b.fw[i];
        return a;
    }
    friend Weight operator-(Weight a, const Weight& b) {
        for (size_t i = 0; i < a.fw.size(); ++i) a.fw[i] -= b.fw[i];
        return a;
    }
    friend Weight operator*(Int c, Weight a) {
        for (auto& v : a.fw) v *= c;
        return a;
    }
    Weight operator-() const { return Int(-1) * *this; }
    friend bool operator==(const Weight& a, const Weight& b) { return a.fw == b.fw; }
    friend bool operator<(const Weight& a, const Weight& b) { return a.fw < b.fw; }
};

/// A root-lattice element in the simple-root basis.
struct Root {
    IntVec rc;

    Root() = default;
    explicit Root(IntVec v) : rc(std::move(v)) {}
    static Root zero(size_t n) { return Root(IntVec(n, 0)); }
    static Root simple(size_t n, int vertex) {
        Root r = zero(n);
        r.rc[vertex - 1] = 1;
        return r;
    }
    Int at(int vertex) const { return rc[vertex - 1]; }
    Int height() const {
        Int h = 0;
        for (Int v : rc) h += v;
        return h;
    }
    bool nonnegative() const {
        return std::all_of(rc.begin(), rc.end(), [](Int v) { return v >= 0; });
    }

    friend Root operator+(Root a, const Root& b) {
        for (size_t i = 0; i < a.rc.size(); ++i) a.rc[i] += b.rc[i];
        return a;
    }
    friend Root operator-(Root a, const Root& b) {
        for (size_t i = 0; i < a.rc.size(); ++i) a.rc[i] -= b.rc[i];
        return a;
    }
    friend Root operator*(Int c, Root a) {
        for (auto& v : a.rc) v *= c;
        return a;
    }
    friend bool operator==(const Root& a, const Root& b) { return a.rc == b.rc; }
    friend bool operator<(const Root& a, const Root& b) { return a.rc < b.rc; }
};

using WeylWord = std::vector<int>;  // vertex indices, 1-based

/// Cartan matrix with symmetrizers. Vertices are 1-based in the API;
/// coordinate vectors are 0-indexed with slot k for vertex k+1.
class CartanData {
public:
    TypeLabel label;
    int n = 0;
    IntMat a;     // a[i][j] = <h_{i+1}, alpha_{j+1}>
    IntVec sym;   // symmetrizers s_i, minimal positive integers with DA symmetric

    static CartanData finite(TypeLabel t) {
        t.check();
        const int n = t.rank;
        IntMat m(n, IntVec(n, 0));
        for (int i = 0; i < n; ++i) m[i][i] = 2;
        auto edge = [&](int u, int v) { m[u - 1][v - 1] = -1; m[v - 1][u - 1] = -1; };
        switch (t.family) {
            case 'A':
                for (int i = 1; i < n; ++i) edge(i, i + 1);
                break;
            case 'B':
                for (int i = 1; i < n; ++i) edge(i, i + 1);
                m[n - 1][n - 2] = -2;  // alpha_n short
                break;
            case 'C':
                for (int i = 1; i < n; ++i) edge(i, i + 1);
                m[n - 2][n - 1] = -2;  // alpha_n long
                break;
            case 'D':
                for (int i = 1; i < n - 1; ++i) edge(i, i + 1);
                edge(n - 2, n);
                break;
            case 'E':
                for (int i = 1; i < n - 1; ++i) edge(i, i + 1);
                edge(3, n);
                break;
            case 'F':
                for (int i = 1; i < n; ++i) edge(i, i + 1);
                m[2][1] = -2;  // alpha_3, alpha_4 short
                break;
            case 'G':
                edge(1, 2);
                m[1][0] = -3;  // alpha_1 long, alpha_2 short
                break;
        }
        return from_matrix(t, std::move(m));
    }

    static CartanData from_matrix(TypeLabel t, IntMat m) {
        CartanData c;
        c.label = t;
        c.n = static_cast<int>(m.size());
        c.a = std::move(m);
        c.validate_matrix();
        c.sym = compute_symmetrizers(c.a);
        return c;
    }

    bool simply_laced() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && (a[i][j] < -1 || a[i][j] != a[j][i])) return false;
        return true;
    }

    std::vector<int> neighbors(int vertex) const {
        std::vector<int> r;
        for (int j = 1; j <= n; ++j)
            if (j != vertex && a[vertex - 1][j - 1] != 0) r.push_back(j);
        return r;
    }

    bool adjacent(int u, int v) const { return u != v && a[u - 1][v - 1] != 0; }

    Int entry(int i, int j) const { return a[i - 1][j - 1]; }
    Int s(int vertex) const { return sym[vertex - 1]; }

private:
    void validate_matrix() const {
        for (int i = 0; i < n; ++i) {
            if (a[i][i] != 2) throw std::invalid_argument("Cartan matrix: diagonal must be 2");
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                if (a[i][j] > 0) throw std::invalid_argument("Cartan matrix: positive off-diagonal");
                if ((a[i][j] == 0) != (a[j][i] == 0))
                    throw std::invalid_argument("Cartan matrix: zero pattern not symmetric");
            }
        }
        if (label.simply_laced()) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (a[i][j] != a[j][i])
                        throw std::invalid_argument("Cartan matrix: ADE type must be symmetric");
        }
    }

    // Smallest positive integers s with s_i a_ij = s_j a_ji.
    static IntVec compute_symmetrizers(const IntMat& m) {
        const int n = static_cast<int>(m.size());
        std::vector<Fraction> s(n, Fraction(0));
        s[0] = Fraction(1);
        std::vector<int> stack{0};
        std::vector<bool> seen(n, false);
        seen[0] = true;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (m[i][j] == 0 || i == j || seen[j]) continue;
                // s_j = s_i * a_ij / a_ji
                s[j] = s[i] * Fraction(m[i][j], m[j][i]);
                seen[j] = true;
                stack.push_back(j);
            }
        }
        for (int j = 0; j < n; ++j)
            if (!seen[j]) throw std::invalid_argument("Cartan matrix: diagram not connected");
        Int lcm = 1;
        for (auto& f : s) lcm = std::lcm(lcm, f.den);
        Int gcd = 0;
        IntVec r(n);
        for (int j = 0; j < n; ++j) {
            r[j] = s[j].num * (lcm / s[j].den);
            gcd = std::gcd(gcd, r[j]);
        }
        for (auto& v : r) v /= gcd;
        return r;
    }
};

/// Weight-basis coordinates of a root-lattice element.
inline Weight weight_of_root(const CartanData& c, const Root& beta) {
    return Weight(mat_vec(c.a, beta.rc));
}

/// Root-basis coordinates of a weight, if it lies in the root lattice.
inline std::optional<Root> root_of_weight(const CartanData& c, const Weight& w) {
    FracVec b;
    b.reserve(w.fw.size());
    for (Int v : w.fw) b.emplace_back(v);
    auto sol = solve_exact(to_fractions(c.a), b);
    if (!sol) return std::nullopt;
    IntVec r(sol->size());
    for (size_t i = 0; i < sol->size(); ++i) {
        if (!(*sol)[i].is_integer()) return std::nullopt;
        r[i] = (*sol)[i].num;
    }
    return Root(std::move(r));
}

/// Bilinear form (lambda, beta) with beta in the root lattice; normalized by
/// (Lambda_i, alpha_j) = s_j delta_ij, so ADE values need no rationals.
inline Int pairing(const CartanData& c, const Weight& lambda, const Root& beta) {
    __int128 acc = 0;
    for (int j = 0; j < c.n; ++j)
        acc += static_cast<__int128>(c.sym[j]) * beta.rc[j] * lambda.fw[j];
    return detail::checked(acc);
}

/// s_i lambda = lambda - <h_i, lambda> alpha_i.
inline Weight reflect(const CartanData& c, int vertex, const Weight& lambda) {
    if (vertex < 1 || vertex > c.n) throw std::out_of_range("reflect: vertex out of range");
    Weight r = lambda;
    const Int coef = lambda.fw[vertex - 1];
    if (coef == 0) return r;
    for (int j = 0; j < c.n; ++j) r.fw[j] -= coef * c.a[j][vertex - 1];
    return r;
}

inline Root reflect_root(const CartanData& c, int vertex, const Root& beta) {
    if (vertex < 1 || vertex > c.n) throw std::out_of_range("reflect_root: vertex out of range");
    __int128 coef = 0;
    for (int j = 0; j < c.n; ++j) coef += static_cast<__int128>(c.a[vertex - 1][j]) * beta.rc[j];
    Root r = beta;
    r.rc[vertex - 1] -= detail::checked(coef);
    return r;
}

/// All positive roots, by reflection closure from the simple roots.
/// Ordered by height, then lexicographically.
inline std::vector<Root> positive_roots(const CartanData& c) {
    std::set<Root> all;
    std::vector<Root> queue;
    for (int i = 1; i <= c.n; ++i) {
        Root r = Root::simple(c.n, i);
        all.insert(r);
        queue.push_back(r);
    }
    while (!queue.empty()) {
        Root r = queue.back();
        queue.pop_back();
        for (int i = 1; i <= c.n; ++i) {
            Root s = reflect_root(c, i, r);
            if (all.insert(s).second) {
                queue.push_back(s);
                if (all.size() > 4096)
                    throw std::invalid_argument("positive_roots: type is not finite");
            }
        }
    }
    std::vector<Root> pos;
    for (const auto& r : all)
        if (r.nonnegative()) pos.push_back(r);
    std::sort(pos.begin(), pos.end(), [](const Root& x, const Root& y) {
        if (x.height() != y.height()) return x.height() < y.height();
        return x.rc < y.rc;
    });
    return pos;
}

inline size_t num_positive_roots(const CartanData& c) { return positive_roots(c).size(); }

/// beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}) for a word (i_1,...,i_l).
inline std::vector<Root> beta_sequence(const CartanData& c, const WeylWord& word) {
    std::vector<Root> betas;
    betas.reserve(word.size());
    for (size_t k = 0; k < word.size(); ++k) {
        Root b = Root::simple(c.n, word[k]);
        for (size_t t = k; t-- > 0;) b = reflect_root(c, word[t], b);
        betas.push_back(b);
    }
    return betas;
}

/// True iff the word is a reduced word of the longest element: its length is
/// the number of positive roots and the beta_k exhaust them.
inline bool is_reduced_word_of_w0(const CartanData& c, const WeylWord& word) {
    for (int v : word)
        if (v < 1 || v > c.n) return false;
    const auto pos = positive_roots(c);
    if (word.size() != pos.size()) return false;
    std::set<Root> seen;
    for (const auto& b : beta_sequence(c, word)) {
        if (!b.nonnegative()) return false;
        if (!seen.insert(b).second) return false;
    }
    return true;
}

/// The beta_k listing of a reduced word is convex: beta_k + beta_l = beta_m
/// with k < l forces k < m < l.
inline bool is_convex_listing(const std::vector<Root>& betas) {
    std::map<Root, size_t> index;
    for (size_t k = 0; k < betas.size(); ++k) index[betas[k]] = k;
    for (size_t k = 0; k < betas.size(); ++k)
        for (size_t l = k + 1; l < betas.size(); ++l) {
            auto it = index.find(betas[k] + betas[l]);
            if (it != index.end() && !(k < it->second && it->second < l)) return false;
        }
    return true;
}

/// A reduced word of w0 generated greedily against a dominance witness:
/// repeatedly reflect at the smallest vertex where the witness is positive.
inline WeylWord w0_word(const CartanData& c) {
    Weight lambda(IntVec(c.n, 1));
    WeylWord word;
    const size_t cap = num_positive_roots(c) + 1;
    while (true) {
        int pick = 0;
        for (int i = 1; i <= c.n; ++i)
            if (lambda.fw[i - 1] > 0) { pick = i; break; }
        if (pick == 0) break;
        lambda = reflect(c, pick, lambda);
        word.push_back(pick);
        if (word.size() > cap) throw std::logic_error("w0_word: runaway word");
    }
    if (!is_reduced_word_of_w0(c, word)) throw std::logic_error("w0_word: generated word not reduced");
    return word;
}

/// The involution i -> i* with w0(alpha_i) = -alpha_{i*}.
inline std::map<int, int> w0_star(const CartanData& c) {
    const WeylWord word = w0_word(c);
    std::map<int, int> star;
    for (int i = 1; i <= c.n; ++i) {
        Root r = Root::simple(c.n, i);
        for (size_t t = word.size(); t-- > 0;) r = reflect_root(c, word[t], r);
        Root neg = Int(-1) * r;
        int target = 0;
        for (int j = 1; j <= c.n; ++j)
            if (neg == Root::simple(c.n, j)) { target = j; break; }
        if (target == 0) throw std::logic_error("w0_star: w0(alpha_i) is not a negative simple root");
        star[i] = target;
    }
    return star;
}

/// Dual Coxeter number of a finite type, from the built-in table.
/// Each table entry is cross-checked elsewhere against |Im Omega~| = L.
inline Int dual_coxeter(TypeLabel t) {
    t.check();
    switch (t.family) {
        case 'A': return t.rank + 1;
        case 'B': return 2 * t.rank - 1;
        case 'C': return t.rank + 1;
        case 'D': return 2 * t.rank - 2;
        case 'E':
            if (t.rank == 6) return 12;
            if (t.rank == 7) return 18;
            return 30;
        case 'F': return 9;
        case 'G': return 4;
    }
    throw std::invalid_argument("dual_coxeter: unknown type");
}

}  // namespace qcombinat
