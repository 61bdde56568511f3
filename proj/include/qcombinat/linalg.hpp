#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qcombinat {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

namespace detail {
inline Int checked(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error("qcombinat: 64-bit overflow in exact arithmetic");
    return static_cast<Int>(v);
}
}  // namespace detail

/// Exact rational number on 64-bit numerator/denominator, always normalized
/// with positive denominator. Overflow in intermediates is detected, never
/// silently wrapped.
struct Fraction {
    Int num = 0;
    Int den = 1;

    Fraction() = default;
    Fraction(Int n) : num(n), den(1) {}
    Fraction(Int n, Int d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Fraction: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        Int g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_integer() const { return den == 1; }
    bool is_zero() const { return num == 0; }

    friend Fraction operator+(const Fraction& a, const Fraction& b) {
        __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        return reduced(n, d);
    }
    friend Fraction operator-(const Fraction& a, const Fraction& b) {
        __int128 n = static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den;
        __int128 d = static_cast<__int128>(a.den) * b.den;
        return reduced(n, d);
    }
    friend Fraction operator*(const Fraction& a, const Fraction& b) {
        return reduced(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    }
    friend Fraction operator/(const Fraction& a, const Fraction& b) {
        if (b.num == 0) throw std::domain_error("Fraction: division by zero");
        return reduced(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
    }
    Fraction operator-() const { Fraction r; r.num = -num; r.den = den; return r; }
    friend bool operator==(const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Fraction& a, const Fraction& b) { return !(a == b); }

private:
    static Fraction reduced(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        __int128 an = n < 0 ? -n : n;
        __int128 g = gcd128(an, d);
        if (g > 1) { n /= g; d /= g; }
        Fraction r;
        r.num = detail::checked(n);
        r.den = detail::checked(d);
        return r;
    }
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b) { __int128 t = a % b; a = b; b = t; }
        return a < 0 ? -a : a;
    }
};

using FracVec = std::vector<Fraction>;
using FracMat = std::vector<FracVec>;

inline FracMat to_fractions(const IntMat& m) {
    FracMat r(m.size());
    for (size_t i = 0; i < m.size(); ++i) {
        r[i].reserve(m[i].size());
        for (Int v : m[i]) r[i].emplace_back(v);
    }
    return r;
}

/// Solve A x = b exactly by Gaussian elimination. Returns nullopt when the
/// system is inconsistent. When consistent but underdetermined, free
/// variables are set to zero (our call sites all have independent columns,
/// where the solution is unique).
inline std::optional<FracVec> solve_exact(FracMat a, FracVec b) {
    const size_t rows = a.size();
    const size_t cols = rows == 0 ? 0 : a[0].size();
    if (b.size() != rows) throw std::invalid_argument("solve_exact: dimension mismatch");

    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Fraction inv = Fraction(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const Fraction f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;

    FracVec x(cols, Fraction(0));
    for (size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = b[k];
    return x;
}

inline IntVec mat_vec(const IntMat& m, const IntVec& v) {
    IntVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        __int128 acc = 0;
        for (size_t j = 0; j < v.size(); ++j) acc += static_cast<__int128>(m[i][j]) * v[j];
        r[i] = detail::checked(acc);
    }
    return r;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    const size_t n = a.size(), m = b[0].size(), k = b.size();
    IntMat r(n, IntVec(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                r[i][j] = detail::checked(static_cast<__int128>(r[i][j]) +
                                          static_cast<__int128>(a[i][l]) * b[l][j]);
        }
    return r;
}

inline IntMat identity_mat(size_t n) {
    IntMat r(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i) r[i][i] = 1;
    return r;
}

/// Exact inverse of an integer matrix; requires the inverse to be integral
/// (true for the unimodular operators handled here).
inline IntMat int_inverse(const IntMat& m) {
    const size_t n = m.size();
    FracMat a = to_fractions(m);
    FracMat inv(n, FracVec(n, Fraction(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Fraction(1);
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && a[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("int_inverse: singular matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        const Fraction f = Fraction(1) / a[c][c];
        for (size_t j = 0; j < n; ++j) { a[c][j] = a[c][j] * f; inv[c][j] = inv[c][j] * f; }
        for (size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            const Fraction g = a[i][c];
            for (size_t j = 0; j < n; ++j) {
                a[i][j] = a[i][j] - g * a[c][j];
                inv[i][j] = inv[i][j] - g * inv[c][j];
            }
        }
    }
    IntMat r(n, IntVec(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (!inv[i][j].is_integer())
                throw std::domain_error("int_inverse: inverse is not integral");
            r[i][j] = inv[i][j].num;
        }
    return r;
}

}  // namespace qcombinat
