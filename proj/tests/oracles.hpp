#pragma once

// Reference computations for the tests. They use only GMP rationals and
// brute force, never the library's p-adic arithmetic.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline mpz_class ipow(std::int64_t p, std::int64_t e) {
    mpz_class r = 1;
    for (std::int64_t i = 0; i < e; ++i) r *= p;
    return r;
}

inline mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Largest v with p^v | n, n != 0.
inline std::int64_t val(mpz_class n, std::int64_t p) {
    std::int64_t v = 0;
    if (n < 0) n = -n;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

/// Valuation of a non-zero rational.
inline std::int64_t val(const mpq_class& q, std::int64_t p) {
    return val(q.get_num(), p) - val(q.get_den(), p);
}

/// Unit part of q (q / p^v(q)) reduced mod p^m by a linear scan for r with
/// den * r == num (mod p^m). Only for small p^m.
inline mpz_class unit_residue(const mpq_class& q, std::int64_t p, std::int64_t m) {
    mpz_class num = q.get_num();
    mpz_class den = q.get_den();
    while (num % p == 0) num /= p;
    while (den % p == 0) den /= p;
    const mpz_class pm = ipow(p, m);
    const mpz_class target = mod(num, pm);
    const mpz_class d = mod(den, pm);
    for (mpz_class r = 0; r < pm; ++r) {
        if (mod(d * r, pm) == target) return r;
    }
    return -1;
}

/// Residue of a p-integral rational mod p^m (linear scan).
inline mpz_class residue(const mpq_class& q, std::int64_t p, std::int64_t m) {
    if (q == 0) return 0;
    const std::int64_t v = val(q, p);
    if (v >= m) return 0;
    return mod(unit_residue(q, p, m - v) * ipow(p, v), ipow(p, m));
}

/// All r in [0, p^m) with r^2 == a (mod p^m).
inline std::vector<mpz_class> square_roots(const mpz_class& a, std::int64_t p, std::int64_t m) {
    const mpz_class pm = ipow(p, m);
    std::vector<mpz_class> out;
    for (mpz_class r = 0; r < pm; ++r) {
        if (mod(r * r - a, pm) == 0) out.push_back(r);
    }
    return out;
}

/// Integer coefficients (lowest first) evaluated at x mod `m`.
inline mpz_class eval(const std::vector<mpz_class>& c, const mpz_class& x, const mpz_class& m) {
    mpz_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = mod(acc * x + *it, m);
    return acc;
}

/// Admissible subsets of a rooted tree given by its parent array, by
/// brute force over all 2^n assignments.
inline std::vector<std::uint64_t> admissible_subsets(const std::vector<std::int64_t>& parent) {
    const std::size_t n = parent.size();
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
        bool ok = true;
        for (std::size_t v = 1; v < n && ok; ++v) {
            if (((s >> v) & 1U) && ((s >> parent[v]) & 1U)) ok = false;
        }
        if (ok) out.push_back(s);
    }
    return out;
}

/// Parent array of the ball of radius n, level by level; the root has
/// root_children successors, every other vertex k.
inline std::vector<std::int64_t> tree(int k, int n, int root_children) {
    std::vector<std::int64_t> parent{-1};
    std::vector<std::int64_t> level{0};
    for (int d = 0; d < n; ++d) {
        std::vector<std::int64_t> next;
        for (auto v : level) {
            const int c = d == 0 ? root_children : k;
            for (int i = 0; i < c; ++i) {
                next.push_back(static_cast<std::int64_t>(parent.size()));
                parent.push_back(v);
            }
        }
        level = next;
    }
    return parent;
}

}  // namespace oracle
