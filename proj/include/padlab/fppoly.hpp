#pragma once

#include <cstdint>
#include <vector>

#include "padlab/modarith.hpp"

namespace padlab {

// Dense polynomials over F_p, coefficients as uint64 in [0, p).  Degrees stay
// tiny (extension degrees and zeta numerators), so everything is schoolbook.
namespace fpx {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) {
        std::uint64_t s = (i < a.size() ? a[i] : 0) + p - (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    trim(r);
    return r;
}

// a mod m, m nonzero (not necessarily monic).
inline Poly rem(Poly a, const Poly& m, std::uint64_t p) {
    trim(a);
    const int dm = deg(m);
    if (dm < 0) throw std::invalid_argument("fpx::rem: zero modulus");
    const std::uint64_t lead_inv = invmod_u64(m.back(), p);
    while (deg(a) >= dm) {
        std::uint64_t c = mulmod_u64(a.back(), lead_inv, p);
        int shift = deg(a) - dm;
        for (int i = 0; i <= dm; ++i) {
            std::uint64_t s = a[i + shift] + p - mulmod_u64(c, m[i], p);
            a[i + shift] = s % p;
        }
        trim(a);
    }
    return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
    return rem(mul(a, b, p), m, p);
}

inline Poly powmod(Poly base, mpz_class e, const Poly& m, std::uint64_t p) {
    Poly r{1};
    base = rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, base, m, p);
        base = mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
    trim(a); trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        std::uint64_t inv = invmod_u64(a.back(), p);
        for (auto& c : a) c = mulmod_u64(c, inv, p);
    }
    return a;
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
struct XgcdResult { Poly g, s, t; };
XgcdResult xgcd(Poly a, Poly b, std::uint64_t p);

// Monic irreducible of degree f over F_p with the lexicographically least
// coefficient vector (c_0, c_1, ..., c_{f-1}) read as base-p digits of an
// integer; deterministic so that every run picks the same extension model.
Poly least_irreducible(std::uint64_t p, int f);

bool is_irreducible(const Poly& m, std::uint64_t p);

// Multiplicative order of p modulo n (requires gcd(p, n) = 1).
unsigned multiplicative_order(std::uint64_t p, std::uint64_t n);

} // namespace fpx
} // namespace padlab
