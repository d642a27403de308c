#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "padlab/errors.hpp"

namespace padlab {

// Word-sized modular arithmetic used in the hot loops (digamma partial sums,
// Euler-constant products, truncated-series evaluation).  All moduli here are
// prime powers p^W < 2^63.

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m (m need not be prime, a must be coprime to m).
inline std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt; t = newt; newt = tmp;
        tmp = r - q * newr; r = newr; newr = tmp;
    }
    if (r != 1) throw NotAUnit("invmod: argument shares a factor with the modulus");
    if (t < 0) t += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t);
}

// p^k as u64; nullopt on overflow.
inline std::optional<std::uint64_t> pow_u64_checked(std::uint64_t p, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (r > UINT64_MAX / p) return std::nullopt;
        r *= p;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline mpz_class pow_mpz(std::uint64_t base, unsigned long exp) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

// p-adic valuation of a nonzero integer.
inline unsigned long valuation_mpz(const mpz_class& n, std::uint64_t p) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    mpz_class q = n, r;
    unsigned long v = 0;
    mpz_class pz(static_cast<unsigned long>(p));
    while (true) {
        mpz_class quo, rem;
        mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t(), pz.get_mpz_t());
        if (rem != 0) break;
        q = quo;
        ++v;
    }
    return v;
}

inline long valuation_mpq(const mpq_class& x, std::uint64_t p) {
    if (x == 0) throw std::invalid_argument("valuation of 0");
    long v = 0;
    if (x.get_num() != 0) v += static_cast<long>(valuation_mpz(x.get_num(), p));
    v -= static_cast<long>(valuation_mpz(x.get_den(), p));
    return v;
}

inline unsigned long valuation_u64(std::uint64_t n, std::uint64_t p) {
    unsigned long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// Canonical residue of a rational with p-free denominator, in [0, m) where
// m = p^K.  Throws DenominatorDivisibleByP otherwise.
inline mpz_class residue_of_rational(const mpq_class& x, std::uint64_t p, const mpz_class& m) {
    mpq_class xc(x);
    xc.canonicalize();
    if (mpz_divisible_ui_p(xc.get_den().get_mpz_t(), p))
        throw DenominatorDivisibleByP();
    mpz_class deninv;
    if (!mpz_invert(deninv.get_mpz_t(), xc.get_den().get_mpz_t(), m.get_mpz_t()))
        throw DenominatorDivisibleByP();
    mpz_class r = xc.get_num() * deninv;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline mpz_class mod_mpz(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace padlab
