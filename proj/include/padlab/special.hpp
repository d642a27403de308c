#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "padlab/zp.hpp"
#include "padlab/zq.hpp"

namespace padlab {

/// Exact Bernoulli number B_n (B_1 = -1/2), cached and thread-safe.
const mpq_class& bernoulli(unsigned n);

// ---- approximation levels (the paper-gap ledger) -------------------------
//
// Partial sums at level s approximate the limits with the following
// guarantees (one extra level everywhere when p = 2):
//   psi/polylog limit sums   : K honest digits need level s = K + 1
//   Euler constant, Volkenborn log-integral : s = K + 2
// These are exposed so the CLI can echo the resolved levels.
int psi_level(std::uint64_t p, int K);
int gamma_level(std::uint64_t p, int K);
int volkenborn_level(std::uint64_t p, int K);

// ---- p-adic polylogarithms ------------------------------------------------

/// ln_r^(p)(x) = sum_{p !| k} x^k / k^r on units with x != 1 mod p.
/// r <= 0 uses the closed rational form; r >= 1 the level-(prec+1) limit
/// form.  The result carries x.prec() digits.
Zp polylog(int r, const Zp& x);
Zq polylog(int r, const Zq& x);

/// Limit-form partial at an explicit level s (two-scale agreement oracle).
Zp polylog_at_level(int r, const Zp& x, int s);
Zq polylog_at_level(int r, const Zq& x, int s);

/// Closed rational form for r <= 0 (exact at carried precision).
Zp polylog_closed(int r, const Zp& x);
Zq polylog_closed(int r, const Zq& x);

/// Polylog values at all nontrivial N-th roots of unity, memoized.
/// root_powers[j] = zeta^j for the deterministic primitive root zeta;
/// value(j) = ln_r^(p)(zeta^j) for 1 <= j <= N-1.
struct MuPolylog {
    ZqContextPtr ctx;
    std::vector<Zq> root_powers;  // size N
    std::vector<Zq> values;       // size N; index 0 unused
    const Zq& value(std::uint64_t j) const { return values.at(j % root_powers.size()); }
};
MuPolylog polylog_mu(int r, std::uint64_t N, std::uint64_t p, int K);

// ---- Euler constant and polygamma ----------------------------------------

/// gamma_p = -lim p^{-s} sum_{j<p^s, p!|j} log j, memoized per (p, K).
/// The inner sum is batched as a single log of the running product.
Zp euler_gamma(std::uint64_t p, int K);

/// Whether the level-s congruence for psi-tilde holds at full strength for
/// these (p, r); in the weak rows one digit is lost.
bool psi_tilde_full_strength(std::uint64_t p, int r);

/// psi~_p^(r)(z): the partial sum at n = canonical residue of z.  Output
/// carries z.prec() digits, one fewer in the weak rows of the continuity
/// congruence.
Zp psi_tilde(int r, const Zp& z);
std::vector<Zp> psi_tilde_batch(int r, const std::vector<Zp>& zs);

/// Root-of-unity route for rational arguments n/N (0 <= n < N, p !| N):
/// N^r sum_{eps in mu_N, eps != 1} (1 - eps^{-n}) ln_{r+1}^(p)(eps),
/// asserted to land in Z_p.
Zp psi_tilde_rational(int r, long n, std::uint64_t N, std::uint64_t p, int K);

/// Kubota-Leopoldt L_p(r, omega^{1-r}) via root-of-unity sums (route A).
/// N_override picks the auxiliary N; 0 selects the smallest valid one.
Zp kubota_leopoldt(int r, std::uint64_t p, int K, std::uint64_t N_override = 0);
/// Interpolation route (route B), r = -m <= 0 only:
/// L_p(-m, omega^{1+m}) = -(1 - p^m) B_{m+1} / (m+1).
Zp kubota_leopoldt_interpolation(int r, std::uint64_t p, int K);

/// sum_{0<=k<p^s, p!|k} k^m mod M (exact); shared by the limit-definition
/// oracle and the equidistribution property tests.
mpz_class power_sum_units(std::uint64_t p, int s, long m, const mpz_class& M);

/// psi_p^(r)(z) = -gamma_p + psi~ (r = 0), -L_p(1+r, omega^{-r}) + psi~ else.
Zp polygamma(int r, const Zp& z);
/// Rational-argument polygamma at an explicit target precision.
Zp polygamma(int r, const mpq_class& z, std::uint64_t p, int K);

/// Volkenborn-integral route: the level-s integral of log(z+t) 1_{Z_p^x}
/// (r = 0) or -(1/r) (z+t)^{-r} 1_{Z_p^x} (r != 0).
Zp volkenborn_psi(int r, const Zp& z, int K);

} // namespace padlab
