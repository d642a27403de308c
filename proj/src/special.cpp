#include "padlab/special.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace padlab {

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace {
std::mutex g_bernoulli_mu;
std::vector<mpq_class> g_bernoulli{mpq_class(1)};
} // namespace

const mpq_class& bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mu);
    while (g_bernoulli.size() <= n) {
        // sum_{k<=n} C(n+1, k) B_k = 0
        const unsigned m = static_cast<unsigned>(g_bernoulli.size());
        mpq_class s(0);
        mpz_class binom;
        for (unsigned k = 0; k < m; ++k) {
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, k);
            s += mpq_class(binom) * g_bernoulli[k];
        }
        mpz_bin_uiui(binom.get_mpz_t(), m + 1, m);
        g_bernoulli.push_back(-s / mpq_class(binom));
    }
    return g_bernoulli[n];
}

// ---------------------------------------------------------------------------
// Levels

int psi_level(std::uint64_t p, int K) { return K + 1 + (p == 2 ? 1 : 0); }
int gamma_level(std::uint64_t p, int K) { return K + 2 + (p == 2 ? 1 : 0); }
int volkenborn_level(std::uint64_t p, int K) { return K + 2 + (p == 2 ? 1 : 0); }

// ---------------------------------------------------------------------------
// Scalar-generic helpers (shared by the Zp and Zq instantiations)

namespace {

Zp make_const(const Zp& like, long v) { return Zp(like.p(), like.prec(), v); }
Zq make_const(const Zq& like, long v) { return Zq(like.ctx(), v); }

Zp embed_like(const Zp& like, const mpq_class& x) {
    return Zp::from_rational(x, like.p(), like.prec());
}
Zq embed_like(const Zq& like, const mpq_class& x) {
    mpz_class r = residue_of_rational(x, like.p(), like.ctx()->pK());
    std::vector<mpz_class> c(like.f(), mpz_class(0));
    c[0] = r;
    return Zq(like.ctx(), std::move(c));
}

bool unit_check(const Zp& x) { return x.is_unit(); }
bool unit_check(const Zq& x) { return x.is_unit(); }

bool congruent_one_mod_p(const Zp& x) {
    return mod_mpz(x.residue() - 1, mpz_class(static_cast<unsigned long>(x.p()))) == 0;
}
bool congruent_one_mod_p(const Zq& x) {
    const std::uint64_t p = x.p();
    if (mpz_fdiv_ui(x.coords()[0].get_mpz_t(), p) != 1) return false;
    for (int i = 1; i < x.f(); ++i)
        if (mpz_fdiv_ui(x.coords()[i].get_mpz_t(), p) != 0) return false;
    return true;
}

// (x d/dx)^m of x/(1-x), kept as num(x)/(1-x)^(m+1) with integer numerator.
const std::vector<mpz_class>& theta_numerator(unsigned m) {
    static std::mutex mu;
    static std::vector<std::vector<mpz_class>> cache{{mpz_class(0), mpz_class(1)}};  // x
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= m) {
        const auto& P = cache.back();
        const unsigned j = static_cast<unsigned>(cache.size());  // current denominator power
        // theta(P/(1-x)^j) = [x P'(1-x) + j x P] / (1-x)^(j+1)
        std::vector<mpz_class> xP1mx(P.size() + 1, mpz_class(0));   // x P'(x) (1-x)
        for (size_t i = 1; i < P.size(); ++i) {
            xP1mx[i] += mpz_class(static_cast<long>(i)) * P[i];
            xP1mx[i + 1] -= mpz_class(static_cast<long>(i)) * P[i];
        }
        std::vector<mpz_class> out(std::max(xP1mx.size(), P.size() + 1), mpz_class(0));
        for (size_t i = 0; i < xP1mx.size(); ++i) out[i] += xP1mx[i];
        for (size_t i = 0; i < P.size(); ++i) out[i + 1] += mpz_class(static_cast<long>(j)) * P[i];
        while (out.size() > 1 && out.back() == 0) out.pop_back();
        cache.push_back(std::move(out));
    }
    return cache[m];
}

template <typename S>
S eval_int_poly(const std::vector<mpz_class>& poly, const S& x) {
    S acc = make_const(x, 0);
    for (size_t i = poly.size(); i-- > 0;) {
        acc = acc * x;
        acc += embed_like(x, mpq_class(poly[i]));
    }
    return acc;
}

// ln_{-m}(x) = theta^m (x/(1-x))
template <typename S>
S ln_nonpos_plain(unsigned m, const S& x) {
    const auto& num = theta_numerator(m);
    S numval = eval_int_poly(num, x);
    S den = make_const(x, 1) - x;
    return numval * den.pow(static_cast<long>(m + 1)).inverse();
}

template <typename S>
S polylog_closed_impl(int r, const S& x) {
    if (r > 0) throw std::invalid_argument("polylog_closed: r must be <= 0");
    if (!unit_check(x)) throw NotAUnit("polylog: x must be a unit");
    if (congruent_one_mod_p(x)) throw XCongruentOne();
    const unsigned m = static_cast<unsigned>(-r);
    S a = ln_nonpos_plain(m, x);
    S b = ln_nonpos_plain(m, x.pow(static_cast<long>(x.p())));
    mpz_class pm = pow_mpz(x.p(), m);
    return a - embed_like(x, mpq_class(pm)) * b;
}

} // namespace

// ---------------------------------------------------------------------------
// Zp polylog (word-sized fast path with mpz fallback)

namespace {

// sum_{1<=k<p^s, p!|k} x^k k^{-r} and the prefactor, all mod p^W.
mpz_class polylog_partial_sum_zp(int r, const mpz_class& xres, std::uint64_t p, int s, int W) {
    const mpz_class M = pow_mpz(p, static_cast<unsigned long>(W));
    auto psM = pow_u64_checked(p, static_cast<unsigned>(s));
    if (!psM) throw std::invalid_argument("polylog level too large");
    const std::uint64_t ps = *psM;

    if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62)) {
        const std::uint64_t m = M.get_ui();
        const std::uint64_t x = mpz_fdiv_ui(xres.get_mpz_t(), m);
        std::uint64_t xk = 1, acc = 0;
        for (std::uint64_t k = 1; k < ps; ++k) {
            xk = mulmod_u64(xk, x, m);
            if (k % p == 0) continue;
            std::uint64_t kr;
            if (r >= 0) {
                kr = powmod_u64(invmod_u64(k % m, m), static_cast<std::uint64_t>(r), m);
            } else {
                kr = powmod_u64(k % m, static_cast<std::uint64_t>(-r), m);
            }
            acc = (acc + static_cast<unsigned __int128>(xk) * kr % m) % m;
        }
        return mpz_class(acc);
    }

    mpz_class xk(1), acc(0), t;
    for (std::uint64_t k = 1; k < ps; ++k) {
        xk = mod_mpz(xk * xres, M);
        if (k % p == 0) continue;
        mpz_class kz(static_cast<unsigned long>(k));
        if (r >= 0) {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), kz.get_mpz_t(), M.get_mpz_t());
            mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(r), M.get_mpz_t());
        } else {
            mpz_powm_ui(t.get_mpz_t(), kz.get_mpz_t(), static_cast<unsigned long>(-r), M.get_mpz_t());
        }
        acc = mod_mpz(acc + xk * t, M);
    }
    return acc;
}

} // namespace

Zp polylog_at_level(int r, const Zp& x, int s) {
    if (!x.is_unit()) throw NotAUnit("polylog: x must be a unit");
    if (congruent_one_mod_p(x)) throw XCongruentOne();
    const std::uint64_t p = x.p();
    // everything here is exact mod p^prec (units only), so no guard digits
    mpz_class S = polylog_partial_sum_zp(r, x.residue(), p, s, x.prec());
    Zp sum(p, x.prec(), S);
    Zp pref = make_const(sum, 1) - x.pow(pow_mpz(p, static_cast<unsigned long>(s)));
    return sum * pref.inverse();
}

Zp polylog_closed(int r, const Zp& x) { return polylog_closed_impl(r, x); }
Zq polylog_closed(int r, const Zq& x) { return polylog_closed_impl(r, x); }

Zp polylog(int r, const Zp& x) {
    if (r <= 0) return polylog_closed(r, x);
    return polylog_at_level(r, x, psi_level(x.p(), x.prec()));
}

Zq polylog_at_level(int r, const Zq& x, int s) {
    if (!x.is_unit()) throw NotAUnit("polylog: x must be a unit");
    if (congruent_one_mod_p(x)) throw XCongruentOne();
    const std::uint64_t p = x.p();
    auto ps = pow_u64_checked(p, static_cast<unsigned>(s));
    if (!ps) throw std::invalid_argument("polylog level too large");
    const mpz_class& M = x.ctx()->pK();

    Zq xk(x.ctx(), 1);
    Zq acc(x.ctx(), 0);
    for (std::uint64_t k = 1; k < *ps; ++k) {
        xk *= x;
        if (k % p == 0) continue;
        mpz_class kz(static_cast<unsigned long>(k)), t;
        if (r >= 0) {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), kz.get_mpz_t(), M.get_mpz_t());
            mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(r), M.get_mpz_t());
        } else {
            mpz_powm_ui(t.get_mpz_t(), kz.get_mpz_t(), static_cast<unsigned long>(-r), M.get_mpz_t());
        }
        std::vector<mpz_class> tc = xk.coords();
        for (auto& c : tc) c = mod_mpz(c * t, M);
        acc += Zq(x.ctx(), std::move(tc));
    }
    Zq pref = Zq(x.ctx(), 1) - x.pow(pow_mpz(p, static_cast<unsigned long>(s)));
    return acc * pref.inverse();
}

Zq polylog(int r, const Zq& x) {
    if (r <= 0) return polylog_closed(r, x);
    return polylog_at_level(r, x, psi_level(x.p(), x.prec()));
}

// ---------------------------------------------------------------------------
// Polylog at roots of unity (bucketed single pass, memoized)

MuPolylog polylog_mu(int r, std::uint64_t N, std::uint64_t p, int K) {
    static std::mutex mu;
    static std::map<std::tuple<int, std::uint64_t, std::uint64_t, int>, MuPolylog> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({r, N, p, K});
        if (it != cache.end()) return it->second;
    }
    if (N < 2) throw std::invalid_argument("polylog_mu: N >= 2");
    if (std::gcd(N, p) != 1) throw PDividesN();

    std::vector<Zq> roots = roots_of_unity(N, p, K);
    ZqContextPtr ctx = roots[0].ctx();
    MuPolylog out;
    out.ctx = ctx;
    out.root_powers = roots;
    out.values.assign(N, Zq(ctx, 0));

    if (r <= 0) {
        for (std::uint64_t j = 1; j < N; ++j)
            out.values[j] = polylog_closed(r, roots[j]);
    } else {
        const int s = psi_level(p, K);
        const mpz_class M = pow_mpz(p, static_cast<unsigned long>(K));
        auto psM = pow_u64_checked(p, static_cast<unsigned>(s));
        if (!psM) throw std::invalid_argument("polylog_mu: level too large");
        const std::uint64_t ps = *psM;

        std::vector<mpz_class> bucket(N, mpz_class(0));
        if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62)) {
            const std::uint64_t m = M.get_ui();
            std::vector<std::uint64_t> b(N, 0);
            for (std::uint64_t k = 1; k < ps; ++k) {
                if (k % p == 0) continue;
                std::uint64_t kr = powmod_u64(invmod_u64(k % m, m), static_cast<std::uint64_t>(r), m);
                std::uint64_t c = k % N;
                b[c] = (b[c] + kr) % m;
            }
            for (std::uint64_t c = 0; c < N; ++c) bucket[c] = mpz_class(b[c]);
        } else {
            for (std::uint64_t k = 1; k < ps; ++k) {
                if (k % p == 0) continue;
                mpz_class kz(static_cast<unsigned long>(k)), inv, t;
                mpz_invert(inv.get_mpz_t(), kz.get_mpz_t(), M.get_mpz_t());
                mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(r), M.get_mpz_t());
                bucket[k % N] = mod_mpz(bucket[k % N] + t, M);
            }
        }

        const std::uint64_t e = ps % N;  // p^s mod N
        for (std::uint64_t j = 1; j < N; ++j) {
            Zq S(ctx, 0);
            for (std::uint64_t c = 0; c < N; ++c) {
                if (bucket[c] == 0) continue;
                Zp coeff(p, K, bucket[c]);
                S += roots[(j * c) % N] * Zq(ctx, coeff);
            }
            Zq pref = Zq(ctx, 1) - roots[(j * e) % N];
            out.values[j] = S * pref.inverse();
        }
    }

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_tuple(r, N, p, K), out);
    return out;
}

// ---------------------------------------------------------------------------
// Euler constant

Zp euler_gamma(std::uint64_t p, int K) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, int>, Zp> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({p, K});
        if (it != cache.end()) return it->second;
    }
    const int s = gamma_level(p, K);
    const int W = s + K + 2;
    const mpz_class M = pow_mpz(p, static_cast<unsigned long>(W));
    auto psM = pow_u64_checked(p, static_cast<unsigned>(s));
    if (!psM) throw std::invalid_argument("euler_gamma: level too large");
    const std::uint64_t ps = *psM;

    // Sum of logs as the log of the product (log is a homomorphism); this is
    // the one pass that dominates the cost, so it runs on machine words
    // whenever p^W fits.
    mpz_class prod(1);
    if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62)) {
        const std::uint64_t m = M.get_ui();
        std::uint64_t acc = 1 % m;
        for (std::uint64_t j = 1; j < ps; ++j) {
            if (j % p == 0) continue;
            acc = mulmod_u64(acc, j % m, m);
        }
        prod = mpz_class(acc);
    } else {
        for (std::uint64_t j = 1; j < ps; ++j) {
            if (j % p == 0) continue;
            prod = mod_mpz(prod * mpz_class(static_cast<unsigned long>(j)), M);
        }
    }
    Zp lg = Zp(p, W, prod).iwasawa_log();
    Zp gamma = -(lg.exact_div_pow_p(s));
    Zp result = gamma.reduced(K);

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(p, K), result);
    return result;
}

// ---------------------------------------------------------------------------
// psi-tilde and friends

bool psi_tilde_full_strength(std::uint64_t p, int r) {
    const long q = static_cast<long>(p) - 1;
    long rm = ((static_cast<long>(r) + 1) % q + q) % q;
    if (p >= 3) return rm != 0;
    return false;  // p = 2: treat uniformly as weak (one digit)
}

namespace {

// sum_{1<=k<n0, p !| k} k^{-(r+1)} mod M
mpz_class psi_partial(const mpz_class& n0, int r, std::uint64_t p, const mpz_class& M) {
    const long e = -(static_cast<long>(r) + 1);
    if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62) && n0.fits_ulong_p()) {
        const std::uint64_t m = M.get_ui();
        const std::uint64_t n = n0.get_ui();
        std::uint64_t acc = 0;
        for (std::uint64_t k = 1; k < n; ++k) {
            if (k % p == 0) continue;
            std::uint64_t t = (e >= 0) ? powmod_u64(k % m, static_cast<std::uint64_t>(e), m)
                                       : powmod_u64(invmod_u64(k % m, m), static_cast<std::uint64_t>(-e), m);
            acc = (acc + t) % m;
        }
        return mpz_class(acc);
    }
    mpz_class acc(0), t;
    for (mpz_class k(1); k < n0; ++k) {
        if (mpz_divisible_ui_p(k.get_mpz_t(), p)) continue;
        if (e >= 0) {
            mpz_powm_ui(t.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(e), M.get_mpz_t());
        } else {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), k.get_mpz_t(), M.get_mpz_t());
            mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(-e), M.get_mpz_t());
        }
        acc = mod_mpz(acc + t, M);
    }
    return acc;
}

} // namespace

Zp psi_tilde(int r, const Zp& z) {
    const std::uint64_t p = z.p();
    const int K = z.prec();
    const int out = psi_tilde_full_strength(p, r) ? K : std::max(1, K - 1);
    mpz_class M = pow_mpz(p, static_cast<unsigned long>(K + 1));
    mpz_class S = psi_partial(z.residue(), r, p, M);
    return Zp(p, K, S).reduced(out);
}

std::vector<Zp> psi_tilde_batch(int r, const std::vector<Zp>& zs) {
    if (zs.empty()) return {};
    const std::uint64_t p = zs[0].p();
    const int K = zs[0].prec();
    for (const auto& z : zs)
        if (z.p() != p || z.prec() != K)
            throw std::invalid_argument("psi_tilde_batch: mixed parameters");
    const int out = psi_tilde_full_strength(p, r) ? K : std::max(1, K - 1);
    const mpz_class M = pow_mpz(p, static_cast<unsigned long>(K + 1));

    // one pass over k, emitting prefix sums at each requested cut
    std::vector<std::pair<mpz_class, size_t>> cuts(zs.size());
    for (size_t i = 0; i < zs.size(); ++i) cuts[i] = {zs[i].residue(), i};
    std::sort(cuts.begin(), cuts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<Zp> results(zs.size(), Zp(p, out, 0));
    const long e = -(static_cast<long>(r) + 1);
    mpz_class acc(0), t;
    size_t ci = 0;
    mpz_class k(1);
    while (ci < cuts.size() && cuts[ci].first <= k) {
        results[cuts[ci].second] = Zp(p, K, acc).reduced(out);
        ++ci;
    }
    const mpz_class& nmax = cuts.back().first;
    const bool fast = M.fits_ulong_p() && M.get_ui() < (1ULL << 62) && nmax.fits_ulong_p();
    if (fast) {
        const std::uint64_t m = M.get_ui();
        const std::uint64_t n = nmax.get_ui();
        std::uint64_t a = 0;
        for (std::uint64_t kk = 1; kk < n; ++kk) {
            if (kk % p != 0) {
                std::uint64_t tt = (e >= 0) ? powmod_u64(kk % m, static_cast<std::uint64_t>(e), m)
                                            : powmod_u64(invmod_u64(kk % m, m), static_cast<std::uint64_t>(-e), m);
                a = (a + tt) % m;
            }
            while (ci < cuts.size() && cuts[ci].first == static_cast<long>(kk) + 1) {
                results[cuts[ci].second] = Zp(p, K, mpz_class(a)).reduced(out);
                ++ci;
            }
        }
    } else {
        for (; k < nmax; ++k) {
            if (!mpz_divisible_ui_p(k.get_mpz_t(), p)) {
                if (e >= 0) {
                    mpz_powm_ui(t.get_mpz_t(), k.get_mpz_t(), static_cast<unsigned long>(e), M.get_mpz_t());
                } else {
                    mpz_class inv;
                    mpz_invert(inv.get_mpz_t(), k.get_mpz_t(), M.get_mpz_t());
                    mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(-e), M.get_mpz_t());
                }
                acc = mod_mpz(acc + t, M);
            }
            mpz_class next = k + 1;
            while (ci < cuts.size() && cuts[ci].first == next) {
                results[cuts[ci].second] = Zp(p, K, acc).reduced(out);
                ++ci;
            }
        }
    }
    return results;
}

Zp psi_tilde_rational(int r, long n, std::uint64_t N, std::uint64_t p, int K) {
    if (std::gcd(N, p) != 1) throw PDividesN();
    if (n < 0 || static_cast<std::uint64_t>(n) >= N)
        throw std::invalid_argument("psi_tilde_rational: need 0 <= n < N");
    if (n == 0) return Zp(p, K, 0);
    if (N == 1) return Zp(p, K, 0);

    MuPolylog mu = polylog_mu(r + 1, N, p, K);
    Zq S(mu.ctx, 0);
    for (std::uint64_t j = 1; j < N; ++j) {
        std::uint64_t negexp = (N - (static_cast<std::uint64_t>(n) * j) % N) % N;
        Zq factor = Zq(mu.ctx, 1) - mu.root_powers[negexp];
        S += factor * mu.values[j];
    }
    // N^r is a unit; the sum is Galois-stable so it lives in Z_p.
    mpq_class Nr;
    if (r >= 0) Nr = mpq_class(pow_mpz(N, static_cast<unsigned long>(r)));
    else Nr = mpq_class(1, pow_mpz(N, static_cast<unsigned long>(-r)));
    S = S * embed_like(S, Nr);
    if (!S.in_prime_subring(K))
        throw Inconsistent("psi_tilde_rational: value not Galois-stable");
    return S.to_zp(K);
}

// ---------------------------------------------------------------------------
// Kubota-Leopoldt

Zp kubota_leopoldt(int r, std::uint64_t p, int K, std::uint64_t N_override) {
    if (r == 1) throw RIsOne();
    auto factor_of = [&](std::uint64_t N) {
        // 1 - N^(1-r)
        mpq_class Npow;
        long e = 1 - static_cast<long>(r);
        if (e >= 0) Npow = mpq_class(pow_mpz(N, static_cast<unsigned long>(e)));
        else Npow = mpq_class(1, pow_mpz(N, static_cast<unsigned long>(-e)));
        return mpq_class(1) - Npow;
    };
    std::uint64_t N = 0;
    if (N_override) {
        if (std::gcd(N_override, p) != 1) throw PDividesN();
        mpq_class f = factor_of(N_override);
        if (f == 0 || valuation_mpq(f, p) != 0)
            throw NoValidN("kubota_leopoldt: overridden N has non-unit normalization");
        N = N_override;
    } else {
        for (std::uint64_t cand = 2; cand <= 300; ++cand) {
            if (cand % p == 0) continue;
            mpq_class f = factor_of(cand);
            if (f != 0 && valuation_mpq(f, p) == 0) { N = cand; break; }
        }
        if (!N) throw NoValidN();
    }

    MuPolylog mu = polylog_mu(r, N, p, K);
    Zq S(mu.ctx, 0);
    for (std::uint64_t j = 1; j < N; ++j) S += mu.values[j];
    if (!S.in_prime_subring(K))
        throw Inconsistent("kubota_leopoldt: root-of-unity sum not Galois-stable");
    Zp sum = S.to_zp(K);
    Zp norm = Zp::from_rational(factor_of(N), p, K);
    return -(sum * norm.inverse());
}

Zp kubota_leopoldt_interpolation(int r, std::uint64_t p, int K) {
    if (r > 0) throw std::invalid_argument("interpolation route needs r <= 0");
    const unsigned m = static_cast<unsigned>(-r);
    // L_p(-m, omega^{1+m}) = -(1 - p^m) B_{m+1}/(m+1)
    mpq_class v = mpq_class(1) - mpq_class(pow_mpz(p, m));
    v *= bernoulli(m + 1) / mpq_class(m + 1);
    return Zp::from_rational(-v, p, K);
}

mpz_class power_sum_units(std::uint64_t p, int s, long m, const mpz_class& M) {
    auto psM = pow_u64_checked(p, static_cast<unsigned>(s));
    if (!psM) throw std::invalid_argument("power_sum_units: level too large");
    const std::uint64_t ps = *psM;
    if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62)) {
        const std::uint64_t mod = M.get_ui();
        std::uint64_t acc = 0;
        for (std::uint64_t k = 1; k < ps; ++k) {
            if (k % p == 0) continue;
            std::uint64_t t = (m >= 0) ? powmod_u64(k % mod, static_cast<std::uint64_t>(m), mod)
                                       : powmod_u64(invmod_u64(k % mod, mod), static_cast<std::uint64_t>(-m), mod);
            acc = (acc + t) % mod;
        }
        return mpz_class(acc);
    }
    mpz_class acc(0), t;
    for (std::uint64_t k = 1; k < ps; ++k) {
        if (k % p == 0) continue;
        mpz_class kz(static_cast<unsigned long>(k));
        if (m >= 0) {
            mpz_powm_ui(t.get_mpz_t(), kz.get_mpz_t(), static_cast<unsigned long>(m), M.get_mpz_t());
        } else {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), kz.get_mpz_t(), M.get_mpz_t());
            mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(-m), M.get_mpz_t());
        }
        acc = mod_mpz(acc + t, M);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Polygamma

Zp polygamma(int r, const Zp& z) {
    Zp tail = psi_tilde(r, z);
    const int K = tail.prec();
    if (r == 0) return -euler_gamma(z.p(), K) + tail;
    return -kubota_leopoldt(1 + r, z.p(), K) + tail;
}

Zp polygamma(int r, const mpq_class& z, std::uint64_t p, int K) {
    const int lift = psi_tilde_full_strength(p, r) ? K : K + 1;
    Zp zs = Zp::from_rational(z, p, lift);
    return polygamma(r, zs).reduced(K);
}

// ---------------------------------------------------------------------------
// Volkenborn route

Zp volkenborn_psi(int r, const Zp& z, int K) {
    const std::uint64_t p = z.p();
    const int s = volkenborn_level(p, K);
    const int W = s + K + 2;
    const mpz_class M = pow_mpz(p, static_cast<unsigned long>(W));
    auto psM = pow_u64_checked(p, static_cast<unsigned>(s));
    if (!psM) throw std::invalid_argument("volkenborn level too large");
    const std::uint64_t ps = *psM;
    const mpz_class& z0 = z.residue();

    if (r == 0) {
        // integral of log(z+t) 1_unit(z+t): one log of the running product
        mpz_class prod(1);
        if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62) && z0.fits_ulong_p()) {
            const std::uint64_t m = M.get_ui();
            std::uint64_t base = z0.get_ui() % m;
            std::uint64_t rp = mpz_fdiv_ui(z0.get_mpz_t(), p);
            std::uint64_t acc = 1 % m;
            for (std::uint64_t j = 0; j < ps; ++j) {
                if (rp != 0) acc = mulmod_u64(acc, (base + j) % m, m);
                rp = (rp + 1) % p;
            }
            prod = mpz_class(acc);
        } else {
            for (std::uint64_t j = 0; j < ps; ++j) {
                mpz_class v = mod_mpz(z0 + mpz_class(static_cast<unsigned long>(j)), M);
                if (mpz_fdiv_ui(v.get_mpz_t(), p) != 0) prod = mod_mpz(prod * v, M);
            }
        }
        Zp lg = Zp(p, W, prod).iwasawa_log();
        return lg.exact_div_pow_p(s).reduced(K);
    }

    // integral of (z+t)^{-r} 1_unit(z+t), then multiply by -1/r
    mpz_class T(0);
    if (M.fits_ulong_p() && M.get_ui() < (1ULL << 62) && z0.fits_ulong_p()) {
        const std::uint64_t m = M.get_ui();
        std::uint64_t base = z0.get_ui() % m;
        std::uint64_t rp = mpz_fdiv_ui(z0.get_mpz_t(), p);
        std::uint64_t acc = 0;
        for (std::uint64_t j = 0; j < ps; ++j) {
            if (rp != 0) {
                std::uint64_t v = (base + j) % m;
                std::uint64_t t = (r > 0) ? powmod_u64(invmod_u64(v, m), static_cast<std::uint64_t>(r), m)
                                          : powmod_u64(v, static_cast<std::uint64_t>(-r), m);
                acc = (acc + t) % m;
            }
            rp = (rp + 1) % p;
        }
        T = mpz_class(acc);
    } else {
        mpz_class t;
        for (std::uint64_t j = 0; j < ps; ++j) {
            mpz_class v = mod_mpz(z0 + mpz_class(static_cast<unsigned long>(j)), M);
            if (mpz_fdiv_ui(v.get_mpz_t(), p) == 0) continue;
            if (r > 0) {
                mpz_class inv;
                mpz_invert(inv.get_mpz_t(), v.get_mpz_t(), M.get_mpz_t());
                mpz_powm_ui(t.get_mpz_t(), inv.get_mpz_t(), static_cast<unsigned long>(r), M.get_mpz_t());
            } else {
                mpz_powm_ui(t.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(-r), M.get_mpz_t());
            }
            T = mod_mpz(T + t, M);
        }
    }
    Zp q = Zp(p, W, T).exact_div_pow_p(s);
    const auto vr = static_cast<int>(valuation_u64(static_cast<std::uint64_t>(std::abs(r)), p));
    long runit = r;
    for (int i = 0; i < vr; ++i) runit /= static_cast<long>(p);
    q = q.exact_div_pow_p(vr);
    Zp rinv = Zp(p, q.prec(), runit).inverse();
    return (-(q * rinv)).reduced(std::min(K, q.prec()));
}

} // namespace padlab
