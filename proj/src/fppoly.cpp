#include "padlab/fppoly.hpp"

#include <numeric>

namespace padlab {
namespace fpx {

XgcdResult xgcd(Poly a, Poly b, std::uint64_t p) {
    Poly s0{1}, s1{}, t0{}, t1{1};
    trim(a); trim(b);
    while (!b.empty()) {
        // divide a by b: quotient q, remainder r
        Poly q, r = a;
        const std::uint64_t lead_inv = invmod_u64(b.back(), p);
        const int db = deg(b);
        while (deg(r) >= db) {
            std::uint64_t c = mulmod_u64(r.back(), lead_inv, p);
            int shift = deg(r) - db;
            if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, 0);
            q[shift] = c;
            for (int i = 0; i <= db; ++i) {
                std::uint64_t v = r[i + shift] + p - mulmod_u64(c, b[i], p);
                r[i + shift] = v % p;
            }
            trim(r);
        }
        a = std::move(b);
        b = std::move(r);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!a.empty()) {
        std::uint64_t inv = invmod_u64(a.back(), p);
        for (auto& c : a) c = mulmod_u64(c, inv, p);
        for (auto& c : s0) c = mulmod_u64(c, inv, p);
        for (auto& c : t0) c = mulmod_u64(c, inv, p);
    }
    return {std::move(a), std::move(s0), std::move(t0)};
}

bool is_irreducible(const Poly& m, std::uint64_t p) {
    const int f = deg(m);
    if (f < 1) return false;
    if (f == 1) return true;
    // x^(p^f) == x mod m, and gcd(x^(p^(f/l)) - x, m) = 1 for each prime l | f.
    Poly x{0, 1};
    auto frob_power = [&](int k) {
        Poly r = x;
        for (int i = 0; i < k; ++i) r = powmod(r, mpz_class(static_cast<unsigned long>(p)), m, p);
        return r;
    };
    if (sub(frob_power(f), x, p) != Poly{}) return false;
    int n = f;
    for (int l = 2; l <= n; ++l) {
        if (n % l) continue;
        while (n % l == 0) n /= l;
        Poly d = sub(frob_power(f / l), x, p);
        if (deg(gcd(d, m, p)) != 0) return false;
    }
    return true;
}

Poly least_irreducible(std::uint64_t p, int f) {
    if (f == 1) return Poly{0, 1};  // x itself
    auto count = pow_u64_checked(p, static_cast<unsigned>(f));
    if (!count) throw std::invalid_argument("least_irreducible: p^f too large");
    for (std::uint64_t e = 0; e < *count; ++e) {
        Poly m(f + 1, 0);
        std::uint64_t v = e;
        for (int i = 0; i < f; ++i) { m[i] = v % p; v /= p; }
        m[f] = 1;
        if (is_irreducible(m, p)) return m;
    }
    throw std::logic_error("least_irreducible: none found");
}

unsigned multiplicative_order(std::uint64_t p, std::uint64_t n) {
    if (n <= 1) return 1;
    std::uint64_t r = p % n;
    if (std::gcd(r, n) != 1) throw std::invalid_argument("multiplicative_order: gcd(p, n) != 1");
    std::uint64_t v = r;
    unsigned k = 1;
    while (v != 1) {
        v = (v * r) % n;
        ++k;
    }
    return k;
}

} // namespace fpx
} // namespace padlab
