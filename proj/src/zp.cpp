#include "padlab/zp.hpp"

#include <cmath>

namespace padlab {

namespace {

int ceil_log_p(std::uint64_t p, std::uint64_t n) {
    int k = 0;
    std::uint64_t v = 1;
    while (v < n) {
        v *= p;
        ++k;
    }
    return k;
}

} // namespace

Zp log_one_plus(const Zp& u) {
    const std::uint64_t p = u.p();
    const int K = u.prec();
    const int vmin = u.is_zero() ? K : u.valuation();
    if (vmin < 1 || (p == 2 && vmin < 2))
        throw std::invalid_argument("log_one_plus: argument not small enough");
    if (u.is_zero()) return Zp(p, K, 0);

    // Terms u^n/n vanish mod p^K once n*vmin - log_p(n) >= K.  Work with
    // enough guard digits that every division by n is exact at full strength.
    int nmax = 1;
    while (nmax * vmin - ceil_log_p(p, static_cast<std::uint64_t>(nmax)) < K) ++nmax;
    const int guard = ceil_log_p(p, static_cast<std::uint64_t>(nmax)) + 1;
    const int W = K + guard;

    Zp uw = u.lifted(W);
    Zp term = uw;          // u^n at the current n
    Zp acc(p, W, 0);
    for (int n = 1; n <= nmax; ++n) {
        const auto vn = static_cast<int>(valuation_u64(static_cast<std::uint64_t>(n), p));
        std::uint64_t unit = static_cast<std::uint64_t>(n);
        for (int i = 0; i < vn; ++i) unit /= p;
        // u^n / n = (u^n / p^{v}) * unit^{-1}, padded back to width W.
        Zp t = term.exact_div_pow_p(vn).lifted(W);
        t = t * Zp(p, W, mpz_class(static_cast<unsigned long>(unit))).inverse();
        if (n % 2 == 0) acc -= t; else acc += t;
        if (n < nmax) term *= uw;
    }
    return acc.reduced(K);
}

Zp Zp::iwasawa_log() const {
    if (!is_unit()) throw NotAUnit("iwasawa_log: not a unit");
    if (p_ == 2) {
        // z^2 lies in 1 + 8 Z_2; log(z) = log(z^2)/2.
        Zp z2 = lifted(prec_ + 1);
        z2 = z2 * z2;
        Zp one(p_, z2.prec(), 1);
        return log_one_plus(z2 - one).exact_div_pow_p(1);
    }
    Zp w = teichmuller();
    Zp u = *this / w;
    Zp one(p_, prec_, 1);
    return log_one_plus(u - one);
}

Zp Zp::log_p_twisted() const {
    if (!is_unit()) throw NotAUnit();
    Zp lg = iwasawa_log();                       // valuation >= 1 (>= 2 for p=2)
    Zp num = lg * Zp(p_, lg.prec(), static_cast<long>(p_) - 1);
    return num.exact_div_pow_p(1);
}

} // namespace padlab
