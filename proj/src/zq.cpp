#include "padlab/zq.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace padlab {

namespace {

// Schoolbook product of coordinate vectors followed by reduction with the
// monic modulus, everything mod p^K.
std::vector<mpz_class> mul_reduce(const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b,
                                  const std::vector<mpz_class>& modulus,
                                  const mpz_class& pK) {
    const int f = static_cast<int>(modulus.size());
    std::vector<mpz_class> prod(2 * f - 1, mpz_class(0));
    for (int i = 0; i < f; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < f; ++j) {
            if (b[j] == 0) continue;
            prod[i + j] += a[i] * b[j];
        }
    }
    // theta^f = -sum c_i theta^i
    for (int d = 2 * f - 2; d >= f; --d) {
        if (prod[d] == 0) continue;
        mpz_class c = prod[d];
        prod[d] = 0;
        for (int i = 0; i < f; ++i)
            prod[d - f + i] -= c * modulus[i];
    }
    prod.resize(f);
    for (auto& x : prod) x = mod_mpz(x, pK);
    return prod;
}

std::vector<mpz_class> eval_poly_at(const std::vector<mpz_class>& coeffs_lowfirst,
                                    const std::vector<std::vector<mpz_class>>& powers,
                                    const mpz_class& pK) {
    const int f = static_cast<int>(powers[0].size());
    std::vector<mpz_class> acc(f, mpz_class(0));
    for (size_t i = 0; i < coeffs_lowfirst.size(); ++i) {
        if (coeffs_lowfirst[i] == 0) continue;
        for (int j = 0; j < f; ++j)
            acc[j] += coeffs_lowfirst[i] * powers[i][j];
    }
    for (auto& x : acc) x = mod_mpz(x, pK);
    return acc;
}

} // namespace

ZqContext::ZqContext(std::uint64_t p, int f, int prec) : p_(p), f_(f), prec_(prec) {
    if (!is_prime_u64(p)) throw std::invalid_argument("ZqContext: p must be prime");
    if (f < 1 || prec < 1) throw std::invalid_argument("ZqContext: bad degree or precision");
    pK_ = pow_mpz(p, static_cast<unsigned long>(prec));

    fpx::Poly m = fpx::least_irreducible(p, f);
    modulus_.resize(f);
    for (int i = 0; i < f; ++i) modulus_[i] = mpz_class(static_cast<unsigned long>(m[i]));

    // Frobenius: Hensel-lift the root of the modulus congruent to theta^p.
    frob_basis_.assign(f, std::vector<mpz_class>(f, mpz_class(0)));
    if (f == 1) {
        frob_basis_[0][0] = 1;
        return;
    }
    auto mul = [&](const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
        return mul_reduce(a, b, modulus_, pK_);
    };
    auto pow_vec = [&](std::vector<mpz_class> base, mpz_class e) {
        std::vector<mpz_class> r(f, mpz_class(0));
        r[0] = 1;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    };

    std::vector<mpz_class> theta(f, mpz_class(0));
    theta[1] = 1;
    std::vector<mpz_class> rho = pow_vec(theta, mpz_class(static_cast<unsigned long>(p)));

    // Newton iteration rho <- rho - phi(rho)/phi'(rho); phi'(rho) is a unit
    // because the modulus is separable mod p.
    std::vector<mpz_class> phi(modulus_);   // low-first, with monic top appended
    phi.push_back(1);
    std::vector<mpz_class> dphi(f);
    for (int i = 1; i <= f; ++i)
        dphi[i - 1] = mpz_class(static_cast<long>(i)) * (i == f ? mpz_class(1) : modulus_[i]);

    auto eval_at = [&](const std::vector<mpz_class>& poly, const std::vector<mpz_class>& x) {
        // Horner over Zq
        std::vector<mpz_class> acc(f, mpz_class(0));
        for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
            acc = mul(acc, x);
            acc[0] += poly[i];
            acc[0] = mod_mpz(acc[0], pK_);
        }
        return acc;
    };
    auto inverse_vec = [&](const std::vector<mpz_class>& a) {
        // Newton lifting of the mod-p inverse.
        fpx::Poly abar(f);
        for (int i = 0; i < f; ++i)
            abar[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
        fpx::trim(abar);
        fpx::Poly mbar(f + 1);
        for (int i = 0; i < f; ++i) mbar[i] = mpz_fdiv_ui(modulus_[i].get_mpz_t(), p);
        mbar[f] = 1;
        auto x = fpx::xgcd(abar, mbar, p);
        if (fpx::deg(x.g) != 0) throw NotAUnit("Zq inverse: not a unit");
        std::vector<mpz_class> inv(f, mpz_class(0));
        for (size_t i = 0; i < x.s.size(); ++i) inv[i] = mpz_class(static_cast<unsigned long>(x.s[i]));
        std::vector<mpz_class> two(f, mpz_class(0));
        int digits = 1;
        while (digits < prec_) {
            // inv <- inv*(2 - a*inv)
            auto t = mul(a, inv);
            for (int i = 0; i < f; ++i) t[i] = mod_mpz(-t[i], pK_);
            t[0] = mod_mpz(t[0] + 2, pK_);
            inv = mul(inv, t);
            digits *= 2;
        }
        return inv;
    };

    for (int it = 0, need = 1; need < prec_; ++it, need *= 2) {
        auto num = eval_at(phi, rho);
        auto den = inverse_vec(eval_at(dphi, rho));
        auto corr = mul(num, den);
        for (int i = 0; i < f; ++i) rho[i] = mod_mpz(rho[i] - corr[i], pK_);
    }
    // basis powers rho^i
    std::vector<mpz_class> cur(f, mpz_class(0));
    cur[0] = 1;
    for (int i = 0; i < f; ++i) {
        frob_basis_[i] = cur;
        if (i + 1 < f) cur = mul(cur, rho);
    }
}

ZqContextPtr make_zq_context(std::uint64_t p, int f, int prec) {
    static std::mutex mu;
    static std::map<std::tuple<std::uint64_t, int, int>, ZqContextPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, f, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const ZqContext>(p, f, prec);
    cache.emplace(key, ctx);
    return ctx;
}

Zq::Zq(ZqContextPtr ctx, std::vector<mpz_class> coords) : ctx_(std::move(ctx)), c_(std::move(coords)) {
    if (static_cast<int>(c_.size()) != ctx_->f())
        throw std::invalid_argument("Zq: coordinate count != extension degree");
    reduce();
}

Zq::Zq(ZqContextPtr ctx, long constant) : ctx_(std::move(ctx)), c_(ctx_->f(), mpz_class(0)) {
    c_[0] = constant;
    reduce();
}

Zq::Zq(ZqContextPtr ctx, const Zp& constant) : ctx_(std::move(ctx)), c_(ctx_->f(), mpz_class(0)) {
    if (constant.p() != ctx_->p()) throw std::invalid_argument("Zq: mixed primes");
    if (constant.prec() < ctx_->prec())
        throw std::invalid_argument("Zq: constant carries fewer digits than the context");
    c_[0] = constant.residue();
    reduce();
}

void Zq::reduce() {
    for (auto& x : c_) x = mod_mpz(x, ctx_->pK());
}

bool Zq::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Zq::is_unit() const {
    for (const auto& x : c_)
        if (!mpz_divisible_ui_p(x.get_mpz_t(), ctx_->p())) return true;
    return false;
}

bool Zq::in_prime_subring(int digits) const {
    mpz_class m = pow_mpz(ctx_->p(), static_cast<unsigned long>(digits));
    for (int i = 1; i < ctx_->f(); ++i)
        if (mod_mpz(c_[i], m) != 0) return false;
    return true;
}

Zp Zq::to_zp(int digits) const {
    if (!in_prime_subring(digits))
        throw Inconsistent("Zq::to_zp: element does not lie in Z_p at the requested precision");
    return Zp(ctx_->p(), digits, c_[0]);
}

Zq Zq::operator-() const {
    Zq r(*this);
    for (auto& x : r.c_) x = mod_mpz(-x, ctx_->pK());
    return r;
}

Zq operator+(const Zq& a, const Zq& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("Zq: mixed contexts");
    Zq r(a);
    for (int i = 0; i < a.f(); ++i) r.c_[i] = mod_mpz(r.c_[i] + b.c_[i], a.ctx_->pK());
    return r;
}

Zq operator-(const Zq& a, const Zq& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("Zq: mixed contexts");
    Zq r(a);
    for (int i = 0; i < a.f(); ++i) r.c_[i] = mod_mpz(r.c_[i] - b.c_[i], a.ctx_->pK());
    return r;
}

Zq operator*(const Zq& a, const Zq& b) {
    if (a.ctx_ != b.ctx_) throw std::invalid_argument("Zq: mixed contexts");
    return Zq(a.ctx_, mul_reduce(a.c_, b.c_, a.ctx_->modulus(), a.ctx_->pK()));
}

Zq Zq::inverse() const {
    if (!is_unit()) throw NotAUnit("Zq: not a unit");
    const std::uint64_t p = ctx_->p();
    const int f = ctx_->f();
    fpx::Poly abar(f);
    for (int i = 0; i < f; ++i) abar[i] = mpz_fdiv_ui(c_[i].get_mpz_t(), p);
    fpx::trim(abar);
    fpx::Poly mbar(f + 1);
    for (int i = 0; i < f; ++i) mbar[i] = mpz_fdiv_ui(ctx_->modulus()[i].get_mpz_t(), p);
    mbar[f] = 1;
    auto x = fpx::xgcd(abar, mbar, p);
    if (fpx::deg(x.g) != 0) throw NotAUnit("Zq: not a unit");
    std::vector<mpz_class> inv(f, mpz_class(0));
    for (size_t i = 0; i < x.s.size(); ++i) inv[i] = mpz_class(static_cast<unsigned long>(x.s[i]));
    Zq y(ctx_, std::move(inv));
    Zq two(ctx_, 2);
    for (int digits = 1; digits < ctx_->prec(); digits *= 2)
        y = y * (two - *this * y);
    return y;
}

Zq Zq::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    Zq r(ctx_, 1);
    Zq base(*this);
    mpz_class k(e);
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

Zq Zq::frobenius() const {
    return Zq(ctx_, eval_poly_at(c_, ctx_->frob_basis(), ctx_->pK()));
}

Zq Zq::teichmuller() const {
    if (!is_unit()) throw NotAUnit("teichmuller: not a unit");
    mpz_class q = pow_mpz(ctx_->p(), static_cast<unsigned long>(ctx_->f()));
    Zq x(*this);
    for (int i = 0; i < ctx_->prec(); ++i) x = x.pow(q);
    return x;
}

Zq Zq::iwasawa_log() const {
    if (!is_unit()) throw NotAUnit("iwasawa_log: not a unit");
    const std::uint64_t p = ctx_->p();
    const int K = ctx_->prec();
    auto ceil_log_p = [p](std::uint64_t n) {
        int k = 0;
        std::uint64_t v = 1;
        while (v < n) { v *= p; ++k; }
        return k;
    };
    // For p = 2 compute log(z^2)/2 with z^2 in 1 + 8 Z_2[theta].
    const int vmin = p == 2 ? 3 : 1;
    int nmax = 1;
    while (nmax * vmin - ceil_log_p(static_cast<std::uint64_t>(nmax)) < K + (p == 2 ? 1 : 0)) ++nmax;
    const int W = K + ceil_log_p(static_cast<std::uint64_t>(nmax)) + 2;

    auto wctx = make_zq_context(p, ctx_->f(), W);
    Zq zw(wctx, coords());
    Zq u = (p == 2) ? (zw * zw) : (zw / zw.teichmuller());
    u -= Zq(wctx, 1);

    Zq term = u;
    Zq acc(wctx, 0);
    for (int n = 1; n <= nmax; ++n) {
        const auto vn = static_cast<int>(valuation_u64(static_cast<std::uint64_t>(n), p));
        std::uint64_t unit = static_cast<std::uint64_t>(n);
        for (int i = 0; i < vn; ++i) unit /= p;
        std::vector<mpz_class> tc = term.coords();
        mpz_class pv = pow_mpz(p, static_cast<unsigned long>(vn));
        for (auto& x : tc) {
            if (!mpz_divisible_p(x.get_mpz_t(), pv.get_mpz_t()))
                throw DivisionNotExact("iwasawa_log: series term not divisible");
            x /= pv;
        }
        Zq t(wctx, std::move(tc));
        if (unit != 1) t = t * Zq(wctx, static_cast<long>(unit)).inverse();
        if (n % 2 == 0) acc -= t; else acc += t;
        if (n < nmax) term *= u;
    }
    std::vector<mpz_class> rc = acc.coords();
    if (p == 2) {
        for (auto& x : rc) {
            if (mpz_odd_p(x.get_mpz_t())) throw DivisionNotExact("iwasawa_log: /2 not exact");
            x /= 2;
        }
    }
    return Zq(ctx_, std::move(rc));
}

Zq Zq::log_p_twisted() const {
    if (!is_unit()) throw NotAUnit();
    const std::uint64_t p = ctx_->p();
    Zq ratio = pow(static_cast<long>(p)) / frobenius();   // in 1 + p Z_q
    Zq lg = ratio.iwasawa_log();
    std::vector<mpz_class> c = lg.coords();
    for (auto& x : c) {
        if (!mpz_divisible_ui_p(x.get_mpz_t(), p))
            throw DivisionNotExact("log_p_twisted: /p not exact");
        x = x / static_cast<unsigned long>(p);
    }
    // the 1/p costs one digit
    return Zq(make_zq_context(p, ctx_->f(), ctx_->prec() - 1), std::move(c));
}

bool Zq::congruent(const Zq& o, int digits) const {
    if (ctx_->p() != o.ctx_->p() || ctx_->f() != o.ctx_->f()) return false;
    mpz_class m = pow_mpz(ctx_->p(), static_cast<unsigned long>(digits));
    for (int i = 0; i < ctx_->f(); ++i)
        if (mod_mpz(c_[i] - o.c_[i], m) != 0) return false;
    return true;
}

bool operator==(const Zq& a, const Zq& b) {
    return a.ctx_->p() == b.ctx_->p() && a.ctx_->f() == b.ctx_->f() &&
           a.ctx_->prec() == b.ctx_->prec() && a.c_ == b.c_;
}

std::vector<Zq> roots_of_unity(std::uint64_t N, std::uint64_t p, int prec) {
    if (N == 0) throw std::invalid_argument("roots_of_unity: N >= 1");
    if (std::gcd(N, p) != 1) throw PDividesN();
    const int f = static_cast<int>(fpx::multiplicative_order(p, N));
    auto ctx = make_zq_context(p, f, prec);
    if (N == 1) return {Zq(ctx, 1)};

    mpz_class q = pow_mpz(p, static_cast<unsigned long>(f));
    mpz_class cof = (q - 1) / static_cast<unsigned long>(N);

    // mod-p search for a generator of mu_N inside F_q
    fpx::Poly mbar(f + 1);
    {
        auto m = fpx::least_irreducible(p, f);
        for (int i = 0; i <= f; ++i) mbar[i] = m[i];
    }
    auto order_is_N = [&](const fpx::Poly& u) {
        if (fpx::deg(u) == 0 && u[0] == 1) return N == 1;
        std::uint64_t n = N;
        for (std::uint64_t l = 2; l <= n; ++l) {
            if (n % l) continue;
            while (n % l == 0) n /= l;
            fpx::Poly w = fpx::powmod(u, mpz_class(static_cast<unsigned long>(N / l)), mbar, p);
            if (fpx::deg(w) == 0 && w[0] == 1) return false;
        }
        return true;
    };

    fpx::Poly gen;
    for (std::uint64_t enc = 1;; ++enc) {
        fpx::Poly cand(f, 0);
        std::uint64_t v = enc;
        for (int i = 0; i < f && v; ++i) { cand[i] = v % p; v /= p; }
        if (v) throw NoValidN("roots_of_unity: exhausted F_q");  // cannot happen before q
        fpx::trim(cand);
        if (cand.empty()) continue;
        fpx::Poly u = fpx::powmod(cand, cof, mbar, p);
        if (order_is_N(u)) { gen = u; break; }
    }

    std::vector<mpz_class> lift(f, mpz_class(0));
    for (size_t i = 0; i < gen.size(); ++i) lift[i] = mpz_class(static_cast<unsigned long>(gen[i]));
    Zq zeta = Zq(ctx, std::move(lift)).teichmuller();

    std::vector<Zq> roots;
    roots.reserve(N);
    Zq cur(ctx, 1);
    for (std::uint64_t j = 0; j < N; ++j) {
        roots.push_back(cur);
        if (j + 1 < N) cur *= zeta;
    }
    return roots;
}

} // namespace padlab
