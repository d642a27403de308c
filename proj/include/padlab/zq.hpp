#pragma once

#include <memory>
#include <vector>

#include <gmpxx.h>

#include "padlab/errors.hpp"
#include "padlab/fppoly.hpp"
#include "padlab/zp.hpp"

namespace padlab {

/// Shared, immutable description of Z_q = Z_p[x]/(modulus), q = p^f, carried
/// modulo p^prec.  The modulus is the deterministic lex-least monic lift of
/// the least irreducible polynomial over F_p, so serialized values are
/// reproducible bit-for-bit across runs and platforms.
class ZqContext {
public:
    ZqContext(std::uint64_t p, int f, int prec);

    std::uint64_t p() const { return p_; }
    int f() const { return f_; }
    int prec() const { return prec_; }
    const mpz_class& pK() const { return pK_; }
    const std::vector<mpz_class>& modulus() const { return modulus_; }
    // Coordinates of rho^i, where rho is the Frobenius image of the power
    // basis generator (the Hensel root of the modulus congruent to theta^p).
    const std::vector<std::vector<mpz_class>>& frob_basis() const { return frob_basis_; }

private:
    std::uint64_t p_;
    int f_;
    int prec_;
    mpz_class pK_;
    std::vector<mpz_class> modulus_;  // c_0..c_{f-1} of x^f + sum c_i x^i
    std::vector<std::vector<mpz_class>> frob_basis_;
};

using ZqContextPtr = std::shared_ptr<const ZqContext>;

ZqContextPtr make_zq_context(std::uint64_t p, int f, int prec);

/// Element of the unramified extension Z_q, q = p^f, known mod p^prec;
/// coordinates w.r.t. the power basis 1, theta, ..., theta^{f-1}.
class Zq {
public:
    explicit Zq(ZqContextPtr ctx) : ctx_(std::move(ctx)), c_(ctx_->f(), mpz_class(0)) {}
    Zq(ZqContextPtr ctx, std::vector<mpz_class> coords);
    Zq(ZqContextPtr ctx, long constant);
    Zq(ZqContextPtr ctx, const Zp& constant);

    const ZqContextPtr& ctx() const { return ctx_; }
    std::uint64_t p() const { return ctx_->p(); }
    int f() const { return ctx_->f(); }
    int prec() const { return ctx_->prec(); }
    const std::vector<mpz_class>& coords() const { return c_; }

    bool is_zero() const;
    /// Unit test: nonzero mod p.
    bool is_unit() const;
    /// All non-constant coordinates vanish (the element lies in Z_p).
    bool in_prime_subring(int digits) const;
    Zp to_zp(int digits) const;

    Zq operator-() const;
    friend Zq operator+(const Zq& a, const Zq& b);
    friend Zq operator-(const Zq& a, const Zq& b);
    friend Zq operator*(const Zq& a, const Zq& b);
    friend Zq operator/(const Zq& a, const Zq& b) { return a * b.inverse(); }
    Zq& operator+=(const Zq& o) { return *this = *this + o; }
    Zq& operator-=(const Zq& o) { return *this = *this - o; }
    Zq& operator*=(const Zq& o) { return *this = *this * o; }

    Zq inverse() const;
    Zq pow(const mpz_class& e) const;
    Zq pow(long e) const { return pow(mpz_class(e)); }

    /// Ring endomorphism lifting x -> x^p; F^f = id.
    Zq frobenius() const;
    /// The unique (q-1)-th root of unity congruent to this unit mod p.
    Zq teichmuller() const;
    /// Iwasawa logarithm on units (log p = 0).
    Zq iwasawa_log() const;
    /// (1/p) log(z^p / F(z)), eq-(2.4)-style twisted logarithm.
    Zq log_p_twisted() const;

    bool congruent(const Zq& o, int digits) const;
    friend bool operator==(const Zq& a, const Zq& b);
    friend bool operator!=(const Zq& a, const Zq& b) { return !(a == b); }

private:
    void reduce();

    ZqContextPtr ctx_;
    std::vector<mpz_class> c_;
};

/// All N solutions of x^N = 1 exactly mod p^K, as Teichmuller lifts in the
/// unramified extension of degree ord(p mod N) (degree 1 when N | p-1).
/// Deterministic: the generator is derived from the smallest F_q element
/// (integer encoding) whose (q-1)/N-th power has exact order N.
std::vector<Zq> roots_of_unity(std::uint64_t N, std::uint64_t p, int prec);

} // namespace padlab
