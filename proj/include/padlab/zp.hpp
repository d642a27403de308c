#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "padlab/errors.hpp"
#include "padlab/modarith.hpp"

namespace padlab {

/// An element of Z_p known modulo p^prec.
///
/// The residue is kept canonical in [0, p^prec).  Addition, subtraction and
/// multiplication are exact mod p^prec; division by a unit is exact; division
/// by p is only available through exact_div_pow_p, which asserts divisibility
/// and lowers the carried precision by the divided valuation.  Values are
/// immutable after construction apart from assignment.
class Zp {
public:
    Zp(std::uint64_t p, int prec, const mpz_class& value) : p_(p), prec_(prec) {
        check_params(p, prec);
        pk_ = pow_mpz(p, static_cast<unsigned long>(prec));
        r_ = mod_mpz(value, pk_);
    }
    Zp(std::uint64_t p, int prec, long value) : Zp(p, prec, mpz_class(value)) {}

    /// Canonical embedding of a rational with p-free denominator.
    static Zp from_rational(const mpq_class& x, std::uint64_t p, int prec) {
        check_params(p, prec);
        mpz_class pk = pow_mpz(p, static_cast<unsigned long>(prec));
        return Zp(p, prec, residue_of_rational(x, p, pk), pk);
    }

    std::uint64_t p() const { return p_; }
    int prec() const { return prec_; }
    const mpz_class& residue() const { return r_; }
    const mpz_class& modulus() const { return pk_; }

    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return !mpz_divisible_ui_p(r_.get_mpz_t(), p_); }

    /// min(v_p(residue), prec); a zero residue reports prec.
    int valuation() const {
        if (r_ == 0) return prec_;
        return static_cast<int>(valuation_mpz(r_, p_));
    }

    Zp reduced(int new_prec) const {
        if (new_prec > prec_) throw std::invalid_argument("reduced: cannot raise precision");
        if (new_prec == prec_) return *this;
        return Zp(p_, new_prec, r_);
    }

    /// Same residue read at a higher working precision.  The extra digits are
    /// an arbitrary (canonical) lift, so only use this where the result is
    /// provably independent of the lift.
    Zp lifted(int new_prec) const {
        if (new_prec < prec_) return reduced(new_prec);
        return Zp(p_, new_prec, r_);
    }

    Zp operator-() const { return Zp(p_, prec_, r_ == 0 ? mpz_class(0) : pk_ - r_, pk_); }

    friend Zp operator+(const Zp& a, const Zp& b) {
        auto [prec, pk] = a.common(b);
        return Zp(a.p_, prec, mod_mpz(a.r_ + b.r_, pk), pk);
    }
    friend Zp operator-(const Zp& a, const Zp& b) {
        auto [prec, pk] = a.common(b);
        return Zp(a.p_, prec, mod_mpz(a.r_ - b.r_, pk), pk);
    }
    friend Zp operator*(const Zp& a, const Zp& b) {
        auto [prec, pk] = a.common(b);
        return Zp(a.p_, prec, mod_mpz(a.r_ * b.r_, pk), pk);
    }
    friend Zp operator/(const Zp& a, const Zp& b) { return a * b.inverse(); }

    Zp& operator+=(const Zp& o) { return *this = *this + o; }
    Zp& operator-=(const Zp& o) { return *this = *this - o; }
    Zp& operator*=(const Zp& o) { return *this = *this * o; }

    Zp inverse() const {
        if (!is_unit()) throw NotAUnit();
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), r_.get_mpz_t(), pk_.get_mpz_t());
        return Zp(p_, prec_, inv, pk_);
    }

    Zp pow(const mpz_class& e) const {
        if (e < 0) return inverse().pow(-e);
        mpz_class r;
        mpz_powm(r.get_mpz_t(), r_.get_mpz_t(), e.get_mpz_t(), pk_.get_mpz_t());
        return Zp(p_, prec_, r, pk_);
    }
    Zp pow(long e) const { return pow(mpz_class(e)); }

    /// Exact division by p^v.  Requires v_p(value) >= v at the carried
    /// precision; the result is known to prec - v digits only.
    Zp exact_div_pow_p(int v) const {
        if (v == 0) return *this;
        if (v < 0 || v >= prec_) throw DivisionNotExact("exact_div_pow_p: precision exhausted");
        mpz_class pv = pow_mpz(p_, static_cast<unsigned long>(v));
        if (!mpz_divisible_p(r_.get_mpz_t(), pv.get_mpz_t()))
            throw DivisionNotExact();
        return Zp(p_, prec_ - v, r_ / pv);
    }

    /// The Teichmuller lift of the residue class mod p: the unique
    /// (p-1)-th root of unity congruent to this value mod p.
    Zp teichmuller() const {
        if (!is_unit()) throw NotAUnit("teichmuller: not a unit");
        mpz_class x = r_;
        mpz_class pz(static_cast<unsigned long>(p_));
        for (int i = 0; i < prec_; ++i)
            mpz_powm(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t(), pk_.get_mpz_t());
        return Zp(p_, prec_, x, pk_);
    }

    /// Iwasawa logarithm (log p = 0), defined on units.  For p = 2 the value
    /// is computed as log(z^2)/2 with z^2 in 1 + 8 Z_2.
    Zp iwasawa_log() const;

    /// (1/p) log(z^p / F(z)); on Z_p the Frobenius is the identity, so this
    /// is ((p-1)/p) log(z).  One digit of precision is consumed by the 1/p.
    Zp log_p_twisted() const;

    bool congruent(const Zp& o, int digits) const {
        if (p_ != o.p_) return false;
        if (digits > prec_ || digits > o.prec_)
            throw std::invalid_argument("congruent: not enough carried precision");
        mpz_class m = pow_mpz(p_, static_cast<unsigned long>(digits));
        return mod_mpz(r_ - o.r_, m) == 0;
    }

    friend bool operator==(const Zp& a, const Zp& b) {
        return a.p_ == b.p_ && a.prec_ == b.prec_ && a.r_ == b.r_;
    }
    friend bool operator!=(const Zp& a, const Zp& b) { return !(a == b); }

    std::string str() const { return r_.get_str(); }

private:
    Zp(std::uint64_t p, int prec, mpz_class r, mpz_class pk)
        : p_(p), prec_(prec), r_(std::move(r)), pk_(std::move(pk)) {}

    static void check_params(std::uint64_t p, int prec) {
        if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
        if (prec < 1) throw std::invalid_argument("prec must be >= 1");
    }

    std::pair<int, mpz_class> common(const Zp& o) const {
        if (p_ != o.p_) throw std::invalid_argument("mixed primes");
        int prec = std::min(prec_, o.prec_);
        if (prec == prec_) return {prec, pk_};
        if (prec == o.prec_) return {prec, o.pk_};
        return {prec, pow_mpz(p_, static_cast<unsigned long>(prec))};
    }

    std::uint64_t p_;
    int prec_;
    mpz_class r_;
    mpz_class pk_;
};

/// log(1+u) for u with valuation >= vmin >= 1 (>= 2 required when p = 2),
/// exact at the precision of u.
Zp log_one_plus(const Zp& u);

} // namespace padlab
