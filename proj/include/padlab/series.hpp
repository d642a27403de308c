#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <gmpxx.h>

#include "padlab/errors.hpp"
#include "padlab/zp.hpp"

namespace padlab {

/// Polynomial truncation of a power series in t with Z_p coefficients, all
/// carried at a single precision.  coefficient(i) is exact mod p^prec; the
/// truncation operator [.]_{<m} zeroes indices >= m.
class TruncatedSeries {
public:
    TruncatedSeries(std::uint64_t p, int prec, int degree)
        : p_(p), prec_(prec), pk_(pow_mpz(p, static_cast<unsigned long>(prec))),
          c_(static_cast<size_t>(degree) + 1, mpz_class(0)) {
        if (degree < 0) throw std::invalid_argument("TruncatedSeries: degree < 0");
        if (prec < 1) throw std::invalid_argument("TruncatedSeries: prec < 1");
    }

    static TruncatedSeries from_coeff_fn(std::uint64_t p, int prec, int degree,
                                         const std::function<mpq_class(int)>& an) {
        TruncatedSeries s(p, prec, degree);
        for (int i = 0; i <= degree; ++i) s.set(i, an(i));
        return s;
    }

    std::uint64_t p() const { return p_; }
    int prec() const { return prec_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& modulus() const { return pk_; }

    const mpz_class& coeff_residue(int i) const { return c_.at(static_cast<size_t>(i)); }
    Zp coeff(int i) const { return Zp(p_, prec_, c_.at(static_cast<size_t>(i))); }

    void set(int i, const Zp& v) {
        if (v.p() != p_ || v.prec() < prec_)
            throw std::invalid_argument("TruncatedSeries::set: wrong prime or not enough digits");
        c_.at(static_cast<size_t>(i)) = mod_mpz(v.residue(), pk_);
    }
    void set(int i, const mpq_class& v) { c_.at(static_cast<size_t>(i)) = residue_of_rational(v, p_, pk_); }
    void set(int i, const mpz_class& v) { c_.at(static_cast<size_t>(i)) = mod_mpz(v, pk_); }

    /// [.]_{<m}: coefficients at indices >= m dropped (degree shrinks).
    TruncatedSeries truncated(int m) const {
        TruncatedSeries r(p_, prec_, std::min(degree(), m - 1));
        for (int i = 0; i <= r.degree(); ++i) r.c_[i] = c_[i];
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        auto [p, prec, d] = a.common(b);
        TruncatedSeries r(p, prec, d);
        for (int i = 0; i <= d; ++i)
            r.c_[i] = mod_mpz((i <= a.degree() ? a.c_[i] : mpz_class(0)) +
                              (i <= b.degree() ? b.c_[i] : mpz_class(0)), r.pk_);
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        auto [p, prec, d] = a.common(b);
        TruncatedSeries r(p, prec, d);
        for (int i = 0; i <= d; ++i)
            r.c_[i] = mod_mpz((i <= a.degree() ? a.c_[i] : mpz_class(0)) -
                              (i <= b.degree() ? b.c_[i] : mpz_class(0)), r.pk_);
        return r;
    }
    /// Product truncated at the larger carried degree.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        auto [p, prec, d] = a.common(b);
        TruncatedSeries r(p, prec, d);
        for (int i = 0; i <= std::min(d, a.degree()); ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j <= std::min(d - i, b.degree()); ++j) {
                if (b.c_[j] == 0) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        for (auto& x : r.c_) x = mod_mpz(x, r.pk_);
        return r;
    }

    /// Multiplicative inverse: requires a unit constant term.
    TruncatedSeries inverted() const {
        if (mpz_divisible_ui_p(c_[0].get_mpz_t(), p_)) throw NonUnitConstantTerm();
        TruncatedSeries r(p_, prec_, degree());
        mpz_class a0inv;
        mpz_invert(a0inv.get_mpz_t(), c_[0].get_mpz_t(), pk_.get_mpz_t());
        r.c_[0] = a0inv;
        for (int n = 1; n <= degree(); ++n) {
            mpz_class s(0);
            for (int k = 1; k <= n && k <= degree(); ++k)
                s += c_[k] * r.c_[n - k];
            r.c_[n] = mod_mpz(-s * a0inv, pk_);
        }
        return r;
    }

    /// t -> c t^p substitution (the sigma twist applied to the variable).
    TruncatedSeries substituted(const mpq_class& c, int out_degree) const {
        TruncatedSeries r(p_, prec_, out_degree);
        mpz_class cres = residue_of_rational(c, p_, pk_);
        mpz_class cpow(1);
        for (int i = 0; i <= degree(); ++i) {
            long pos = static_cast<long>(i) * static_cast<long>(p_);
            if (pos <= out_degree)
                r.c_[static_cast<size_t>(pos)] = mod_mpz(c_[i] * cpow, pk_);
            cpow = mod_mpz(cpow * cres, pk_);
        }
        return r;
    }

    /// Sum a_n t^n  ->  Sum (a_n / n) t^n for n >= 1; requires a vanishing
    /// constant term.  Where p | n the division must be exact at the carried
    /// precision; the output is honest to prec - max_loss digits, and the
    /// caller receives it at that reduced precision.
    TruncatedSeries integrated0() const {
        if (c_[0] != 0) throw DivisionNotExact("integrate0: nonzero constant term");
        int max_loss = 0;
        for (std::uint64_t q = p_; q <= static_cast<std::uint64_t>(degree()); q *= p_) ++max_loss;
        if (prec_ - max_loss < 1) throw DivisionNotExact("integrate0: precision exhausted");
        TruncatedSeries r(p_, prec_ - max_loss, degree());
        for (int n = 1; n <= degree(); ++n) {
            const auto v = static_cast<int>(valuation_u64(static_cast<std::uint64_t>(n), p_));
            mpz_class pv = pow_mpz(p_, static_cast<unsigned long>(v));
            if (!mpz_divisible_p(c_[n].get_mpz_t(), pv.get_mpz_t()))
                throw DivisionNotExact("integrate0: coefficient not divisible by p^v(n)");
            mpz_class t = c_[n] / pv;
            mpz_class unitinv;
            mpz_class unit(static_cast<unsigned long>(n));
            unit /= pv;
            mpz_invert(unitinv.get_mpz_t(), unit.get_mpz_t(), r.pk_.get_mpz_t());
            r.c_[n] = mod_mpz(t * unitinv, r.pk_);
        }
        return r;
    }

    /// t d/dt
    TruncatedSeries theta_derivative() const {
        TruncatedSeries r(p_, prec_, degree());
        for (int n = 0; n <= degree(); ++n)
            r.c_[n] = mod_mpz(c_[n] * mpz_class(static_cast<long>(n)), pk_);
        return r;
    }

    Zp evaluate(const Zp& x) const {
        if (x.p() != p_ || x.prec() < prec_)
            throw std::invalid_argument("evaluate: wrong prime or not enough digits");
        mpz_class acc(0);
        for (int i = degree(); i >= 0; --i)
            acc = mod_mpz(acc * x.residue() + c_[i], pk_);
        return Zp(p_, prec_, acc);
    }

    bool congruent(const TruncatedSeries& o, int digits, int up_to_degree,
                   int* first_fail = nullptr) const {
        mpz_class m = pow_mpz(p_, static_cast<unsigned long>(digits));
        for (int i = 0; i <= up_to_degree; ++i) {
            mpz_class d = (i <= degree() ? c_[i] : mpz_class(0)) -
                          (i <= o.degree() ? o.c_[i] : mpz_class(0));
            if (mod_mpz(d, m) != 0) {
                if (first_fail) *first_fail = i;
                return false;
            }
        }
        return true;
    }

private:
    std::tuple<std::uint64_t, int, int> common(const TruncatedSeries& o) const {
        if (p_ != o.p_) throw std::invalid_argument("TruncatedSeries: mixed primes");
        return {p_, std::min(prec_, o.prec_), std::max(degree(), o.degree())};
    }

    std::uint64_t p_;
    int prec_;
    mpz_class pk_;
    std::vector<mpz_class> c_;
};

} // namespace padlab
