#pragma once

#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "torocoh/rational.hpp"

namespace torocoh {

inline constexpr mpfr_prec_t default_float_bits = 256;

// Owning MPFR value. Every operation takes an explicit rounding direction so
// that interval endpoints can be rounded outward.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = default_float_bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat from(const Rational& q, mpfr_rnd_t rnd, mpfr_prec_t bits = default_float_bits) {
        BigFloat r(bits);
        mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
        return r;
    }
    static BigFloat from(const Integer& z, mpfr_rnd_t rnd, mpfr_prec_t bits = default_float_bits) {
        BigFloat r(bits);
        mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
        return r;
    }
    static BigFloat from(long v, mpfr_prec_t bits = default_float_bits) {
        BigFloat r(bits);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }
    static BigFloat from(double v, mpfr_prec_t bits = default_float_bits) {
        BigFloat r(bits);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Exact conversion (MPFR values are dyadic rationals).
    Rational to_rational() const {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    std::string str(int sig_digits = 12) const {
        if (mpfr_zero_p(v_)) return "0";
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(sig_digits) + "Rg";
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

namespace detail {

template <class F>
BigFloat apply2(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd, F f) {
    BigFloat r(std::max(a.bits(), b.bits()));
    f(r.get(), a.get(), b.get(), rnd);
    return r;
}

template <class F>
BigFloat apply1(const BigFloat& a, mpfr_rnd_t rnd, F f) {
    BigFloat r(a.bits());
    f(r.get(), a.get(), rnd);
    return r;
}

} // namespace detail

inline BigFloat add(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) { return detail::apply2(a, b, rnd, mpfr_add); }
inline BigFloat sub(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) { return detail::apply2(a, b, rnd, mpfr_sub); }
inline BigFloat mul(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) { return detail::apply2(a, b, rnd, mpfr_mul); }
inline BigFloat div(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) { return detail::apply2(a, b, rnd, mpfr_div); }
inline BigFloat log10(const BigFloat& a, mpfr_rnd_t rnd) { return detail::apply1(a, rnd, mpfr_log10); }
inline BigFloat log(const BigFloat& a, mpfr_rnd_t rnd) { return detail::apply1(a, rnd, mpfr_log); }
inline BigFloat exp(const BigFloat& a, mpfr_rnd_t rnd) { return detail::apply1(a, rnd, mpfr_exp); }
inline BigFloat exp10(const BigFloat& a, mpfr_rnd_t rnd) { return detail::apply1(a, rnd, mpfr_exp10); }
inline BigFloat log1p(const BigFloat& a, mpfr_rnd_t rnd) { return detail::apply1(a, rnd, mpfr_log1p); }
inline BigFloat sqrt(const BigFloat& a, mpfr_rnd_t rnd) { return detail::apply1(a, rnd, mpfr_sqrt); }

inline BigFloat neg(const BigFloat& a) {
    BigFloat r(a.bits());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

inline BigFloat log10_e(mpfr_rnd_t rnd, mpfr_prec_t bits = default_float_bits) {
    BigFloat ten = BigFloat::from(10L, bits);
    BigFloat ln10 = log(ten, rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
    BigFloat one = BigFloat::from(1L, bits);
    return div(one, ln10, rnd);
}

inline BigFloat const_pi(mpfr_rnd_t rnd, mpfr_prec_t bits = default_float_bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.get(), rnd);
    return r;
}

} // namespace torocoh
