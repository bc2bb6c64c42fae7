#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>

#include "torocoh/bigfloat.hpp"
#include "torocoh/rational.hpp"

namespace torocoh {

// Exact integer held as a sparse decimal sum  sum_i c_i * 10^{E_i}  with
// arbitrary-precision exponents, so values such as 10^{3*10^20} - 10^20 stay
// representable. Nothing is ever expanded unless it is small.
class HugeInt {
public:
    HugeInt() = default;
    HugeInt(const Integer& v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) terms_[Integer(0)] = v;
    }
    HugeInt(long v) : HugeInt(Integer(v)) {}  // NOLINT(google-explicit-constructor)

    static HugeInt pow10(const Integer& exponent, const Integer& coeff = 1) {
        if (exponent < 0) throw Error(Errc::invalid_input, "negative decimal exponent in HugeInt");
        HugeInt r;
        if (coeff != 0) r.terms_[exponent] = coeff;
        return r;
    }

    bool is_zero() const { return terms_.empty(); }

    HugeInt& operator+=(const HugeInt& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    HugeInt& operator-=(const HugeInt& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend HugeInt operator+(HugeInt a, const HugeInt& b) { return a += b; }
    friend HugeInt operator-(HugeInt a, const HugeInt& b) { return a -= b; }
    friend HugeInt operator-(HugeInt a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend HugeInt operator*(const Integer& s, const HugeInt& a) {
        HugeInt r;
        if (s == 0) return r;
        for (const auto& [e, c] : a.terms_) r.terms_[e] = s * c;
        return r;
    }

    // Exact sign. Repeatedly folds the leading term into the next one until the
    // leading term provably dominates the rest.
    int sign() const { return sgn(dominant().coeff); }

    friend bool operator==(const HugeInt& a, const HugeInt& b) { return (a - b).sign() == 0; }
    friend bool operator<(const HugeInt& a, const HugeInt& b) { return (a - b).sign() < 0; }
    friend bool operator>(const HugeInt& a, const HugeInt& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const HugeInt& a, const HugeInt& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const HugeInt& a, const HugeInt& b) { return (a - b).sign() >= 0; }

    // Value as an ordinary integer if it has at most `max_digits` digits.
    bool fits(std::size_t max_digits = 100000) const {
        if (terms_.empty()) return true;
        const Integer& top = terms_.begin()->first;
        return top < Integer(static_cast<unsigned long>(max_digits));
    }

    Integer to_integer(std::size_t max_digits = 100000) const {
        if (!fits(max_digits)) throw Error(Errc::exponent_overflow, "integer " + to_string() + " too large to expand");
        Integer acc = 0;
        for (const auto& [e, c] : terms_) acc += c * torocoh::pow10(e.get_ui());
        return acc;
    }

    // Leading decimal exponent, meaningful only when nonzero.
    const Integer& top_exponent() const { return terms_.begin()->first; }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        if (fits(40)) return to_integer(40).get_str();
        std::string out;
        for (const auto& [e, c] : terms_) {
            Integer mag = abs(c);
            if (!out.empty())
                out += c < 0 ? " - " : " + ";
            else if (c < 0)
                out += "-";
            if (e == 0) {
                out += mag.get_str();
                continue;
            }
            if (mag != 1) out += mag.get_str() + "*";
            out += "10^" + exponent_string(e);
        }
        return out;
    }

    struct Dominant {
        Integer coeff;      // leading coefficient after folding
        Integer exponent;   // its decimal exponent
        Integer rest;       // |remaining terms| <= rest * 10^rest_exponent
        Integer rest_exponent;
        bool has_rest = false;
    };

    Dominant dominant() const {
        std::map<Integer, Integer, std::greater<>> t = terms_;
        while (true) {
            if (t.empty()) return {Integer(0), Integer(0), Integer(0), Integer(0), false};
            auto top = t.begin();
            if (std::next(top) == t.end()) return {top->second, top->first, Integer(0), Integer(0), false};
            auto second = std::next(top);
            Integer bound = 0;
            for (auto it = second; it != t.end(); ++it) bound += abs(it->second);
            Integer gap = top->first - second->first;
            // 10^gap > bound  =>  |c_top| 10^{E_top} > sum of the rest.
            if (gap > Integer(static_cast<unsigned long>(decimal_digits(bound))))
                return {top->second, top->first, bound, second->first, true};
            Integer folded = top->second * torocoh::pow10(gap.get_ui());
            Integer e2 = second->first;
            t.erase(top);
            t[e2] += folded;
            if (t[e2] == 0) t.erase(e2);
        }
    }

    static std::string exponent_string(const Integer& e) {
        std::string s = e.get_str();
        // Render 3*10^20 style exponents compactly.
        std::size_t zeros = 0;
        while (zeros + 1 < s.size() && s[s.size() - 1 - zeros] == '0') ++zeros;
        if (zeros >= 6) {
            std::string head = s.substr(0, s.size() - zeros);
            return "(" + (head == "1" ? std::string() : head + "*") + "10^" + std::to_string(zeros) + ")";
        }
        return s;
    }

private:
    void add_term(const Integer& e, const Integer& c) {
        if (c == 0) return;
        auto& slot = terms_[e];
        slot += c;
        if (slot == 0) terms_.erase(e);
    }

    std::map<Integer, Integer, std::greater<>> terms_;
};

// A positive real known through a certified enclosure of its log10.
// Used for quantities like 10^{10^20} that no floating format can hold.
class Magnitude {
public:
    Magnitude() = default;
    Magnitude(BigFloat lo, BigFloat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

    static Magnitude exact_log10(const Integer& e) {
        return {BigFloat::from(e, MPFR_RNDD), BigFloat::from(e, MPFR_RNDU)};
    }

    static Magnitude of(const Rational& v, mpfr_prec_t bits = default_float_bits) {
        if (v <= 0) throw Error(Errc::invalid_input, "Magnitude of a nonpositive value");
        return {log10(BigFloat::from(v, MPFR_RNDD, bits), MPFR_RNDD), log10(BigFloat::from(v, MPFR_RNDU, bits), MPFR_RNDU)};
    }

    static Magnitude of(const BigFloat& lo, const BigFloat& hi) {
        if (lo.sign() <= 0) throw Error(Errc::invalid_input, "Magnitude of a nonpositive value");
        return {log10(lo, MPFR_RNDD), log10(hi, MPFR_RNDU)};
    }

    static Magnitude of(const HugeInt& h, mpfr_prec_t bits = default_float_bits) {
        if (h.sign() <= 0) throw Error(Errc::invalid_input, "Magnitude of a nonpositive integer");
        if (h.fits(2000)) return of(Rational(h.to_integer(2000)), bits);
        auto d = h.dominant();
        // h in [c*10^E - rest*10^E2, c*10^E + rest*10^E2]
        BigFloat c_lo = BigFloat::from(d.coeff, MPFR_RNDD, bits);
        BigFloat c_hi = BigFloat::from(d.coeff, MPFR_RNDU, bits);
        if (d.has_rest) {
            // relative perturbation rest*10^{E2-E}, bounded above
            BigFloat shift = BigFloat::from(Integer(d.rest_exponent - d.exponent), MPFR_RNDU, bits);
            BigFloat pert = mul(BigFloat::from(d.rest, MPFR_RNDU, bits), exp10(shift, MPFR_RNDU), MPFR_RNDU);
            c_lo = sub(c_lo, pert, MPFR_RNDD);
            c_hi = add(c_hi, pert, MPFR_RNDU);
        }
        BigFloat e_lo = BigFloat::from(d.exponent, MPFR_RNDD, bits);
        BigFloat e_hi = BigFloat::from(d.exponent, MPFR_RNDU, bits);
        return {add(e_lo, log10(c_lo, MPFR_RNDD), MPFR_RNDD), add(e_hi, log10(c_hi, MPFR_RNDU), MPFR_RNDU)};
    }

    const BigFloat& log10_lo() const { return lo_; }
    const BigFloat& log10_hi() const { return hi_; }

    friend Magnitude operator*(const Magnitude& a, const Magnitude& b) {
        return {add(a.lo_, b.lo_, MPFR_RNDD), add(a.hi_, b.hi_, MPFR_RNDU)};
    }
    friend Magnitude operator/(const Magnitude& a, const Magnitude& b) {
        return {sub(a.lo_, b.hi_, MPFR_RNDD), sub(a.hi_, b.lo_, MPFR_RNDU)};
    }

    // a + b for positive reals: log10(a+b) = max + log10(1 + 10^{min-max}).
    friend Magnitude operator+(const Magnitude& a, const Magnitude& b) {
        return {log_sum(a.lo_, b.lo_, MPFR_RNDD), log_sum(a.hi_, b.hi_, MPFR_RNDU)};
    }

    // a - b, requires a certified a > b.
    friend Magnitude operator-(const Magnitude& a, const Magnitude& b) {
        if (!(a.lo_ > b.hi_)) throw Error(Errc::uncertified, "Magnitude subtraction without certified a > b");
        // log10(a - b) = log10 a + log10(1 - 10^{log b - log a})
        BigFloat r_hi = exp10(sub(b.hi_, a.lo_, MPFR_RNDU), MPFR_RNDU);  // worst ratio
        BigFloat r_lo = exp10(sub(b.lo_, a.hi_, MPFR_RNDD), MPFR_RNDD);
        BigFloat lo = add(a.lo_, log10(one_minus(r_hi, MPFR_RNDD), MPFR_RNDD), MPFR_RNDD);
        BigFloat hi = add(a.hi_, log10(one_minus(r_lo, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU);
        return {lo, hi};
    }

    // This value plus s for s in [s_lo, s_hi] (either sign); the result must stay positive.
    Magnitude plus(const BigFloat& s_lo, const BigFloat& s_hi) const {
        auto shifted = [](const BigFloat& logb, const BigFloat& s, mpfr_rnd_t rnd) {
            // log10(10^logb + s) = logb + log10(1 + s * 10^{-logb})
            bool pos = s.sign() >= 0;
            mpfr_rnd_t scale_rnd = (rnd == MPFR_RNDD) == pos ? MPFR_RNDD : MPFR_RNDU;
            BigFloat t = mul(s, exp10(neg(logb), scale_rnd), rnd);
            BigFloat inner = add(BigFloat::from(1L, logb.bits()), t, rnd);
            if (inner.sign() <= 0) throw Error(Errc::uncertified, "Magnitude shift leaves a nonpositive value");
            return add(logb, log10(inner, rnd), rnd);
        };
        return {shifted(lo_, s_lo, MPFR_RNDD), shifted(hi_, s_hi, MPFR_RNDU)};
    }

    // Certified strict comparisons; both false means undecided.
    bool certainly_less(const Magnitude& o) const { return hi_ < o.lo_; }
    bool certainly_greater(const Magnitude& o) const { return lo_ > o.hi_; }

    std::string to_string(int sig = 15) const {
        return "10^[" + lo_.str(sig) + ", " + hi_.str(sig) + "]";
    }

    // Enclosure of the value itself when it is small enough to print.
    std::string value_string(int sig = 15) const {
        if (hi_ > BigFloat::from(15L)) return to_string(sig);
        return "[" + exp10(lo_, MPFR_RNDD).str(sig) + ", " + exp10(hi_, MPFR_RNDU).str(sig) + "]";
    }

private:
    static BigFloat one_minus(const BigFloat& x, mpfr_rnd_t rnd) {
        BigFloat one = BigFloat::from(1L, x.bits());
        return sub(one, x, rnd);
    }

    static BigFloat log_sum(const BigFloat& x, const BigFloat& y, mpfr_rnd_t rnd) {
        const BigFloat& big = x >= y ? x : y;
        const BigFloat& small = x >= y ? y : x;
        BigFloat diff = sub(small, big, rnd);
        BigFloat term = exp10(diff, rnd);  // underflows toward the rounding direction
        BigFloat one = BigFloat::from(1L, x.bits());
        BigFloat corr = log10(add(one, term, rnd), rnd);
        return add(big, corr, rnd);
    }

    BigFloat lo_, hi_;
};

} // namespace torocoh
