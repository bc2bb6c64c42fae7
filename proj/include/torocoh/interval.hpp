#pragma once

#include <algorithm>
#include <string>

#include "torocoh/rational.hpp"

namespace torocoh {

// Closed interval with rational endpoints. Arithmetic is exact, so the
// result always contains every pointwise combination of members.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    explicit Interval(const Rational& point) : lo(point), hi(point) {}
    Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw Error(Errc::invalid_input, "interval with lo > hi");
    }

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0 && hi >= 0; }
    bool intersects(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
    bool subset_of(const Interval& o) const { return o.lo <= lo && hi <= o.hi; }

    // -1/0/+1 if the whole interval has that sign, 2 when it straddles zero.
    int sign() const {
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (lo == 0 && hi == 0) return 0;
        return 2;
    }
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

inline Interval operator*(const Interval& a, const Interval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

inline Interval operator*(const Rational& s, const Interval& a) {
    return s >= 0 ? Interval{s * a.lo, s * a.hi} : Interval{s * a.hi, s * a.lo};
}

inline Interval reciprocal(const Interval& a) {
    if (a.contains_zero()) throw Error(Errc::division_undecided, "interval reciprocal across zero");
    return {1 / a.hi, 1 / a.lo};
}

inline Interval operator/(const Interval& a, const Interval& b) { return a * reciprocal(b); }

inline Interval abs(const Interval& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {Rational(0), std::max(Rational(-a.lo), a.hi)};
}

inline Interval square(const Interval& a) {
    Interval m = abs(a);
    return {m.lo * m.lo, m.hi * m.hi};
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Rational enclosure of sqrt over a nonnegative interval, width about 2^-bits.
inline Interval sqrt_enclosure(const Interval& a, unsigned bits = 96) {
    if (a.lo < 0) throw Error(Errc::invalid_input, "sqrt of interval with negative part");
    auto lower_root = [bits](const Rational& x) {
        // floor(sqrt(x * 4^bits)) / 2^bits
        Rational scaled = x * Rational(Integer(1) << (2 * bits));
        Integer f = floor_q(scaled);
        Integer r;
        mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
        return make_rational(r, Integer(1) << bits);
    };
    Rational lo = lower_root(a.lo);
    Rational hi = lower_root(a.hi) + Rational(1, Integer(1) << bits);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

inline std::string to_string(const Interval& iv, int digits = 20) {
    if (iv.is_point()) return to_decimal(iv.lo, digits);
    return "[" + to_decimal(iv.lo, digits) + ", " + to_decimal(iv.hi, digits) + "]";
}

} // namespace torocoh
