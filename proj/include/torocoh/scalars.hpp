#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torocoh/interval.hpp"
#include "torocoh/lacunary.hpp"
#include "torocoh/poly.hpp"
#include "torocoh/rational.hpp"
#include "torocoh/real.hpp"

namespace torocoh {

inline Integer isqrt_floor(const Integer& v) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

inline bool is_square_free(const Integer& d) {
    for (Integer k = 2; k * k <= d; ++k)
        if (d % (k * k) == 0) return false;
    return true;
}

// A certified real number as it appears in input files.
struct ScalarDescriptor {
    enum class Kind { rational, quadratic, algebraic, lacunary, float_tagged };

    Kind kind = Kind::rational;
    Rational value;                     // rational
    Rational a, b;                      // quadratic: a + b sqrt(D)
    Integer D = 0;
    std::vector<Integer> minpoly;       // algebraic, low to high degree
    Interval interval;                  // algebraic isolating interval
    std::optional<LacunarySeries> series;
    std::string text;                   // float_tagged decimal literal
    Rational err;                       // float_tagged claimed absolute error

    static ScalarDescriptor rational(const Rational& q) {
        ScalarDescriptor s;
        s.value = q;
        return s;
    }
    static ScalarDescriptor quadratic(const Rational& a, const Rational& b, const Integer& D) {
        if (D <= 0) throw Error(Errc::invalid_input, "quadratic irrational needs D > 0");
        if (!is_square_free(D)) throw Error(Errc::invalid_input, "D = " + D.get_str() + " is not square-free");
        ScalarDescriptor s;
        s.kind = Kind::quadratic;
        s.a = a;
        s.b = b;
        s.D = D;
        return s;
    }
    static ScalarDescriptor sqrt(const Integer& D) { return quadratic(0, 1, D); }
    static ScalarDescriptor algebraic(std::vector<Integer> minpoly, const Interval& iso) {
        if (minpoly.size() < 2 || minpoly.back() == 0)
            throw Error(Errc::invalid_input, "minimal polynomial must have degree >= 1");
        ScalarDescriptor s;
        s.kind = Kind::algebraic;
        s.minpoly = std::move(minpoly);
        s.interval = iso;
        return s;
    }
    static ScalarDescriptor lacunary(const LacunarySeries& series) {
        ScalarDescriptor s;
        s.kind = Kind::lacunary;
        s.series = series;
        return s;
    }
    static ScalarDescriptor float_tagged(const std::string& text, const Rational& err) {
        if (err < 0) throw Error(Errc::invalid_input, "claimed error must be nonnegative");
        ScalarDescriptor s;
        s.kind = Kind::float_tagged;
        s.text = text;
        s.value = parse_rational(text);
        s.err = err;
        return s;
    }

    bool exact() const { return kind != Kind::float_tagged; }

    QPoly minpoly_q() const {
        std::vector<Rational> c;
        for (const auto& v : minpoly) c.emplace_back(v);
        return QPoly(std::move(c));
    }

    Real to_real() const {
        switch (kind) {
        case Kind::rational:
            return Real(value);
        case Kind::quadratic: {
            if (b == 0) return Real(a);
            Integer r = isqrt_floor(D);
            if (r * r == D) return Real(a + b * Rational(r));
            auto g = Generator::algebraic(QPoly({Rational(-D), Rational(0), Rational(1)}),
                                          Interval(Rational(r), Rational(r + 1)), "sqrt(" + D.get_str() + ")");
            return Real(a) + Real(b) * Real::generator(g);
        }
        case Kind::algebraic: {
            QPoly f = minpoly_q();
            if (f.degree() == 1) {
                Rational root = -f.coeff(0) / f.coeff(1);
                if (!interval.contains(root)) throw Error(Errc::invalid_input, "linear minimal polynomial root outside interval");
                return Real(root);
            }
            return Real::generator(Generator::algebraic(f, interval, "theta"));
        }
        case Kind::lacunary:
            if (series->finite()) return Real(series->finite_value());
            return Real::generator(Generator::lacunary(*series, "lambda"));
        case Kind::float_tagged:
            return Real::evidence(Interval(value - err, value + err));
        }
        return Real();
    }

    std::string describe() const {
        switch (kind) {
        case Kind::rational: return to_exact_string(value);
        case Kind::quadratic: return to_exact_string(a) + " + " + to_exact_string(b) + "*sqrt(" + D.get_str() + ")";
        case Kind::algebraic: return "root of " + minpoly_q().to_string() + " in [" + to_exact_string(interval.lo) + ", " +
                                     to_exact_string(interval.hi) + "]";
        case Kind::lacunary: return "lacunary(" + series->rule_name() + ")";
        case Kind::float_tagged: return text + " +- " + to_exact_string(err);
        }
        return "?";
    }
};

struct CertifiedEnclosure {
    Rational lower;
    Rational upper;
    bool exact = false;

    Rational width() const { return upper - lower; }
    bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

inline CertifiedEnclosure refine(const Real& x, unsigned long digits) {
    if (digits < 1) throw Error(Errc::invalid_input, "digits must be >= 1");
    Rational w(1, torocoh::pow10(digits));
    if (x.is_evidence()) {
        const Interval& e = x.evidence_enclosure();
        if (e.width() > w)
            throw Error(Errc::uncertifiable, "evidence enclosure is wider than 10^-" + std::to_string(digits));
        return {e.lo, e.hi, false};
    }
    if (x.is_rational()) return {x.rational_value(), x.rational_value(), true};
    Interval v = x.enclose(w);
    return {v.lo, v.hi, false};
}

inline CertifiedEnclosure refine(const ScalarDescriptor& s, unsigned long digits) { return refine(s.to_real(), digits); }

// Effective Liouville bound |q s - p| >= c for all integers p, with
// c = 1 / (|a_N| (|q| (M + |s|) + 1)^{N-1}), M a bound on the conjugates of s.
// Also reported as C / |q|^{N-1} with C = 1 / (|a_N| (M + |s| + 1)^{N-1}).
struct LiouvilleBound {
    Rational c;          // bound for the given q
    Rational C;          // uniform constant
    int exponent = 0;    // N - 1
    std::vector<Integer> minpoly;
    Rational conjugate_bound;
};

// Rational upper bound for the moduli of the roots of an integer polynomial.
inline Rational cauchy_root_bound(const std::vector<Integer>& f) {
    Rational best = 0;
    Rational lead = Rational(abs(f.back()));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        Rational r = Rational(abs(f[i])) / lead;
        if (r > best) best = r;
    }
    return 1 + best;
}

inline LiouvilleBound liouville_lower_bound(const ScalarDescriptor& s, const Integer& q) {
    if (q == 0) throw Error(Errc::invalid_input, "q must be nonzero");
    std::vector<Integer> f;
    Rational abs_hi, conj;
    switch (s.kind) {
    case ScalarDescriptor::Kind::quadratic: {
        if (s.b == 0 || isqrt_floor(s.D) * isqrt_floor(s.D) == s.D)
            throw Error(Errc::not_algebraic, "value is rational");
        // (x - a)^2 - b^2 D, scaled to integers
        QPoly p({s.a * s.a - s.b * s.b * Rational(s.D), -2 * s.a, Rational(1)});
        Integer l = 1;
        for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        for (const auto& c : p.coeffs()) f.push_back(Rational(c * Rational(l)).get_num());
        Rational root_hi = sqrt_enclosure(Interval(Rational(s.D)), 64).hi;
        conj = abs(s.a) + abs(s.b) * root_hi;
        abs_hi = conj;
        break;
    }
    case ScalarDescriptor::Kind::algebraic: {
        Real v = s.to_real();
        if (v.is_rational()) throw Error(Errc::not_algebraic, "value is rational");
        f = v.gen()->integer_minpoly();
        conj = cauchy_root_bound(f);
        Interval e = v.enclose(Rational(1, 1024));
        abs_hi = std::max(abs(e.lo), abs(e.hi));
        break;
    }
    default:
        throw Error(Errc::not_algebraic, "Liouville bound needs an algebraic irrational, got " + s.describe());
    }
    int n1 = static_cast<int>(f.size()) - 2;
    Rational lead = Rational(abs(f.back()));
    Rational qa = Rational(abs(q));
    Rational base = qa * (conj + abs_hi) + 1;
    Rational ubase = conj + abs_hi + 1;
    Rational pw = 1, upw = 1;
    for (int k = 0; k < n1; ++k) {
        pw *= base;
        upw *= ubase;
    }
    LiouvilleBound out;
    out.c = 1 / (lead * pw);
    out.C = 1 / (lead * upw);
    out.exponent = n1;
    out.minpoly = f;
    out.conjugate_bound = conj;
    return out;
}

} // namespace torocoh
