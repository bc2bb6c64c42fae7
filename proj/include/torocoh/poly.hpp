#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "torocoh/interval.hpp"
#include "torocoh/rational.hpp"

namespace torocoh {

// Dense univariate polynomial over Q, coefficients stored low to high.
// The zero polynomial has no coefficients.
class QPoly {
public:
    QPoly() = default;
    QPoly(const Rational& c) {  // NOLINT(google-explicit-constructor)
        if (c != 0) c_.push_back(c);
    }
    explicit QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static QPoly monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return QPoly(std::move(v));
    }
    static QPoly x() { return monomial(1, 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    Rational constant() const { return coeff(0); }
    const Rational& leading() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    QPoly& operator+=(const QPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    QPoly& operator-=(const QPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
    friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
    friend QPoly operator-(QPoly a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const Rational& s, QPoly a) {
        if (s == 0) return {};
        for (auto& v : a.c_) v *= s;
        return a;
    }
    friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const QPoly& a, const QPoly& b) { return !(a == b); }

    // Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const {
        if (d.is_zero()) throw Error(Errc::invalid_input, "polynomial division by zero");
        std::vector<Rational> rem = c_;
        int dd = d.degree();
        if (degree() < dd) return {QPoly{}, *this};
        std::vector<Rational> quot(static_cast<std::size_t>(degree() - dd + 1));
        for (int k = degree(); k >= dd; --k) {
            Rational f = rem[static_cast<std::size_t>(k)] / d.leading();
            quot[static_cast<std::size_t>(k - dd)] = f;
            if (f == 0) continue;
            for (int i = 0; i <= dd; ++i) rem[static_cast<std::size_t>(k - dd + i)] -= f * d.c_[static_cast<std::size_t>(i)];
        }
        rem.resize(static_cast<std::size_t>(dd));
        return {QPoly(std::move(quot)), QPoly(std::move(rem))};
    }
    QPoly mod(const QPoly& d) const { return divmod(d).second; }

    QPoly monic() const {
        if (is_zero()) return {};
        return (1 / leading()) * *this;
    }

    QPoly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
        return QPoly(std::move(r));
    }

    Rational eval(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Interval eval(const Interval& x) const {
        if (x.is_point()) return Interval(eval(x.lo));
        Interval acc(Rational(0));
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Interval(*it);
        return acc;
    }

    // Sum of |coefficient| * bound^k, an upper bound for |p(z)| when |z| <= bound.
    Rational magnitude_bound(const Rational& bound) const {
        Rational acc = 0, power = 1;
        for (const auto& v : c_) {
            acc += abs(v) * power;
            power *= bound;
        }
        return acc;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rational& v = c_[static_cast<std::size_t>(k)];
            if (v == 0) continue;
            Rational mag = abs(v);
            if (!out.empty())
                out += v < 0 ? " - " : " + ";
            else if (v < 0)
                out += "-";
            bool unit = mag == 1 && k > 0;
            if (!unit) out += to_exact_string(mag);
            if (k > 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline QPoly gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Returns (g, s) with s*a = g (mod m) and g = gcd(a, m) monic.
inline std::pair<QPoly, QPoly> half_extended_gcd(const QPoly& a, const QPoly& m) {
    QPoly r0 = m, r1 = a, s0, s1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        QPoly s2 = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    Rational lc = r0.leading();
    return {(1 / lc) * r0, (1 / lc) * s0};
}

// Number of distinct real roots in the half-open interval (lo, hi], by Sturm's theorem.
inline int sturm_count(const QPoly& p, const Rational& lo, const Rational& hi) {
    if (p.degree() < 1) return 0;
    std::vector<QPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        QPoly r = -(seq[seq.size() - 2].mod(seq.back()));
        if (r.is_zero()) break;
        seq.push_back(std::move(r));
    }
    auto variations = [&seq](const Rational& x) {
        int count = 0, prev = 0;
        for (const auto& s : seq) {
            Rational v = s.eval(x);
            int sg = sgn(v);
            if (sg == 0) continue;
            if (prev != 0 && sg != prev) ++count;
            prev = sg;
        }
        return count;
    };
    return variations(lo) - variations(hi);
}

} // namespace torocoh
