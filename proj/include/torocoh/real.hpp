#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torocoh/interval.hpp"
#include "torocoh/lacunary.hpp"
#include "torocoh/poly.hpp"
#include "torocoh/rational.hpp"

namespace torocoh {

inline constexpr unsigned long max_bisections = 1000000;
inline constexpr unsigned long max_lacunary_digits = 200000;
inline constexpr int evidence_digits = 40;

// Irrational generator theta of a field Q(theta). Algebraic generators carry
// their minimal polynomial and an isolating interval; lacunary generators are
// Liouville numbers and treated as transcendental.
class Generator {
public:
    enum class Kind { algebraic, lacunary };

    Kind kind() const { return kind_; }
    bool algebraic() const { return kind_ == Kind::algebraic; }
    const QPoly& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    const LacunarySeries& series() const { return *series_; }
    const std::string& label() const { return label_; }
    const Interval& isolating() const { return isolating_; }

    // Minimal polynomial scaled to a primitive integer polynomial with positive leading coefficient.
    std::vector<Integer> integer_minpoly() const {
        Integer l = 1;
        for (const auto& c : minpoly_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
        std::vector<Integer> out;
        Integer g = 0;
        for (const auto& c : minpoly_.coeffs()) {
            Rational v = c * Rational(l);
            out.push_back(v.get_num());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
        }
        for (auto& v : out) v /= g;
        if (out.back() < 0)
            for (auto& v : out) v = -v;
        return out;
    }

    // Enclosure of theta with width <= w.
    Interval enclose(const Rational& w) const {
        if (kind_ == Kind::lacunary) {
            unsigned long digits = 1;
            while (Rational(1, torocoh::pow10(digits)) > w) ++digits;
            if (digits > max_lacunary_digits)
                throw Error(Errc::nonconvergent, "lacunary refinement beyond " + std::to_string(max_lacunary_digits) + " digits");
            return series_->enclose(digits);
        }
        std::lock_guard<std::mutex> lock(mu_);
        unsigned long steps = 0;
        while (refined_.width() > w) {
            if (++bisections_ > max_bisections || ++steps > max_bisections)
                throw Error(Errc::nonconvergent, "isolating interval refinement stalled for " + label_);
            Rational mid = refined_.mid();
            int s_mid = sgn(minpoly_.eval(mid));
            if (s_mid == 0) {
                refined_ = Interval(mid);
                break;
            }
            if (s_mid == sign_lo_)
                refined_.lo = mid;
            else
                refined_.hi = mid;
        }
        return refined_;
    }

    static std::shared_ptr<const Generator> algebraic(const QPoly& minpoly, const Interval& iso, std::string label);
    static std::shared_ptr<const Generator> lacunary(const LacunarySeries& s, std::string label);

private:
    Generator() = default;

    bool same_as(const Generator& o) const {
        if (kind_ != o.kind_) return false;
        if (kind_ == Kind::lacunary) return *series_ == *o.series_;
        if (minpoly_ != o.minpoly_) return false;
        if (!isolating_.intersects(o.isolating_)) return false;
        Rational lo = std::max(isolating_.lo, o.isolating_.lo), hi = std::min(isolating_.hi, o.isolating_.hi);
        return minpoly_.eval(lo) == 0 || sturm_count(minpoly_, lo, hi) == 1;
    }

    static std::shared_ptr<const Generator> intern(std::shared_ptr<Generator> g) {
        static std::mutex registry_mu;
        static std::vector<std::shared_ptr<const Generator>> registry;
        std::lock_guard<std::mutex> lock(registry_mu);
        for (const auto& r : registry)
            if (r->same_as(*g)) return r;
        registry.push_back(g);
        return g;
    }

    Kind kind_ = Kind::algebraic;
    QPoly minpoly_;
    Interval isolating_;
    std::optional<LacunarySeries> series_;
    std::string label_;
    int sign_lo_ = 0;

    mutable std::mutex mu_;
    mutable Interval refined_;
    mutable unsigned long bisections_ = 0;
};

using GenPtr = std::shared_ptr<const Generator>;

inline GenPtr Generator::algebraic(const QPoly& minpoly, const Interval& iso, std::string label) {
    if (minpoly.degree() < 2) throw Error(Errc::invalid_input, "algebraic generator needs degree >= 2");
    QPoly f = minpoly.monic();
    Rational f_lo = f.eval(iso.lo), f_hi = f.eval(iso.hi);
    if (f_lo == 0 || f_hi == 0)
        throw Error(Errc::invalid_input, "minimal polynomial has a rational root, so it is reducible");
    if (sturm_count(f, iso.lo, iso.hi) != 1)
        throw Error(Errc::invalid_input, "interval [" + to_exact_string(iso.lo) + ", " + to_exact_string(iso.hi) +
                                             "] does not isolate exactly one root of " + f.to_string());
    auto g = std::shared_ptr<Generator>(new Generator());
    g->kind_ = Kind::algebraic;
    g->minpoly_ = f;
    g->isolating_ = iso;
    g->refined_ = iso;
    g->sign_lo_ = sgn(f_lo);
    g->label_ = std::move(label);
    return intern(std::move(g));
}

inline GenPtr Generator::lacunary(const LacunarySeries& s, std::string label) {
    if (s.finite()) throw Error(Errc::invalid_input, "finite lacunary series is rational");
    auto g = std::shared_ptr<Generator>(new Generator());
    g->kind_ = Kind::lacunary;
    g->series_ = s;
    g->label_ = std::move(label);
    return intern(std::move(g));
}

enum class Sign { negative = -1, zero = 0, positive = 1, undecided = 2 };

inline const char* to_string(Sign s) {
    switch (s) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
    case Sign::undecided: return "undecided";
    }
    return "?";
}

// Element of Q(theta) for a single generator theta, or a rational when the
// generator is null. Evidence values carry only an enclosure and never take
// part in certified decisions.
//   algebraic theta : num reduced mod minpoly, den = 1
//   lacunary theta  : num/den in lowest terms, den monic
class Real {
public:
    Real() : den_(Rational(1)) {}
    Real(const Rational& q) : num_(q), den_(Rational(1)) {}  // NOLINT(google-explicit-constructor)
    Real(long v) : Real(Rational(v)) {}                       // NOLINT(google-explicit-constructor)
    Real(int v) : Real(Rational(v)) {}                        // NOLINT(google-explicit-constructor)

    static Real generator(const GenPtr& g) {
        Real r;
        r.gen_ = g;
        r.num_ = QPoly::x();
        return r;
    }

    static Real from_poly(const GenPtr& g, QPoly num, QPoly den = QPoly(Rational(1))) {
        Real r;
        r.gen_ = g;
        r.num_ = std::move(num);
        r.den_ = std::move(den);
        r.normalize();
        return r;
    }

    static Real evidence(const Interval& enc) {
        Real r;
        r.evidence_ = true;
        r.enc_ = enc;
        return r;
    }

    bool is_evidence() const { return evidence_; }
    bool is_rational() const { return !evidence_ && !gen_; }
    const GenPtr& gen() const { return gen_; }
    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }

    Rational rational_value() const {
        if (!is_rational()) throw Error(Errc::invalid_input, "value is not rational");
        return num_.constant();
    }

    // Exact zero test; evidence values are never certified zero.
    bool is_zero() const { return !evidence_ && num_.is_zero(); }

    const Interval& evidence_enclosure() const { return enc_; }

    friend Real operator+(const Real& a, const Real& b) {
        if (a.evidence_ || b.evidence_) return evidence(a.to_interval() + b.to_interval());
        GenPtr g = common(a, b);
        if (a.den_ == b.den_) return from_poly(g, a.num_ + b.num_, a.den_);
        return from_poly(g, a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Real operator-(const Real& a) {
        Real r = a;
        if (r.evidence_)
            r.enc_ = -r.enc_;
        else
            r.num_ = -r.num_;
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) { return a + (-b); }
    friend Real operator*(const Real& a, const Real& b) {
        if (a.evidence_ || b.evidence_) return evidence(a.to_interval() * b.to_interval());
        GenPtr g = common(a, b);
        return from_poly(g, a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Real operator/(const Real& a, const Real& b) { return a * b.inverse(); }

    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    Real inverse() const {
        if (evidence_) return evidence(reciprocal(enc_));
        if (num_.is_zero()) throw Error(Errc::not_invertible, "division by exact zero");
        if (!gen_) return Real(1 / num_.constant());
        if (gen_->algebraic()) {
            auto [g, s] = half_extended_gcd(num_, gen_->minpoly());
            if (g.degree() != 0)
                throw Error(Errc::invalid_input, "minimal polynomial of " + gen_->label() + " is reducible");
            return from_poly(gen_, s);
        }
        return from_poly(gen_, den_, num_);
    }

    // Exact equality; evidence values compare unequal unless identical enclosures.
    friend bool operator==(const Real& a, const Real& b) {
        if (a.evidence_ || b.evidence_) return false;
        return (a - b).is_zero();
    }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

    // Enclosure of width <= w (evidence values return their stored enclosure).
    Interval enclose(const Rational& w) const {
        if (evidence_) return enc_;
        if (!gen_) return Interval(num_.constant());
        Rational theta_w = w / 4;
        for (int round = 0;; ++round) {
            Interval t = gen_->enclose(theta_w);
            if (round > 4096) throw Error(Errc::nonconvergent, "enclosure does not shrink");
            Interval v = num_.eval(t);
            Interval d = den_.eval(t);
            theta_w /= Rational(Integer(1) << 32);
            if (d.contains_zero()) continue;
            v = v / d;
            if (v.width() <= w) return v;
        }
    }

    Interval enclose_digits(unsigned long digits) const { return enclose(Rational(1, torocoh::pow10(digits))); }

    // Enclosure used when mixing with evidence values.
    Interval to_interval() const { return evidence_ ? enc_ : enclose_digits(evidence_digits); }

    Sign sign() const {
        if (evidence_) {
            int s = enc_.sign();
            return s == 2 ? Sign::undecided : static_cast<Sign>(s);
        }
        if (num_.is_zero()) return Sign::zero;
        if (!gen_) return static_cast<Sign>(sgn(num_.constant()));
        Rational w(1, Integer(1) << 16);
        while (true) {
            Interval v = enclose(w);
            if (v.lo > 0) return Sign::positive;
            if (v.hi < 0) return Sign::negative;
            w = w * w;
        }
    }

    // Integer part; certified for exact values, UNCERTIFIED when an evidence enclosure straddles an integer.
    Integer floor() const {
        if (evidence_) {
            Integer a = floor_q(enc_.lo), b = floor_q(enc_.hi);
            if (a != b) throw Error(Errc::uncertified, "floor of evidence value is ambiguous");
            return a;
        }
        if (!gen_) return floor_q(num_.constant());
        Rational w(1, Integer(1) << 16);
        while (true) {
            Interval v = enclose(w);
            Integer a = floor_q(v.lo), b = floor_q(v.hi);
            if (a == b && !is_integer(v.hi)) return a;
            w = w * w;
        }
    }

    double to_double() const {
        Interval v = evidence_ ? enc_ : enclose(Rational(1, Integer(1) << 64));
        return v.mid().get_d();
    }

    std::string exact_string() const {
        if (evidence_) return "~" + to_string(enc_, 20);
        if (!gen_) return to_exact_string(num_.constant());
        const std::string& var = gen_->label();
        if (den_.is_constant()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

    std::string decimal(int digits) const {
        if (evidence_) return to_decimal(enc_.mid(), digits);
        return to_decimal(enclose_digits(static_cast<unsigned long>(digits) + 2).mid(), digits);
    }

    // Coordinates in the Q-basis {1, theta, ..., theta^{N-1}} (algebraic) or of
    // the numerator after scaling by `common_den` (lacunary).
    std::vector<Rational> coordinates(const QPoly& common_den, std::size_t size) const {
        QPoly p = num_;
        if (gen_ && !gen_->algebraic()) p = p * common_den.divmod(den_).first;
        std::vector<Rational> out(size);
        for (std::size_t k = 0; k < size && k < p.size(); ++k) out[k] = p.coeff(k);
        if (p.size() > size) throw Error(Errc::invalid_input, "coordinate vector too short");
        return out;
    }

    static GenPtr common(const Real& a, const Real& b) {
        if (!a.gen_) return b.gen_;
        if (!b.gen_ || a.gen_ == b.gen_) return a.gen_;
        throw Error(Errc::mixed_field, a.gen_->label() + " and " + b.gen_->label() + " generate different fields");
    }

private:
    void normalize() {
        if (!gen_) {
            Rational v = num_.constant() / den_.constant();
            num_ = QPoly(v);
            den_ = QPoly(Rational(1));
            return;
        }
        if (gen_->algebraic()) {
            if (!den_.is_constant()) throw Error(Errc::invalid_input, "algebraic element with polynomial denominator");
            num_ = (1 / den_.constant()) * num_.mod(gen_->minpoly());
            den_ = QPoly(Rational(1));
        } else {
            if (num_.is_zero()) {
                den_ = QPoly(Rational(1));
            } else {
                QPoly g = gcd(num_, den_);
                if (!g.is_constant()) {
                    num_ = num_.divmod(g).first;
                    den_ = den_.divmod(g).first;
                }
                Rational lc = den_.leading();
                num_ = (1 / lc) * num_;
                den_ = (1 / lc) * den_;
            }
        }
        if (num_.is_constant() && den_.is_constant()) gen_ = nullptr;
    }

    GenPtr gen_;
    QPoly num_;
    QPoly den_;
    bool evidence_ = false;
    Interval enc_;
};

inline Sign cert_sign(const Real& x) { return x.sign(); }

// Coordinates of each value over Q, chosen so that a rational relation
// sum r_i x_i = 0 holds iff it holds between the coordinate vectors.
inline std::vector<std::vector<Rational>> basis_coordinates(const std::vector<Real>& xs) {
    GenPtr g;
    for (const auto& x : xs) {
        if (x.is_evidence()) throw Error(Errc::uncertified, "evidence values have no exact coordinates");
        if (x.gen()) {
            if (g && g != x.gen()) throw Error(Errc::mixed_field, "values from different fields");
            g = x.gen();
        }
    }
    QPoly common(Rational(1));
    std::size_t size = 1;
    if (g && g->algebraic()) {
        size = static_cast<std::size_t>(g->degree());
    } else if (g) {
        for (const auto& x : xs) {
            QPoly d = x.den();
            QPoly h = gcd(common, d);
            common = common * d.divmod(h).first;
        }
        for (const auto& x : xs) size = std::max(size, (x.num() * common.divmod(x.den()).first).size());
    }
    std::vector<std::vector<Rational>> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(x.coordinates(common, size));
    return out;
}

struct Complex {
    Real re;
    Real im;

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
    Complex(int v) : re(v) {}   // NOLINT(google-explicit-constructor)

    static Complex i() { return {Real(0), Real(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_evidence() const { return re.is_evidence() || im.is_evidence(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        if (a.im.is_zero() && b.im.is_zero()) return {a.re * b.re, Real(0)};
        if (a.im.is_zero()) return {a.re * b.re, a.re * b.im};
        if (b.im.is_zero()) return {a.re * b.re, a.im * b.re};
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) { return a * b.inverse(); }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }

    friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

    Complex conj() const { return {re, -im}; }
    Complex times_i() const { return {-im, re}; }
    Real abs2() const { return re * re + im * im; }

    Complex inverse() const {
        if (im.is_zero()) return {re.inverse(), Real(0)};
        Real n = abs2();
        if (n.is_evidence() && n.evidence_enclosure().contains_zero())
            throw Error(Errc::division_undecided, "cannot exclude a zero denominator");
        Real inv = n.inverse();
        return {re * inv, -im * inv};
    }

    std::string exact_string() const {
        if (im.is_zero()) return re.exact_string();
        std::string s = re.is_zero() ? "" : re.exact_string() + " + ";
        return s + "i*(" + im.exact_string() + ")";
    }
};

// Enclosure of |z| with width about w.
inline Interval abs_enclosure(const Complex& z, const Rational& w) {
    Interval a = square(z.re.enclose(w)) + square(z.im.enclose(w));
    return sqrt_enclosure(a, 128);
}

} // namespace torocoh
