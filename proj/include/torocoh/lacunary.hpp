#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torocoh/huge.hpp"
#include "torocoh/interval.hpp"
#include "torocoh/rational.hpp"

namespace torocoh {

inline Integer factorial(unsigned long k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
}

// sum_{j>=1} 10^{-N_j} with a strictly increasing exponent sequence N_1 >= 1.
//   factorial_pow10 : N_j = 10^{j!}
//   supergap        : N_1 = 1, N_{j+1} = 10^{j * N_j}
//   custom          : a finite explicit list (the series is then a finite sum)
class LacunarySeries {
public:
    enum class Rule { factorial_pow10, supergap, custom };

    static LacunarySeries factorial_pow10() { return LacunarySeries(Rule::factorial_pow10, {}); }
    static LacunarySeries supergap() { return LacunarySeries(Rule::supergap, {}); }
    static LacunarySeries custom(std::vector<Integer> exponents) {
        if (exponents.empty()) throw Error(Errc::invalid_input, "custom lacunary series needs at least one exponent");
        if (exponents.front() < 1) throw Error(Errc::invalid_input, "lacunary exponents must start at N_1 >= 1");
        for (std::size_t i = 1; i < exponents.size(); ++i)
            if (!(exponents[i] > exponents[i - 1]))
                throw Error(Errc::invalid_input, "lacunary exponents must be strictly increasing");
        return LacunarySeries(Rule::custom, std::move(exponents));
    }

    Rule rule() const { return rule_; }
    bool finite() const { return rule_ == Rule::custom; }
    const std::vector<Integer>& custom_exponents() const { return custom_; }

    std::string rule_name() const {
        switch (rule_) {
        case Rule::factorial_pow10: return "factorial-pow10";
        case Rule::supergap: return "supergap";
        case Rule::custom: return "custom";
        }
        return "?";
    }

    // N_j, or nullopt past the end of a custom list.
    std::optional<HugeInt> exponent(unsigned long j) const {
        if (j == 0) throw Error(Errc::invalid_input, "lacunary exponents are indexed from 1");
        switch (rule_) {
        case Rule::factorial_pow10:
            return HugeInt::pow10(factorial(j));
        case Rule::supergap: {
            HugeInt n(1);
            for (unsigned long k = 1; k < j; ++k) {
                if (!n.fits(1000))
                    throw Error(Errc::exponent_overflow, "supergap exponent N_" + std::to_string(k + 1) + " is beyond reach");
                n = HugeInt::pow10(Integer(k) * n.to_integer(1000));
            }
            return n;
        }
        case Rule::custom:
            if (j > custom_.size()) return std::nullopt;
            return HugeInt(custom_[j - 1]);
        }
        return std::nullopt;
    }

    // Exact value when the series is a finite sum.
    Rational finite_value() const {
        if (!finite()) throw Error(Errc::invalid_input, "series is infinite");
        Rational s = 0;
        for (const auto& e : custom_) s += Rational(1, torocoh::pow10(e.get_ui()));
        return s;
    }

    // Enclosure of the value with width <= 10^{-digits}. Only terms with
    // N_j <= digits + 1 are summed; the rest is covered by the tail bound
    // sum_{j>k} 10^{-N_j} <= 2 * 10^{-N_{k+1}}.
    Interval enclose(unsigned long digits) const {
        Rational partial = 0;
        HugeInt limit(Integer(digits + 1));
        for (unsigned long j = 1;; ++j) {
            auto n = exponent(j);
            if (!n) return Interval(partial);  // finite series fully summed
            if (*n > limit) break;
            partial += Rational(1, torocoh::pow10(n->to_integer().get_ui()));
        }
        return {partial, partial + Rational(1, torocoh::pow10(digits))};
    }

    friend bool operator==(const LacunarySeries& a, const LacunarySeries& b) {
        return a.rule_ == b.rule_ && a.custom_ == b.custom_;
    }

private:
    LacunarySeries(Rule r, std::vector<Integer> custom) : rule_(r), custom_(std::move(custom)) {}

    Rule rule_;
    std::vector<Integer> custom_;
};

// Exponent of q_nu = 10^{E(nu)}.
//   factorial : E = nu! + 10^{nu!}   (q_nu = 10^{nu!} 10^{10^{nu!}})
//   series    : E = N_nu             (q_nu = 10^{N_nu}, the supergap construction)
//   fixed     : E given
struct QRule {
    enum class Kind { factorial, series, fixed };
    Kind kind = Kind::factorial;
    Integer fixed_exponent = 0;

    static QRule factorial() { return {Kind::factorial, 0}; }
    static QRule series() { return {Kind::series, 0}; }
    static QRule fixed(const Integer& e) { return {Kind::fixed, e}; }

    HugeInt exponent(const LacunarySeries& s, unsigned long nu) const {
        switch (kind) {
        case Kind::factorial: {
            Integer f = torocoh::factorial(nu);
            return HugeInt(f) + HugeInt::pow10(f);
        }
        case Kind::series: {
            auto n = s.exponent(nu);
            if (!n) throw Error(Errc::invalid_input, "series has no exponent N_" + std::to_string(nu));
            return *n;
        }
        case Kind::fixed:
            return HugeInt(fixed_exponent);
        }
        return {};
    }

    std::string name() const {
        switch (kind) {
        case Kind::factorial: return "q = 10^(nu! + 10^(nu!))";
        case Kind::series: return "q = 10^(N_nu)";
        case Kind::fixed: return "q = 10^" + fixed_exponent.get_str();
        }
        return "?";
    }
};

// |q s - p| for q = 10^E and p = q * sum_{j<=nu} 10^{-N_j}, bracketed as
// mantissa * 10^exponent with mantissa in [mantissa_lo, mantissa_hi].
struct GapEnclosure {
    unsigned long nu = 0;
    HugeInt q_exponent;         // E
    HugeInt p;                  // sum_{j<=nu} 10^{E - N_j}
    HugeInt exponent;           // E - N_{nu+1}
    Rational mantissa_lo = 1;
    Rational mantissa_hi = 2;

    // log10 |q s - p| in [exponent + log10 mantissa_lo, exponent + log10 mantissa_hi]
    std::string log10_string() const {
        std::string base = exponent.to_string();
        if (mantissa_lo == 1 && mantissa_hi == 2) return "[" + base + ", " + base + " + log10(2)]";
        if (mantissa_lo == 1 && mantissa_hi == 1) return "[" + base + ", " + base + "]";
        return "[" + base + " + log10(" + to_exact_string(mantissa_lo) + "), " + base + " + log10(" +
               to_exact_string(mantissa_hi) + ")]";
    }

    // -log10 |q s - p| as a Magnitude (valid when the gap is below 1).
    Magnitude depth(mpfr_prec_t bits = default_float_bits) const {
        if (exponent.sign() >= 0) throw Error(Errc::uncertified, "gap is not below 1");
        Magnitude base = Magnitude::of(-exponent, bits);
        BigFloat m_hi = Magnitude::of(mantissa_hi, bits).log10_hi();
        BigFloat m_lo = Magnitude::of(mantissa_lo, bits).log10_lo();
        return base.plus(neg(m_hi), neg(m_lo));
    }
};

inline GapEnclosure lacunary_gap(const LacunarySeries& s, unsigned long nu, const QRule& q_rule) {
    if (nu == 0) throw Error(Errc::invalid_input, "nu must be positive");
    GapEnclosure g;
    g.nu = nu;
    g.q_exponent = q_rule.exponent(s, nu);
    for (unsigned long j = 1; j <= nu; ++j) {
        auto n = s.exponent(j);
        if (!n) throw Error(Errc::invalid_input, "series has fewer than nu terms");
        HugeInt shift = g.q_exponent - *n;
        if (shift.sign() < 0)
            throw Error(Errc::non_integer_p, "p_" + std::to_string(nu) + " is not an integer: q exponent " +
                                                 g.q_exponent.to_string() + " < N_" + std::to_string(j) + " = " +
                                                 n->to_string());
        if (!shift.fits(1000000000))
            throw Error(Errc::exponent_overflow, "exponent of p too large to hold");
        g.p += HugeInt::pow10(shift.to_integer(1000000000));
    }
    auto next = s.exponent(nu + 1);
    if (!next) throw Error(Errc::invalid_input, "q*s - p vanishes: the series ends at term nu");
    g.exponent = g.q_exponent - *next;
    g.mantissa_lo = 1;
    g.mantissa_hi = (!s.finite() || s.exponent(nu + 2)) ? Rational(2) : Rational(1);
    return g;
}

} // namespace torocoh
