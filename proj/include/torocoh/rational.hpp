#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include "torocoh/errors.hpp"

namespace torocoh {

using Integer = mpz_class;
using Rational = mpq_class;

inline Integer pow10(unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

inline Integer floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_q(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(Errc::invalid_input, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Accepts "3", "-3/4", "1.25", "1e-7", "-2.5E3".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw Error(Errc::invalid_input, "empty rational literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw Error(Errc::invalid_input, "bad rational literal '" + s + "'");
        return make_rational(num, den);
    }

    long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        try {
            exp10 = std::stol(s.substr(e + 1));
        } catch (const std::exception&) {
            throw Error(Errc::invalid_input, "bad exponent in '" + s + "'");
        }
        s = s.substr(0, e);
    }
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s = s.substr(1);
    }
    std::string digits;
    long frac_len = 0;
    bool seen_dot = false;
    for (char c : s) {
        if (c == '.') {
            if (seen_dot) throw Error(Errc::invalid_input, "bad decimal literal");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_dot) ++frac_len;
        } else {
            throw Error(Errc::invalid_input, std::string("bad character in numeric literal: ") + c);
        }
    }
    if (digits.empty()) throw Error(Errc::invalid_input, "numeric literal without digits");
    Integer num(digits, 10);
    if (negative) num = -num;
    long scale = exp10 - frac_len;
    Rational q(num);
    if (scale >= 0)
        q *= Rational(pow10(static_cast<unsigned long>(scale)));
    else
        q /= Rational(pow10(static_cast<unsigned long>(-scale)));
    q.canonicalize();
    return q;
}

inline std::string to_exact_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Fixed-point rendering rounded to nearest at `digits` fractional digits.
inline std::string to_decimal(const Rational& q, int digits) {
    Rational scaled = abs(q) * Rational(pow10(static_cast<unsigned long>(digits)));
    Integer r = floor_q(scaled + Rational(1, 2));
    std::string body = r.get_str();
    if (digits > 0) {
        if (static_cast<int>(body.size()) <= digits)
            body = std::string(static_cast<std::size_t>(digits) + 1 - body.size(), '0') + body;
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
        while (body.back() == '0') body.pop_back();
        if (body.back() == '.') body.pop_back();
    }
    bool zero = r == 0;
    return (q < 0 && !zero ? "-" : "") + body;
}

inline std::size_t decimal_digits(const Integer& z) {
    return z == 0 ? 1 : Integer(abs(z)).get_str().size();
}

} // namespace torocoh
