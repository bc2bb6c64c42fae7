#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <random>

#include <mpfr.h>

#include "torocoh/torocoh.hpp"

namespace support {

using namespace torocoh;

inline Real sqrt_of(long D) { return ScalarDescriptor::sqrt(D).to_real(); }

inline Analysis make(std::size_t n, std::size_t m, CMatrix S, CVector d_e, CVector d_s) {
    return Analysis(PeriodMatrix(n, m, std::move(S)), Homomorphism{std::move(d_e), std::move(d_s)});
}

// S = (i s11; s21) with d(e) = 0 and d(s_1) = ds.
inline Analysis plane(const Complex& s11, const Complex& s21, const Complex& ds) {
    CMatrix S(2, 1);
    S(0, 0) = s11;
    S(1, 0) = s21;
    return make(2, 1, S, {Complex(0), Complex(0)}, {ds});
}

inline Analysis example_1() {
    return plane(Complex(Real(0), sqrt_of(2)), Complex(Real(0), Real(1)), Complex(Real(Rational(1, 2))));
}

inline Analysis example_2() { return plane(Complex(Real(0), Real(1)), Complex(sqrt_of(2)), Complex(sqrt_of(2))); }

inline Analysis lacunary_example(const LacunarySeries& s) {
    Real l = ScalarDescriptor::lacunary(s).to_real();
    return plane(Complex(Real(0), Real(1)), Complex(l), Complex(l));
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}
    long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen); }
    Rational rational(long span = 5, long den = 4) { return make_rational(Integer(uniform(-span, span)), Integer(uniform(1, den))); }
    // a + b sqrt(D), irrational part with probability 1/2
    Real field(long D) {
        Rational a = rational();
        if (!coin()) return Real(a);
        Rational b = rational();
        if (b == 0) b = 1;
        return ScalarDescriptor::quadratic(a, b, D).to_real();
    }
    Complex complex_rational() { return Complex(Real(rational()), Real(rational())); }
};

// Random nontrivial instance over Q(sqrt D); redraws until the frame is invertible
// and sigma0 is well defined (the group is toroidal).
inline Analysis random_analysis(Rng& rng, std::size_t n, std::size_t m, long D) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        CMatrix S(n, m);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) S(i, j) = Complex(rng.field(D), rng.field(D));
        CVector d_e(n), d_s(m);
        for (auto& v : d_e) v = Complex(rng.coin(0.3) ? rng.field(D) : Real(0));
        for (auto& v : d_s) v = Complex(rng.field(D));
        try {
            Analysis an = make(n, m, S, d_e, d_s);
            if (an.inv.trivial) continue;
            find_sigma0(*an.ctx);
            return an;
        } catch (const Error&) {
        }
    }
    throw Error(Errc::invalid_input, "no random instance found");
}

inline Sigma random_sigma(Rng& rng, std::size_t dim, long span) {
    Sigma s(dim);
    for (auto& v : s) v = rng.uniform(-span, span);
    return s;
}

// Test-side K_sigma straight from the definition.
inline CVector K_direct(const PeriodMatrix& P, const Sigma& s) {
    CVector out(P.m);
    for (std::size_t k = 0; k < P.m; ++k) {
        Complex acc(Real(-s[P.n + k]));
        for (std::size_t l = 0; l < P.n; ++l) acc = acc + Complex(Real(s[l])) * P.S(l, k);
        out[k] = acc;
    }
    return out;
}

inline std::complex<double> to_c(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

// MPFR helpers with directed rounding, independent of the library's float wrapper.
struct Mp {
    mpfr_t v;
    Mp() { mpfr_init2(v, 256); }
    ~Mp() { mpfr_clear(v); }
    Mp(const Mp&) = delete;
    Mp& operator=(const Mp&) = delete;
};

inline void set_q(mpfr_t out, const Rational& q, mpfr_rnd_t rnd) { mpfr_set_q(out, q.get_mpq_t(), rnd); }


// Random (0,p)-form with up to max_modes modes, skipping sigma0.
inline FourierForm random_form(Rng& rng, const SpectralContext& ctx, const ZSet& Z, int p, int max_modes, long span = 6) {
    FourierForm f;
    f.p = p;
    f.m = static_cast<int>(ctx.m());
    int count = static_cast<int>(rng.uniform(1, max_modes));
    auto idx = multi_indices(f.m, p);
    for (int k = 0; k < count; ++k) {
        Sigma s = random_sigma(rng, ctx.dim(), span);
        if (!Z.contains(s)) continue;
        for (const auto& I : idx)
            if (rng.coin(0.7)) f.add(s, I, rng.complex_rational());
    }
    f.prune();
    return f;
}

// Per-mode equality, each coefficient difference a certified zero.
inline bool forms_equal(const FourierForm& a, const FourierForm& b) {
    if (a.pi_power != b.pi_power && !(a.modes.empty() && b.modes.empty())) return false;
    auto check = [](const FourierForm& x, const FourierForm& y) {
        for (const auto& [s, cs] : x.modes)
            for (const auto& [I, v] : cs)
                if (!(v - y.at(s, I)).is_zero()) return false;
        return true;
    };
    return check(a, b) && check(b, a);
}

// Largest per-mode deviation relative to the mode's largest coefficient.
inline double relative_deviation(const NumericForm& a, const NumericForm& b) {
    double worst = 0;
    auto scan = [&](const NumericForm& x, const NumericForm& y) {
        for (const auto& [s, cs] : x.modes) {
            double scale = 0;
            for (const auto& [I, v] : cs) scale = std::max(scale, std::abs(v));
            for (const auto& [I, v] : cs) worst = std::max(worst, std::abs(v - y.at(s, I)) / std::max(scale, 1e-300));
        }
    };
    scan(a, b);
    scan(b, a);
    return worst;
}

} // namespace support
