#pragma once

#include <string>
#include <vector>

#include "torocoh/matrix.hpp"
#include "torocoh/real.hpp"
#include "torocoh/torus.hpp"

namespace torocoh {

// d on the generators e_1..e_n and s_1..s_m, possibly complex.
struct Homomorphism {
    CVector d_e;
    CVector d_s;

    bool is_real() const {
        for (const auto& v : d_e)
            if (!v.im.is_zero()) return false;
        for (const auto& v : d_s)
            if (!v.im.is_zero()) return false;
        return true;
    }
};

struct NormalizationCertificate {
    RVector k_e;                     // k(e_1..e_n)
    RVector k_s;                     // k(s_1..s_n)
    CVector ell;                     // ell(z) = sum ell_j z_j
    std::vector<Integer> integer_shift;  // subtracted from d(e_1..e_m) after the ell correction
};

struct NormalizedBundle {
    Homomorphism d;  // real, d(e_{m+j}) = 0
    NormalizationCertificate cert;
    bool trivial = false;
};

// Real form k on the basis e_1..e_n, s_1..s_n evaluated on a vector given by t-coordinates.
inline Real apply_k(const RVector& k_e, const RVector& k_s, const RVector& t) {
    std::size_t n = k_e.size();
    Real acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (!t[i].is_zero()) acc += t[i] * k_e[i];
        if (!t[n + i].is_zero()) acc += t[n + i] * k_s[i];
    }
    return acc;
}

inline RVector unit(std::size_t n, std::size_t i) {
    RVector v(n, Real(0));
    v[i] = Real(1);
    return v;
}

// t-coordinates of the complex vector x + i y.
inline RVector t_coords(const RealCoordFrame& f, const CVector& z) {
    RVector x(f.n), y(f.n);
    for (std::size_t i = 0; i < f.n; ++i) {
        x[i] = z[i].re;
        y[i] = z[i].im;
    }
    return z_to_t(f, x, y);
}

inline CVector s_column(const PeriodMatrix& P, std::size_t j) {
    CVector v(P.n);
    for (std::size_t i = 0; i < P.n; ++i) v[i] = j < P.m ? P.S(i, j) : Complex(Real(0), Real(i == j ? 1 : 0));
    return v;
}

inline Complex apply_ell(const CVector& ell, const CVector& z) {
    Complex acc;
    for (std::size_t i = 0; i < ell.size(); ++i)
        if (!z[i].is_zero()) acc += ell[i] * z[i];
    return acc;
}

// ell(v) = k(i v) + i k(v), computed on a complex vector v.
inline Complex ell_from_k(const RealCoordFrame& f, const RVector& k_e, const RVector& k_s, const CVector& v) {
    CVector iv(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) iv[i] = v[i].times_i();
    return {apply_k(k_e, k_s, t_coords(f, iv)), apply_k(k_e, k_s, t_coords(f, v))};
}

inline NormalizedBundle normalize(const Homomorphism& d, const PeriodMatrix& P, const RealCoordFrame& f) {
    const std::size_t n = P.n, m = P.m;
    if (d.d_e.size() != n || d.d_s.size() != m) throw Error(Errc::invalid_input, "d needs n values on e and m values on s");
    NormalizedBundle out;
    auto& c = out.cert;
    c.k_e.resize(n);
    c.k_s.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.k_e[i] = d.d_e[i].im;
    for (std::size_t l = 0; l < m; ++l) c.k_s[l] = d.d_s[l].im;
    for (std::size_t j = m; j < n; ++j) c.k_s[j] = d.d_e[j].re;

    c.ell.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        CVector e(n, Complex(0));
        e[i] = Complex(1);
        c.ell[i] = ell_from_k(f, c.k_e, c.k_s, e);
    }
    out.d.d_e.resize(n);
    out.d.d_s.resize(m);
    for (std::size_t i = 0; i < n; ++i) {
        CVector e(n, Complex(0));
        e[i] = Complex(1);
        out.d.d_e[i] = d.d_e[i] - apply_ell(c.ell, e);
    }
    for (std::size_t l = 0; l < m; ++l) out.d.d_s[l] = d.d_s[l] - apply_ell(c.ell, s_column(P, l));
    for (const auto& v : out.d.d_e)
        if (!v.im.is_zero() && !v.im.is_evidence()) throw Error(Errc::invalid_input, "normalization left an imaginary part");
    for (const auto& v : out.d.d_s)
        if (!v.im.is_zero() && !v.im.is_evidence()) throw Error(Errc::invalid_input, "normalization left an imaginary part");

    c.integer_shift.assign(m, Integer(0));
    for (std::size_t i = 0; i < m; ++i) {
        Integer fl = out.d.d_e[i].re.floor();
        c.integer_shift[i] = fl;
        if (fl != 0) out.d.d_e[i] = Complex(out.d.d_e[i].re - Real(Rational(fl)));
    }
    for (std::size_t j = m; j < n; ++j) out.d.d_e[j] = Complex(0);

    bool all_int = true;
    auto integral = [](const Complex& v) { return v.re.is_rational() && is_integer(v.re.rational_value()); };
    for (const auto& v : out.d.d_e) all_int = all_int && integral(v);
    for (const auto& v : out.d.d_s) all_int = all_int && integral(v);
    out.trivial = all_int;
    return out;
}

struct BundleInvariants {
    std::size_t n = 0, m = 0;
    RVector a_coeffs;     // a(t) = sum a_coeffs[k] t_k, length 2n
    CVector alpha;        // length m
    CVector beta_over_pi; // beta = pi * beta_over_pi = pi i conj(alpha)
    CVector dL;           // d(L) = i conj(alpha) C_1^{-1}
    bool trivial = false;
};

inline BundleInvariants invariants(const NormalizedBundle& nb, const PeriodMatrix& P, const RealCoordFrame& f) {
    const std::size_t n = P.n, m = P.m;
    BundleInvariants inv;
    inv.n = n;
    inv.m = m;
    RVector de(m), ds(m);
    for (std::size_t i = 0; i < m; ++i) {
        de[i] = nb.d.d_e[i].re;
        ds[i] = nb.d.d_s[i].re;
    }
    RVector deA = row_times(de, f.A1);
    RVector diff(m);
    for (std::size_t i = 0; i < m; ++i) diff[i] = ds[i] - deA[i];
    RVector dc = row_times(diff, f.C1);
    inv.alpha.resize(m);
    inv.beta_over_pi.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        inv.alpha[j] = Complex(de[j], -dc[j]);
        inv.beta_over_pi[j] = inv.alpha[j].conj().times_i();
    }
    CVector ia(m);
    for (std::size_t j = 0; j < m; ++j) ia[j] = inv.alpha[j].conj().times_i();
    inv.dL = row_times(ia, complexify(P.im_S1()));

    inv.a_coeffs.assign(2 * n, Real(0));
    for (std::size_t i = 0; i < m; ++i) {
        inv.a_coeffs[i] = -de[i];
        inv.a_coeffs[n + i] = -ds[i];
    }
    bool alpha_zero = true;
    for (const auto& a : inv.alpha) alpha_zero = alpha_zero && a.is_zero();
    inv.trivial = nb.trivial || alpha_zero;
    return inv;
}

inline Real summand(const BundleInvariants& inv, const RVector& t) {
    Real acc;
    for (std::size_t k = 0; k < inv.a_coeffs.size(); ++k)
        if (!inv.a_coeffs[k].is_zero()) acc += inv.a_coeffs[k] * t[k];
    return acc;
}

struct CocycleCheck {
    std::string generator;
    bool pass = false;
};

// a(t + gamma) + d(gamma) - a(t) = 0 for gamma in {e_1..e_n, s_1..s_m}.
inline std::vector<CocycleCheck> check_cocycle(const BundleInvariants& inv, const NormalizedBundle& nb) {
    std::vector<CocycleCheck> out;
    const std::size_t n = inv.n;
    for (std::size_t i = 0; i < n; ++i) {
        Real v = summand(inv, unit(2 * n, i)) + nb.d.d_e[i].re;
        out.push_back({"e" + std::to_string(i + 1), v.is_zero()});
    }
    for (std::size_t l = 0; l < inv.m; ++l) {
        Real v = summand(inv, unit(2 * n, n + l)) + nb.d.d_s[l].re;
        out.push_back({"s" + std::to_string(l + 1), v.is_zero()});
    }
    return out;
}

// Coefficients of Re(sum_j alpha_j z_j) on t_1..t_{2n}; equals -a(t).
inline RVector re_alpha_z_coeffs(const BundleInvariants& inv, const RealCoordFrame& f) {
    const std::size_t n = inv.n;
    RVector out(2 * n, Real(0));
    for (std::size_t j = 0; j < inv.m; ++j) {
        out[j] += inv.alpha[j].re;
        for (std::size_t k = 0; k < n; ++k) {
            Complex zjk(f.A(j, k), f.B(j, k));  // z_j = t_j + sum_k (A_jk + i B_jk) t_{n+k}
            out[n + k] += (inv.alpha[j] * zjk).re;
        }
    }
    return out;
}

} // namespace torocoh
