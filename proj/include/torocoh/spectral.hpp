#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torocoh/bundle.hpp"
#include "torocoh/matrix.hpp"
#include "torocoh/torus.hpp"

namespace torocoh {

// sigma = (sigma', sigma'', sigma''') with lengths m, n - m, m.
using Sigma = std::vector<long>;

inline long l1(const Sigma& s) {
    long acc = 0;
    for (long v : s) acc += v < 0 ? -v : v;
    return acc;
}

inline std::string to_string(const Sigma& s) {
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + ")";
}

// pi is carried symbolically: shifted(sigma) = K~_sigma + beta = pi * w(sigma)
// with w(sigma) = (K_sigma + d(L)) C_1.
class SpectralContext {
public:
    SpectralContext(PeriodMatrix P, RealCoordFrame f, BundleInvariants inv)
        : P_(std::move(P)), f_(std::move(f)), inv_(std::move(inv)), C1_(complexify(f_.C1)) {}

    const PeriodMatrix& group() const { return P_; }
    const RealCoordFrame& frame() const { return f_; }
    const BundleInvariants& bundle() const { return inv_; }
    std::size_t n() const { return P_.n; }
    std::size_t m() const { return P_.m; }
    std::size_t dim() const { return P_.n + P_.m; }

    long l1_prime(const Sigma& s) const {
        long acc = 0;
        for (std::size_t i = 0; i < n(); ++i) acc += s[i] < 0 ? -s[i] : s[i];
        return acc;
    }
    long l1_second(const Sigma& s) const {
        long acc = 0;
        for (std::size_t i = m(); i < n(); ++i) acc += s[i] < 0 ? -s[i] : s[i];
        return acc;
    }

    void check(const Sigma& s) const {
        if (s.size() != dim()) throw Error(Errc::invalid_input, "sigma must have n + m = " + std::to_string(dim()) + " entries");
    }

    // K_{sigma,k} = sum_l sigma_l s_{lk} - sigma_{n+k}
    CVector K(const Sigma& s) const {
        check(s);
        CVector out(m());
        for (std::size_t k = 0; k < m(); ++k) {
            Complex acc(Real(-s[n() + k]));
            for (std::size_t l = 0; l < n(); ++l)
                if (s[l] != 0) acc += Complex(Real(s[l])) * P_.S(l, k);
            out[k] = acc;
        }
        return out;
    }

    CVector KdL(const Sigma& s) const {
        CVector k = K(s);
        for (std::size_t j = 0; j < m(); ++j) k[j] += inv_.dL[j];
        return k;
    }

    // K~_sigma / pi = K_sigma C_1
    CVector K_tilde_over_pi(const Sigma& s) const { return row_times(K(s), C1_); }

    // (K~_sigma + beta) / pi
    CVector w(const Sigma& s) const { return row_times(KdL(s), C1_); }

    // Smallest j maximizing |K~_{sigma,j} + beta_j| (0-based).
    std::size_t pivot(const Sigma& s) const { return pivot_of(w(s)); }

    static std::size_t pivot_of(const CVector& wv) {
        std::size_t best = 0;
        Real best_abs = wv[0].abs2();
        for (std::size_t j = 1; j < wv.size(); ++j) {
            Real a = wv[j].abs2();
            Sign s = (a - best_abs).sign();
            if (s == Sign::undecided)
                throw Error(Errc::undecided_tie, "cannot separate |K~+beta| components " + std::to_string(best + 1) + " and " +
                                                     std::to_string(j + 1));
            if (s == Sign::positive) {
                best = j;
                best_abs = a;
            }
        }
        return best;
    }

    // Rational upper bound for M = sqrt(m) * pi * max column l1 norm of C_1.
    Rational operator_norm_bound() const {
        Rational best = 0;
        for (std::size_t k = 0; k < m(); ++k) {
            Rational col = 0;
            for (std::size_t j = 0; j < m(); ++j) {
                Interval e = f_.C1(j, k).enclose(Rational(1, 1000000));
                col += std::max(abs(e.lo), abs(e.hi));
            }
            best = std::max(best, col);
        }
        Rational sqrt_m = sqrt_enclosure(Interval(Rational(static_cast<long>(m()))), 64).hi;
        return sqrt_m * Rational(355, 113) * best;
    }

private:
    PeriodMatrix P_;
    RealCoordFrame f_;
    BundleInvariants inv_;
    CMatrix C1_;
};

struct SpectralShift {
    CVector K;
    CVector K_tilde_over_pi;
    CVector shifted_over_pi;  // (K~_sigma + beta) / pi
    std::size_t pivot = 0;    // 1-based
};

inline SpectralShift k_sigma(const SpectralContext& ctx, const Sigma& s) {
    SpectralShift out;
    out.K = ctx.K(s);
    out.K_tilde_over_pi = ctx.K_tilde_over_pi(s);
    out.shifted_over_pi = ctx.w(s);
    out.pivot = SpectralContext::pivot_of(out.shifted_over_pi) + 1;
    return out;
}

inline Real norm2(const CVector& v) {
    Real acc;
    for (const auto& z : v) acc += z.abs2();
    return acc;
}

inline Interval norm_enclosure(const CVector& v, const Rational& w = Rational(1, Integer(1) << 80)) {
    Interval a(Rational(0));
    for (const auto& z : v) a = a + square(z.re.enclose(w)) + square(z.im.enclose(w));
    return sqrt_enclosure(a, 128);
}

struct ZSet {
    bool has_sigma0 = false;
    Sigma sigma0;
    bool certified = true;
    std::string residual;  // exact residual K_{sigma0} + d(L), or its enclosure
    std::string method;

    bool contains(const Sigma& s) const { return !(has_sigma0 && s == sigma0); }
};

// Solves K_sigma + d(L) = 0 exactly as 2m rational linear equations.
inline ZSet find_sigma0(const SpectralContext& ctx) {
    const std::size_t n = ctx.n(), m = ctx.m(), cols = n + m;
    const auto& S = ctx.group().S;
    const auto& dL = ctx.bundle().dL;
    ZSet z;
    bool evidence = ctx.group().has_evidence();
    for (const auto& v : dL) evidence = evidence || v.is_evidence();

    // unknown sigma; per component k: sum_l sigma_l Re s_lk - sigma_{n+k} = -Re dL_k, sum_l sigma_l Im s_lk = -Im dL_k
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    if (!evidence) {
        std::vector<Real> vals;
        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t l = 0; l < n; ++l) vals.push_back(S(l, k).re);
            for (std::size_t l = 0; l < n; ++l) vals.push_back(S(l, k).im);
            vals.push_back(dL[k].re);
            vals.push_back(dL[k].im);
        }
        vals.emplace_back(1);
        auto coords = basis_coordinates(vals);
        const std::size_t dim = coords.front().size(), per = 2 * n + 2;
        const auto& one = coords.back();
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t b = 0; b < dim; ++b) {
                std::vector<Rational> re(cols), im(cols);
                for (std::size_t l = 0; l < n; ++l) {
                    re[l] = coords[k * per + l][b];
                    im[l] = coords[k * per + n + l][b];
                }
                re[n + k] = -one[b];
                rows.push_back(re);
                rhs.push_back(-coords[k * per + 2 * n][b]);
                rows.push_back(im);
                rhs.push_back(-coords[k * per + 2 * n + 1][b]);
            }
        z.method = "exact rational solve over a Q-basis of the scalar field";
    } else {
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<Rational> re(cols), im(cols);
            for (std::size_t l = 0; l < n; ++l) {
                re[l] = S(l, k).re.to_interval().mid();
                im[l] = S(l, k).im.to_interval().mid();
            }
            re[n + k] = -1;
            rows.push_back(re);
            rhs.push_back(-dL[k].re.to_interval().mid());
            rows.push_back(im);
            rhs.push_back(-dL[k].im.to_interval().mid());
        }
        z.certified = false;
        z.method = "midpoint solve of evidence data; candidate only";
    }
    std::optional<std::vector<Rational>> sol;
    try {
        sol = solve_unique(rows, rhs, cols);
    } catch (const Error&) {
        if (!evidence) throw Error(Errc::precondition, "K_sigma + d(L) = 0 has a rational solution family; (IS) fails");
        sol = std::nullopt;
    }
    if (!sol) {
        z.residual = "no rational solution";
        return z;
    }
    Sigma cand(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        Rational v = (*sol)[i];
        if (!evidence && !is_integer(v)) {
            z.residual = "rational solution " + to_exact_string(v) + " in slot " + std::to_string(i + 1) + " is not an integer";
            return z;
        }
        Integer r = floor_q(v + Rational(1, 2));
        if (!r.fits_slong_p()) throw Error(Errc::invalid_input, "sigma0 does not fit a machine integer");
        cand[i] = r.get_si();
    }
    CVector res = ctx.KdL(cand);
    if (!evidence) {
        for (const auto& v : res)
            if (!v.is_zero()) throw Error(Errc::invalid_input, "sigma0 residual is not zero");
        z.residual = "0";
    } else {
        z.residual = to_string(norm_enclosure(res), 20);
    }
    z.has_sigma0 = true;
    z.sigma0 = cand;
    return z;
}

struct M0Result {
    Real m0_squared;
    Interval m0;
    std::vector<long> argmin;  // sigma'''
};

inline M0Result m0(const SpectralContext& ctx, const ZSet& Z) {
    const std::size_t n = ctx.n(), m = ctx.m();
    const auto& dL = ctx.bundle().dL;
    bool exclude = Z.has_sigma0;
    for (std::size_t i = 0; i < n && exclude; ++i) exclude = Z.sigma0[i] == 0;
    std::vector<std::vector<long>> cand(m);
    for (std::size_t k = 0; k < m; ++k) {
        Integer f = dL[k].re.floor();
        long lo = f.get_si() - (exclude ? 1 : 0), hi = f.get_si() + 1 + (exclude ? 1 : 0);
        for (long v = lo; v <= hi; ++v) cand[k].push_back(v);
    }
    M0Result best;
    bool have = false;
    std::vector<long> cur(m);
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == m) {
            Sigma s(n + m, 0);
            for (std::size_t j = 0; j < m; ++j) s[n + j] = cur[j];
            if (!Z.contains(s)) return;
            Real v;
            for (std::size_t j = 0; j < m; ++j) v += (dL[j] - Complex(Real(cur[j]))).abs2();
            if (!have || (v - best.m0_squared).sign() == Sign::negative) {
                best.m0_squared = v;
                best.argmin = cur;
                have = true;
            }
            return;
        }
        for (long v : cand[k]) {
            cur[k] = v;
            rec(k + 1);
        }
    };
    rec(0);
    Interval sq = best.m0_squared.enclose(Rational(1, Integer(1) << 100));
    best.m0 = sqrt_enclosure(sq, 100);
    return best;
}

} // namespace torocoh
