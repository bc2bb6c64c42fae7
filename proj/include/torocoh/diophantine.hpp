#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "torocoh/bigfloat.hpp"
#include "torocoh/huge.hpp"
#include "torocoh/lacunary.hpp"
#include "torocoh/scalars.hpp"
#include "torocoh/spectral.hpp"
#include "torocoh/status.hpp"

namespace torocoh {

enum class Condition { HS, HS_prime, HS_double_prime };

inline const char* to_string(Condition c) {
    switch (c) {
    case Condition::HS: return "HS";
    case Condition::HS_prime: return "HS'";
    case Condition::HS_double_prime: return "HS''";
    }
    return "?";
}

// r = e^x + y with rational x, y.
struct ExpForm {
    Rational x;
    Rational y;

    std::string to_string() const {
        std::string s = "e^(" + to_exact_string(x) + ")";
        if (y != 0) s += " + " + to_exact_string(y);
        return s;
    }
    BigFloat lower() const {
        return add(exp(BigFloat::from(x, MPFR_RNDD), MPFR_RNDD), BigFloat::from(y, MPFR_RNDD), MPFR_RNDD);
    }
    BigFloat upper() const {
        return add(exp(BigFloat::from(x, MPFR_RNDU), MPFR_RNDU), BigFloat::from(y, MPFR_RNDU), MPFR_RNDU);
    }
};

struct GapRecord {
    long shell = 0;
    Sigma sigma;
    Interval gap;          // enclosure of ||K_sigma + d(L)||
    std::string log10_lo;  // log10 enclosure of the gap
    std::string log10_hi;
};

// One nu of a refutation family sigma(nu) = u + q_nu v + p_nu w.
struct RefuteRecord {
    unsigned long nu = 0;
    std::string sigma;           // symbolic sigma(nu)
    std::string q;               // q_nu
    std::string gap_log10;       // log10 |q_nu theta - p_nu|
    Magnitude lhs_depth;         // -log10 ||K + d(L)||
    Magnitude rhs_depth;         // -log10 ((1/nu) exp(-nu |sigma''|))
    Sign verdict = Sign::undecided;  // negative: inequality fails, positive: holds
    // printed form |q theta - p| <= C exp(-q^2)
    Magnitude printed_rhs_depth;
    Sign printed_verdict = Sign::undecided;
    std::string log10_C_needed;
    HugeInt sigma_second;        // |sigma(nu)''|
    Magnitude gap_depth;         // -log10 |q theta - p|
};

struct ConditionReport {
    Condition condition = Condition::HS_prime;
    Status status = Status::unknown;
    std::optional<Rational> C;
    std::optional<Rational> a;
    std::optional<ExpForm> r;
    std::string operation;
    std::vector<std::string> provenance;
    std::vector<RefuteRecord> witnesses;
    std::vector<GapRecord> shells;
    long scan_radius = 0;
    std::optional<double> slope;         // least squares slope of ln(min gap) per shell
    std::optional<double> loglog_slope;  // slope of ln(-ln(min gap)) per shell
};

namespace detail {

inline Rational upper_abs(const Real& v) {
    Interval e = v.enclose(Rational(1, Integer(1) << 40));
    return std::max(Rational(abs(e.lo)), Rational(abs(e.hi)));
}

// Outward rounding to a short decimal.
inline Rational round_up(const Rational& v, unsigned long digits = 12) {
    Integer s = torocoh::pow10(digits);
    return make_rational(ceil_q(v * Rational(s)), s);
}
inline Rational round_down(const Rational& v, unsigned long digits = 12) {
    Integer s = torocoh::pow10(digits);
    return make_rational(floor_q(v * Rational(s)), s);
}
// Rounds a positive value down, adding digits until the result stays positive.
inline Rational round_down_positive(const Rational& v, unsigned long digits = 15) {
    Rational r = round_down(v, digits);
    while (sgn(r) <= 0 && digits < 100000) r = round_down(v, digits *= 2);
    return sgn(r) > 0 ? r : v;
}

inline Rational log_upper(const Rational& v) { return round_up(log(BigFloat::from(v, MPFR_RNDU), MPFR_RNDU).to_rational()); }
inline Rational log_lower(const Rational& v) { return round_down(log(BigFloat::from(v, MPFR_RNDD), MPFR_RNDD).to_rational()); }

// Rational upper bound of e^{-x}, lower bound variant.
inline Rational exp_neg_lower(const Rational& x) { return exp(BigFloat::from(Rational(-x), MPFR_RNDD), MPFR_RNDD).to_rational(); }

inline GenPtr field_generator(const SpectralContext& ctx) {
    GenPtr g;
    auto take = [&g](const Real& v) {
        if (!v.gen()) return;
        if (g && g != v.gen()) throw Error(Errc::mixed_field, g->label() + " and " + v.gen()->label() + " generate different fields");
        g = v.gen();
    };
    const auto& S = ctx.group().S;
    for (std::size_t i = 0; i < ctx.n(); ++i)
        for (std::size_t k = 0; k < ctx.m(); ++k) {
            take(S(i, k).re);
            take(S(i, k).im);
        }
    for (const auto& v : ctx.bundle().dL) {
        take(v.re);
        take(v.im);
    }
    return g;
}

inline bool any_evidence(const SpectralContext& ctx) {
    if (ctx.group().has_evidence()) return true;
    for (const auto& v : ctx.bundle().dL)
        if (v.is_evidence()) return true;
    return false;
}

// Affine real components of K_sigma + d(L): value = c0 + sum_i sigma_i c[i].
struct AffineComponent {
    Real c0;
    std::vector<Real> c;
};

inline std::vector<AffineComponent> affine_components(const SpectralContext& ctx) {
    const std::size_t n = ctx.n(), m = ctx.m();
    std::vector<AffineComponent> out;
    for (std::size_t k = 0; k < m; ++k) {
        AffineComponent re, im;
        re.c.assign(n + m, Real(0));
        im.c.assign(n + m, Real(0));
        for (std::size_t l = 0; l < n; ++l) {
            re.c[l] = ctx.group().S(l, k).re;
            im.c[l] = ctx.group().S(l, k).im;
        }
        re.c[n + k] = Real(-1);
        re.c0 = ctx.bundle().dL[k].re;
        im.c0 = ctx.bundle().dL[k].im;
        out.push_back(std::move(re));
        out.push_back(std::move(im));
    }
    return out;
}

} // namespace detail

// Certified lower bound ||K_sigma + d(L)|| >= C exp(-a |(sigma', sigma'')|) when
// all data lie in Q(theta) for one algebraic theta of degree N. Each real
// component is P(theta)/D with P an integer polynomial of degree < N whose
// theta^k coefficients (k >= 1) depend only on (sigma', sigma''); the norm of
// P(theta) is a nonzero integer over lc(f)^{N-1}, which bounds |P(theta)| from below.
inline ConditionReport certify(const SpectralContext& ctx, const ZSet& Z, Status is_status) {
    ConditionReport rep;
    rep.condition = Condition::HS_prime;
    rep.operation = "certify";
    if (is_status == Status::certified_fails) {
        rep.provenance.push_back("(IS) certified_fails: precondition not met");
        return rep;
    }
    if (detail::any_evidence(ctx) || !Z.certified) {
        rep.provenance.push_back("evidence-grade data cannot be certified");
        return rep;
    }
    GenPtr g = detail::field_generator(ctx);
    if (!g || !g->algebraic()) {
        rep.provenance.push_back(g ? "field generator is not algebraic" : "all data rational");
        return rep;
    }
    const std::size_t n = ctx.n(), m = ctx.m(), N = static_cast<std::size_t>(g->degree());
    std::vector<Integer> f = g->integer_minpoly();
    Rational lc = Rational(abs(f.back()));
    Rational M = cauchy_root_bound(f);
    std::vector<Rational> Mpow(N, Rational(1));
    for (std::size_t k = 1; k < N; ++k) Mpow[k] = Mpow[k - 1] * M;

    auto comps = detail::affine_components(ctx);
    Rational C_best;
    bool have = false;
    std::size_t used = 0;
    for (const auto& comp : comps) {
        std::vector<Real> vals{comp.c0};
        vals.insert(vals.end(), comp.c.begin(), comp.c.end());
        bool all_zero = true;
        for (const auto& v : vals) all_zero = all_zero && v.is_zero();
        if (all_zero) continue;
        auto coords = basis_coordinates(vals);
        for (auto& cv : coords) cv.resize(N, Rational(0));
        Integer D = 1;
        for (const auto& cv : coords)
            for (const auto& x : cv) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
        // theta^k coefficient of D*P: D*(c0[k] + sum_i sigma_i c_i[k]); only i < n matter for k >= 1
        Rational H0 = 1, H1 = 0;
        for (std::size_t k = 1; k < N; ++k) {
            Rational A = Rational(D) * abs(coords[0][k]);
            Rational B = 0;
            for (std::size_t i = 0; i < n + m; ++i) {
                Rational v = Rational(D) * abs(coords[1 + i][k]);
                if (i >= n && v != 0) throw Error(Errc::invalid_input, "sigma''' enters an irrational coordinate");
                B = std::max(B, v);
            }
            H0 += A * 2 * Mpow[k];
            H1 += B * 2 * Mpow[k];
        }
        Rational base = lc * (H0 + H1), pw = 1;
        for (std::size_t k = 0; k + 1 < N; ++k) pw *= base;
        Rational Cc = 1 / (pw * Rational(D));
        if (!have || Cc < C_best) C_best = Cc;
        have = true;
        ++used;
    }
    if (!have) {
        rep.provenance.push_back("K_sigma + d(L) vanishes identically");
        return rep;
    }
    rep.status = Status::certified_holds;
    rep.C = C_best;
    rep.a = Rational(static_cast<long>(N - 1));
    rep.provenance.push_back("generator " + g->label() + " with minimal polynomial " + QPoly(std::vector<Rational>(f.begin(), f.end())).to_string() +
                             ", degree N = " + std::to_string(N));
    rep.provenance.push_back("conjugate bound M = " + to_exact_string(M) + " (Cauchy)");
    rep.provenance.push_back("norm bound |P(theta)| >= 1/(|lc| (H0 + H1 |(sigma',sigma'')|))^(N-1) over " +
                             std::to_string(used) + " real components, relaxed with rho <= e^(rho-1)");
    (void)Z;
    return rep;
}

struct FrameGammas {
    Rational gamma1;        // upper bound of max |s_jl|
    Rational gamma2;        // lower bound of 1 / sum |C_1 entries|
    Rational gamma1_prime;  // (1 + ||d(L)||) / gamma2
    Rational gamma2_prime;  // gamma1 / gamma2
};

inline FrameGammas frame_gammas(const SpectralContext& ctx) {
    FrameGammas g;
    g.gamma1 = 0;
    for (std::size_t j = 0; j < ctx.n(); ++j)
        for (std::size_t l = 0; l < ctx.m(); ++l) {
            Interval a = abs_enclosure(ctx.group().S(j, l), Rational(1, Integer(1) << 60));
            g.gamma1 = std::max(g.gamma1, a.hi);
        }
    Rational sum = 0;
    for (std::size_t i = 0; i < ctx.m(); ++i)
        for (std::size_t j = 0; j < ctx.m(); ++j) sum += detail::upper_abs(ctx.frame().C1(i, j));
    g.gamma1 = detail::round_up(g.gamma1);
    sum = detail::round_up(sum);
    g.gamma2 = 1 / sum;
    Rational dl = detail::round_up(norm_enclosure(ctx.bundle().dL).hi);
    g.gamma1_prime = (1 + dl) * sum;
    g.gamma2_prime = g.gamma1 * sum;
    return g;
}

// Conversions between the three forms of the condition.
inline ConditionReport convert_constants(const ConditionReport& src, Condition target, const SpectralContext& ctx) {
    if (src.status != Status::certified_holds) throw Error(Errc::precondition, "conversion needs a certified_holds report");
    ConditionReport out = src;
    out.operation = "convert_constants(" + std::string(to_string(src.condition)) + " -> " + to_string(target) + ")";
    out.witnesses.clear();
    out.shells.clear();
    if (src.condition == target) return out;

    auto to_prime = [&](const ConditionReport& r) -> ConditionReport {
        ConditionReport o = r;
        if (r.condition == Condition::HS) {
            // r >= 1 is enforced by the exp form with x, y >= 0
            ExpForm e = *r.r;
            if (e.x < 0) e.x = 0;
            if (e.y < 0) e.y = 0;
            o.C = Rational(1);
            o.a = e.y == 0 ? e.x : detail::log_upper(e.upper().to_rational());
            o.r.reset();
            o.provenance.push_back("HS -> HS': C = 1, a = log r");
        } else {
            o.provenance.push_back("HS'' -> HS': same constants (exp(-a|(s',s'')|) <= exp(-a|s''|))");
        }
        o.condition = Condition::HS_prime;
        return o;
    };

    ConditionReport prime = src.condition == Condition::HS_prime ? src : to_prime(src);
    prime.operation = out.operation;
    if (target == Condition::HS_prime) return prime;

    if (target == Condition::HS) {
        Rational x = std::max(Rational(*prime.a - detail::log_lower(*prime.C)), *prime.a);
        out = prime;
        out.condition = Condition::HS;
        out.r = ExpForm{x, Rational(1)};
        out.C.reset();
        out.a.reset();
        out.provenance.push_back("HS' -> HS: log r > max{a - log C, a}, r = e^x + 1 with x = " + to_exact_string(x));
        return out;
    }

    FrameGammas g = frame_gammas(ctx);
    out = prime;
    out.condition = Condition::HS_double_prime;
    Rational factor = detail::exp_neg_lower(*prime.a * g.gamma1_prime);
    out.C = std::min(Rational(1), detail::round_down_positive(*prime.C * factor));
    out.a = detail::round_up(*prime.a * (1 + g.gamma2_prime));
    out.provenance.push_back("HS' -> HS'': gamma1 = " + to_decimal(g.gamma1, 12) + ", gamma2 = " + to_decimal(g.gamma2, 12) +
                             ", gamma1' = " + to_decimal(g.gamma1_prime, 12) + ", gamma2' = " + to_decimal(g.gamma2_prime, 12));
    return out;
}

// Every integer vector of length dim with l1 norm exactly rho.
inline void for_each_l1_shell(std::size_t dim, long rho, const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> cur(dim, 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i + 1 == dim) {
            cur[i] = left;
            fn(cur);
            if (left != 0) {
                cur[i] = -left;
                fn(cur);
            }
            cur[i] = 0;
            return;
        }
        for (long v = -left; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - (v < 0 ? -v : v));
        }
        cur[i] = 0;
    };
    if (dim == 0) return;
    rec(0, rho);
}

// Visits every sigma in Z with |(sigma', sigma'')| = rho and sigma''' among the
// nearest integers (plus neighbors) to Re((sigma',sigma'') S + d(L)); the
// callback receives sigma and an enclosure of ||K_sigma + d(L)||^2.
inline void for_each_scan_candidate(const SpectralContext& ctx, const ZSet& Z, long rho,
                                    const std::function<void(const Sigma&, const Interval&)>& fn) {
    const std::size_t n = ctx.n(), m = ctx.m();
    for_each_l1_shell(n, rho, [&](const std::vector<long>& head) {
        Sigma s(n + m, 0);
        for (std::size_t i = 0; i < n; ++i) s[i] = head[i];
        CVector v = ctx.KdL(s);  // sigma''' = 0
        Rational w(1, Integer(1) << 200);
        std::vector<Interval> re(m), im2(m);
        std::vector<std::vector<long>> cand(m);
        for (std::size_t k = 0; k < m; ++k) {
            re[k] = v[k].re.enclose(w);
            im2[k] = square(v[k].im.enclose(w));
            long c = floor_q(re[k].mid() + Rational(1, 2)).get_si();
            cand[k] = {c - 1, c, c + 1};
        }
        std::vector<long> cur(m);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == m) {
                for (std::size_t j = 0; j < m; ++j) s[n + j] = cur[j];
                if (!Z.contains(s)) return;
                Interval g2(Rational(0));
                for (std::size_t j = 0; j < m; ++j) g2 = g2 + square(re[j] - Interval(Rational(cur[j]))) + im2[j];
                if (g2.lo <= 0) {
                    // refine with the exact value
                    CVector e = ctx.KdL(s);
                    Rational ww = w;
                    do {
                        ww = ww * ww;
                        g2 = Interval(Rational(0));
                        for (const auto& z : e) g2 = g2 + square(z.re.enclose(ww)) + square(z.im.enclose(ww));
                    } while (g2.lo <= 0 && ww > Rational(1, Integer(1) << 20000));
                }
                fn(s, g2);
                return;
            }
            for (long c : cand[k]) {
                cur[k] = c;
                rec(k + 1);
            }
        };
        rec(0);
    });
}

inline std::string log10_string(const Rational& v, mpfr_rnd_t rnd) {
    if (v <= 0) return "-inf";
    return log10(BigFloat::from(v, rnd, 128), rnd).str(10);
}

// Witness shell of the first refutation candidate for a lacunary generator.
inline std::optional<HugeInt> lacunary_first_shell(const Generator& g) {
    const auto& s = g.series();
    QRule rule = s.rule() == LacunarySeries::Rule::factorial_pow10 ? QRule::factorial() : QRule::series();
    return HugeInt::pow10(rule.exponent(s, 1).to_integer(1000)) + HugeInt(1);
}

inline ConditionReport scan(const SpectralContext& ctx, const ZSet& Z, long R) {
    if (R < 1) throw Error(Errc::invalid_input, "scan radius must be >= 1");
    ConditionReport rep;
    rep.condition = Condition::HS;
    rep.operation = "scan(R=" + std::to_string(R) + ")";
    rep.scan_radius = R;
    for (long rho = 1; rho <= R; ++rho) {
        GapRecord best;
        bool have = false;
        Rational min_lo, min_hi;
        for_each_scan_candidate(ctx, Z, rho, [&](const Sigma& s, const Interval& g2) {
            if (!have || g2.lo < min_lo) min_lo = g2.lo;
            if (!have || g2.hi < min_hi) {
                min_hi = g2.hi;
                best.sigma = s;
            }
            have = true;
        });
        if (!have) continue;
        best.shell = rho;
        Interval sq(min_lo, std::max(min_lo, min_hi));
        best.gap = sqrt_enclosure(sq, 200);
        best.log10_lo = log10_string(best.gap.lo, MPFR_RNDD);
        best.log10_hi = log10_string(best.gap.hi, MPFR_RNDU);
        rep.shells.push_back(best);
    }

    // least squares fits
    auto fit = [](const std::vector<double>& x, const std::vector<double>& y) -> std::optional<double> {
        if (x.size() < 2) return std::nullopt;
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= static_cast<double>(x.size());
        my /= static_cast<double>(x.size());
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
        }
        return sxx == 0 ? std::nullopt : std::optional<double>(sxy / sxx);
    };
    std::vector<double> xs, ys, xs2, ys2;
    for (const auto& g : rep.shells) {
        double lg = std::log(std::max(g.gap.mid().get_d(), 1e-300));
        if (g.gap.hi > 0 && g.gap.lo > 0) lg = std::log(g.gap.lo.get_d() > 0 ? g.gap.lo.get_d() : 1e-300);
        xs.push_back(static_cast<double>(g.shell));
        ys.push_back(lg);
        if (lg < 0) {
            xs2.push_back(static_cast<double>(g.shell));
            ys2.push_back(std::log(-lg));
        }
    }
    rep.slope = fit(xs, ys);
    rep.loglog_slope = fit(xs2, ys2);

    bool lacunary_hit = false;
    GenPtr gen = detail::field_generator(ctx);
    if (gen && !gen->algebraic()) {
        auto shell = lacunary_first_shell(*gen);
        if (shell && *shell <= HugeInt(R)) {
            long sh = shell->to_integer().get_si();
            for (const auto& g : rep.shells)
                if (g.shell == sh) {
                    // nu = 1 case-II inequality: gap < exp(-|sigma''|)
                    long second = ctx.l1_second(g.sigma);
                    Rational bound = detail::exp_neg_lower(Rational(second));
                    if (g.gap.hi < bound) lacunary_hit = true;
                }
            rep.provenance.push_back("lacunary witness shell " + shell->to_string() + " is within the scan radius");
        } else {
            rep.provenance.push_back("lacunary witness shell " + (shell ? shell->to_string() : std::string("?")) +
                                     " lies beyond the scan radius; deferring to refute");
            rep.status = Status::unknown;
            return rep;
        }
    }
    if (lacunary_hit || (rep.loglog_slope && *rep.loglog_slope > 1.1)) {
        rep.status = Status::evidence_fails;
        rep.provenance.push_back(lacunary_hit ? "case-II inequality met at the lacunary witness shell"
                                              : "super-exponential decay: slope of ln(-ln gap) exceeds 1.1");
        return rep;
    }
    // evidence-grade exponential floor C e^{-a rho}
    double a_fit = rep.slope ? std::max(0.0, -*rep.slope) : 0.0;
    Rational a = Rational(std::ceil(a_fit * 1000.0)) / 1000;
    Rational C = 1;
    for (const auto& g : rep.shells) {
        Rational v = g.gap.lo * exp(BigFloat::from(Rational(a * g.shell), MPFR_RNDD), MPFR_RNDD).to_rational();
        C = std::min(C, v);
    }
    rep.status = Status::evidence_holds;
    rep.condition = Condition::HS_prime;
    rep.a = a;
    rep.C = detail::round_down_positive(C);
    rep.provenance.push_back("fitted floor C exp(-a rho) below every shell minimum");
    return rep;
}

// sigma(nu) = u + q_nu v + p_nu w.
struct WitnessRule {
    Sigma u;
    Sigma v;
    Sigma w;
    QRule q_rule = QRule::factorial();
    unsigned long nu_max = 3;
    std::string name = "factorial-pow10";

    // sigma(nu) = (0, q_nu + 1, p_nu) for n = 2, m = 1.
    static WitnessRule standard(std::size_t dim, const std::string& rule, unsigned long nu_max = 3) {
        if (dim != 3) throw Error(Errc::invalid_input, "the standard witness shape needs n + m = 3");
        QRule q;
        if (rule == "factorial-pow10")
            q = QRule::factorial();
        else if (rule == "supergap" || rule == "custom")
            q = QRule::series();
        else
            throw Error(Errc::invalid_input, "unknown witness rule '" + rule + "'");
        return {{0, 1, 0}, {0, 1, 0}, {0, 0, 1}, q, nu_max, rule};
    }
};

namespace detail {

// Checks that every real component of K_{u + q v + p w} + d(L) equals lambda_c (q theta - p).
inline std::vector<Rational> witness_lambdas(const SpectralContext& ctx, const WitnessRule& rule, const GenPtr& g) {
    const std::size_t n = ctx.n(), m = ctx.m();
    for (const auto* s : {&rule.u, &rule.v, &rule.w})
        if (s->size() != n + m) throw Error(Errc::invalid_input, "witness vectors must have n + m entries");
    bool v_head = false;
    for (std::size_t i = 0; i < n; ++i) v_head = v_head || rule.v[i] != 0;
    if (!v_head) throw Error(Errc::invalid_input, "witness family has (sigma', sigma'') = 0 and lies outside the condition's scope");
    for (std::size_t i = m; i < n; ++i)
        if (rule.w[i] != 0) throw Error(Errc::invalid_input, "witness direction w must have w'' = 0");
    CVector base = ctx.KdL(rule.u);
    CVector kv = ctx.K(rule.v), kw = ctx.K(rule.w);
    Real theta = Real::generator(g);
    std::vector<Rational> lambdas;
    for (std::size_t k = 0; k < m; ++k) {
        for (int part = 0; part < 2; ++part) {
            const Real& b = part == 0 ? base[k].re : base[k].im;
            const Real& vv = part == 0 ? kv[k].re : kv[k].im;
            const Real& ww = part == 0 ? kw[k].re : kw[k].im;
            if (!b.is_zero()) throw Error(Errc::invalid_input, "K_u + d(L) must vanish for the witness family");
            if (!ww.is_rational()) throw Error(Errc::invalid_input, "K_w must be rational");
            Rational lam = -ww.rational_value();
            if (vv != Real(lam) * theta) throw Error(Errc::invalid_input, "K_v must equal lambda theta with K_w = -lambda");
            lambdas.push_back(lam);
        }
    }
    return lambdas;
}

inline BigFloat log10_lower(const Rational& v) { return log10(BigFloat::from(v, MPFR_RNDD), MPFR_RNDD); }
inline BigFloat log10_upper(const Rational& v) { return log10(BigFloat::from(v, MPFR_RNDU), MPFR_RNDU); }

// |u_k + q v_k| summed over the sigma'' block, q = 10^E.
inline HugeInt second_norm(const SpectralContext& ctx, const WitnessRule& rule, const HugeInt& E) {
    HugeInt total;
    Integer e = E.to_integer(1000000);
    for (std::size_t i = ctx.m(); i < ctx.n(); ++i) {
        HugeInt term = HugeInt(rule.u[i]) + HugeInt::pow10(e, rule.v[i]);
        total += term.sign() < 0 ? -term : term;
    }
    return total;
}

// nu |sigma''| log10 e, the depth of exp(-nu |sigma''|).
inline Magnitude nu_exp_depth(unsigned long nu, const HugeInt& second) {
    BigFloat le_lo = log10_e(MPFR_RNDD), le_hi = log10_e(MPFR_RNDU);
    BigFloat nu_f = BigFloat::from(static_cast<long>(nu));
    Magnitude scale = Magnitude::of(mul(nu_f, le_lo, MPFR_RNDD), mul(nu_f, le_hi, MPFR_RNDU));
    return Magnitude::of(second) * scale;
}

// -log10 of (1/nu) exp(-nu |sigma''|) = log10 nu + nu |sigma''| log10 e.
inline Magnitude exp_depth(unsigned long nu, const HugeInt& second) {
    Rational q(static_cast<long>(nu));
    return nu_exp_depth(nu, second).plus(log10_lower(q), log10_upper(q));
}

} // namespace detail

// Certified refutation of the condition through the case-II inequality
// ||K_{sigma(nu)} + d(L)|| < (1/nu) exp(-nu |sigma(nu)''|), decided in exponent arithmetic.
inline ConditionReport refute(const SpectralContext& ctx, const ZSet& Z, const WitnessRule& rule,
                              const Rational& printed_C = Rational(1)) {
    ConditionReport rep;
    rep.condition = Condition::HS;
    rep.operation = "refute(rule=" + rule.name + ", " + rule.q_rule.name() + ", nu_max=" + std::to_string(rule.nu_max) + ")";
    GenPtr g = detail::field_generator(ctx);
    if (!g || g->algebraic()) {
        rep.provenance.push_back("no lacunary generator: refutation by exponent arithmetic does not apply");
        return rep;
    }
    auto lambdas = detail::witness_lambdas(ctx, rule, g);
    Rational lam2 = 0;
    for (const auto& l : lambdas) lam2 += l * l;
    if (lam2 == 0) throw Error(Errc::invalid_input, "witness family has K_v = 0");
    // log10 Lambda = log10(lam2) / 2
    BigFloat ll_lo = div(detail::log10_lower(lam2), BigFloat::from(2L), MPFR_RNDD);
    BigFloat ll_hi = div(detail::log10_upper(lam2), BigFloat::from(2L), MPFR_RNDU);
    BigFloat c_lo = detail::log10_lower(printed_C), c_hi = detail::log10_upper(printed_C);
    BigFloat le_lo = log10_e(MPFR_RNDD), le_hi = log10_e(MPFR_RNDU);

    bool all_pass = true;
    for (unsigned long nu = 1; nu <= rule.nu_max; ++nu) {
        RefuteRecord rec;
        rec.nu = nu;
        GapEnclosure gap = lacunary_gap(g->series(), nu, rule.q_rule);
        rec.q = "10^" + HugeInt::exponent_string(gap.q_exponent.to_integer(1000000));
        rec.sigma = "u + q v + p w with q = " + rec.q + ", p = " + gap.p.to_string();
        rec.gap_log10 = gap.log10_string();
        rec.gap_depth = gap.depth();
        rec.lhs_depth = rec.gap_depth.plus(neg(ll_hi), neg(ll_lo));
        rec.sigma_second = detail::second_norm(ctx, rule, gap.q_exponent);
        rec.rhs_depth = detail::exp_depth(nu, rec.sigma_second);
        if (rec.lhs_depth.certainly_greater(rec.rhs_depth))
            rec.verdict = Sign::positive;
        else if (rec.lhs_depth.certainly_less(rec.rhs_depth))
            rec.verdict = Sign::negative;
        all_pass = all_pass && rec.verdict == Sign::positive;

        // printed inequality |q theta - p| <= C exp(-q^2): depth >= q^2 log10 e - log10 C
        HugeInt q2 = HugeInt::pow10(Integer(2) * gap.q_exponent.to_integer(1000000));
        Magnitude q2e = Magnitude::of(q2) * Magnitude::of(le_lo, le_hi);
        rec.printed_rhs_depth = q2e.plus(neg(c_hi), neg(c_lo));
        if (rec.gap_depth.certainly_greater(rec.printed_rhs_depth) )
            rec.printed_verdict = Sign::positive;
        else if (rec.gap_depth.certainly_less(rec.printed_rhs_depth))
            rec.printed_verdict = Sign::negative;
        if (rec.printed_verdict == Sign::negative) {
            Magnitude needed = q2e - rec.gap_depth;  // log10 C_needed
            rec.log10_C_needed = needed.to_string(12);
        } else {
            rec.log10_C_needed = "<= log10 C";
        }
        rep.witnesses.push_back(std::move(rec));
    }
    if (all_pass) {
        rep.status = Status::certified_fails;
        rep.provenance.push_back("every nu <= " + std::to_string(rule.nu_max) + " meets the case-II inequality");
    } else {
        rep.status = Status::unknown;
        std::string failed;
        for (const auto& r : rep.witnesses)
            if (r.verdict != Sign::positive) failed += (failed.empty() ? "" : ",") + std::to_string(r.nu);
        rep.provenance.push_back("case-II inequality fails or is undecided for nu = " + failed);
    }
    (void)Z;
    return rep;
}

} // namespace torocoh
