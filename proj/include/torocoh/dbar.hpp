#pragma once

#include <cmath>
#include <algorithm>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "torocoh/diophantine.hpp"
#include "torocoh/spectral.hpp"

namespace torocoh {

// Strictly increasing 1-based multi-index i_1 < ... < i_p.
using MultiIndex = std::vector<int>;

inline std::string to_string(const MultiIndex& I) {
    std::string s;
    for (std::size_t k = 0; k < I.size(); ++k) s += (k ? "," : "") + std::to_string(I[k]);
    return s;
}

// Sorts I in place; returns the permutation sign, or 0 on a repeated index.
inline int canonicalize(MultiIndex& I) {
    int sign = 1;
    for (std::size_t a = 0; a < I.size(); ++a)
        for (std::size_t b = 0; b + 1 < I.size() - a; ++b) {
            if (I[b] == I[b + 1]) return 0;
            if (I[b] > I[b + 1]) {
                std::swap(I[b], I[b + 1]);
                sign = -sign;
            }
        }
    for (std::size_t b = 0; b + 1 < I.size(); ++b)
        if (I[b] == I[b + 1]) return 0;
    return sign;
}

// All increasing p-subsets of {1..m}.
inline std::vector<MultiIndex> multi_indices(int m, int p) {
    std::vector<MultiIndex> out;
    MultiIndex cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == p) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= m; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

template <class T>
inline bool coeff_is_zero(const T& v) {
    if constexpr (std::is_same_v<T, Complex>)
        return v.is_zero();
    else
        return v == T(0);
}

// Finitely supported (0,p)-form: sigma -> { increasing I -> a^sigma_I }.
// Exact forms carry every coefficient as c * pi^pi_power.
template <class T>
struct BasicForm {
    int p = 0;
    int m = 1;
    int pi_power = 0;
    std::map<Sigma, std::map<MultiIndex, T>> modes;

    // Coefficient on an arbitrary index list, resolved by permutation sign.
    T at(const Sigma& s, MultiIndex I) const {
        int sg = canonicalize(I);
        if (sg == 0) return T(0);
        auto it = modes.find(s);
        if (it == modes.end()) return T(0);
        auto jt = it->second.find(I);
        if (jt == it->second.end()) return T(0);
        return sg > 0 ? jt->second : T(0) - jt->second;
    }

    void add(const Sigma& s, MultiIndex I, const T& v) {
        int sg = canonicalize(I);
        if (sg == 0) return;
        if (static_cast<int>(I.size()) != p || (p > 0 && (I.front() < 1 || I.back() > m)))
            throw Error(Errc::invalid_input, "multi-index " + to_string(I) + " out of range for a (0," + std::to_string(p) + ")-form");
        auto& slot = modes[s][I];
        slot = sg > 0 ? slot + v : slot - v;
    }

    void prune() {
        for (auto it = modes.begin(); it != modes.end();) {
            for (auto jt = it->second.begin(); jt != it->second.end();)
                jt = coeff_is_zero(jt->second) ? it->second.erase(jt) : std::next(jt);
            it = it->second.empty() ? modes.erase(it) : std::next(it);
        }
    }

    std::vector<Sigma> support() const {
        std::vector<Sigma> out;
        for (const auto& [s, c] : modes) out.push_back(s);
        return out;
    }
};

using FourierForm = BasicForm<Complex>;
using NumericForm = BasicForm<std::complex<double>>;

inline std::complex<double> to_complex(const Complex& z) { return {z.re.to_double(), z.im.to_double()}; }

inline NumericForm to_numeric(const FourierForm& f) {
    NumericForm out;
    out.p = f.p;
    out.m = f.m;
    double scale = std::pow(std::numbers::pi, f.pi_power);
    for (const auto& [s, cs] : f.modes)
        for (const auto& [I, v] : cs) out.modes[s][I] = to_complex(v) * scale;
    return out;
}

namespace detail {

// (K~_sigma + beta) for the coefficient type: exact values omit the pi factor.
inline CVector shift_of(const SpectralContext& ctx, const Sigma& s, const Complex*) { return ctx.w(s); }

inline std::vector<std::complex<double>> shift_of(const SpectralContext& ctx, const Sigma& s, const std::complex<double>*) {
    std::vector<std::complex<double>> out;
    for (const auto& z : ctx.w(s)) out.push_back(std::numbers::pi * to_complex(z));
    return out;
}

template <class T>
int pi_step() {
    return std::is_same_v<T, Complex> ? 1 : 0;
}

} // namespace detail

// psi -> Phi_0 ^ psi + dbar_1 psi, per mode the wedge with w = K~_sigma + beta.
template <class T>
BasicForm<T> forward(const BasicForm<T>& psi, const SpectralContext& ctx) {
    if (psi.p + 1 > psi.m) throw Error(Errc::invalid_input, "forward needs p <= m");
    BasicForm<T> phi;
    phi.p = psi.p + 1;
    phi.m = psi.m;
    phi.pi_power = psi.pi_power + detail::pi_step<T>();
    for (const auto& [s, cs] : psi.modes) {
        auto w = detail::shift_of(ctx, s, static_cast<const T*>(nullptr));
        for (const auto& [I, v] : cs)
            for (int j = 1; j <= psi.m; ++j) {
                MultiIndex J{j};
                J.insert(J.end(), I.begin(), I.end());
                phi.add(s, J, w[static_cast<std::size_t>(j - 1)] * v);
            }
    }
    phi.prune();
    return phi;
}

template <class T>
struct ClosednessReport {
    bool pass = true;
    std::optional<Sigma> sigma;
    MultiIndex index;
    double deviation = 0;  // numeric mode only
};

// Closedness: w ^ phi = 0 per mode (vacuous for p = m).
template <class T>
ClosednessReport<T> check_closed(const BasicForm<T>& phi, const SpectralContext& ctx, double tol = 1e-12) {
    ClosednessReport<T> rep;
    if (phi.p < 1) throw Error(Errc::invalid_input, "check_closed needs p >= 1");
    if (phi.p >= phi.m) return rep;
    for (const auto& [s, cs] : phi.modes) {
        auto w = detail::shift_of(ctx, s, static_cast<const T*>(nullptr));
        double scale = 0;
        if constexpr (!std::is_same_v<T, Complex>) {
            double wmax = 0, fmax = 0;
            for (const auto& z : w) wmax = std::max(wmax, std::abs(z));
            for (const auto& [I, v] : cs) fmax = std::max(fmax, std::abs(v));
            scale = wmax * fmax;
        }
        for (const auto& J : multi_indices(phi.m, phi.p + 1)) {
            T acc(0);
            for (std::size_t a = 0; a < J.size(); ++a) {
                MultiIndex rest;
                for (std::size_t b = 0; b < J.size(); ++b)
                    if (b != a) rest.push_back(J[b]);
                T term = w[static_cast<std::size_t>(J[a] - 1)] * phi.at(s, rest);
                acc = a % 2 == 0 ? acc + term : acc - term;
            }
            if constexpr (std::is_same_v<T, Complex>) {
                if (!acc.is_zero()) {
                    if (acc.re.is_evidence() || acc.im.is_evidence()) {
                        Interval e = acc.abs2().enclose(Rational(1, Integer(1) << 60));
                        if (e.contains(Rational(0))) continue;
                    }
                    rep.pass = false;
                    rep.sigma = s;
                    rep.index = J;
                    return rep;
                }
            } else {
                double dev = std::abs(acc);
                rep.deviation = std::max(rep.deviation, dev);
                if (dev > tol * std::max(scale, 1e-300) && !rep.sigma) {
                    rep.pass = false;
                    rep.sigma = s;
                    rep.index = J;
                }
            }
        }
    }
    return rep;
}

template <class T>
struct SolveResult {
    BasicForm<T> psi;
    std::optional<BasicForm<T>> harmonic;
    std::map<Sigma, double> residual;  // per-mode sup |forward(psi) + harmonic - phi|
    std::map<Sigma, std::size_t> pivot;
};

// psi^sigma_I = phi^sigma_{j I} / w_j with j the pivot of sigma; the sigma0 mode is harmonic.
template <class T>
SolveResult<T> solve(const BasicForm<T>& phi, const ZSet& Z, const SpectralContext& ctx) {
    if (phi.p < 1) throw Error(Errc::invalid_input, "solve needs p >= 1");
    if (ctx.bundle().trivial) throw Error(Errc::precondition, "solve needs a nontrivial bundle");
    auto closed = check_closed(phi, ctx);
    if (!closed.pass)
        throw Error(Errc::precondition, "phi is not closed at sigma = " + to_string(*closed.sigma) + ", index " + to_string(closed.index));
    SolveResult<T> out;
    out.psi.p = phi.p - 1;
    out.psi.m = phi.m;
    out.psi.pi_power = phi.pi_power - detail::pi_step<T>();
    for (const auto& [s, cs] : phi.modes) {
        if (!Z.contains(s)) {
            if (!out.harmonic) {
                out.harmonic.emplace();
                out.harmonic->p = phi.p;
                out.harmonic->m = phi.m;
                out.harmonic->pi_power = phi.pi_power;
            }
            out.harmonic->modes[s] = cs;
            continue;
        }
        auto w = detail::shift_of(ctx, s, static_cast<const T*>(nullptr));
        std::size_t j;
        if constexpr (std::is_same_v<T, Complex>) {
            j = SpectralContext::pivot_of(w);
            Sign sg = w[j].abs2().sign();
            if (sg == Sign::undecided)
                throw Error(Errc::division_undecided, "cannot exclude K~ + beta = 0 at sigma = " + to_string(s));
            if (sg == Sign::zero) throw Error(Errc::precondition, "K~ + beta vanishes at sigma = " + to_string(s) + " outside sigma0");
        } else {
            j = 0;
            for (std::size_t k = 1; k < w.size(); ++k)
                if (std::abs(w[k]) > std::abs(w[j])) j = k;
            if (w[j] == std::complex<double>(0)) throw Error(Errc::division_undecided, "zero shift at sigma = " + to_string(s));
        }
        out.pivot[s] = j;
        T inv;
        if constexpr (std::is_same_v<T, Complex>)
            inv = w[j].inverse();
        else
            inv = 1.0 / w[j];
        for (const auto& I : multi_indices(phi.m, phi.p - 1)) {
            if (std::find(I.begin(), I.end(), static_cast<int>(j + 1)) != I.end()) continue;
            MultiIndex J{static_cast<int>(j + 1)};
            J.insert(J.end(), I.begin(), I.end());
            T v = phi.at(s, J);
            if (!coeff_is_zero(v)) out.psi.add(s, I, v * inv);
        }
    }
    out.psi.prune();

    // residual of forward(psi) + harmonic - phi
    BasicForm<T> back = out.psi.modes.empty() ? BasicForm<T>{phi.p, phi.m, phi.pi_power, {}} : forward(out.psi, ctx);
    for (const auto& [s, cs] : phi.modes) {
        double worst = 0;
        for (const auto& [I, v] : cs) {
            T h = out.harmonic ? out.harmonic->at(s, I) : T(0);
            T d = back.at(s, I) + h - v;
            if constexpr (std::is_same_v<T, Complex>) {
                if (!d.is_zero()) worst = std::max(worst, std::sqrt(d.abs2().to_double()) * std::pow(std::numbers::pi, phi.pi_power));
            } else {
                worst = std::max(worst, std::abs(d));
            }
        }
        out.residual[s] = worst;
    }
    return out;
}

// Growth-test sup |a^sigma| R^{|sigma''|} |sigma|^k over the support, in log10
// form, for every nested truncation |sigma| <= rho.
struct DecayRow {
    double R = 0;
    double k = 0;
    std::vector<std::pair<long, double>> log10_sup;  // (truncation radius, log10 sup)
    std::string trend;  // "stable" or "growing"
};

template <class T>
std::vector<DecayRow> decay_report(const BasicForm<T>& f, std::size_t n, const std::vector<double>& R_list,
                                   const std::vector<double>& k_list) {
    const std::size_t m = static_cast<std::size_t>(f.m);
    std::vector<std::tuple<long, long, double>> entries;  // |sigma|, |sigma''|, log10 |a|
    double pi_shift = f.pi_power * std::log10(std::numbers::pi);
    for (const auto& [s, cs] : f.modes) {
        if (s.size() != n + m) throw Error(Errc::invalid_input, "form modes must have n + m entries");
        double best = -INFINITY;
        for (const auto& [I, v] : cs) {
            double a;
            if constexpr (std::is_same_v<T, Complex>)
                a = 0.5 * std::log10(v.abs2().to_double()) + pi_shift;
            else
                a = std::log10(std::abs(v));
            best = std::max(best, a);
        }
        long second = 0;
        for (std::size_t i = m; i < n; ++i) second += s[i] < 0 ? -s[i] : s[i];
        entries.emplace_back(l1(s), second, best);
    }
    long rho_max = 0;
    for (const auto& e : entries) rho_max = std::max(rho_max, std::get<0>(e));
    std::vector<DecayRow> rows;
    for (double R : R_list)
        for (double k : k_list) {
            DecayRow row;
            row.R = R;
            row.k = k;
            double sup = -INFINITY;
            for (long rho = 0; rho <= rho_max; ++rho) {
                for (const auto& [norm, second, la] : entries)
                    if (norm == rho) {
                        double v = la + static_cast<double>(second) * std::log10(R) +
                                   (norm == 0 ? 0.0 : k * std::log10(static_cast<double>(norm)));
                        sup = std::max(sup, v);
                    }
                if (std::isfinite(sup)) row.log10_sup.emplace_back(rho, sup);
            }
            row.trend = "stable";
            std::size_t L = row.log10_sup.size();
            if (L >= 2 && row.log10_sup[L - 1].second > row.log10_sup[L - 2].second + 1e-12) row.trend = "growing";
            rows.push_back(std::move(row));
        }
    return rows;
}

// Case-II witness: delta^{sigma(nu)} = exp(-nu |sigma''|) / (K~_j + beta_j) at the pivot j.
struct WitnessRecord {
    unsigned long nu = 0;
    std::size_t pivot = 0;             // 1-based
    Magnitude gap_depth;               // -log10 |q theta - p|
    Magnitude pivot_depth;             // -log10 |K~_j + beta_j|
    Magnitude exp_depth;               // nu |sigma''| log10 e
    std::string log10_delta;           // log10 |delta| (signed)
    bool diverges = false;             // |delta| > nu
    bool image_bounded = true;         // every image component <= exp(-nu |sigma''|)
    std::string log10_image;           // log10 of the pivot image = -nu |sigma''| log10 e
};

struct WitnessResult {
    std::vector<WitnessRecord> records;
    bool all_pass = false;
};

inline WitnessResult witness_non_hausdorff(const SpectralContext& ctx, const ZSet& Z, const WitnessRule& rule) {
    ConditionReport ref = refute(ctx, Z, rule);
    GenPtr g = detail::field_generator(ctx);
    auto lambdas = detail::witness_lambdas(ctx, rule, g);
    const std::size_t m = ctx.m();
    // mu = Lambda C_1 with Lambda_k = lambda_re,k + i lambda_im,k
    CVector lam(m);
    for (std::size_t k = 0; k < m; ++k) lam[k] = Complex(Real(lambdas[2 * k]), Real(lambdas[2 * k + 1]));
    CVector mu = row_times(lam, complexify(ctx.frame().C1));
    std::size_t piv = SpectralContext::pivot_of(mu);
    Interval mu_abs = abs_enclosure(mu[piv], Rational(1, Integer(1) << 120));
    if (mu_abs.lo <= 0) throw Error(Errc::uncertified, "pivot coefficient not separated from zero");
    BigFloat pi_lo = const_pi(MPFR_RNDD), pi_hi = const_pi(MPFR_RNDU);
    Magnitude pim = Magnitude::of(mul(pi_lo, BigFloat::from(mu_abs.lo, MPFR_RNDD), MPFR_RNDD),
                                  mul(pi_hi, BigFloat::from(mu_abs.hi, MPFR_RNDU), MPFR_RNDU));

    WitnessResult out;
    out.all_pass = true;
    for (const auto& r : ref.witnesses) {
        WitnessRecord w;
        w.nu = r.nu;
        w.pivot = piv + 1;
        w.gap_depth = r.gap_depth;
        // -log10 (pi |mu_j| |q theta - p|)
        w.pivot_depth = r.gap_depth.plus(neg(pim.log10_hi()), neg(pim.log10_lo()));
        w.exp_depth = detail::nu_exp_depth(r.nu, r.sigma_second);
        // |delta| > nu  <=>  pivot_depth > exp_depth + log10 nu
        Magnitude threshold = detail::exp_depth(r.nu, r.sigma_second);
        w.diverges = w.pivot_depth.certainly_greater(threshold);
        if (w.pivot_depth.certainly_greater(w.exp_depth))
            w.log10_delta = (w.pivot_depth - w.exp_depth).value_string(12);
        else if (w.pivot_depth.certainly_less(w.exp_depth))
            w.log10_delta = "-" + (w.exp_depth - w.pivot_depth).value_string(12);
        else
            w.log10_delta = "undecided";
        w.log10_image = "-" + w.exp_depth.value_string(12);
        out.all_pass = out.all_pass && w.diverges && w.image_bounded;
        out.records.push_back(std::move(w));
    }
    return out;
}

} // namespace torocoh
