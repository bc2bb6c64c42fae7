// Acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support.hpp"
#include "torocoh/cli.hpp"

using namespace torocoh;
using support::sqrt_of;

namespace {

struct Line {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << "first failure: " << what << "; ";
            pass = false;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int k, const std::string& title, Line& line) {
    std::cout << "criterion " << k << ": " << (line.pass ? "PASS" : "FAIL") << "  " << title;
    std::string d = line.detail.str();
    if (!d.empty()) std::cout << "  [" << d << "]";
    std::cout << "\n";
}

Line example_line(const std::string& which, const std::function<void(Line&, const json&)>& extra) {
    Line line;
    auto t0 = std::chrono::steady_clock::now();
    std::vector<cli::Check> checks;
    json rep;
    try {
        rep = cli::run_example(which, 30, checks);
    } catch (const std::exception& e) {
        line.require(false, std::string("exception: ") + e.what());
        return line;
    }
    double t = seconds_since(t0);
    for (const auto& c : checks) line.require(c.pass, c.name);
    extra(line, rep);
    line.require(t < 10.0, "runtime under 10 s");
    line.detail << "checks " << checks.size() << ", " << t << " s";
    return line;
}

// ---- criterion 4 ----

Line solver_round_trip() {
    Line line;
    support::Rng rng(20240501);
    const long fields[] = {2, 3, 5, 7};
    int exact_ok = 0, numeric_ok = 0, closed_ok = 0;
    std::size_t max_modes = 0, total_modes = 0;
    std::set<std::pair<std::size_t, std::size_t>> shapes;
    double worst = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int inst = 0; inst < 500; ++inst) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(1, 4));
        std::size_t m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(n, 3))));
        long D = fields[rng.uniform(0, 3)];
        Analysis an = support::random_analysis(rng, n, m, D);
        const auto& ctx = *an.ctx;
        ZSet Z = find_sigma0(ctx);
        int p = static_cast<int>(rng.uniform(0, static_cast<long>(m) - 1));
        FourierForm psi = support::random_form(rng, ctx, Z, p, 50);
        shapes.insert({n, m});
        max_modes = std::max(max_modes, psi.modes.size());
        total_modes += psi.modes.size();
        try {
            FourierForm phi = forward(psi, ctx);
            bool closed = check_closed(phi, ctx).pass;
            closed_ok += closed;
            auto r = solve(phi, Z, ctx);
            bool ex = support::forms_equal(forward(r.psi, ctx), phi);
            exact_ok += ex;
            NumericForm phin = to_numeric(phi);
            bool closed_n = check_closed(phin, ctx).pass;
            auto rn = solve(phin, Z, ctx);
            double dev = support::relative_deviation(forward(rn.psi, ctx), phin);
            worst = std::max(worst, dev);
            numeric_ok += dev <= 1e-12 && closed_n;
            line.require(closed && closed_n, "check_closed on instance " + std::to_string(inst));
            line.require(ex, "exact round trip on instance " + std::to_string(inst));
            line.require(dev <= 1e-12, "numeric round trip on instance " + std::to_string(inst));
        } catch (const std::exception& e) {
            line.require(false, "instance " + std::to_string(inst) + ": " + e.what());
        }
    }
    line.detail << "exact " << exact_ok << "/500, numeric " << numeric_ok << "/500, closed " << closed_ok
                << "/500, worst relative deviation " << worst << ", " << shapes.size() << " (n, m) shapes, " << total_modes
                << " modes (max " << max_modes << "), " << seconds_since(t0) << " s";
    return line;
}

// ---- criterion 5 ----

struct DoubleFrame {
    std::size_t n;
    std::vector<double> A, B;
    explicit DoubleFrame(const RealCoordFrame& f) : n(f.n), A(f.n * f.n), B(f.n * f.n) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                A[i * n + j] = f.A(i, j).to_double();
                B[i * n + j] = f.B(i, j).to_double();
            }
    }
    std::vector<std::complex<double>> z(const std::vector<double>& t) const {
        std::vector<std::complex<double>> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            double x = t[i], y = 0;
            for (std::size_t k = 0; k < n; ++k) {
                x += A[i * n + k] * t[n + k];
                y += B[i * n + k] * t[n + k];
            }
            out[i] = {x, y};
        }
        return out;
    }
};

template <class F>
std::complex<double> apply_dbar(const CVector& v, const std::vector<double>& t, F f) {
    const double h = 1e-4;
    std::complex<double> acc = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        auto at = [&](double s) {
            auto u = t;
            u[k] += s;
            return f(u);
        };
        acc += support::to_c(v[k]) * (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12 * h);
    }
    return acc;
}

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Line frame_and_calculus() {
    Line line;
    support::Rng rng(77);
    std::vector<Analysis> inst{support::example_1(), support::example_2()};
    for (int k = 0; k < 6; ++k) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
        std::size_t m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(n, 3))));
        inst.push_back(support::random_analysis(rng, n, m, k % 2 ? 3 : 2));
    }
    int bc = 0, round_trips = 0, fd = 0, modes = 0;
    double worst_fd = 0, worst_mode = 0;
    for (const auto& an : inst) {
        bool ok = (an.frame.B * an.frame.C).is_identity();
        bc += ok;
        line.require(ok, "B C = I");
    }
    // coord_map round trip on 100 points
    for (int k = 0; k < 100; ++k) {
        const Analysis& an = inst[static_cast<std::size_t>(k) % inst.size()];
        RVector p(2 * an.frame.n);
        for (auto& v : p) v = Real(rng.rational(20, 9));
        RVector back = coord_map(an.frame, Direction::t_to_z, coord_map(an.frame, Direction::z_to_t, p));
        bool ok = true;
        for (std::size_t i = 0; i < p.size(); ++i) ok = ok && (back[i] - p[i]).is_zero();
        round_trips += ok;
        line.require(ok, "coord_map round trip");
    }
    // dbar_vector against finite differences of g(z) = sum_k c_k conj(z_k)^2 + z_1 conj(z_k)
    for (const auto& an : inst) {
        DoubleFrame df(an.frame);
        const std::size_t n = an.frame.n;
        std::vector<double> c(n);
        for (auto& v : c) v = rng.rational().get_d();
        auto g = [&](const std::vector<double>& t) {
            auto z = df.z(t);
            std::complex<double> acc = 0;
            for (std::size_t k = 0; k < n; ++k) acc += c[k] * std::conj(z[k]) * std::conj(z[k]) + z[0] * std::conj(z[k]);
            return acc;
        };
        for (int sample = 0; sample < 3; ++sample) {
            std::vector<double> t(2 * n);
            for (auto& v : t) v = rng.uniform(-100, 100) / 100.0;
            auto z = df.z(t);
            for (std::size_t j = 1; j <= n; ++j) {
                std::complex<double> expect = 2.0 * c[j - 1] * std::conj(z[j - 1]) + z[0];
                double e = rel(apply_dbar(dbar_vector(an.frame, j), t, g), expect);
                worst_fd = std::max(worst_fd, e);
                ++fd;
                line.require(e <= 1e-6, "dbar_vector finite differences");
            }
        }
    }
    // d f^sigma / d conj(z_j) = K~_{sigma,j} f^sigma on 20 random (sigma, t)
    for (int k = 0; k < 20; ++k) {
        const Analysis& an = inst[static_cast<std::size_t>(k) % inst.size()];
        const std::size_t n = an.frame.n, m = an.frame.m;
        Sigma s = support::random_sigma(rng, n + m, 2);
        std::vector<double> t(2 * n);
        for (auto& v : t) v = rng.uniform(-50, 50) / 100.0;
        auto f = [&](const std::vector<double>& u) {
            double phase = 0, damp = 0;
            for (std::size_t i = 0; i < n + m; ++i) phase += double(s[i]) * u[i];
            for (std::size_t i = m; i < n; ++i) damp += double(s[i]) * u[n + i];
            return std::exp(std::complex<double>(-2 * std::numbers::pi * damp, 2 * std::numbers::pi * phase));
        };
        CVector kt = an.ctx->K_tilde_over_pi(s);
        for (std::size_t j = 1; j <= m; ++j) {
            std::complex<double> expect = std::numbers::pi * support::to_c(kt[j - 1]) * f(t);
            std::complex<double> got = apply_dbar(dbar_vector(an.frame, j), t, f);
            if (std::abs(expect) < 1e-12) {
                line.require(std::abs(got) < 1e-8, "f^sigma derivative at a zero shift");
                continue;
            }
            double e = rel(got, expect);
            worst_mode = std::max(worst_mode, e);
            ++modes;
            line.require(e <= 1e-6, "f^sigma derivative");
        }
    }
    line.detail << "B C = I on " << bc << "/" << inst.size() << ", round trips " << round_trips << "/100, dbar samples " << fd
                << " (worst " << worst_fd << "), mode samples " << modes << " (worst " << worst_mode << ")";
    return line;
}

// ---- criterion 6 ----

Line spectral_identities() {
    Line line;
    support::Rng rng(99);
    std::vector<Analysis> inst{support::example_1(), support::example_2()};
    for (int k = 0; k < 4; ++k) {
        std::size_t n = static_cast<std::size_t>(rng.uniform(2, 4));
        std::size_t m = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(std::min<std::size_t>(n, 3))));
        inst.push_back(support::random_analysis(rng, n, m, 5));
    }
    for (int k = 0; k < 4; ++k) inst.push_back(support::random_analysis(rng, 2, 1, 2));
    long identity = 0, pivots = 0, unique_instances = 0;
    for (const auto& an : inst) {
        const auto& ctx = *an.ctx;
        const std::size_t m = ctx.m();
        for (int k = 0; k < 100; ++k) {
            Sigma s = support::random_sigma(rng, ctx.dim(), 12);
            CVector K = support::K_direct(an.group, s);
            CVector w = ctx.w(s);
            bool ok = true;
            for (std::size_t j = 0; j < m; ++j) {
                Complex lhs = an.inv.alpha[j].conj().times_i();
                for (std::size_t l = 0; l < m; ++l) lhs = lhs + Complex(an.frame.C(l, j)) * K[l];
                Complex d = lhs - w[j];
                ok = ok && cert_sign(d.re) == Sign::zero && cert_sign(d.im) == Sign::zero;
            }
            identity += ok;
            line.require(ok, "shift identity at " + to_string(s));
            std::size_t j = ctx.pivot(s);
            Real total(0);
            for (const auto& z : w) total = total + z.abs2();
            Sign sg = cert_sign(Real(static_cast<long>(m)) * w[j].abs2() - total);
            pivots += sg != Sign::negative && sg != Sign::undecided;
            line.require(sg != Sign::negative && sg != Sign::undecided, "pivot inequality at " + to_string(s));
        }
        if (ctx.dim() == 3 && check_irrationality(an.group).status == Status::certified_holds) {
            ZSet Z = find_sigma0(ctx);
            int zeros = 0;
            bool agree = true;
            for (long rho = 0; rho <= 20; ++rho)
                for_each_l1_shell(3, rho, [&](const std::vector<long>& s) {
                    CVector v = ctx.KdL(s);
                    if (v[0].is_zero()) {
                        ++zeros;
                        agree = agree && Z.has_sigma0 && Z.sigma0 == s;
                    }
                });
            bool ok = agree && zeros == (Z.has_sigma0 ? 1 : 0);
            unique_instances += ok;
            line.require(ok, "uniqueness of sigma0 over |sigma|_1 <= 20");
        }
    }
    line.detail << "identity " << identity << "/" << inst.size() * 100 << ", pivot " << pivots << "/" << inst.size() * 100
                << ", uniqueness on " << unique_instances << " certified-(IS) instances";
    line.require(unique_instances >= 2, "uniqueness checked on at least two instances");
    return line;
}

// ---- criterion 7 ----

double log10_of(const BigFloat& x, mpfr_rnd_t rnd) { return mpfr_get_d(x.get(), rnd); }

Line witness_mechanics() {
    Line line;
    Analysis an = support::lacunary_example(LacunarySeries::supergap());
    ZSet Z = find_sigma0(*an.ctx);
    WitnessResult w = witness_non_hausdorff(*an.ctx, Z, WitnessRule::standard(3, "supergap", 3));
    line.require(w.records.size() == 3, "three witnesses");
    for (const auto& r : w.records) {
        line.require(r.diverges, "|delta| > nu at nu = " + std::to_string(r.nu));
        line.require(r.image_bounded, "image bound at nu = " + std::to_string(r.nu));
    }
    line.require(w.all_pass, "all_pass");
    // independent gap depths: nu = 1 gives -log10 gap = 9, nu = 2 gives 10^20 - 10
    if (w.records.size() >= 2) {
        const Magnitude& g1 = w.records[0].gap_depth;
        double lo1 = log10_of(g1.log10_lo(), MPFR_RNDD), hi1 = log10_of(g1.log10_hi(), MPFR_RNDU);
        line.require(lo1 <= std::log10(9.0) + 1e-12 && hi1 >= std::log10(9.0) - 1e-12, "nu = 1 gap depth 9");
        const Magnitude& g2 = w.records[1].gap_depth;
        double lo2 = log10_of(g2.log10_lo(), MPFR_RNDD), hi2 = log10_of(g2.log10_hi(), MPFR_RNDU);
        line.require(lo2 <= 20.0 + 1e-12 && hi2 >= 20.0 - 1e-12, "nu = 2 gap depth 10^20 - 10");
    }
    for (const auto& r : w.records) line.detail << "nu=" << r.nu << " log10|delta|=" << r.log10_delta << "; ";
    return line;
}

// ---- criterion 8 ----

// Lower bound for ||K + d(L)|| over sigma''' for the given (sigma', sigma''), m = 1, in 256-bit arithmetic.
void gap_lower(const Analysis& an, long s1, long s2, mpfr_t out) {
    Complex v = Complex(Real(s1)) * an.group.S(0, 0) + Complex(Real(s2)) * an.group.S(1, 0) + an.inv.dL[0];
    Rational w(1, Integer(1) << 120);
    Interval re = v.re.enclose(w), im = v.im.enclose(w);
    ZSet Z = find_sigma0(*an.ctx);
    Integer f = floor_q(re.lo);
    mpfr_set_inf(out, 1);
    for (long d = -1; d <= 2; ++d) {
        Integer s3 = f + d;
        Sigma s{s1, s2, s3.get_si()};
        if (!Z.contains(s)) continue;
        Rational dr = std::max(Rational(0), std::max(Rational(re.lo - s3), Rational(s3 - re.hi)));
        Rational di = std::max(Rational(0), std::max(Rational(im.lo), Rational(-im.hi)));
        support::Mp a, b;
        mpfr_set_q(a.v, Rational(dr * dr + di * di).get_mpq_t(), MPFR_RNDD);
        mpfr_sqrt(b.v, a.v, MPFR_RNDD);
        if (mpfr_cmp(b.v, out) < 0) mpfr_set(out, b.v, MPFR_RNDD);
    }
}

Line conversions() {
    Line line;
    long comparisons = 0;
    for (int which = 1; which <= 2; ++which) {
        Analysis an = which == 1 ? support::example_1() : support::example_2();
        const auto& ctx = *an.ctx;
        ZSet Z = find_sigma0(ctx);
        ConditionReport p = certify(ctx, Z, check_irrationality(an.group).status);
        line.require(p.status == Status::certified_holds, "certify");
        if (p.status != Status::certified_holds) continue;
        ConditionReport hs = convert_constants(p, Condition::HS, ctx);
        ConditionReport hs2 = convert_constants(p, Condition::HS_double_prime, ctx);
        ConditionReport back1 = convert_constants(hs, Condition::HS_prime, ctx);
        ConditionReport back2 = convert_constants(hs2, Condition::HS_prime, ctx);
        ConditionReport hs_from2 = convert_constants(hs2, Condition::HS, ctx);
        for (const auto* r : {&hs, &hs2, &back1, &back2, &hs_from2})
            line.require(r->status == Status::certified_holds, "round trip keeps certified status");

        // bounds at (rho, |sigma''|), rounded up in 256-bit arithmetic
        auto prime_bound = [](const ConditionReport& r, long x, mpfr_t out) {
            support::Mp e;
            mpfr_set_q(e.v, Rational(-*r.a * x).get_mpq_t(), MPFR_RNDU);
            mpfr_exp(e.v, e.v, MPFR_RNDU);
            mpfr_set_q(out, r.C->get_mpq_t(), MPFR_RNDU);
            mpfr_mul(out, out, e.v, MPFR_RNDU);
        };
        auto hs_bound = [](const ConditionReport& r, long rho, mpfr_t out) {
            support::Mp base, y;
            mpfr_set_q(base.v, r.r->x.get_mpq_t(), MPFR_RNDD);
            mpfr_exp(base.v, base.v, MPFR_RNDD);
            mpfr_set_q(y.v, r.r->y.get_mpq_t(), MPFR_RNDD);
            mpfr_add(base.v, base.v, y.v, MPFR_RNDD);
            mpfr_pow_si(out, base.v, -rho, MPFR_RNDU);
        };
        auto check = [&](long rho, long second, mpfr_t gap, const std::string& where) {
            support::Mp b;
            for (const auto* r : {&p, &back1, &back2}) {
                prime_bound(*r, rho, b.v);
                line.require(mpfr_cmp(gap, b.v) >= 0, "HS' constants dominate " + where);
            }
            for (const auto* r : {&hs, &hs_from2}) {
                hs_bound(*r, rho, b.v);
                line.require(mpfr_cmp(gap, b.v) >= 0, "HS constants dominate " + where);
            }
            prime_bound(hs2, second, b.v);
            line.require(mpfr_cmp(gap, b.v) >= 0, "HS'' constants dominate " + where);
            ++comparisons;
        };
        // the scan's own shell minima
        ConditionReport sc = scan(ctx, Z, 12);
        line.require(sc.shells.size() == 12, "scan covers radius 12");
        for (const auto& g : sc.shells) {
            support::Mp gap;
            mpfr_set_q(gap.v, g.gap.lo.get_mpq_t(), MPFR_RNDD);
            long second = std::labs(g.sigma[1]);
            check(g.shell, second, gap.v, "scan shell " + std::to_string(g.shell));
        }
        // every (sigma', sigma'') up to radius 12
        for (long s1 = -12; s1 <= 12; ++s1)
            for (long s2 = -12; s2 <= 12; ++s2) {
                long rho = std::labs(s1) + std::labs(s2);
                if (rho == 0 || rho > 12) continue;
                support::Mp gap;
                gap_lower(an, s1, s2, gap.v);
                check(rho, std::labs(s2), gap.v, "sigma = (" + std::to_string(s1) + "," + std::to_string(s2) + ",*)");
            }
        line.detail << "example 10." << which << ": C' = " << to_decimal(*p.C, 6) << ", a' = " << to_decimal(*p.a, 6)
                    << ", r = " << hs.r->to_string() << ", C'' = " << to_decimal(*hs2.C, 6) << ", a'' = " << to_decimal(*hs2.a, 6)
                    << "; ";
    }
    line.detail << comparisons << " comparisons";
    return line;
}

} // namespace

int main() {
    bool all = true;
    auto run = [&](int k, const std::string& title, const std::function<Line()>& f) {
        Line line;
        try {
            line = f();
        } catch (const std::exception& e) {
            line.require(false, std::string("exception: ") + e.what());
        }
        report(k, title, line);
        all = all && line.pass;
    };
    run(1, "example 10.1 reproduction", [] {
        return example_line("10.1", [](Line& l, const json& rep) {
            l.require(rep["classification"]["verdicts"][0] == "H^p = 0", "verdict text H^p = 0");
        });
    });
    run(2, "example 10.2 reproduction", [] {
        return example_line("10.2", [](Line& l, const json& rep) {
            l.require(rep["classification"]["verdicts"][0] == "H^p ≅ H^p(T, O)", "verdict text H^p = H^p(T, O)");
        });
    });
    run(3, "example 10.3 probe and supergap fallback", [] {
        return example_line("10.3", [](Line& l, const json& rep) {
            const auto& w = rep["printed_construction"]["refute"]["witnesses"];
            for (const auto& r : w) {
                l.require(r["inequality"] != "undecided", "operative inequality decided");
                l.require(r["printed_inequality"]["verdict"] != "undecided", "printed inequality decided");
            }
            l.require(rep["supergap_fallback"]["classification"]["case"] == "II", "fallback case II");
        });
    });
    run(4, "solver round trip on 500 random instances", solver_round_trip);
    run(5, "frame and calculus checks", frame_and_calculus);
    run(6, "spectral identities", spectral_identities);
    run(7, "case-II witness mechanics", witness_mechanics);
    run(8, "constant conversions", conversions);
    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
    return all ? 0 : 1;
}
