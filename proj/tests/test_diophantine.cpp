#include <gtest/gtest.h>

#include "support.hpp"

using namespace torocoh;

namespace {

// min over sigma''' of ||K_sigma + d(L)|| for m = 1 instances, in double precision.
double min_gap(const Analysis& an, long s1, long s2) {
    std::complex<double> v = double(s1) * support::to_c(an.group.S(0, 0)) + double(s2) * support::to_c(an.group.S(1, 0)) +
                             support::to_c(an.inv.dL[0]);
    double best = 1e300;
    for (long d = -1; d <= 1; ++d) {
        long s3 = std::lround(v.real()) + d;
        Sigma s{s1, s2, s3};
        ZSet Z = find_sigma0(*an.ctx);
        if (!Z.contains(s)) continue;
        best = std::min(best, std::abs(v - double(s3)));
    }
    return best;
}

template <class Bound>
void expect_dominates(const Analysis& an, long radius, Bound bound) {
    for (long s1 = -radius; s1 <= radius; ++s1)
        for (long s2 = -radius; s2 <= radius; ++s2) {
            long rho = std::labs(s1) + std::labs(s2);
            if (rho == 0 || rho > radius) continue;
            double g = min_gap(an, s1, s2);
            EXPECT_GE(g, bound(s1, s2, rho)) << "sigma' = " << s1 << ", sigma'' = " << s2;
        }
}

double q_to_d(const Rational& q) { return q.get_d(); }

} // namespace

TEST(Diophantine, CertifyExampleOne) {
    Analysis an = support::example_1();
    ZSet Z = find_sigma0(*an.ctx);
    ConditionReport r = certify(*an.ctx, Z, Status::certified_holds);
    ASSERT_EQ(r.status, Status::certified_holds);
    ASSERT_TRUE(r.C && r.a);
    EXPECT_GT(*r.C, 0);
    double C = q_to_d(*r.C), a = q_to_d(*r.a);
    expect_dominates(an, 10, [&](long, long, long rho) { return C * std::exp(-a * double(rho)); });
}

TEST(Diophantine, CertifyExampleTwoSkipsSigmaZero) {
    Analysis an = support::example_2();
    ZSet Z = find_sigma0(*an.ctx);
    ConditionReport r = certify(*an.ctx, Z, Status::certified_holds);
    ASSERT_EQ(r.status, Status::certified_holds);
    double C = q_to_d(*r.C), a = q_to_d(*r.a);
    expect_dominates(an, 10, [&](long, long, long rho) { return C * std::exp(-a * double(rho)); });
}

TEST(Diophantine, ConversionsDominateBruteForce) {
    for (Analysis an : {support::example_1(), support::example_2()}) {
        ZSet Z = find_sigma0(*an.ctx);
        ConditionReport p = certify(*an.ctx, Z, Status::certified_holds);
        ConditionReport hs = convert_constants(p, Condition::HS, *an.ctx);
        ConditionReport hs2 = convert_constants(p, Condition::HS_double_prime, *an.ctx);
        ASSERT_EQ(hs.status, Status::certified_holds);
        ASSERT_EQ(hs2.status, Status::certified_holds);
        ASSERT_TRUE(hs.r.has_value());
        double r = std::exp(q_to_d(hs.r->x)) + q_to_d(hs.r->y);
        expect_dominates(an, 10, [&](long, long, long rho) { return std::pow(r, -double(rho)); });
        double C2 = q_to_d(*hs2.C), a2 = q_to_d(*hs2.a);
        expect_dominates(an, 10, [&](long, long s2, long) { return C2 * std::exp(-a2 * double(std::labs(s2))); });
        ConditionReport back = convert_constants(hs, Condition::HS_prime, *an.ctx);
        EXPECT_EQ(back.status, Status::certified_holds);
        EXPECT_EQ(convert_constants(hs2, Condition::HS_prime, *an.ctx).status, Status::certified_holds);
    }
}

TEST(Diophantine, CertifyDeclinesWhenIrrationalityFails) {
    Analysis an = support::example_1();
    ConditionReport r = certify(*an.ctx, find_sigma0(*an.ctx), Status::certified_fails);
    EXPECT_EQ(r.status, Status::unknown);
}

TEST(Diophantine, ConversionNeedsCertifiedInput) {
    Analysis an = support::example_1();
    ConditionReport r;
    EXPECT_THROW(convert_constants(r, Condition::HS, *an.ctx), Error);
}

TEST(Diophantine, ScanExampleOneLooksExponential) {
    Analysis an = support::example_1();
    ConditionReport r = scan(*an.ctx, find_sigma0(*an.ctx), 6);
    EXPECT_EQ(r.status, Status::evidence_holds);
    ASSERT_EQ(r.shells.size(), 6u);
    for (const auto& g : r.shells) {
        double brute = 1e300;
        for (long s1 = -g.shell; s1 <= g.shell; ++s1) {
            long rest = g.shell - std::labs(s1);
            for (long s2 : {-rest, rest}) brute = std::min(brute, min_gap(an, s1, s2));
        }
        EXPECT_NEAR(q_to_d(g.gap.lo), brute, 1e-9 * brute) << "shell " << g.shell;
    }
}

TEST(Diophantine, ScanSupergapSeesCollapse) {
    Analysis an = support::lacunary_example(LacunarySeries::supergap());
    ConditionReport r = scan(*an.ctx, find_sigma0(*an.ctx), 12);
    EXPECT_EQ(r.status, Status::evidence_fails);
}

TEST(Diophantine, RefuteSupergapIsCertified) {
    Analysis an = support::lacunary_example(LacunarySeries::supergap());
    ZSet Z = find_sigma0(*an.ctx);
    ConditionReport r = refute(*an.ctx, Z, WitnessRule::standard(3, "supergap", 3));
    EXPECT_EQ(r.status, Status::certified_fails);
    ASSERT_EQ(r.witnesses.size(), 3u);
    for (const auto& w : r.witnesses) EXPECT_EQ(w.verdict, Sign::positive) << "nu = " << w.nu;
    // nu = 1: q = 10, |q lambda - p| = 10^-9 + O(10^(1 - 10^20))
    const auto& g = r.witnesses[0].gap_depth;
    double lo = mpfr_get_d(g.log10_lo().get(), MPFR_RNDD), hi = mpfr_get_d(g.log10_hi().get(), MPFR_RNDU);
    EXPECT_LE(lo, std::log10(9.0) + 1e-12);
    EXPECT_GE(hi, std::log10(9.0) - 1e-12);
}

TEST(Diophantine, FactorialConstructionFailsBothInequalities) {
    Analysis an = support::lacunary_example(LacunarySeries::factorial_pow10());
    ConditionReport r = refute(*an.ctx, find_sigma0(*an.ctx), WitnessRule::standard(3, "factorial-pow10", 2));
    EXPECT_NE(r.status, Status::certified_fails);
    ASSERT_EQ(r.witnesses.size(), 2u);
    for (const auto& w : r.witnesses) {
        EXPECT_EQ(w.verdict, Sign::negative);
        EXPECT_EQ(w.printed_verdict, Sign::negative);
    }
    // nu = 1: q = 10^11, gap = 10^(11 - 100) (1 + tiny) so -log10 gap = 89 - log10(1 + tiny)
    const auto& g = r.witnesses[0].gap_depth;
    double lo = mpfr_get_d(g.log10_lo().get(), MPFR_RNDD), hi = mpfr_get_d(g.log10_hi().get(), MPFR_RNDU);
    EXPECT_LE(lo, std::log10(89.0) + 1e-12);
    EXPECT_GE(hi, std::log10(89.0 - std::log10(2.0)) - 1e-12);
}

TEST(Diophantine, RefuteDeclinesAlgebraicData) {
    Analysis an = support::example_1();
    ConditionReport r = refute(*an.ctx, find_sigma0(*an.ctx), WitnessRule::standard(3, "supergap", 3));
    EXPECT_EQ(r.status, Status::unknown);
    EXPECT_TRUE(r.witnesses.empty());
}

TEST(Diophantine, UnknownWitnessRuleIsInvalid) {
    EXPECT_THROW(WitnessRule::standard(3, "nope"), Error);
}

TEST(Diophantine, ConditionNames) {
    EXPECT_STREQ(to_string(Condition::HS), "HS");
    EXPECT_STREQ(to_string(Condition::HS_prime), "HS'");
    EXPECT_STREQ(to_string(Condition::HS_double_prime), "HS''");
}
