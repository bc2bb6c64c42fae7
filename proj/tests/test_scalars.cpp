#include <gtest/gtest.h>

#include "support.hpp"

using namespace torocoh;
using support::sqrt_of;

namespace {

// Reference decimals computed independently (50 digits).
const char* const kSqrt2 = "1.41421356237309504880168872420969807856967187537694";
const char* const kCbrt2 = "1.25992104989487316476721060727822835057025146470150";

Rational decimal_rational(const std::string& s) { return parse_rational(s); }

} // namespace

TEST(Scalars, RationalArithmeticIsExact) {
    Real a(Rational(1, 3)), b(Rational(1, 6));
    EXPECT_TRUE((a + b - Real(Rational(1, 2))).is_zero());
    EXPECT_EQ((a * b).rational_value(), Rational(1, 18));
    EXPECT_EQ(cert_sign(a - b), Sign::positive);
}

TEST(Scalars, SqrtTwoEnclosureContainsReference) {
    CertifiedEnclosure e = refine(ScalarDescriptor::sqrt(2), 40);
    Rational ref = decimal_rational(kSqrt2);
    EXPECT_LE(e.width(), Rational(1, pow10(40)));
    EXPECT_LE(e.lower, ref + Rational(1, pow10(45)));
    EXPECT_GE(e.upper, ref - Rational(1, pow10(45)));
}

TEST(Scalars, CubeRootEnclosureContainsReference) {
    auto s = ScalarDescriptor::algebraic({Integer(-2), Integer(0), Integer(0), Integer(1)}, Interval(Rational(1), Rational(2)));
    CertifiedEnclosure e = refine(s, 30);
    Rational ref = decimal_rational(kCbrt2);
    EXPECT_LE(e.width(), Rational(1, pow10(30)));
    EXPECT_TRUE(e.lower <= ref + Rational(1, pow10(45)) && ref - Rational(1, pow10(45)) <= e.upper);
}

TEST(Scalars, AlgebraicIdentitiesAreCertifiedZero) {
    Real r = sqrt_of(2);
    EXPECT_EQ(cert_sign(r * r - Real(2)), Sign::zero);
    EXPECT_EQ(cert_sign(Real(Rational(1414, 1000)) - r), Sign::negative);
    EXPECT_EQ(cert_sign(Real(Rational(1415, 1000)) - r), Sign::positive);
    Real inv = r.inverse();
    EXPECT_TRUE((inv * r - Real(1)).is_zero());
    EXPECT_TRUE((inv - r / Real(2)).is_zero());
}

TEST(Scalars, QuadraticRejectsNonSquareFree) {
    EXPECT_THROW(ScalarDescriptor::quadratic(0, 1, 8), Error);
    EXPECT_THROW(ScalarDescriptor::quadratic(0, 1, -3), Error);
}

TEST(Scalars, MixedGeneratorsAreRejected) {
    try {
        Real bad = sqrt_of(2) + sqrt_of(3);
        (void)bad;
        FAIL() << "expected MIXED_FIELD";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::mixed_field);
    }
}

TEST(Scalars, FloatTaggedRefinementIsBoundedByClaimedError) {
    auto s = ScalarDescriptor::float_tagged("0.1", Rational(1, 100000));
    CertifiedEnclosure e = refine(s, 4);
    EXPECT_FALSE(e.exact);
    try {
        refine(s, 8);
        FAIL() << "expected UNCERTIFIABLE";
    } catch (const Error& err) {
        EXPECT_EQ(err.code(), Errc::uncertifiable);
    }
}

TEST(Scalars, LiouvilleBoundHoldsAgainstBruteForce) {
    auto s = ScalarDescriptor::quadratic(Rational(1, 3), Rational(2), 5);
    support::Mp alpha, t;
    mpfr_sqrt_ui(alpha.v, 5, MPFR_RNDN);
    mpfr_mul_ui(alpha.v, alpha.v, 2, MPFR_RNDN);
    mpfr_set_q(t.v, Rational(1, 3).get_mpq_t(), MPFR_RNDN);
    mpfr_add(alpha.v, alpha.v, t.v, MPFR_RNDN);
    for (long q = 1; q <= 400; ++q) {
        LiouvilleBound lb = liouville_lower_bound(s, Integer(q));
        support::Mp x, c;
        mpfr_mul_si(x.v, alpha.v, q, MPFR_RNDN);
        mpfr_set(c.v, x.v, MPFR_RNDN);
        mpfr_round(c.v, c.v);
        mpfr_sub(x.v, x.v, c.v, MPFR_RNDN);
        mpfr_abs(x.v, x.v, MPFR_RNDN);
        support::Mp bound;
        mpfr_set_q(bound.v, lb.c.get_mpq_t(), MPFR_RNDU);
        ASSERT_GE(mpfr_cmp(x.v, bound.v), 0) << "q = " << q;
    }
}

TEST(Scalars, LacunaryFiniteSeriesIsRational) {
    auto s = ScalarDescriptor::lacunary(LacunarySeries::custom({Integer(1), Integer(3)}));
    Real v = s.to_real();
    ASSERT_TRUE(v.is_rational());
    EXPECT_EQ(v.rational_value(), Rational(101, 1000));
}

TEST(Scalars, LacunaryGeneratorIsIrrational) {
    Real l = ScalarDescriptor::lacunary(LacunarySeries::supergap()).to_real();
    EXPECT_FALSE(l.is_rational());
    Interval e = l.enclose(Rational(1, pow10(15)));
    // 0.1 + 10^-10 + ...
    EXPECT_TRUE(e.contains(Rational(1, 10) + Rational(1, pow10(10))) || e.lo > Rational(1, 10));
    EXPECT_LT(e.hi, Rational(1, 10) + Rational(2, pow10(10)));
}
