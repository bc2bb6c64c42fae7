#include <gtest/gtest.h>

#include "support.hpp"

using namespace torocoh;
using support::sqrt_of;

TEST(Classify, ExampleOneIsCaseIi) {
    ClassificationResult r = classify(support::example_1());
    EXPECT_EQ(r.verdict_case, Case::I_i);
    EXPECT_EQ(r.grade, "certified");
    ASSERT_EQ(r.verdicts.size(), 1u);
    EXPECT_EQ(r.verdicts[0], "H^p = 0");
    EXPECT_FALSE(r.sigma0.has_value());
}

TEST(Classify, ExampleTwoIsCaseIii) {
    ClassifyOptions opt;
    opt.external_facts = true;
    ClassificationResult r = classify(support::example_2(), opt);
    EXPECT_EQ(r.verdict_case, Case::I_ii);
    ASSERT_TRUE(r.sigma0.has_value());
    EXPECT_EQ(*r.sigma0, (Sigma{0, 1, 0}));
    EXPECT_EQ(r.verdicts[0], "H^p ≅ H^p(T, O)");
    ASSERT_EQ(r.dimensions.size(), 1u);
    EXPECT_NE(r.dimensions[0].find("= 1"), std::string::npos);
}

TEST(Classify, SupergapIsCaseII) {
    ClassificationResult r = classify(support::lacunary_example(LacunarySeries::supergap()));
    EXPECT_EQ(r.verdict_case, Case::II);
    EXPECT_EQ(r.grade, "certified");
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(r.witness->all_pass);
}

TEST(Classify, FactorialConstructionStaysUndetermined) {
    ClassificationResult r = classify(support::lacunary_example(LacunarySeries::factorial_pow10()));
    EXPECT_EQ(r.verdict_case, Case::undetermined);
    EXPECT_EQ(r.grade, "evidence");
}

TEST(Classify, TrivialBundleIsStubbed) {
    Analysis an = support::plane(Complex(Real(0), sqrt_of(2)), Complex(Real(0), Real(1)), Complex(Real(1)));
    EXPECT_EQ(classify(an).verdict_case, Case::trivial_bundle);
}

TEST(Classify, IrrationalityFailureIsPrecondition) {
    CMatrix S(2, 1);
    S(0, 0) = Complex(Real(Rational(1, 2)), Real(1));
    S(1, 0) = Complex(Real(Rational(1, 3)));
    Analysis an = support::make(2, 1, S, {Complex(0), Complex(0)}, {Complex(Real(Rational(1, 5)))});
    try {
        classify(an);
        FAIL() << "expected PRECONDITION";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::precondition);
    }
}

TEST(Classify, HigherRankQuadraticInstance) {
    // n = 3, m = 2 over Q(sqrt 3)
    Real r3 = sqrt_of(3);
    CMatrix S(3, 2);
    S(0, 0) = Complex(Real(0), Real(1));
    S(0, 1) = Complex(r3, Real(0));
    S(1, 0) = Complex(Real(Rational(1, 2)), r3);
    S(1, 1) = Complex(Real(0), Real(1));
    S(2, 0) = Complex(r3 * Real(2), Real(0));
    S(2, 1) = Complex(Real(Rational(1, 3)), r3);
    Analysis an = support::make(3, 2, S, {Complex(0), Complex(0), Complex(0)}, {Complex(Real(Rational(1, 7))), Complex(r3)});
    ClassificationResult r = classify(an);
    EXPECT_NE(r.verdict_case, Case::II);
    EXPECT_EQ(r.verdicts.size(), 2u);
}
