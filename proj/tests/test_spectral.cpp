#include <gtest/gtest.h>

#include "support.hpp"

using namespace torocoh;
using support::sqrt_of;

TEST(Spectral, KMatchesDirectFormula) {
    support::Rng rng(31);
    Analysis an = support::random_analysis(rng, 4, 3, 2);
    for (int k = 0; k < 50; ++k) {
        Sigma s = support::random_sigma(rng, 7, 6);
        CVector a = an.ctx->K(s), b = support::K_direct(an.group, s);
        for (std::size_t j = 0; j < a.size(); ++j) EXPECT_TRUE((a[j] - b[j]).is_zero());
    }
}

TEST(Spectral, ShiftIdentityHolds) {
    // (K~ + beta)/pi computed from c_{lj} and alpha equals (K + d(L)) C_1
    support::Rng rng(32);
    for (int inst = 0; inst < 5; ++inst) {
        Analysis an = support::random_analysis(rng, 3, 2, 3);
        for (int k = 0; k < 20; ++k) {
            Sigma s = support::random_sigma(rng, 5, 8);
            CVector K = support::K_direct(an.group, s);
            CVector w = an.ctx->w(s);
            for (std::size_t j = 0; j < 2; ++j) {
                Complex lhs = an.inv.alpha[j].conj().times_i();
                for (std::size_t l = 0; l < 2; ++l) lhs = lhs + Complex(an.frame.C(l, j)) * K[l];
                EXPECT_EQ(cert_sign((lhs - w[j]).abs2()), Sign::zero);
            }
        }
    }
}

TEST(Spectral, PivotMaximizesComponent) {
    support::Rng rng(33);
    Analysis an = support::random_analysis(rng, 3, 3, 2);
    for (int k = 0; k < 40; ++k) {
        Sigma s = support::random_sigma(rng, 6, 5);
        SpectralShift sh = k_sigma(*an.ctx, s);
        Real top = sh.shifted_over_pi[sh.pivot - 1].abs2();
        Real total(0);
        for (const auto& z : sh.shifted_over_pi) {
            EXPECT_NE(cert_sign(top - z.abs2()), Sign::negative);
            total = total + z.abs2();
        }
        EXPECT_NE(cert_sign(Real(3) * top - total), Sign::negative);
    }
}

TEST(Spectral, ExampleTwoSigmaZero) {
    Analysis an = support::example_2();
    ZSet Z = find_sigma0(*an.ctx);
    ASSERT_TRUE(Z.has_sigma0);
    EXPECT_EQ(Z.sigma0, (Sigma{0, 1, 0}));
    EXPECT_TRUE(Z.certified);
    for (const auto& v : an.ctx->KdL(Z.sigma0)) EXPECT_TRUE(v.is_zero());
}

TEST(Spectral, ExampleOneHasNoSigmaZero) {
    Analysis an = support::example_1();
    EXPECT_FALSE(find_sigma0(*an.ctx).has_sigma0);
}

TEST(Spectral, SigmaZeroIsUniqueInBox) {
    for (Analysis an : {support::example_1(), support::example_2()}) {
        ZSet Z = find_sigma0(*an.ctx);
        int zeros = 0;
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b)
                for (long c = -6; c <= 6; ++c) {
                    Sigma s{a, b, c};
                    bool zero = an.ctx->KdL(s)[0].is_zero();
                    if (zero) {
                        ++zeros;
                        EXPECT_TRUE(Z.has_sigma0 && Z.sigma0 == s);
                    }
                }
        EXPECT_EQ(zeros, Z.has_sigma0 ? 1 : 0);
    }
}

TEST(Spectral, WrongSigmaLengthIsRejected) {
    Analysis an = support::example_1();
    EXPECT_THROW(an.ctx->K(Sigma{1, 2}), Error);
}

TEST(Spectral, ExampleOneMZero) {
    Analysis an = support::example_1();
    M0Result r = m0(*an.ctx, find_sigma0(*an.ctx));
    EXPECT_TRUE((r.m0_squared - Real(Rational(1, 4))).is_zero());
}
