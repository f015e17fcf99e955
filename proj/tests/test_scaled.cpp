#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <sojourn/scaled.hpp>

using namespace sojourn;

TEST(ScaledReal, RoundTripsOrdinaryValues) {
    for (double v : {1.0, -3.5, 1e-200, 7e250, 0.1}) EXPECT_EQ(ScaledReal(v).value(), v);
    EXPECT_TRUE(ScaledReal(0.0).is_zero());
    EXPECT_EQ(ScaledReal(-2.0).sign(), -1);
}

TEST(ScaledReal, MantissaIsNormalised) {
    const ScaledReal a(12.0);
    EXPECT_GE(std::fabs(a.mantissa()), 0.5);
    EXPECT_LT(std::fabs(a.mantissa()), 1.0);
    EXPECT_EQ(a.exp2(), 4);
}

TEST(ScaledReal, ProductsBeyondDoubleRange) {
    const ScaledReal big = ScaledReal::from_log(1.0, 800.0);
    const ScaledReal small = ScaledReal::from_log(1.0, -790.0);
    EXPECT_NEAR((big * small).value(), std::exp(10.0), 1e-9 * std::exp(10.0));
    EXPECT_NEAR(big.log_abs(), 800.0, 1e-12);
    EXPECT_TRUE(std::isinf(big.value()));
    EXPECT_NEAR((big / big).value(), 1.0, 1e-15);
}

TEST(ScaledReal, SumsAlignScales) {
    const ScaledReal a = ScaledReal::from_log(3.0, 900.0), b = ScaledReal::from_log(-1.0, 900.0);
    EXPECT_NEAR((a + b).log_abs(), std::log(2.0) + 900.0, 1e-12);
    EXPECT_TRUE((a - a).is_zero());
    // the tiny term vanishes next to the big one
    EXPECT_EQ((a + ScaledReal(1.0)).mantissa(), a.mantissa());
}

TEST(ScaledReal, RejectsNonFinite) {
    EXPECT_THROW(ScaledReal(NAN), Error);
    EXPECT_THROW(ScaledReal(1.0) / ScaledReal(0.0), Error);
}

TEST(ScaledMat2, InverseAndDeterminant) {
    const ScaledMat2 m(2.0, 1.0, -1.0, 3.0);
    EXPECT_NEAR(m.det().value(), 7.0, 1e-14);
    EXPECT_LT(relative_distance(m * m.inverse(), ScaledMat2::identity()), 1e-15);
    EXPECT_THROW(ScaledMat2(1.0, 2.0, 2.0, 4.0).inverse(), Error);
}

TEST(ScaledMat2, LongProductsKeepTheirScale) {
    // e^{40}-sized factors: 60 of them overflow a double many times over
    const ScaledMat2 f = ScaledMat2::from_log(1.0, 0.5, 0.25, 1.0, 40.0);
    ScaledMat2 p = ScaledMat2::identity();
    for (int i = 0; i < 60; ++i) p = p * f;
    // [[1, .5], [.25, 1]]^60 has (0,0) entry (l1^60 + l2^60)/2 with l = 1 ± √(1/8)
    const double l1 = 1.0 + std::sqrt(0.125), l2 = 1.0 - std::sqrt(0.125);
    const double expected = 2400.0 + std::log(0.5 * (std::pow(l1, 60) + std::pow(l2, 60)));
    EXPECT_NEAR(p(0, 0).log_abs(), expected, 1e-12 * expected);
    EXPECT_NEAR(p(1, 0).log_abs() - p(0, 1).log_abs(), std::log(0.5), 1e-12);
}

TEST(ScaledMat2, ColumnsRowsAndVectors) {
    const ScaledVec2 a(1.0, 2.0), b(3.0, -4.0);
    const ScaledMat2 m = ScaledMat2::from_columns(a, b);
    EXPECT_EQ(m.value(0, 1), 3.0);
    EXPECT_EQ(m.value(1, 0), 2.0);
    const ScaledVec2 v = m * ScaledVec2::unit(1);
    EXPECT_EQ(v.value(0), 3.0);
    EXPECT_EQ(v.value(1), -4.0);
    EXPECT_EQ(det(a, b).value(), -10.0);
}

TEST(ScaledMat2, RandomProductsMatchPlainArithmetic) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 200; ++t) {
        const double a[4] = {u(rng), u(rng), u(rng), u(rng)}, b[4] = {u(rng), u(rng), u(rng), u(rng)};
        const ScaledMat2 p = ScaledMat2(a[0], a[1], a[2], a[3]) * ScaledMat2(b[0], b[1], b[2], b[3]);
        const double c[4] = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
                             a[2] * b[1] + a[3] * b[3]};
        EXPECT_LT(relative_distance(p, ScaledMat2(c[0], c[1], c[2], c[3])), 1e-14);
    }
}

TEST(ScaledMat2, EntriesKeepTheirOwnScale) {
    // columns e^{±900}: a shared exponent would flush the small one to zero
    const ScaledVec2 up(ScaledReal::from_log(1.0, 900.0), ScaledReal::from_log(2.0, 900.0));
    const ScaledVec2 down(ScaledReal::from_log(1.0, -900.0), ScaledReal::from_log(-2.0, -900.0));
    const ScaledMat2 m = ScaledMat2::from_columns(up, down);
    EXPECT_NEAR(m.det().value(), -4.0, 1e-14);
    EXPECT_LT(relative_distance(m * m.inverse(), ScaledMat2::identity()), 1e-15);
    EXPECT_LT(relative_distance(m.inverse() * m, ScaledMat2::identity()), 1e-15);
}
