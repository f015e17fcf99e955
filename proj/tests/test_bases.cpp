#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <sojourn/bases.hpp>

using namespace sojourn;

TEST(BrownianBasis, ValuesAndSlopes) {
    const auto b = brownian_basis();
    const auto c = b.increasing(1.0, 0.0), d = b.decreasing(1.0, 0.0);
    EXPECT_DOUBLE_EQ(c.scaled_value().value(), 1.0);
    EXPECT_DOUBLE_EQ(c.scaled_slope().value(), 1.0);
    EXPECT_DOUBLE_EQ(d.scaled_value().value(), 1.0);
    EXPECT_DOUBLE_EQ(d.scaled_slope().value(), -1.0);
    const auto e = b.increasing(4.0, 0.5);
    EXPECT_NEAR(e.scaled_value().value(), std::exp(1.0), 1e-15);
    EXPECT_NEAR(e.scaled_slope().value(), 2.0 * std::exp(1.0), 1e-14);
    EXPECT_DOUBLE_EQ(kappa(b, 3.0), 1.0);
}

TEST(BrownianBasis, RejectsNonPositiveRate) {
    EXPECT_THROW(brownian_basis().increasing(0.0, 1.0), Error);
    EXPECT_THROW(brownian_basis().decreasing(-1.0, 1.0), Error);
}

TEST(BrownianBasis, FarArgumentsStayFinite) {
    const auto c = brownian_basis().increasing(100.0, 1000.0);
    EXPECT_NEAR(c.scaled_value().log_abs(), 10000.0, 1e-9);
}

TEST(BrownianBasis, WronskianWeightIsTwoRootR) {
    const auto b = brownian_basis();
    for (double r : {0.25, 1.0, 9.0})
        for (double x : {-30.0, -1.0, 0.0, 2.5, 40.0})
            EXPECT_NEAR(wronskian_weight(b, r, x).value(), 2.0 * std::sqrt(r), 1e-12 * std::sqrt(r));
}

TEST(BuiltinBases, ContractHoldsOnAGrid) {
    for (double r : {0.1, 1.0, 10.0}) {
        const auto chk = check_basis(brownian_basis(), r, -5.0, 5.0, 100);
        EXPECT_TRUE(chk.ok) << chk.message;
        for (auto [s, drift] : {std::pair{1.0, 0.3}, {0.5, -2.0}, {std::sqrt(2.0), 0.0}}) {
            const auto g = check_basis(ConstantCoefficientBasis(s, drift), r, -5.0, 5.0, 100);
            EXPECT_TRUE(g.ok) << g.message;
        }
    }
}

TEST(BuiltinBases, OdeResidual) {
    const ConstantCoefficientBasis g(0.7, 0.4);
    for (double r : {0.1, 1.0, 10.0})
        for (double x : {-3.0, 0.0, 2.0}) {
            EXPECT_LT(ode_residual(brownian_basis(), r, brownian_basis().increasing(r, x), x), 1e-9);
            EXPECT_LT(ode_residual(brownian_basis(), r, brownian_basis().decreasing(r, x), x), 1e-9);
            EXPECT_LT(ode_residual(g, r, g.increasing(r, x), x), 1e-9);
            EXPECT_LT(ode_residual(g, r, g.decreasing(r, x), x), 1e-9);
        }
}

TEST(BuiltinBases, DriftlessGeneralMatchesBrownian) {
    const ConstantCoefficientBasis g(std::sqrt(2.0), 0.0);
    for (double x : {-2.0, 0.3, 5.0}) {
        EXPECT_NEAR(potential(g, 1.5, x, 0.7), potential(brownian_basis(), 1.5, x, 0.7), 1e-14);
    }
}

TEST(BuiltinBases, DriftMakesTheWronskianWeightVary) {
    // w(x) = W(x)/κ is constant only without drift; Abel's identity is what holds
    const ConstantCoefficientBasis g(1.0, 0.5);
    const double w0 = wronskian_weight(g, 1.0, 0.0).value(), w1 = wronskian_weight(g, 1.0, 1.0).value();
    EXPECT_NEAR(w1 / w0, std::exp(-2.0 * 0.5 / 1.0), 1e-13);
}

TEST(Potential, BrownianValues) {
    const auto b = brownian_basis();
    EXPECT_NEAR(potential(b, 1.0, 0.0, 0.0), 0.5, 1e-15);
    EXPECT_NEAR(potential(b, 4.0, 0.0, 1.0), 0.25 * std::exp(-2.0), 1e-15);
    EXPECT_NEAR(potential(b, 2.0, 1.0, -1.0), potential(b, 2.0, -1.0, 1.0), 1e-15);
}

TEST(Potential, ContinuityAndDerivativeJumpAtY) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(-3.0, 3.0), rate(0.1, 5.0);
    const ConstantCoefficientBasis g(0.8, -0.3);
    for (int k = 0; k < 20; ++k) {
        const double y = pos(rng), lam = rate(rng);
        for (const auto* which : {"brownian", "general"}) {
            const bool bm = std::string(which) == "brownian";
            auto rho = [&](double x) { return bm ? potential(brownian_basis(), lam, x, y) : potential(g, lam, x, y); };
            auto drho = [&](bool right) {
                return bm ? potential_derivative(brownian_basis(), lam, y, y, right)
                          : potential_derivative(g, lam, y, y, right);
            };
            const double kap = bm ? 1.0 : kappa(g, y);
            EXPECT_NEAR(rho(y + 1e-12), rho(y - 1e-12), 1e-10);
            EXPECT_NEAR(drho(true) - drho(false), -kap, 1e-10 * kap);
        }
    }
}

TEST(HittingTime, Values) {
    const auto b = brownian_basis();
    EXPECT_DOUBLE_EQ(hitting_time_transform(b, 1.0, 0.5, 0.5), 1.0);
    EXPECT_NEAR(hitting_time_transform(b, 1.0, 0.0, 1.0), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(hitting_time_transform(b, 1.0, 3.0, 1.0), std::exp(-2.0), 1e-15);
    double prev = 1.0;
    for (double x = 1.0; x > -5.0; x -= 0.5) {
        const double h = hitting_time_transform(b, 2.0, x, 1.0);
        EXPECT_LE(h, prev);
        prev = h;
    }
}

TEST(CustomBasis, WrapsUserEvaluators) {
    // Brownian again, supplied as user callbacks without thread-safety
    CustomBasis c([](double r, double x) { return std::pair{std::exp(std::sqrt(r) * x), std::sqrt(r) * std::exp(std::sqrt(r) * x)}; },
                  [](double r, double x) { return std::pair{std::exp(-std::sqrt(r) * x), -std::sqrt(r) * std::exp(-std::sqrt(r) * x)}; },
                  [](double) { return std::sqrt(2.0); }, [](double) { return 0.0; }, false);
    EXPECT_FALSE(c.thread_safe());
    EXPECT_FALSE(c.constant_coefficients());
    const auto p = c.increasing(4.0, 0.5);
    EXPECT_NEAR(p.curvature, 4.0 * std::exp(1.0), 1e-13); // from the ODE identity
    EXPECT_NEAR(potential(c, 1.0, 0.0, 0.0), 0.5, 1e-15);
    EXPECT_TRUE(check_basis(c, 1.0, -2.0, 2.0, 50).ok);
}

TEST(CustomBasis, BadEvaluatorsAreReported) {
    CustomBasis c([](double, double) { return std::pair{NAN, 1.0}; }, [](double, double) { return std::pair{1.0, -1.0}; },
                  [](double) { return 1.0; }, [](double) { return 0.0; }, true);
    EXPECT_THROW(c.increasing(1.0, 0.0), Error);
    CustomBasis bad_sigma([](double, double) { return std::pair{1.0, 1.0}; },
                          [](double, double) { return std::pair{1.0, -1.0}; }, [](double) { return -1.0; },
                          [](double) { return 0.0; }, true);
    EXPECT_THROW(bad_sigma.increasing(1.0, 0.0), Error);
    // a "decreasing" solution that increases fails the contract check
    CustomBasis wrong([](double r, double x) { return std::pair{std::exp(std::sqrt(r) * x), std::sqrt(r) * std::exp(std::sqrt(r) * x)}; },
                      [](double r, double x) { return std::pair{std::exp(std::sqrt(r) * x), std::sqrt(r) * std::exp(std::sqrt(r) * x)}; },
                      [](double) { return std::sqrt(2.0); }, [](double) { return 0.0; }, true);
    EXPECT_FALSE(check_basis(wrong, 1.0, -1.0, 1.0, 10).ok);
}
