#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <sojourn/localtime.hpp>

#include "checks.hpp"
#include "oracles.hpp"

using namespace sojourn;

namespace {

/// φ for the bands [u_i - ε, u_i + ε] with multipliers μ_i/ε.
double banded_phi(const std::vector<double>& pts, const std::vector<double>& mu, double lambda, double eps, double x) {
    std::vector<std::pair<double, double>> bands;
    std::vector<double> m;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bands.emplace_back(pts[i] - eps, pts[i] + eps);
        m.push_back(mu[i] / eps);
    }
    return phi(brownian_basis(), IntervalUnion::make(bands), LaplaceParams(lambda, m), x);
}

} // namespace

TEST(LimitPair, Examples) {
    const auto [P, Q] = limit_pair(1.0, 1.0, 0.0);
    EXPECT_EQ(relative_distance(P, ScaledMat2(2.0, 1.0, -1.0, 0.0)), 0.0);
    EXPECT_EQ(relative_distance(Q, ScaledMat2(1.0, 0.0, -1.0, 0.0)), 0.0);
    const auto [I, Z] = limit_pair(3.0, 0.0, 2.0);
    EXPECT_EQ(relative_distance(I, ScaledMat2::identity()), 0.0);
    EXPECT_TRUE(Z.is_zero());
    for (double u : {-5.0, 0.3, 8.0}) EXPECT_NEAR(limit_pair(2.0, 0.7, u).first.det().value(), 1.0, 1e-13);
}

TEST(LimitPair, IsTheLimitOfShrinkingBands) {
    const double eps = 1e-4;
    for (auto [lambda, mu, u] : {std::tuple{1.0, 1.0, 0.0}, {2.0, 0.5, 0.7}, {0.5, 3.0, -1.2}}) {
        const auto a = assemble(brownian_basis(), IntervalUnion::make({{u - eps, u + eps}}), LaplaceParams(lambda, {mu / eps}));
        const auto [P, Q] = limit_pair(lambda, mu, u);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                if (P(r, c).is_zero()) {
                    EXPECT_LT(std::fabs(a.P[0].value(r, c)), 5e-3);
                    continue;
                }
                EXPECT_LT(relative_distance(a.P[0](r, c), P(r, c)), 5e-3) << r << c;
            }
        // ν_ε Q_ε → Q̄ / λ
        const ScaledMat2 nuQ = ScaledReal(a.blocks[0].nu) * a.Q[0];
        EXPECT_LT(relative_distance(nuQ, ScaledReal(1.0 / lambda) * Q), 5e-3);
    }
}

TEST(LocalTime, Examples) {
    const auto pts = PointSet::make({0.0});
    EXPECT_NEAR(local_time_transform(pts, LaplaceParams(1.0, {1.0}), 0.0), 0.5, 1e-15);
    EXPECT_NEAR(local_time_transform(pts, LaplaceParams(1.0, {1.0}), 1.0), 1.0 - 0.5 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(1.0 - 0.5 * std::exp(-1.0), 0.81606, 5e-6);
    for (double x : {-2.0, 0.0, 3.0}) EXPECT_EQ(local_time_transform(pts, LaplaceParams(2.0, {0.0}), x), 0.5);
}

TEST(ClosedForms, Examples) {
    EXPECT_EQ(closed_form_one_point(3.0, 0.0, 1.0, 2.0), 1.0 / 3.0);
    EXPECT_NEAR(closed_form_one_point(1.0, 1.0, 0.5, 0.5), 0.5, 1e-15);
    EXPECT_NEAR(closed_form_one_point(1.0, 1.0, 0.5, 80.0), 1.0, 1e-15);
    // 0.6554364 to seven places; the five-place value 0.65543 is truncated
    EXPECT_NEAR(closed_form_two_points(1.0, 1.0, 1.0, -1.0, 1.0, 0.0), 0.65543, 1e-5);
    EXPECT_NEAR(closed_form_two_points(1.0, 1.0, 1.0, -1.0, 1.0, 0.0), oracle::local_time({-1.0, 1.0}, 1.0, {1.0, 1.0})(0.0),
                1e-14);
    for (double x : {-3.0, -1.0, 0.2, 1.0, 4.0}) {
        EXPECT_NEAR(closed_form_two_points(0.7, 2.0, 0.0, -1.0, 1.0, x), closed_form_one_point(0.7, 2.0, -1.0, x), 1e-15);
        // (u, μ) ↔ (v, ν) with x reflected about the midpoint
        EXPECT_NEAR(closed_form_two_points(0.7, 2.0, 0.5, -1.0, 2.0, x), closed_form_two_points(0.7, 0.5, 2.0, -1.0, 2.0, 1.0 - x),
                    1e-15);
    }
}

TEST(LocalTime, MatchesTheClosedForms) {
    for (double lambda : {0.5, 1.0, 2.0})
        for (double mu : {0.0, 0.5, 1.0, 5.0})
            for (double nu : {0.0, 0.5, 1.0, 5.0})
                for (int k = 0; k <= 40; ++k) {
                    const double x = -3.0 + 6.0 * k / 40.0;
                    const double one = local_time_transform(PointSet::make({-0.5}), LaplaceParams(lambda, {mu}), x);
                    EXPECT_LT(checks::rel(one, closed_form_one_point(lambda, mu, -0.5, x)), 1e-11);
                    const double two = local_time_transform(PointSet::make({-0.5, 1.0}), LaplaceParams(lambda, {mu, nu}), x);
                    EXPECT_LT(checks::rel(two, closed_form_two_points(lambda, mu, nu, -0.5, 1.0, x)), 1e-11) << "x=" << x;
                }
}

TEST(LocalTime, MatchesTheDenseOracle) {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> count(1, 6);
    std::uniform_real_distribution<double> gap(0.1, 2.0), rate(0.0, 4.0), lam(0.1, 10.0);
    for (int t = 0; t < 40; ++t) {
        std::vector<double> pts{-3.0}, mu;
        const int n = count(rng);
        for (int i = 1; i < n; ++i) pts.push_back(pts.back() + gap(rng));
        for (int i = 0; i < n; ++i) mu.push_back(rate(rng));
        const double lambda = lam(rng);
        const auto s = solve_local_time(PointSet::make(pts), LaplaceParams(lambda, mu));
        const auto dense = oracle::local_time(pts, lambda, mu);
        for (double x = pts.front() - 2.0; x < pts.back() + 2.0; x += 0.17) EXPECT_LT(checks::rel(s(x), dense(x)), 1e-10);
    }
}

TEST(LocalTime, ContinuousAtThePointsWithTheRightKink) {
    const std::vector<double> pts{-1.0, 0.2, 0.9};
    const std::vector<double> mu{0.8, 2.0, 0.3};
    const auto s = solve_local_time(PointSet::make(pts), LaplaceParams(1.7, mu));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto l = s.function.jet_on_piece(i, pts[i]), r = s.function.jet_on_piece(i + 1, pts[i]);
        EXPECT_NEAR(l.value, r.value, 1e-11);
        // slope jump 2μ_i f(u_i)
        EXPECT_NEAR(r.slope - l.slope, 2.0 * mu[i] * l.value, 1e-11);
    }
    EXPECT_TRUE(s.assembly.B.back().first.is_zero());
}

TEST(LocalTime, LiteralCoefficientsAgree) {
    const auto pts = PointSet::make({-0.5, 0.4, 1.0});
    const LaplaceParams p(1.2, {0.5, 2.0, 1.0});
    const auto a = assemble_local_time(pts, p);
    // γ̄₀ = (1 0)S̄_nC₀ / (1 0)R̄_nC₀ and B̄_i = S̄_iC₀ - γ̄₀R̄_iC₀, evaluated literally
    const auto& R = a.R.back();
    const auto& S = a.S.back();
    EXPECT_LT(relative_distance(a.gamma0, S(0, 0) / R(0, 0)), 1e-12);
    for (std::size_t i = 0; i < a.B.size(); ++i) {
        const ScaledReal b0 = a.S[i](0, 0) - a.gamma0 * a.R[i](0, 0), b1 = a.S[i](1, 0) - a.gamma0 * a.R[i](1, 0);
        const double scale = std::max({std::fabs(a.S[i].value(0, 0)), std::fabs((a.gamma0 * a.R[i](0, 0)).value()), 1e-300});
        EXPECT_NEAR(a.B[i].first.value(), b0.value(), 1e-12 * scale) << i;
        const double scale1 = std::max({std::fabs(a.S[i].value(1, 0)), std::fabs((a.gamma0 * a.R[i](1, 0)).value()), 1e-300});
        EXPECT_NEAR(a.B[i].second.value(), b1.value(), 1e-12 * scale1) << i;
    }
}

TEST(LocalTime, BoundsAndMonotonicity) {
    const std::vector<double> pts{-1.0, 0.5};
    for (double x : {-2.0, -1.0, 0.0, 0.5, 2.0}) {
        double prev = INFINITY;
        for (double mu : {0.0, 0.3, 1.0, 4.0, 20.0}) {
            const double f = local_time_transform(PointSet::make(pts), LaplaceParams(2.0, {mu, 1.0}), x);
            EXPECT_GT(f, 0.0);
            EXPECT_LE(f, 0.5);
            EXPECT_LE(f, prev);
            prev = f;
        }
    }
}

TEST(LocalTime, ShrinkingBandsConvergeLinearly) {
    const std::vector<double> pts{-0.8, 0.3, 1.1};
    const std::vector<double> mu{1.0, 0.5, 2.0};
    const double lambda = 1.5;
    const auto s = solve_local_time(PointSet::make(pts), LaplaceParams(lambda, mu));
    double worst_small = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double x = -2.0 + 4.0 * k / 9.0;
        std::vector<double> err;
        for (double eps : {1e-2, 1e-3, 1e-4}) err.push_back(std::fabs(banded_phi(pts, mu, lambda, eps, x) - s(x)));
        worst_small = std::max(worst_small, err[2]);
        // observed order about one: each tenfold shrink divides the error by roughly ten
        EXPECT_LT(err[1], 0.2 * err[0] + 1e-9) << "x=" << x;
        EXPECT_LT(err[2], 0.2 * err[1] + 1e-9) << "x=" << x;
        EXPECT_LT(err[2] / 1e-4, 2.0 * err[0] / 1e-2 + 1e-6) << "x=" << x;
    }
    EXPECT_LE(worst_small, 5e-3);
}
