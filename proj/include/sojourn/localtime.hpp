#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "bases.hpp"
#include "domain.hpp"
#include "piecewise.hpp"
#include "scaled.hpp"
#include "transfer.hpp"

namespace sojourn {

// Brownian local times at finitely many points (σ = √2, generator d²/dx²). The
// local time is L_t = lim (1/ε) · |{s ≤ t : X_s ∈ [u - ε, u + ε]}|, i.e. twice
// the usual occupation density.

/// (P̄_i, Q̄_i): the ε → 0 limits of the transfer matrices of the band
/// [u - ε, u + ε] with multiplier μ/ε.
inline std::pair<ScaledMat2, ScaledMat2> limit_pair(double lambda, double mu, double u) {
    if (!(lambda > 0.0) || !(mu >= 0.0)) throw Error(ErrorCode::InvalidRate, "need lambda > 0, mu >= 0");
    const double s = std::sqrt(lambda);
    const ScaledReal inv(1.0 / s);
    const ScaledMat2 P = ScaledMat2::from_entries(
        inv * ScaledReal(s + mu), inv * ScaledReal::from_log(mu, -2.0 * s * u),
        -(inv * ScaledReal::from_log(mu, 2.0 * s * u)), inv * ScaledReal(s - mu));
    const ScaledMat2 Q = ScaledMat2::from_entries(ScaledReal::from_log(mu / s, -s * u), ScaledReal(0.0),
                                                  -ScaledReal::from_log(mu / s, s * u), ScaledReal(0.0));
    return {P, Q};
}

struct LocalTimeAssembly {
    double lambda = 1.0;
    std::vector<double> points, mu;
    std::vector<ScaledMat2> P, Q; ///< P̄_i, Q̄_i at [i-1]
    std::vector<ScaledMat2> R, S; ///< R̄_0..R̄_n, S̄_0..S̄_n (S̄ includes the 1/λ factor)
    ScaledReal gamma0;            ///< γ̄₀ = (1 0)S̄_nC₀ / (1 0)R̄_nC₀
    std::vector<CoefficientPair> B; ///< B̄_0..B̄_n
};

/// Builds the matrices and solves for B̄_i = S̄_iC₀ - γ̄₀R̄_iC₀. As for the
/// sojourn engine the coefficients are obtained from the two homogeneous
/// solutions (det P̄_i = 1), each jump term being evaluated from values at the
/// point itself.
inline LocalTimeAssembly assemble_local_time(const PointSet& pts, const LaplaceParams& params) {
    const std::size_t n = pts.size();
    params.validate(n);
    LocalTimeAssembly a;
    a.lambda = params.lambda;
    a.points = pts.points();
    a.mu = params.mu;
    const double lam = params.lambda;
    const ScaledReal inv_lambda(1.0 / lam);
    a.R.push_back(ScaledMat2::identity());
    a.S.push_back(ScaledMat2::zero());
    for (std::size_t i = 1; i <= n; ++i) {
        auto [P, Q] = limit_pair(lam, params.mu[i - 1], pts.u(i));
        a.P.push_back(P);
        a.Q.push_back(Q);
        a.R.push_back(P * a.R.back());
        a.S.push_back(P * a.S.back() + inv_lambda * Q);
    }

    const BrownianBasis b;
    std::vector<ScaledVec2> left(n + 1), right(n + 1);
    left[0] = ScaledVec2::unit(0);
    for (std::size_t i = 1; i <= n; ++i) left[i] = a.P[i - 1] * left[i - 1];
    right[n] = ScaledVec2::unit(1);
    for (std::size_t i = n; i >= 1; --i) right[i - 1] = a.P[i - 1].inverse() * right[i];
    const ScaledReal den = left[n][0];
    if (den.is_zero() || den.sign() < 0) throw Error(ErrorCode::DegenerateSystem, "(1 0) R̄_n C₀ is not positive");

    // Q̄_i C₀ is a pure slope jump of 2μ_i at u_i: N(u_i) Q̄_i C₀ = (0, 2μ_i).
    std::vector<ScaledReal> D(n + 1), sigma(n + 1);
    std::vector<ScaledReal> d_term(n + 1), s_term(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        const ScaledMat2 N = fundamental_matrix(b, lam, pts.u(k));
        const ScaledReal detN = N.det();
        const ScaledReal jump(2.0 * params.mu[k - 1]);
        d_term[k] = jump * (N * left[k - 1])[0] / detN;
        s_term[k] = -(jump * (N * right[k])[0] / detN);
    }
    D[0] = ScaledReal(0.0);
    for (std::size_t k = 1; k <= n; ++k) D[k] = D[k - 1] + inv_lambda * d_term[k];
    sigma[n] = ScaledReal(0.0);
    for (std::size_t k = n; k >= 1; --k) sigma[k - 1] = sigma[k] + inv_lambda * s_term[k];

    a.gamma0 = sigma[0] / den;
    for (std::size_t i = 0; i <= n; ++i) {
        CoefficientPair p = CoefficientPair::from(ScaledReal(1.0) / den * (D[i] * right[i] - sigma[i] * left[i]));
        if (i == 0) p = {-a.gamma0, ScaledReal(0.0)};
        if (i == n) p = {ScaledReal(0.0), D[n] / den};
        a.B.push_back(p);
    }
    return a;
}

/// x ↦ ∫ e^{-λt} E_x e^{-⟨μ, L_t⟩} dt for one (λ, μ).
struct LocalTimeSolution {
    LocalTimeAssembly assembly;
    PiecewiseSolution<BrownianBasis> function;

    double operator()(double x) const { return function.value(x); }
};

inline LocalTimeSolution solve_local_time(const PointSet& pts, const LaplaceParams& params) {
    LocalTimeAssembly a = assemble_local_time(pts, params);
    std::vector<Piece> pieces;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i <= n; ++i) {
        Piece g;
        g.lo = i == 0 ? -std::numeric_limits<double>::infinity() : pts.u(i);
        g.hi = i == n ? std::numeric_limits<double>::infinity() : pts.u(i + 1);
        g.rate = params.lambda;
        g.coef = a.B[i];
        g.offset = 1.0 / params.lambda;
        pieces.push_back(g);
    }
    PiecewiseSolution<BrownianBasis> f(BrownianBasis{}, std::move(pieces));
    return {std::move(a), std::move(f)};
}

inline double local_time_transform(const PointSet& pts, const LaplaceParams& params, double x) {
    return solve_local_time(pts, params)(x);
}

/// (1/λ)[1 - μ/(√λ+μ) e^{-√λ|x-u|}]
inline double closed_form_one_point(double lambda, double mu, double u, double x) {
    const double s = std::sqrt(lambda);
    return (1.0 / lambda) * (1.0 - mu / (s + mu) * std::exp(-s * std::fabs(x - u)));
}

/// Two points u < v with multipliers μ at u and ν at v.
inline double closed_form_two_points(double lambda, double mu, double nu, double u, double v, double x) {
    if (!(u < v)) throw Error(ErrorCode::NotSorted, "two-point formula needs u < v");
    const double s = std::sqrt(lambda);
    const double g = -std::expm1(s * (u - v)); // 1 - e^{√λ(u-v)}
    const double num = mu * (s + nu * g) * std::exp(-s * std::fabs(x - u)) +
                       nu * (s + mu * g) * std::exp(-s * std::fabs(x - v));
    const double den = (s + mu) * (s + nu) - mu * nu * std::exp(2.0 * s * (u - v));
    return (1.0 / lambda) * (1.0 - num / den);
}

} // namespace sojourn
