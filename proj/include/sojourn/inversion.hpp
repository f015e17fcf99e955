#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "bases.hpp"
#include "domain.hpp"
#include "error.hpp"
#include "localtime.hpp"
#include "transfer.hpp"

namespace sojourn {

struct InversionConfig {
    int order = 14; ///< number of Gaver–Stehfest terms; even, 4..18
    double t = 1.0;

    void validate() const {
        if (order < 4 || order > 18 || order % 2 != 0)
            throw Error(ErrorCode::InvalidArgument, "Gaver-Stehfest order must be even and within [4, 18]");
        if (!(t > 0.0) || !std::isfinite(t)) throw Error(ErrorCode::InvalidArgument, "t must be positive");
    }
};

/// Stehfest weights V_1..V_N, accumulated in extended precision.
inline std::vector<long double> stehfest_weights(int order) {
    const int half = order / 2;
    auto fact = [](int m) {
        long double f = 1.0L;
        for (int i = 2; i <= m; ++i) f *= i;
        return f;
    };
    std::vector<long double> v(static_cast<std::size_t>(order));
    for (int k = 1; k <= order; ++k) {
        long double sum = 0.0L;
        for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
            sum += std::pow(static_cast<long double>(j), half) * fact(2 * j) /
                   (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
        }
        v[static_cast<std::size_t>(k - 1)] = ((k + half) % 2 == 0 ? 1.0L : -1.0L) * sum;
    }
    return v;
}

/// Gaver–Stehfest estimate of f(t) from its Laplace transform F:
/// f(t) ≈ (ln 2 / t) Σ V_k F(k ln 2 / t). Abscissae are passed as long double,
/// so an evaluator working in extended precision keeps its extra digits; the
/// weights grow like 10^{order/2} and amplify round-off in F.
template <class F>
double invert_in_lambda(F&& transform, const InversionConfig& cfg) {
    cfg.validate();
    const auto w = stehfest_weights(cfg.order);
    const long double a = std::numbers::ln2_v<long double> / static_cast<long double>(cfg.t);
    long double sum = 0.0L;
    for (int k = 1; k <= cfg.order; ++k) {
        const long double fk = static_cast<long double>(transform(k * a));
        if (!std::isfinite(fk)) throw Error(ErrorCode::NonFinite, "transform is not finite at an inversion abscissa");
        sum += w[static_cast<std::size_t>(k - 1)] * fk;
    }
    return static_cast<double>(a * sum);
}

/// A time-domain value recovered by inversion. Raw Gaver–Stehfest output may
/// stray slightly outside the admissible range; it is clamped and flagged
/// when it strays by more than 1e-3.
struct TimeDomainEstimate {
    double value = 0.0;
    double raw = 0.0;
    bool clamped = false;
};

inline TimeDomainEstimate clamp_estimate(double raw, double lo, double hi) {
    TimeDomainEstimate e;
    e.raw = raw;
    e.value = std::clamp(raw, lo, hi);
    e.clamped = raw < lo - 1e-3 || raw > hi + 1e-3;
    return e;
}

// Both expectations are 1 minus something: the deficit 1/λ - transform is
// inverted and the exact inverse of 1/λ added back, so the amplified
// round-off only touches the deficit (μ = 0 gives exactly 1).

/// E_x e^{-⟨μ, T_t⟩}.
template <DiffusionBasis B>
TimeDomainEstimate expectation_at_time(const B& b, const IntervalUnion& e, const std::vector<double>& mu, double x,
                                       const InversionConfig& cfg) {
    const double deficit = invert_in_lambda(
        [&](double lambda) { return 1.0 / lambda - solve_sojourn(b, e, LaplaceParams(lambda, mu))(x); }, cfg);
    double max_mu = 0.0;
    for (double m : mu) max_mu = std::max(max_mu, m);
    return clamp_estimate(1.0 - deficit, std::exp(-max_mu * cfg.t), 1.0);
}

/// E_x e^{-⟨μ, L_t⟩} for Brownian local times.
inline TimeDomainEstimate local_time_expectation_at_time(const PointSet& pts, const std::vector<double>& mu,
                                                         double x, const InversionConfig& cfg) {
    const double deficit = invert_in_lambda(
        [&](double lambda) { return 1.0 / lambda - solve_local_time(pts, LaplaceParams(lambda, mu))(x); }, cfg);
    return clamp_estimate(1.0 - deficit, 0.0, 1.0);
}

/// Experimental: P_x(T_t ≤ s) for the total sojourn time in E, by a second
/// Gaver–Stehfest inversion in μ of μ ↦ E_x e^{-μ T_t} / μ. T_t has atoms
/// (at 0 when starting outside E, at t for paths that never leave), which the
/// smooth inversion cannot resolve; expect errors of a few percent near them.
/// The outer weights amplify the inner inversion error, so the outer order is
/// kept below the inner one (12 over 14 works; 14 over 14 or 12 over 18 does not).
template <DiffusionBasis B>
TimeDomainEstimate sojourn_cdf(const B& b, const IntervalUnion& e, double x, double s, const InversionConfig& cfg,
                               int outer_order = 12) {
    cfg.validate();
    if (s >= cfg.t) return {1.0, 1.0, false};
    if (s < 0.0) return {0.0, 0.0, false};
    const InversionConfig outer{outer_order, s > 0.0 ? s : 1e-12};
    const double raw = invert_in_lambda(
        [&](double mu) {
            const std::vector<double> m(e.size(), mu);
            return expectation_at_time(b, e, m, x, cfg).raw / mu;
        },
        outer);
    return clamp_estimate(raw, 0.0, 1.0);
}

} // namespace sojourn
