#pragma once

#include <cmath>

#include "error.hpp"
#include "scaled.hpp"

namespace sojourn {

/// One interval [u, v] for Brownian motion with σ = √2.
struct SingleIntervalQuery {
    double u = 0.0;
    double v = 1.0;
    double lambda = 1.0;
    double mu = 0.0;
    double x = 0.0;

    /// w = ½√(λ+μ)(v - u)
    double w() const { return 0.5 * std::sqrt(lambda + mu) * (v - u); }

    void validate() const {
        if (!(u < v)) throw Error(ErrorCode::Degenerate, "single interval needs u < v");
        if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidRate, "lambda must be positive");
        if (!(mu >= 0.0)) throw Error(ErrorCode::InvalidRate, "mu must be nonnegative");
    }
};

namespace detail {

/// e^{|s|} (1 ± e^{-2|s|}) / 2 style pieces of cosh and sinh, scaled.
inline ScaledReal scaled_cosh(double s) {
    const double a = std::fabs(s);
    return ScaledReal::from_log(0.5 * (1.0 + std::exp(-2.0 * a)), a);
}
inline ScaledReal scaled_sinh(double s) {
    const double a = std::fabs(s);
    return ScaledReal::from_log(0.5 * std::copysign(-std::expm1(-2.0 * a), s), a);
}

/// p cosh(s) + q sinh(s) without overflow.
inline ScaledReal cosh_sinh_combo(double p, double q, double s) {
    const double a = std::fabs(s);
    const double e = std::exp(-2.0 * a);
    const double sgn = s < 0 ? -1.0 : 1.0;
    return ScaledReal::from_log(0.5 * (p * (1.0 + e) + q * sgn * (1.0 - e)), a);
}

} // namespace detail

/// Closed hyperbolic form of N(y)^{-1} M(y) M(x)^{-1} N(x) for the Brownian
/// basis, z = √(λ+μ)(y - x):
///   1/√(λ(λ+μ)) [[ e^{√λ(x-y)} [√λ ch + √(λ+μ) sh][√(λ+μ) ch + √λ sh],  μ e^{-√λ(x+y)} ch sh ],
///                [ -μ e^{√λ(x+y)} ch sh,  e^{√λ(y-x)} [√λ ch - √(λ+μ) sh][√(λ+μ) ch - √λ sh] ]]
/// with ch = cosh(z/2), sh = sinh(z/2).
inline ScaledMat2 product_identity(double lambda, double mu, double x, double y) {
    if (!(lambda > 0.0) || !(mu >= 0.0)) throw Error(ErrorCode::InvalidRate, "need lambda > 0, mu >= 0");
    const double sl = std::sqrt(lambda), slm = std::sqrt(lambda + mu);
    const double h = 0.5 * slm * (y - x);
    const ScaledReal ch = detail::scaled_cosh(h), sh = detail::scaled_sinh(h);
    const ScaledReal inv = ScaledReal(1.0 / (sl * slm));
    const ScaledReal a11 = inv * ScaledReal::from_log(1.0, sl * (x - y)) * detail::cosh_sinh_combo(sl, slm, h) *
                           detail::cosh_sinh_combo(slm, sl, h);
    const ScaledReal a22 = inv * ScaledReal::from_log(1.0, sl * (y - x)) * detail::cosh_sinh_combo(sl, -slm, h) *
                           detail::cosh_sinh_combo(slm, -sl, h);
    const ScaledReal chsh = ch * sh;
    const ScaledReal a12 = inv * ScaledReal::from_log(mu, -sl * (x + y)) * chsh;
    const ScaledReal a21 = -(inv * ScaledReal::from_log(mu, sl * (x + y)) * chsh);
    return ScaledMat2::from_entries(a11, a12, a21, a22);
}

/// E = [u, v]; φ_{λ,μ}(x) in closed form. The interior branch carries a plus
/// sign: it is the sign that makes the three branches C¹ at u and v and keeps
/// φ ≥ 1/(λ+μ).
inline double phi_single_interval(const SingleIntervalQuery& q) {
    q.validate();
    const double l = q.lambda, m = q.mu, u = q.u, v = q.v, x = q.x;
    const double sl = std::sqrt(l), slm = std::sqrt(l + m);
    const double w = q.w();
    // denominators scaled by e^{-w}: √λ cosh w + √(λ+μ) sinh w
    const double e2w = std::exp(-2.0 * w);
    const double den = 0.5 * (sl * (1.0 + e2w) + slm * (1.0 - e2w)); // × e^{w}
    if (x <= u || x >= v) {
        const double sh = 0.5 * (1.0 - e2w);                              // sinh w × e^{-w}
        const double dist = x <= u ? x - u : v - x;                       // ≤ 0
        return (1.0 / l) * (1.0 - (m / slm) * sh * std::exp(sl * dist) / den);
    }
    const double c = slm * (x - 0.5 * (u + v));
    // cosh(c) / (den e^{w}) with |c| ≤ w
    const double ratio = 0.5 * (std::exp(std::fabs(c) - w) + std::exp(-std::fabs(c) - w)) / den;
    return (1.0 / (l + m)) * (1.0 + (m / sl) * ratio);
}

/// γ₀ = -(μ/(λ√(λ+μ))) e^{-√λ u} sinh w / (√λ cosh w + √(λ+μ) sinh w)
inline ScaledReal gamma0_single_interval(double lambda, double mu, double u, double v) {
    const double sl = std::sqrt(lambda), slm = std::sqrt(lambda + mu);
    const double w = 0.5 * slm * (v - u);
    const ScaledReal r = detail::scaled_sinh(w) / detail::cosh_sinh_combo(sl, slm, w);
    return -(ScaledReal::from_log(mu / (lambda * slm), -sl * u) * r);
}

/// δ₁ = -(μ/(λ√(λ+μ))) e^{√λ v} sinh w / (√λ cosh w + √(λ+μ) sinh w)
inline ScaledReal delta1_single_interval(double lambda, double mu, double u, double v) {
    const double sl = std::sqrt(lambda), slm = std::sqrt(lambda + mu);
    const double w = 0.5 * slm * (v - u);
    const ScaledReal r = detail::scaled_sinh(w) / detail::cosh_sinh_combo(sl, slm, w);
    return -(ScaledReal::from_log(mu / (lambda * slm), sl * v) * r);
}

} // namespace sojourn
