#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>

#include <boost/math/quadrature/gauss.hpp>

#include "error.hpp"
#include "scaled.hpp"

namespace sojourn {

/// A fundamental solution sampled at one point:
/// e^{log_scale} * (f(x), f'(x), f''(x)).
struct BasisPoint {
    double value = 0.0;
    double slope = 0.0;
    double curvature = 0.0;
    double log_scale = 0.0;

    ScaledReal scaled_value() const { return ScaledReal::from_log(value, log_scale); }
    ScaledReal scaled_slope() const { return ScaledReal::from_log(slope, log_scale); }
    ScaledReal scaled_curvature() const { return ScaledReal::from_log(curvature, log_scale); }
    ScaledVec2 column() const {
        double f = 1.0;
        const auto k = detail::split_log(log_scale, f);
        return ScaledVec2(value * f, slope * f, k);
    }
};

/// Evaluators for the positive increasing and decreasing solutions of
/// ½σ²f'' + τf' = r f, together with the coefficients of the generator.
template <class B>
concept DiffusionBasis = requires(const B& b, double r, double x) {
    { b.increasing(r, x) } -> std::same_as<BasisPoint>;
    { b.decreasing(r, x) } -> std::same_as<BasisPoint>;
    { b.sigma(x) } -> std::convertible_to<double>;
    { b.drift(x) } -> std::convertible_to<double>;
    { b.constant_coefficients() } -> std::convertible_to<bool>;
};

namespace detail {
inline void check_rate(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorCode::InvalidRate, "rate must be positive and finite");
}
} // namespace detail

/// Brownian motion scaled so that E X_t² = 2t: σ = √2, κ = 1, basis e^{±√r x}.
struct BrownianBasis {
    BasisPoint increasing(double r, double x) const {
        detail::check_rate(r);
        const double k = std::sqrt(r);
        return {1.0, k, r, k * x};
    }
    BasisPoint decreasing(double r, double x) const {
        detail::check_rate(r);
        const double k = std::sqrt(r);
        return {1.0, -k, r, -k * x};
    }
    double sigma(double) const { return std::numbers::sqrt2; }
    double drift(double) const { return 0.0; }
    bool constant_coefficients() const { return true; }
    std::pair<double, double> exponents(double r) const {
        detail::check_rate(r);
        return {std::sqrt(r), -std::sqrt(r)};
    }
};

inline BrownianBasis brownian_basis() { return {}; }

/// Constant volatility σ and drift b; basis e^{r₁x}, e^{r₂x} with r₁ > 0 > r₂
/// the roots of ½σ²ρ² + bρ = r.
class ConstantCoefficientBasis {
public:
    ConstantCoefficientBasis(double sigma, double drift) : sigma_(sigma), drift_(drift) {
        if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::InvalidArgument, "sigma must be positive");
        if (!std::isfinite(drift)) throw Error(ErrorCode::InvalidArgument, "drift must be finite");
    }

    std::pair<double, double> exponents(double r) const {
        detail::check_rate(r);
        const double s2 = sigma_ * sigma_;
        const double disc = std::sqrt(drift_ * drift_ + 2.0 * s2 * r);
        // Pick the root without cancellation first, recover the other from the product -2r/σ².
        if (drift_ >= 0.0) {
            const double r2 = (-drift_ - disc) / s2;
            return {-2.0 * r / (s2 * r2), r2};
        }
        const double r1 = (-drift_ + disc) / s2;
        return {r1, -2.0 * r / (s2 * r1)};
    }

    BasisPoint increasing(double r, double x) const {
        const double k = exponents(r).first;
        return {1.0, k, k * k, k * x};
    }
    BasisPoint decreasing(double r, double x) const {
        const double k = exponents(r).second;
        return {1.0, k, k * k, k * x};
    }
    double sigma(double) const { return sigma_; }
    double drift(double) const { return drift_; }
    bool constant_coefficients() const { return true; }

private:
    double sigma_;
    double drift_;
};

/// User supplied fundamental solutions. Each evaluator returns (f, f') at
/// (r, x); second derivatives come from the ODE itself. Evaluators not
/// declared thread safe are serialized behind a shared mutex.
class CustomBasis {
public:
    using SolutionFn = std::function<std::pair<double, double>(double r, double x)>;
    using CoefficientFn = std::function<double(double x)>;

    CustomBasis(SolutionFn increasing, SolutionFn decreasing, CoefficientFn sigma, CoefficientFn drift,
                bool thread_safe)
        : inc_(std::move(increasing)), dec_(std::move(decreasing)), sigma_(std::move(sigma)),
          drift_(std::move(drift)), lock_(thread_safe ? nullptr : std::make_shared<std::mutex>()) {
        if (!inc_ || !dec_ || !sigma_ || !drift_)
            throw Error(ErrorCode::InvalidArgument, "custom basis needs all four evaluators");
    }

    BasisPoint increasing(double r, double x) const { return point(inc_, r, x); }
    BasisPoint decreasing(double r, double x) const { return point(dec_, r, x); }

    double sigma(double x) const {
        const double s = guarded([&] { return sigma_(x); });
        if (!(s > 0.0) || !std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "sigma(x) must be positive");
        return s;
    }
    double drift(double x) const { return guarded([&] { return drift_(x); }); }
    bool constant_coefficients() const { return false; }
    bool thread_safe() const { return lock_ == nullptr; }

private:
    template <class F>
    std::invoke_result_t<F> guarded(F&& f) const {
        if (!lock_) return f();
        std::lock_guard<std::mutex> g(*lock_);
        return f();
    }

    BasisPoint point(const SolutionFn& fn, double r, double x) const {
        detail::check_rate(r);
        const auto [f, df] = guarded([&] { return fn(r, x); });
        detail::require_finite(f);
        detail::require_finite(df);
        const double s = sigma(x);
        return {f, df, 2.0 * (r * f - drift(x) * df) / (s * s), 0.0};
    }

    SolutionFn inc_, dec_;
    CoefficientFn sigma_, drift_;
    std::shared_ptr<std::mutex> lock_;
};

// ---------------------------------------------------------------------------
// Quantities derived from a basis

template <DiffusionBasis B>
double kappa(const B& b, double x) {
    const double s = b.sigma(x);
    return 2.0 / (s * s);
}

/// Plain Wronskian f1 f2' - f1' f2 of two basis points.
inline ScaledReal wronskian(const BasisPoint& f1, const BasisPoint& f2) {
    return ScaledReal::from_log(f1.value * f2.slope - f1.slope * f2.value, f1.log_scale + f2.log_scale);
}

/// w(x) = [c'(x)d(x) - c(x)d'(x)] / κ(x) at rate r.
template <DiffusionBasis B>
ScaledReal wronskian_weight(const B& b, double r, double x) {
    const auto c = b.increasing(r, x);
    const auto d = b.decreasing(r, x);
    return -wronskian(c, d) / ScaledReal(kappa(b, x));
}

/// λ-potential ρ_λ(x, y) = c(x∧y) d(x∨y) / w(y).
template <DiffusionBasis B>
double potential(const B& b, double lambda, double x, double y) {
    const auto c = b.increasing(lambda, std::min(x, y));
    const auto d = b.decreasing(lambda, std::max(x, y));
    return (c.scaled_value() * d.scaled_value() / wronskian_weight(b, lambda, y)).value();
}

/// ∂ρ_λ(x, y)/∂x. At x == y, `right_of_y` selects the one-sided derivative.
template <DiffusionBasis B>
double potential_derivative(const B& b, double lambda, double x, double y, bool right_of_y) {
    const bool above = x > y || (x == y && right_of_y);
    const auto w = wronskian_weight(b, lambda, y);
    if (above) return (b.increasing(lambda, y).scaled_value() * b.decreasing(lambda, x).scaled_slope() / w).value();
    return (b.increasing(lambda, x).scaled_slope() * b.decreasing(lambda, y).scaled_value() / w).value();
}

/// E_x e^{-λ τ_u}: c(x)/c(u) for x ≤ u, d(x)/d(u) otherwise.
template <DiffusionBasis B>
double hitting_time_transform(const B& b, double lambda, double x, double u) {
    const auto f = x <= u ? b.increasing(lambda, x) : b.decreasing(lambda, x);
    const auto g = x <= u ? b.increasing(lambda, u) : b.decreasing(lambda, u);
    return (f.scaled_value() / g.scaled_value()).value();
}

/// ½σ²f'' + τf' - r f, relative to the size of the largest term.
template <DiffusionBasis B>
double ode_residual(const B& b, double r, const BasisPoint& f, double x) {
    const double s = b.sigma(x);
    const double t1 = 0.5 * s * s * f.curvature, t2 = b.drift(x) * f.slope, t3 = r * f.value;
    const double scale = std::max({std::fabs(t1), std::fabs(t2), std::fabs(t3)});
    return scale == 0.0 ? 0.0 : std::fabs(t1 + t2 - t3) / scale;
}

struct BasisCheck {
    bool ok = true;
    std::string message;
    double max_abel_error = 0.0;
};

/// Spot-checks the basis contract on [lo, hi] at rate r: positivity,
/// monotonicity, and Abel's identity W(x) = W(x₀) exp(-∫ 2τ/σ²). For a
/// driftless constant-σ diffusion the latter is the constant Wronskian weight.
template <DiffusionBasis B>
BasisCheck check_basis(const B& b, double r, double lo, double hi, int samples = 100, double tol = 1e-10) {
    BasisCheck out;
    auto fail = [&](const std::string& m) {
        if (out.ok) out.message = m;
        out.ok = false;
    };
    double x0 = lo;
    const double w0 = wronskian(b.increasing(r, lo), b.decreasing(r, lo)).log_abs();
    double integral = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double x = samples == 1 ? lo : lo + (hi - lo) * j / (samples - 1);
        const auto c = b.increasing(r, x);
        const auto d = b.decreasing(r, x);
        if (!(c.value > 0.0) || !(d.value > 0.0)) fail("basis not positive at x=" + std::to_string(x));
        if (c.slope < 0.0) fail("increasing solution decreases at x=" + std::to_string(x));
        if (d.slope > 0.0) fail("decreasing solution increases at x=" + std::to_string(x));
        if (x > x0) {
            integral += boost::math::quadrature::gauss<double, 15>::integrate(
                [&](double z) {
                    const double s = b.sigma(z);
                    return 2.0 * b.drift(z) / (s * s);
                },
                x0, x);
            x0 = x;
        }
        const double wx = wronskian(c, d).log_abs();
        const double err = std::fabs(std::expm1(wx - w0 + integral));
        out.max_abel_error = std::max(out.max_abel_error, err);
        if (err > tol) fail("Wronskian violates Abel's identity at x=" + std::to_string(x));
    }
    return out;
}

} // namespace sojourn
