#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bases.hpp"
#include "domain.hpp"
#include "joint.hpp"
#include "transfer.hpp"

namespace sojourn {

// Quadrature checks of the integral identities satisfied by φ and ψ. These are
// verification tools: the engines never integrate anything.

namespace detail {

template <class F>
double gk(F&& f, double a, double b, double tol) {
    if (!(a < b)) return 0.0;
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, tol, &err);
}

/// ∫ f over [a, b] split at the given breakpoints.
template <class F>
double integrate_split(F&& f, double a, double b, std::vector<double> cuts, double tol) {
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = std::max(cuts[k], a), hi = std::min(cuts[k + 1], b);
        s += gk(f, lo, hi, tol);
    }
    return s;
}

/// ∫ of a function decaying exponentially away from `edge`, from `edge`
/// outward by `step`, assuming a pure exponential from the two samples.
template <class F>
double exponential_tail(F&& f, double edge, double step) {
    const double f0 = f(edge), f1 = f(edge + step);
    if (f0 == 0.0 || f1 == 0.0 || (f0 > 0) != (f1 > 0)) return 0.0;
    const double rate = std::log(f0 / f1) / std::fabs(step);
    return rate > 0.0 ? f0 / rate : 0.0;
}

} // namespace detail

/// ∫ψ(x, y) dy over ℝ: Gauss–Kronrod on each piece of
/// [min(u₁, x) - 40/√λ, max(v_n, x) + 40/√λ], exponential tails beyond.
template <DiffusionBasis B>
double integrate_psi(const JointEngine<B>& engine, const IntervalUnion& e, double lambda, double x,
                     double tol = 1e-12) {
    auto f = [&](double y) { return engine.solve(y)(x); };
    const double pad = 40.0 / std::sqrt(lambda);
    const double lo = std::min(e.u(1), x) - pad, hi = std::max(e.v(e.size()), x) + pad;
    std::vector<double> cuts{x};
    for (std::size_t i = 1; i <= e.size(); ++i) {
        cuts.push_back(e.u(i));
        cuts.push_back(e.v(i));
    }
    const double step = 1.0 / std::sqrt(lambda);
    return detail::integrate_split(f, lo, hi, cuts, tol) + detail::exponential_tail(f, lo, -step) +
           detail::exponential_tail(f, hi, step);
}

template <DiffusionBasis B>
double integrate_psi(const B& b, const IntervalUnion& e, const LaplaceParams& params, double x, double tol = 1e-12) {
    const JointEngine<B> engine(b, e, params);
    return integrate_psi(engine, e, params.lambda, x, tol);
}

/// φ(x) - [1/λ - Σ μ_i ∫_{u_i}^{v_i} ρ_λ(x, z) φ(z) dz].
template <DiffusionBasis B>
double phi_integral_residual(const B& b, const IntervalUnion& e, const LaplaceParams& params, double x,
                             double tol = 1e-12) {
    const auto sol = solve_sojourn(b, e, params);
    double rhs = 1.0 / params.lambda;
    for (std::size_t i = 1; i <= e.size(); ++i) {
        if (params.mu[i - 1] == 0.0) continue;
        auto g = [&](double z) { return potential(b, params.lambda, x, z) * sol(z); };
        rhs -= params.mu[i - 1] * detail::integrate_split(g, e.u(i), e.v(i), {x}, tol);
    }
    return sol(x) - rhs;
}

/// ψ(x, y) - [ρ_λ(x, y) - Σ μ_i ∫_{u_i}^{v_i} ρ_λ(x, z) ψ(z, y) dz].
template <DiffusionBasis B>
double psi_integral_residual(const JointEngine<B>& engine, const IntervalUnion& e, const LaplaceParams& params,
                             double x, double y, double tol = 1e-12) {
    const auto sol = engine.solve(y);
    const auto& b = engine.basis();
    double rhs = potential(b, params.lambda, x, y);
    for (std::size_t i = 1; i <= e.size(); ++i) {
        if (params.mu[i - 1] == 0.0) continue;
        auto g = [&](double z) { return potential(b, params.lambda, x, z) * sol(z); };
        rhs -= params.mu[i - 1] * detail::integrate_split(g, e.u(i), e.v(i), {x, y}, tol);
    }
    return sol(x) - rhs;
}

} // namespace sojourn
