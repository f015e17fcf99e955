#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <sojourn/sojourn.hpp>

namespace checks {

inline double rel(double a, double b) {
    const double s = std::max(std::fabs(a), std::fabs(b));
    return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

/// Largest relative mismatch of value and slope across every piece boundary
/// of f, skipping the boundary at `skip` (the source point of ψ).
template <class B>
double c1_mismatch(const sojourn::PiecewiseSolution<B>& f, double skip = NAN) {
    double worst = 0.0;
    const auto& p = f.pieces();
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        const double z = p[k].hi;
        const auto a = f.jet_on_piece(k, z), b = f.jet_on_piece(k + 1, z);
        const double scale = std::max({std::fabs(a.value), std::fabs(b.value), 1e-300});
        worst = std::max(worst, std::fabs(a.value - b.value) / scale);
        if (z == skip) continue;
        const double sscale = std::max({std::fabs(a.slope), std::fabs(b.slope), scale});
        worst = std::max(worst, std::fabs(a.slope - b.slope) / sscale);
    }
    return worst;
}

/// ½σ²f'' + τf' - r f + r·offset at x on its piece, relative to r·|f| + r·offset.
template <class B>
double ode_residual(const sojourn::PiecewiseSolution<B>& f, double x) {
    const auto& p = f.pieces()[f.piece_index(x)];
    const auto j = f.jet(x);
    const double s = f.basis().sigma(x), tau = f.basis().drift(x);
    const double res = 0.5 * s * s * j.curvature + tau * j.slope - p.rate * j.value + p.rate * p.offset;
    return std::fabs(res) / std::max(p.rate * std::fabs(j.value) + p.rate * p.offset, 1e-300);
}

} // namespace checks
