#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "bases.hpp"
#include "scaled.hpp"

namespace sojourn {

/// Coefficients (α, β) on an (increasing, decreasing) basis pair, or (γ, δ)
/// on (c, d). Each carries its own scale since α a(x) and β b(x) can differ
/// by many orders of magnitude at the evaluation point.
struct CoefficientPair {
    ScaledReal first;
    ScaledReal second;

    static CoefficientPair from(const ScaledVec2& v) { return {v[0], v[1]}; }
};

/// Value and analytic derivatives of a piecewise solution at one point.
struct Jet {
    double value = 0.0;
    double slope = 0.0;
    double curvature = 0.0;
};

/// One smooth piece α·f₊(x) + β·f₋(x) + offset, with f± the basis at `rate`.
struct Piece {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool closed_hi = false; ///< whether x == hi belongs to this piece
    double rate = 1.0;
    CoefficientPair coef;
    double offset = 0.0;
};

template <DiffusionBasis B>
Jet evaluate_piece(const B& basis, const Piece& p, double x) {
    const auto inc = basis.increasing(p.rate, x);
    const auto dec = basis.decreasing(p.rate, x);
    auto combine = [&](double fi, double fd) {
        const ScaledReal s = p.coef.first * ScaledReal::from_log(fi, inc.log_scale) +
                             p.coef.second * ScaledReal::from_log(fd, dec.log_scale);
        return s.value();
    };
    Jet j;
    j.value = combine(inc.value, dec.value) + p.offset;
    j.slope = combine(inc.slope, dec.slope);
    j.curvature = combine(inc.curvature, dec.curvature);
    return j;
}

/// A function assembled from consecutive pieces covering the real line.
template <DiffusionBasis B>
class PiecewiseSolution {
public:
    PiecewiseSolution(B basis, std::vector<Piece> pieces) : basis_(std::move(basis)), pieces_(std::move(pieces)) {}

    std::size_t piece_index(double x) const {
        for (std::size_t k = 0; k + 1 < pieces_.size(); ++k) {
            const auto& p = pieces_[k];
            if (x < p.hi || (x == p.hi && p.closed_hi)) return k;
        }
        return pieces_.size() - 1;
    }

    Jet jet(double x) const { return evaluate_piece(basis_, pieces_[piece_index(x)], x); }
    /// Evaluates piece k at x even outside its range (one-sided limits at breakpoints).
    Jet jet_on_piece(std::size_t k, double x) const { return evaluate_piece(basis_, pieces_[k], x); }

    double value(double x) const { return jet(x).value; }
    double derivative(double x) const { return jet(x).slope; }
    double second_derivative(double x) const { return jet(x).curvature; }
    double operator()(double x) const { return value(x); }

    const std::vector<Piece>& pieces() const { return pieces_; }
    const B& basis() const { return basis_; }

private:
    B basis_;
    std::vector<Piece> pieces_;
};

} // namespace sojourn
