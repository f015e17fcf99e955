#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "bases.hpp"
#include "domain.hpp"
#include "piecewise.hpp"
#include "transfer.hpp"

namespace sojourn {

/// Case of the ψ system for a given y: inside interval i₀ (closed) or in gap i₀.
inline Location classify_y(const IntervalUnion& e, double y) { return locate(e, y); }

/// x ↦ ψ_{λ,μ}(x, y) for one y.
template <DiffusionBasis B>
struct JointSolution {
    double y = 0.0;
    Location location{Location::Kind::Gap, 0};
    CoefficientSet coefficients;
    PiecewiseSolution<B> function;

    double operator()(double x) const { return function.value(x); }
    Jet jet(double x) const { return function.jet(x); }
    /// Index of the piece [.., y] whose right end is y; piece + 1 starts at y.
    std::size_t split_piece() const {
        return location.inside() ? 2 * location.index - 1 : 2 * location.index;
    }
};

/// The ψ solver. Everything that does not depend on y (transfer matrices,
/// the homogeneous solutions in every piece) is built once; solve(y) only
/// adds the local work at y.
///
/// ψ(·, y) = -κ(y) L(x∧y) R(x∨y) / W[L, R](y), where L is the homogeneous
/// solution decaying into the left tail and R the one decaying into the right
/// tail. This is the same function the case-split formulas produce (γ₀(y) is
/// the coefficient of L, δ_n(y) the one of R) but evaluated without forming
/// the differences of exponentially large terms.
template <DiffusionBasis B>
class JointEngine {
public:
    JointEngine(B basis, const IntervalUnion& e, const LaplaceParams& params)
        : basis_(std::move(basis)), e_(e), params_(params), a_(assemble(basis_, e, params)),
          h_(homogeneous_chain(a_)) {
        const std::size_t n = a_.size();
        for (std::size_t i = 1; i <= n; ++i) {
            const IntervalBlock& blk = a_.blocks[i - 1];
            left_in_.push_back(blk.Mu_inv * (blk.Nu * h_.left[i - 1]));
            right_in_.push_back(blk.Mv_inv * (blk.Nv * h_.right[i]));
            det_X_.push_back(blk.Mv.det() / blk.det_Nv);
        }
        prefix_rev_.push_back(ScaledMat2::identity());
        for (std::size_t i = 1; i <= n; ++i) prefix_rev_.push_back(prefix_rev_.back() * a_.P_rev[i - 1]);
    }

    const TransferAssembly& assembly() const { return a_; }
    const HomogeneousChain& chain() const { return h_; }
    const B& basis() const { return basis_; }

    JointSolution<B> solve(double y) const {
        const std::size_t n = a_.size();
        const Location loc = classify_y(e_, y);
        const std::size_t i0 = loc.index;
        const double kap = kappa(basis_, y);

        ScaledMat2 F;
        ScaledVec2 cL, cR;
        ScaledReal det_pair = h_.den; // det(cL, cR)
        double rate = params_.lambda;
        if (loc.inside()) {
            rate = a_.blocks[i0 - 1].rate;
            cL = left_in_[i0 - 1];
            cR = right_in_[i0 - 1];
            det_pair = h_.den / det_X_[i0 - 1];
        } else {
            cL = h_.left[i0];
            cR = h_.right[i0];
        }
        F = fundamental_matrix(basis_, rate, y);
        const ScaledReal Ly = (F * cL)[0];
        const ScaledReal Ry = (F * cR)[0];
        const ScaledReal K = -ScaledReal(kap) / (F.det() * det_pair);
        const ScaledReal left_weight = K * Ry;  // multiplies L for x ≤ y
        const ScaledReal right_weight = K * Ly; // multiplies R for x ≥ y

        JointSolution<B> out{y, loc, {}, PiecewiseSolution<B>(basis_, {})};
        CoefficientSet& c = out.coefficients;
        c.denominator = h_.den;
        c.gamma0 = left_weight;
        c.delta_n = right_weight;
        c.delta_n_reversed = reversed_delta(loc, y, kap);
        c.split_at = loc;
        c.split = std::array<CoefficientPair, 2>{CoefficientPair::from(left_weight * cL),
                                                 CoefficientPair::from(right_weight * cR)};

        // Pieces left of the piece holding y carry L, pieces right of it carry R.
        auto gap_coef = [&](std::size_t i) {
            if (!loc.inside() && i == i0) return (*c.split)[1];
            return CoefficientPair::from(i < i0 ? left_weight * h_.left[i] : right_weight * h_.right[i]);
        };
        auto interval_coef = [&](std::size_t i) {
            if (loc.inside() && i == i0) return (*c.split)[1];
            const bool left_side = loc.inside() ? i < i0 : i <= i0;
            return CoefficientPair::from(left_side ? left_weight * left_in_[i - 1] : right_weight * right_in_[i - 1]);
        };
        for (std::size_t i = 0; i <= n; ++i) c.gap.push_back(gap_coef(i));
        for (std::size_t i = 1; i <= n; ++i) c.interval.push_back(interval_coef(i));

        std::vector<Piece> pieces;
        double lo = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i <= n; ++i) {
            Piece g;
            g.lo = lo;
            g.hi = i < n ? a_.blocks[i].u : std::numeric_limits<double>::infinity();
            g.rate = params_.lambda;
            if (!loc.inside() && i == i0) {
                Piece first = g;
                first.hi = y;
                first.closed_hi = true;
                first.coef = (*c.split)[0];
                pieces.push_back(first);
                g.lo = y;
            }
            g.coef = c.gap[i];
            pieces.push_back(g);
            if (i == n) break;
            const IntervalBlock& blk = a_.blocks[i];
            Piece p;
            p.lo = blk.u;
            p.hi = blk.v;
            p.closed_hi = true;
            p.rate = blk.rate;
            if (loc.inside() && i + 1 == i0) {
                Piece first = p;
                first.hi = y;
                first.coef = (*c.split)[0];
                pieces.push_back(first);
                p.lo = y;
            }
            p.coef = c.interval[i];
            pieces.push_back(p);
            lo = blk.v;
        }
        out.function = PiecewiseSolution<B>(basis_, std::move(pieces));
        return out;
    }

private:
    /// δ_n(y) from the reversed recursion, literally:
    /// inside: -κ (0 1) Ũ₀ M(y)^{-1} D₀ / (0 1) R̃_n D₀, Ũ₀ = P̃_1..P̃_{i₀-1} N(u_{i₀})^{-1} M_{i₀}(u_{i₀});
    /// gap:    -κ (0 1) Ṽ₀ N(y)^{-1} D₀ / (0 1) R̃_n D₀, Ṽ₀ = P̃_1..P̃_{i₀}.
    ScaledReal reversed_delta(const Location& loc, double y, double kap) const {
        const std::size_t i0 = loc.index;
        ScaledVec2 g;
        if (loc.inside()) {
            const IntervalBlock& blk = a_.blocks[i0 - 1];
            const ScaledMat2 U0 = prefix_rev_[i0 - 1] * blk.Nu_inv * blk.Mu;
            g = U0 * (fundamental_matrix(basis_, blk.rate, y).inverse() * ScaledVec2::unit(1));
        } else {
            g = prefix_rev_[i0] * (fundamental_matrix(basis_, params_.lambda, y).inverse() * ScaledVec2::unit(1));
        }
        return -ScaledReal(kap) * g[1] / a_.R_rev(1, 1);
    }

    B basis_;
    IntervalUnion e_;
    LaplaceParams params_;
    TransferAssembly a_;
    HomogeneousChain h_;
    std::vector<ScaledVec2> left_in_, right_in_;
    std::vector<ScaledReal> det_X_;
    std::vector<ScaledMat2> prefix_rev_;
};

template <DiffusionBasis B>
double psi(const B& b, const IntervalUnion& e, const LaplaceParams& params, double x, double y) {
    return JointEngine<B>(b, e, params).solve(y)(x);
}

} // namespace sojourn
