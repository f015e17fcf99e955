#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "bases.hpp"
#include "domain.hpp"
#include "error.hpp"
#include "piecewise.hpp"
#include "scaled.hpp"

namespace sojourn {

/// Matrix with first row (f₊, f₋) and second row (f₊', f₋') at rate r.
template <DiffusionBasis B>
ScaledMat2 fundamental_matrix(const B& b, double r, double x) {
    return ScaledMat2::from_columns(b.increasing(r, x).column(), b.decreasing(r, x).column());
}

struct LocalMatrices {
    ScaledMat2 M; ///< (a_i, b_i) at rate λ + μ_i
    ScaledMat2 N; ///< (c, d) at rate λ
};

template <DiffusionBasis B>
LocalMatrices local_matrices(const B& b, double lambda, double mu_i, double x) {
    return {fundamental_matrix(b, lambda + mu_i, x), fundamental_matrix(b, lambda, x)};
}

/// Everything that depends on a single interval [u_i, v_i].
struct IntervalBlock {
    double u = 0.0, v = 0.0;
    double mu = 0.0, nu = 0.0, rate = 0.0;
    ScaledMat2 Mu, Mv, Nu, Nv;
    ScaledMat2 Mu_inv, Mv_inv, Nu_inv, Nv_inv;
    ScaledMat2 T;     ///< M(v) M(u)^{-1}: carries a state at u to the state at v
    ScaledMat2 T_inv; ///< M(u) M(v)^{-1}
    ScaledReal det_T, det_Nv;
};

/// Transfer matrices of the φ system. Vectors of per-interval matrices are
/// indexed from 0 (P[i-1] is P_i); R and S run over 0..n with R[0] = I, S[0] = 0.
struct TransferAssembly {
    double lambda = 1.0;
    std::vector<double> mu;
    std::vector<IntervalBlock> blocks;
    std::vector<ScaledMat2> P, Q;
    std::vector<ScaledMat2> R, S;
    std::vector<ScaledMat2> P_rev, Q_rev; ///< P̃_i = P_i^{-1}, Q̃_i = -P_i^{-1} Q_i
    ScaledMat2 R_rev;                     ///< R̃_n = P̃_1 ... P̃_n
    ScaledMat2 S_rev;                     ///< S̃_n = Σ ν_k P̃_1 ... P̃_{k-1} Q̃_k

    std::size_t size() const { return blocks.size(); }
};

template <DiffusionBasis B>
TransferAssembly assemble(const B& b, const IntervalUnion& e, const LaplaceParams& params) {
    const std::size_t n = e.size();
    params.validate(n);
    TransferAssembly a;
    a.lambda = params.lambda;
    a.mu = params.mu;
    a.blocks.resize(n);
    a.R.push_back(ScaledMat2::identity());
    a.S.push_back(ScaledMat2::zero());
    ScaledMat2 prefix_rev = ScaledMat2::identity();
    a.S_rev = ScaledMat2::zero();
    for (std::size_t i = 1; i <= n; ++i) {
        IntervalBlock& k = a.blocks[i - 1];
        k.u = e.u(i);
        k.v = e.v(i);
        k.mu = params.mu[i - 1];
        k.nu = params.nu(i);
        k.rate = params.rate(i);
        const auto lu = local_matrices(b, params.lambda, k.mu, k.u);
        const auto lv = local_matrices(b, params.lambda, k.mu, k.v);
        k.Mu = lu.M;
        k.Nu = lu.N;
        k.Mv = lv.M;
        k.Nv = lv.N;
        k.Mu_inv = k.Mu.inverse();
        k.Mv_inv = k.Mv.inverse();
        k.Nu_inv = k.Nu.inverse();
        k.Nv_inv = k.Nv.inverse();
        k.T = k.Mv * k.Mu_inv;
        k.T_inv = k.Mu * k.Mv_inv;
        k.det_T = k.Mv.det() / k.Mu.det();
        k.det_Nv = k.Nv.det();

        // Grouped as changes of basis at one point, (N⁻¹M)(v)·(M⁻¹N)(u): neither
        // factor cancels terms whose size grows with |u| or |v|.
        const ScaledMat2 at_v = k.Nv_inv * k.Mv, at_u = k.Mu_inv * k.Nu;
        const ScaledMat2 back_u = k.Nu_inv * k.Mu, back_v = k.Mv_inv * k.Nv;
        const ScaledMat2 P = at_v * at_u;
        const ScaledMat2 Q = at_v * k.Mu_inv - k.Nv_inv;
        const ScaledMat2 Pr = back_u * back_v;
        const ScaledMat2 Qr = back_u * k.Mv_inv - k.Nu_inv;
        a.P.push_back(P);
        a.Q.push_back(Q);
        a.P_rev.push_back(Pr);
        a.Q_rev.push_back(Qr);
        a.R.push_back(P * a.R.back());
        a.S.push_back(P * a.S.back() + ScaledReal(k.nu) * Q);
        a.S_rev = a.S_rev + ScaledReal(k.nu) * (prefix_rev * Qr);
        prefix_rev = prefix_rev * Pr;
    }
    a.R_rev = prefix_rev;
    return a;
}

/// The two homogeneous solutions of the gap system, in gap coordinates:
/// left[i] = R_i C₀ grows out of the left tail, right[i] is the solution
/// that vanishes at the right tail, normalised by right[n] = D₀.
/// den = det(left[i], right[i]) = (1 0) R_n C₀ for every i.
struct HomogeneousChain {
    std::vector<ScaledVec2> left;
    std::vector<ScaledVec2> right;
    ScaledReal den;
};

inline HomogeneousChain homogeneous_chain(const TransferAssembly& a) {
    const std::size_t n = a.size();
    HomogeneousChain h;
    h.left.resize(n + 1);
    h.right.resize(n + 1);
    h.left[0] = ScaledVec2::unit(0);
    for (std::size_t i = 1; i <= n; ++i) h.left[i] = a.P[i - 1] * h.left[i - 1];
    h.right[n] = ScaledVec2::unit(1);
    for (std::size_t i = n; i >= 1; --i) h.right[i - 1] = a.P_rev[i - 1] * h.right[i];
    h.den = h.left[n][0];
    if (h.den.is_zero() || h.den.sign() < 0)
        throw Error(ErrorCode::DegenerateSystem, "(1 0) R_n C_0 is not positive; system cannot be solved");
    return h;
}

/// Solved coefficients for one (λ, μ) query, and for ψ one y.
/// For ψ the regular slot of the piece containing y holds the coefficients of
/// the part right of y; `split` holds (left of y, right of y).
struct CoefficientSet {
    ScaledReal gamma0;
    ScaledReal delta_n;          ///< from the forward solve
    ScaledReal delta_n_reversed; ///< from the reversed recursion
    ScaledReal denominator;      ///< (1 0) R_n C₀
    std::vector<CoefficientPair> interval; ///< A_1 .. A_n
    std::vector<CoefficientPair> gap;      ///< B_0 .. B_n
    std::optional<Location> split_at;
    std::optional<std::array<CoefficientPair, 2>> split;
};

/// Solves B_i = [γ₀ R_i + S_i] C₀ with γ₀ = -(1 0)S_nC₀ / (1 0)R_nC₀.
///
/// The literal recursion subtracts two quantities of size e^{∫√r}; here the
/// same B_i are obtained from the decomposition
///   B_i = [D_i · right_i - σ_i · left_i] / den,
///   D_i = Σ_{k≤i} ν_k det(left_k, Q_k C₀),  σ_i = Σ_{k>i} ν_k ρ_k Q_k C₀,
/// (ρ_k the row with right_k = J ρ_kᵀ), which follows from det P_i = 1.
/// Both scalar terms are evaluated from states at the interval ends so no
/// growing and decaying parts are ever subtracted.
inline CoefficientSet solve_phi_coefficients(const TransferAssembly& a, const HomogeneousChain& h) {
    const std::size_t n = a.size();
    std::vector<ScaledReal> d_term(n + 1), s_term(n + 1);
    for (std::size_t k = 1; k <= n; ++k) {
        const IntervalBlock& blk = a.blocks[k - 1];
        const ScaledVec2 left_u = blk.Nu * h.left[k - 1];
        const ScaledVec2 left_v = blk.T * left_u;
        d_term[k] = (left_v[1] - blk.det_T * left_u[1]) / blk.det_Nv;
        const ScaledVec2 right_v = blk.Nv * h.right[k];
        const ScaledVec2 right_u = blk.T_inv * right_v;
        s_term[k] = (blk.det_T * right_u[1] - right_v[1]) / blk.det_Nv;
    }
    std::vector<ScaledReal> D(n + 1), sigma(n + 1);
    D[0] = ScaledReal(0.0);
    for (std::size_t k = 1; k <= n; ++k) D[k] = D[k - 1] + ScaledReal(a.blocks[k - 1].nu) * d_term[k];
    sigma[n] = ScaledReal(0.0);
    for (std::size_t k = n; k >= 1; --k) sigma[k - 1] = sigma[k] + ScaledReal(a.blocks[k - 1].nu) * s_term[k];

    CoefficientSet c;
    c.denominator = h.den;
    c.gamma0 = -sigma[0] / h.den;
    c.delta_n = D[n] / h.den;
    if (a.R_rev(1, 1).is_zero()) throw Error(ErrorCode::DegenerateSystem, "(0 1) R~_n D_0 vanishes");
    c.delta_n_reversed = -a.S_rev(1, 0) / a.R_rev(1, 1);

    std::vector<ScaledVec2> Bv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        ScaledVec2 b = ScaledReal(1.0) / h.den * (D[i] * h.right[i] - sigma[i] * h.left[i]);
        Bv[i] = b;
        CoefficientPair p = CoefficientPair::from(b);
        // Exact structural zeros: δ_0 = 0 and γ_n = 0.
        if (i == 0) p = {c.gamma0, ScaledReal(0.0)};
        if (i == n) p = {ScaledReal(0.0), c.delta_n};
        c.gap.push_back(p);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const IntervalBlock& blk = a.blocks[i - 1];
        const ScaledVec2 nu_e1(blk.nu, 0.0);
        const ScaledVec2 from_right = blk.Mv_inv * (blk.Nv * Bv[i] + nu_e1);
        const ScaledVec2 from_left = blk.Mu_inv * (blk.Nu * Bv[i - 1] + nu_e1);
        c.interval.push_back({from_right[0], from_left[1]});
    }
    return c;
}

/// φ pieces: gap 0, interval 1, gap 1, ..., interval n, gap n.
template <DiffusionBasis B>
PiecewiseSolution<B> phi_pieces(const B& b, const TransferAssembly& a, const CoefficientSet& c) {
    const std::size_t n = a.size();
    std::vector<Piece> pieces;
    double lo = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= n; ++i) {
        Piece g;
        g.lo = lo;
        g.hi = i < n ? a.blocks[i].u : std::numeric_limits<double>::infinity();
        g.rate = a.lambda;
        g.coef = c.gap[i];
        g.offset = 1.0 / a.lambda;
        pieces.push_back(g);
        if (i == n) break;
        const IntervalBlock& blk = a.blocks[i];
        Piece p;
        p.lo = blk.u;
        p.hi = blk.v;
        p.closed_hi = true;
        p.rate = blk.rate;
        p.coef = c.interval[i];
        p.offset = 1.0 / blk.rate;
        pieces.push_back(p);
        lo = blk.v;
    }
    return PiecewiseSolution<B>(b, std::move(pieces));
}

/// x ↦ φ_{λ,μ}(x) = ∫ e^{-λt} E_x e^{-⟨μ, T_t⟩} dt for one (λ, μ).
template <DiffusionBasis B>
struct SojournSolution {
    TransferAssembly assembly;
    HomogeneousChain chain;
    CoefficientSet coefficients;
    PiecewiseSolution<B> function;

    double operator()(double x) const { return function.value(x); }
    Jet jet(double x) const { return function.jet(x); }
};

template <DiffusionBasis B>
SojournSolution<B> solve_sojourn(const B& b, const IntervalUnion& e, const LaplaceParams& params) {
    TransferAssembly a = assemble(b, e, params);
    HomogeneousChain h = homogeneous_chain(a);
    CoefficientSet c = solve_phi_coefficients(a, h);
    PiecewiseSolution<B> f = phi_pieces(b, a, c);
    return {std::move(a), std::move(h), std::move(c), std::move(f)};
}

template <DiffusionBasis B>
double phi(const B& b, const IntervalUnion& e, const LaplaceParams& params, double x) {
    return solve_sojourn(b, e, params)(x);
}

} // namespace sojourn
