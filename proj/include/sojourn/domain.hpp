#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace sojourn {

/// E = [u_1, v_1] ∪ ... ∪ [u_n, v_n] with u_1 < v_1 < u_2 < ... < v_n.
class IntervalUnion {
public:
    static IntervalUnion make(const std::vector<std::pair<double, double>>& pairs) {
        if (pairs.empty()) throw Error(ErrorCode::Empty, "interval union needs at least one interval");
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto [u, v] = pairs[i];
            if (!std::isfinite(u) || !std::isfinite(v))
                throw Error(ErrorCode::NonFinite, "interval " + std::to_string(i + 1) + " has a non-finite endpoint");
            if (u == v) throw Error(ErrorCode::Degenerate, "interval " + std::to_string(i + 1) + " has u == v");
            if (u > v) throw Error(ErrorCode::NotSorted, "interval " + std::to_string(i + 1) + " has u > v");
            if (i > 0) {
                const auto [pu, pv] = pairs[i - 1];
                if (u < pu) throw Error(ErrorCode::NotSorted, "intervals are not in increasing order");
                if (u <= pv)
                    throw Error(ErrorCode::Overlapping, "intervals " + std::to_string(i) + " and " +
                                                            std::to_string(i + 1) + " overlap or touch");
            }
        }
        IntervalUnion e;
        e.pairs_ = pairs;
        return e;
    }

    std::size_t size() const { return pairs_.size(); }
    /// 1-based accessors matching u_i, v_i.
    double u(std::size_t i) const { return pairs_[i - 1].first; }
    double v(std::size_t i) const { return pairs_[i - 1].second; }
    const std::vector<std::pair<double, double>>& pairs() const { return pairs_; }

    bool contains(double x) const {
        for (const auto& [u, v] : pairs_)
            if (x >= u && x <= v) return true;
        return false;
    }

private:
    std::vector<std::pair<double, double>> pairs_;
};

inline IntervalUnion make_interval_union(const std::vector<std::pair<double, double>>& pairs) {
    return IntervalUnion::make(pairs);
}

/// Strictly increasing points u_1 < ... < u_n.
class PointSet {
public:
    static PointSet make(const std::vector<double>& points) {
        if (points.empty()) throw Error(ErrorCode::Empty, "point set needs at least one point");
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!std::isfinite(points[i])) throw Error(ErrorCode::NonFinite, "non-finite point");
            if (i > 0 && points[i] <= points[i - 1])
                throw Error(ErrorCode::NotSorted, "points must be strictly increasing");
        }
        PointSet p;
        p.points_ = points;
        return p;
    }

    std::size_t size() const { return points_.size(); }
    double u(std::size_t i) const { return points_[i - 1]; }
    const std::vector<double>& points() const { return points_; }

private:
    std::vector<double> points_;
};

/// λ and the multipliers μ_i, one per interval or point.
struct LaplaceParams {
    double lambda = 1.0;
    std::vector<double> mu;

    LaplaceParams() = default;
    LaplaceParams(double l, std::vector<double> m) : lambda(l), mu(std::move(m)) { validate(); }

    void validate() const {
        if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::InvalidRate, "lambda must be positive");
        for (double m : mu)
            if (!(m >= 0.0) || !std::isfinite(m))
                throw Error(ErrorCode::InvalidRate, "every mu_i must be finite and nonnegative");
    }

    void validate(std::size_t n) const {
        validate();
        if (mu.size() != n)
            throw Error(ErrorCode::InvalidArgument, "mu has " + std::to_string(mu.size()) + " entries, expected " +
                                                        std::to_string(n));
    }

    double rate(std::size_t i) const { return lambda + mu[i - 1]; }

    /// ν_i = μ_i / (λ (λ + μ_i))
    double nu(std::size_t i) const { return mu[i - 1] / (lambda * (lambda + mu[i - 1])); }

    double max_mu() const {
        double m = 0.0;
        for (double x : mu) m = std::max(m, x);
        return m;
    }
};

/// Where a position falls relative to E: inside interval i (closed) or in
/// gap i, the open stretch (v_i, u_{i+1}) with v_0 = -inf, u_{n+1} = +inf.
struct Location {
    enum class Kind { Inside, Gap };
    Kind kind;
    std::size_t index;

    bool inside() const { return kind == Kind::Inside; }
    friend bool operator==(const Location&, const Location&) = default;
};

inline Location locate(const IntervalUnion& e, double x) {
    const std::size_t n = e.size();
    for (std::size_t i = 1; i <= n; ++i) {
        if (x < e.u(i)) return {Location::Kind::Gap, i - 1};
        if (x <= e.v(i)) return {Location::Kind::Inside, i};
    }
    return {Location::Kind::Gap, n};
}

} // namespace sojourn
