#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "error.hpp"

namespace sojourn {

// Scaled quantities keep a mantissa together with an exact binary exponent.
// The represented value is mantissa * 2^exp2, so log_scale() = exp2 * ln 2.
// Rescaling by powers of two is exact, which keeps long products free of
// rounding in the scale itself.

namespace detail {

inline void require_finite(double v) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite value in scaled arithmetic");
}

/// Binary exponent e such that |v| * 2^-e lies in [1/2, 1).
inline std::int64_t binary_exponent(double v) {
    int e = 0;
    std::frexp(v, &e);
    return e;
}

/// Splits e^{log} into mantissa * 2^k with mantissa in [1/sqrt 2, sqrt 2].
inline std::int64_t split_log(double log, double& factor) {
    require_finite(log);
    const double k = std::nearbyint(log / std::numbers::ln2);
    factor = std::exp(log - k * std::numbers::ln2);
    return static_cast<std::int64_t>(k);
}

inline double shift(double m, std::int64_t by) {
    if (by < -2200) return 0.0;
    if (by > 2200) by = 2200;
    return std::ldexp(m, static_cast<int>(by));
}

} // namespace detail

class ScaledReal {
public:
    ScaledReal() = default;
    ScaledReal(double v) : m_(v), k_(0) { normalize(); } // NOLINT: implicit by design
    ScaledReal(double mantissa, std::int64_t exp2) : m_(mantissa), k_(exp2) { normalize(); }

    /// mantissa * e^{log}
    static ScaledReal from_log(double mantissa, double log) {
        double f = 1.0;
        const auto k = detail::split_log(log, f);
        return ScaledReal(mantissa * f, k);
    }

    double mantissa() const { return m_; }
    std::int64_t exp2() const { return k_; }
    double log_scale() const { return static_cast<double>(k_) * std::numbers::ln2; }
    bool is_zero() const { return m_ == 0.0; }
    int sign() const { return (m_ > 0) - (m_ < 0); }

    /// Natural log of |value|; -inf for zero.
    double log_abs() const {
        return m_ == 0.0 ? -INFINITY : std::log(std::fabs(m_)) + log_scale();
    }

    /// Plain double; may overflow to inf or underflow to 0 for extreme scales.
    double value() const { return detail::shift(m_, k_); }

    ScaledReal operator-() const { return ScaledReal(-m_, k_); }

    friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
        return ScaledReal(a.m_ * b.m_, a.k_ + b.k_);
    }
    friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
        if (b.m_ == 0.0) throw Error(ErrorCode::NonFinite, "division by zero");
        return ScaledReal(a.m_ / b.m_, a.k_ - b.k_);
    }
    friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
        if (a.m_ == 0.0) return b;
        if (b.m_ == 0.0) return a;
        const auto k = std::max(a.k_, b.k_);
        return ScaledReal(detail::shift(a.m_, a.k_ - k) + detail::shift(b.m_, b.k_ - k), k);
    }
    friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) { return a + (-b); }

private:
    void normalize() {
        detail::require_finite(m_);
        if (m_ == 0.0) {
            k_ = 0;
            return;
        }
        const auto e = detail::binary_exponent(m_);
        m_ = std::ldexp(m_, static_cast<int>(-e));
        k_ += e;
    }

    double m_ = 0.0;
    std::int64_t k_ = 0;
};

/// Column 2-vector; each entry carries its own exponent.
class ScaledVec2 {
public:
    ScaledVec2() = default;
    ScaledVec2(const ScaledReal& a, const ScaledReal& b) : v_{a, b} {}
    ScaledVec2(double a, double b, std::int64_t exp2 = 0) : v_{ScaledReal(a, exp2), ScaledReal(b, exp2)} {}

    static ScaledVec2 unit(int i) { return i == 0 ? ScaledVec2(1.0, 0.0) : ScaledVec2(0.0, 1.0); }

    bool is_zero() const { return v_[0].is_zero() && v_[1].is_zero(); }

    ScaledReal operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
    double value(int i) const { return v_[static_cast<std::size_t>(i)].value(); }

    ScaledVec2 operator-() const { return {-v_[0], -v_[1]}; }

    /// (-v2, v1): maps a row vector to the column orthogonal to it.
    ScaledVec2 rotated() const { return {-v_[1], v_[0]}; }

    friend ScaledVec2 operator*(const ScaledReal& s, const ScaledVec2& v) { return {s * v.v_[0], s * v.v_[1]}; }
    friend ScaledVec2 operator+(const ScaledVec2& a, const ScaledVec2& b) {
        return {a.v_[0] + b.v_[0], a.v_[1] + b.v_[1]};
    }
    friend ScaledVec2 operator-(const ScaledVec2& a, const ScaledVec2& b) { return a + (-b); }

    /// a1 b2 - a2 b1
    friend ScaledReal det(const ScaledVec2& a, const ScaledVec2& b) { return a.v_[0] * b.v_[1] - a.v_[1] * b.v_[0]; }
    friend ScaledReal dot(const ScaledVec2& a, const ScaledVec2& b) { return a.v_[0] * b.v_[0] + a.v_[1] * b.v_[1]; }

private:
    std::array<ScaledReal, 2> v_{};
};

/// Row-major 2x2 matrix; each entry carries its own exponent, so entries of
/// wildly different size (e^{±√r x} columns) keep full relative precision.
class ScaledMat2 {
public:
    ScaledMat2() = default;
    ScaledMat2(double a, double b, double c, double d, std::int64_t exp2 = 0)
        : m_{ScaledReal(a, exp2), ScaledReal(b, exp2), ScaledReal(c, exp2), ScaledReal(d, exp2)} {}

    /// e^{log} * [[a, b], [c, d]]
    static ScaledMat2 from_log(double a, double b, double c, double d, double log) {
        const ScaledReal s = ScaledReal::from_log(1.0, log);
        return from_entries(s * a, s * b, s * c, s * d);
    }

    static ScaledMat2 from_entries(const ScaledReal& a, const ScaledReal& b, const ScaledReal& c,
                                   const ScaledReal& d) {
        ScaledMat2 r;
        r.m_ = {a, b, c, d};
        return r;
    }

    static ScaledMat2 identity() { return ScaledMat2(1.0, 0.0, 0.0, 1.0); }
    static ScaledMat2 zero() { return ScaledMat2(); }

    /// Matrix whose columns are the given vectors.
    static ScaledMat2 from_columns(const ScaledVec2& c0, const ScaledVec2& c1) {
        return from_entries(c0[0], c1[0], c0[1], c1[1]);
    }

    bool is_zero() const {
        return std::all_of(m_.begin(), m_.end(), [](const ScaledReal& v) { return v.is_zero(); });
    }

    ScaledReal operator()(int r, int c) const { return m_[static_cast<std::size_t>(2 * r + c)]; }
    double value(int r, int c) const { return (*this)(r, c).value(); }

    ScaledVec2 row(int r) const { return {(*this)(r, 0), (*this)(r, 1)}; }
    ScaledVec2 column(int c) const { return {(*this)(0, c), (*this)(1, c)}; }

    ScaledReal det() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    ScaledMat2 transpose() const { return from_entries(m_[0], m_[2], m_[1], m_[3]); }

    ScaledMat2 inverse() const {
        const ScaledReal d = det();
        if (d.is_zero()) throw Error(ErrorCode::SingularMatrix, "2x2 matrix is singular");
        return from_entries(m_[3] / d, -m_[1] / d, -m_[2] / d, m_[0] / d);
    }

    ScaledMat2 operator-() const { return from_entries(-m_[0], -m_[1], -m_[2], -m_[3]); }

    friend ScaledMat2 operator*(const ScaledMat2& a, const ScaledMat2& b) {
        const auto& x = a.m_;
        const auto& y = b.m_;
        return from_entries(x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
                            x[2] * y[1] + x[3] * y[3]);
    }
    friend ScaledVec2 operator*(const ScaledMat2& a, const ScaledVec2& v) {
        const auto& x = a.m_;
        return {x[0] * v[0] + x[1] * v[1], x[2] * v[0] + x[3] * v[1]};
    }
    /// Row vector times matrix, returned as a column.
    friend ScaledVec2 operator*(const ScaledVec2& row, const ScaledMat2& a) { return a.transpose() * row; }

    friend ScaledMat2 operator*(const ScaledReal& s, const ScaledMat2& a) {
        return from_entries(s * a.m_[0], s * a.m_[1], s * a.m_[2], s * a.m_[3]);
    }
    friend ScaledMat2 operator+(const ScaledMat2& a, const ScaledMat2& b) {
        return from_entries(a.m_[0] + b.m_[0], a.m_[1] + b.m_[1], a.m_[2] + b.m_[2], a.m_[3] + b.m_[3]);
    }
    friend ScaledMat2 operator-(const ScaledMat2& a, const ScaledMat2& b) { return a + (-b); }

private:
    std::array<ScaledReal, 4> m_{};
};

inline ScaledMat2 mat2_mul(const ScaledMat2& a, const ScaledMat2& b) { return a * b; }
inline ScaledMat2 mat2_inv(const ScaledMat2& a) { return a.inverse(); }

/// Largest entrywise difference measured against the largest entry of either
/// matrix (a zero entry next to large ones is not penalised for rounding noise).
inline double relative_distance(const ScaledMat2& a, const ScaledMat2& b) {
    double big = -INFINITY, diff = -INFINITY;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            big = std::max({big, a(r, c).log_abs(), b(r, c).log_abs()});
            diff = std::max(diff, (a(r, c) - b(r, c)).log_abs());
        }
    if (diff == -INFINITY) return 0.0;
    return big == -INFINITY ? std::exp(diff) : std::exp(diff - big);
}

/// |a - b| / max(|a|, |b|), scale aware.
inline double relative_distance(const ScaledReal& a, const ScaledReal& b) {
    const ScaledReal d = a - b;
    if (d.is_zero()) return 0.0;
    const double la = a.log_abs(), lb = b.log_abs();
    return std::exp(d.log_abs() - std::max(la, lb));
}

} // namespace sojourn
