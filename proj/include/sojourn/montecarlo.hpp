#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "bases.hpp"
#include "domain.hpp"
#include "error.hpp"

namespace sojourn {

enum class Scheme { ExactBrownian, EulerMaruyama };

struct SimConfig {
    std::size_t paths = 10000;
    double dt = 1e-3;
    double t = 1.0;
    std::uint64_t seed = 1;
    Scheme scheme = Scheme::ExactBrownian;
    bool antithetic = false; ///< pair each path with its mirror (negated increments)
    unsigned threads = 1;    ///< 0 = hardware concurrency; never changes the result

    void validate() const {
        if (paths < 1) throw Error(ErrorCode::InvalidArgument, "paths must be >= 1");
        if (!(dt > 0.0) || !(t > 0.0) || dt > t) throw Error(ErrorCode::InvalidArgument, "need 0 < dt <= t");
        if (antithetic && paths % 2 != 0) throw Error(ErrorCode::InvalidArgument, "antithetic needs an even path count");
    }

    /// Number of steps; the step actually used is t / steps() (at most dt).
    std::size_t steps() const { return static_cast<std::size_t>(std::ceil(t / dt - 1e-9)); }
};

struct SimEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t paths = 0;
    double dt = 0.0;
    std::string note;
};

/// Pairwise (cascade) summation; the grouping depends only on the length.
inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

/// Mean and standard error of independent samples.
inline std::pair<double, double> mean_and_error(const std::vector<double>& v) {
    const std::size_t n = v.size();
    const double mean = pairwise_sum(v.data(), n) / static_cast<double>(n);
    if (n < 2) return {mean, 0.0};
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (v[i] - mean) * (v[i] - mean);
    const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

namespace detail {

/// Independent generator for stream `index` under `seed`.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x736f6aU};
    return std::mt19937_64(seq);
}

inline unsigned resolve_threads(unsigned requested, std::size_t work) {
    unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

/// Runs `body(i)` for i in [0, count) on up to `threads` workers.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
    threads = resolve_threads(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += threads) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Simulates paths from x0 and returns one functional value per stream (per
/// antithetic pair when enabled, averaged). `accumulate(occ, x_prev, x_next, h)`
/// updates per-path accumulators; `value(occ)` maps them to the functional.
template <DiffusionBasis B, class Accumulate, class Value>
std::vector<double> simulate(const B& b, double x0, std::size_t n_acc, const SimConfig& cfg, Accumulate accumulate,
                             Value value) {
    cfg.validate();
    if (cfg.scheme == Scheme::ExactBrownian && !b.constant_coefficients())
        throw Error(ErrorCode::UnsupportedScheme, "exact Gaussian stepping needs constant coefficients");
    const std::size_t steps = cfg.steps();
    const double h = cfg.t / static_cast<double>(steps);
    const double sqh = std::sqrt(h);
    const std::size_t streams = cfg.antithetic ? cfg.paths / 2 : cfg.paths;
    const bool exact = cfg.scheme == Scheme::ExactBrownian;
    const double s0 = b.sigma(x0), m0 = b.drift(x0);

    std::vector<double> out(streams);
    parallel_for(streams, cfg.threads, [&](std::size_t p) {
        auto eng = stream_engine(cfg.seed, p);
        std::normal_distribution<double> normal(0.0, 1.0);
        const int copies = cfg.antithetic ? 2 : 1;
        double xs[2] = {x0, x0};
        std::vector<double> occ(n_acc * 2, 0.0);
        for (std::size_t k = 0; k < steps; ++k) {
            const double z = normal(eng);
            for (int c = 0; c < copies; ++c) {
                const double zc = c == 0 ? z : -z;
                const double xp = xs[c];
                const double xn = exact ? xp + m0 * h + s0 * sqh * zc : xp + b.drift(xp) * h + b.sigma(xp) * sqh * zc;
                accumulate(occ.data() + c * n_acc, xp, xn, h);
                xs[c] = xn;
            }
        }
        double v = value(occ.data());
        if (cfg.antithetic) v = 0.5 * (v + value(occ.data() + n_acc));
        out[p] = v;
    });
    return out;
}

inline SimEstimate summarize(const std::vector<double>& values, const SimConfig& cfg, std::string note) {
    const auto [m, se] = mean_and_error(values);
    return {m, se, cfg.paths, cfg.t / static_cast<double>(cfg.steps()), std::move(note)};
}

} // namespace detail

/// Per-path occupation times T^i_t of each interval, by the trapezoid rule on
/// the indicator at both ends of each step. Excursions inside a step are not
/// seen (O(dt) bias). Path p uses the same stream as in the transform estimator.
template <DiffusionBasis B>
std::vector<std::vector<double>> simulate_sojourn_times(const B& b, const IntervalUnion& e, double x,
                                                        SimConfig cfg) {
    cfg.antithetic = false;
    const std::size_t n = e.size();
    std::vector<std::vector<double>> all(cfg.paths);
    std::size_t next = 0;
    auto acc = [&](double* occ, double xp, double xn, double h) {
        const Location a = locate(e, xp), c = locate(e, xn);
        if (a.inside()) occ[a.index - 1] += 0.5 * h;
        if (c.inside()) occ[c.index - 1] += 0.5 * h;
    };
    // single-threaded capture keeps the path order; the functional stores the vector
    cfg.threads = 1;
    auto val = [&](const double* occ) {
        all[next++].assign(occ, occ + n);
        return 0.0;
    };
    detail::simulate(b, x, n, cfg, acc, val);
    return all;
}

/// Monte Carlo estimate of E_x e^{-⟨μ, T_t⟩}.
template <DiffusionBasis B>
SimEstimate estimate_sojourn_transform(const B& b, const IntervalUnion& e, const std::vector<double>& mu, double x,
                                       const SimConfig& cfg) {
    cfg.validate();
    const std::size_t n = e.size();
    if (mu.size() != n) throw Error(ErrorCode::InvalidArgument, "mu length must match the number of intervals");
    if (std::all_of(mu.begin(), mu.end(), [](double m) { return m == 0.0; }))
        return {1.0, 0.0, cfg.paths, cfg.t / static_cast<double>(cfg.steps()), "mu = 0: exact"};
    auto acc = [&](double* occ, double xp, double xn, double h) {
        const Location a = locate(e, xp), c = locate(e, xn);
        if (a.inside()) occ[a.index - 1] += 0.5 * h;
        if (c.inside()) occ[c.index - 1] += 0.5 * h;
    };
    auto val = [&](const double* occ) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += mu[i] * occ[i];
        return std::exp(-s);
    };
    const auto values = detail::simulate(b, x, n, cfg, acc, val);
    return detail::summarize(values, cfg, "trapezoid occupation, O(dt) bias");
}

/// Monte Carlo estimate of E_x e^{-⟨μ, L_t⟩} for the Brownian local times
/// (σ = √2). With a band of total width ε around u_i the estimator is
/// L_i ≈ (2/ε) · |{s : |X_s - u_i| ≤ ε/2}|, matching L = lim (1/e)·occ[u-e, u+e].
/// Bias is O(ε) + O(dt/ε²).
inline SimEstimate estimate_local_time_transform(const PointSet& pts, const std::vector<double>& mu, double x,
                                                 const SimConfig& cfg, double band) {
    cfg.validate();
    if (!(band > 0.0)) throw Error(ErrorCode::InvalidArgument, "band width must be positive");
    if (cfg.dt > band * band / 10.0) throw Error(ErrorCode::BandTooNarrow, "need dt <= band^2 / 10");
    const std::size_t n = pts.size();
    if (mu.size() != n) throw Error(ErrorCode::InvalidArgument, "mu length must match the number of points");
    if (std::all_of(mu.begin(), mu.end(), [](double m) { return m == 0.0; }))
        return {1.0, 0.0, cfg.paths, cfg.t / static_cast<double>(cfg.steps()), "mu = 0: exact"};
    const double half = 0.5 * band;
    const auto& u = pts.points();
    auto acc = [&](double* occ, double xp, double xn, double h) {
        for (std::size_t i = 0; i < n; ++i) {
            if (std::fabs(xp - u[i]) <= half) occ[i] += 0.5 * h;
            if (std::fabs(xn - u[i]) <= half) occ[i] += 0.5 * h;
        }
    };
    auto val = [&](const double* occ) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += mu[i] * occ[i] / half;
        return std::exp(-s);
    };
    SimConfig c = cfg;
    c.scheme = Scheme::ExactBrownian;
    const auto values = detail::simulate(BrownianBasis{}, x, n, c, acc, val);
    return detail::summarize(values, cfg,
                             "band width " + std::to_string(band) + ": bias O(band) + O(dt/band^2)");
}

} // namespace sojourn
