#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sojourn.hpp"

namespace sojourn::cli {

using nlohmann::json;

enum class Mode { Sojourn, Joint, LocalTime };

struct Problem {
    std::string kind = "brownian";
    double sigma = std::sqrt(2.0);
    double drift = 0.0;
    Mode mode = Mode::Sojourn;
    std::vector<std::pair<double, double>> intervals;
    std::vector<double> points;
    std::vector<double> mu;
    std::vector<double> xs, ys, lambdas;
    std::optional<double> t;
    int order = 14;
    int outer_order = 12;
    bool experimental2d = false;
    std::vector<double> s;
    std::optional<SimConfig> mc;
    double band = 0.05;
    double tolerance = 5e-3;
    double sigmas = 3.0;

    std::size_t n() const { return mode == Mode::LocalTime ? points.size() : intervals.size(); }
};

struct Options {
    bool check_integral = false;
    bool experimental = false;
    bool quiet = false;
    unsigned threads = 0; ///< 0 = hardware concurrency
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Outcome {
    Table table;
    int exit_code = 0;
    std::string message;
};

inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_csv(std::ostream& os, const Table& t) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

/// SOJOURN_KIT_THREADS if it holds a positive integer, else 0.
inline unsigned threads_from_env() {
    const char* v = std::getenv("SOJOURN_KIT_THREADS");
    if (!v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    return (end != v && *end == '\0' && n > 0) ? static_cast<unsigned>(n) : 0;
}

// ---------------------------------------------------------------------------
// Config loading. Every failure names the offending field path.

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorCode::Config, path + ": " + msg);
}

inline void allow_keys(const json& obj, const std::string& path, std::initializer_list<const char*> keys) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) fail(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
}

inline const json& object_at(const json& parent, const char* key, const std::string& path) {
    const json& j = parent.at(key);
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

inline double positive(const json& j, const std::string& path) {
    const double v = number(j, path);
    if (!(v > 0.0)) fail(path, "must be positive");
    return v;
}

inline std::vector<double> number_array(const json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

/// A grid is a number, an array of numbers, or {from, to, count}.
inline std::vector<double> grid(const json& j, const std::string& path) {
    if (j.is_number()) return {number(j, path)};
    if (j.is_array()) {
        auto v = number_array(j, path);
        if (v.empty()) fail(path, "grid is empty");
        return v;
    }
    if (!j.is_object()) fail(path, "expected a number, an array or {from, to, count}");
    allow_keys(j, path, {"from", "to", "count"});
    for (const char* k : {"from", "to", "count"})
        if (!j.contains(k)) fail(path + "." + k, "required");
    const double a = number(j["from"], path + ".from"), b = number(j["to"], path + ".to");
    if (!j["count"].is_number_integer() || j["count"].get<long long>() < 1) fail(path + ".count", "must be an integer >= 1");
    const auto m = static_cast<std::size_t>(j["count"].get<long long>());
    if (m == 1) return {a};
    std::vector<double> out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(m - 1);
    out.back() = b;
    return out;
}

inline std::vector<double> grid_field(const json& q, const char* single, const char* many, const std::string& base,
                                      bool required) {
    const bool a = q.contains(single), b = q.contains(many);
    if (a && b) fail(base + "." + many, std::string("give either ") + single + " or " + many);
    if (a) return grid(q[single], base + "." + single);
    if (b) return grid(q[many], base + "." + many);
    if (required) fail(base + "." + single, "required");
    return {};
}

inline std::string line_of(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return std::to_string(line);
}

} // namespace detail

inline Problem parse_problem(const std::string& text) {
    using namespace detail;
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail("line " + line_of(text, e.byte), std::string("malformed JSON (") + e.what() + ")");
    }
    if (!root.is_object()) fail("(root)", "expected an object");
    allow_keys(root, "", {"diffusion", "mode", "intervals", "points", "mu", "query", "inversion", "mc", "compare"});

    Problem p;
    if (root.contains("diffusion")) {
        const json& d = object_at(root, "diffusion", "diffusion");
        allow_keys(d, "diffusion", {"kind", "sigma", "drift"});
        if (!d.contains("kind") || !d["kind"].is_string()) fail("diffusion.kind", "required string");
        p.kind = d["kind"].get<std::string>();
        if (p.kind == "brownian") {
            if (d.contains("sigma") || d.contains("drift"))
                fail("diffusion", "kind brownian takes no sigma or drift (use brownian_general)");
        } else if (p.kind == "brownian_general") {
            if (d.contains("sigma")) p.sigma = positive(d["sigma"], "diffusion.sigma");
            if (d.contains("drift")) p.drift = number(d["drift"], "diffusion.drift");
        } else {
            fail("diffusion.kind", "must be brownian or brownian_general");
        }
    }

    if (!root.contains("mode") || !root["mode"].is_string()) fail("mode", "required string");
    const std::string mode = root["mode"].get<std::string>();
    if (mode == "sojourn") p.mode = Mode::Sojourn;
    else if (mode == "joint") p.mode = Mode::Joint;
    else if (mode == "localtime") p.mode = Mode::LocalTime;
    else fail("mode", "must be sojourn, joint or localtime");

    if (p.mode == Mode::LocalTime) {
        if (p.kind != "brownian") fail("diffusion.kind", "local times are supported for brownian only");
        if (root.contains("intervals")) fail("intervals", "not used in localtime mode (give points)");
        if (!root.contains("points")) fail("points", "required in localtime mode");
        p.points = number_array(root["points"], "points");
        try {
            PointSet::make(p.points);
        } catch (const Error& e) {
            fail("points", e.message());
        }
    } else {
        if (root.contains("points")) fail("points", "only used in localtime mode");
        if (!root.contains("intervals") || !root["intervals"].is_array()) fail("intervals", "required array of [u, v]");
        const json& iv = root["intervals"];
        for (std::size_t i = 0; i < iv.size(); ++i) {
            const std::string path = "intervals[" + std::to_string(i) + "]";
            if (!iv[i].is_array() || iv[i].size() != 2) fail(path, "expected [u, v]");
            p.intervals.emplace_back(number(iv[i][0], path + "[0]"), number(iv[i][1], path + "[1]"));
        }
        try {
            IntervalUnion::make(p.intervals);
        } catch (const Error& e) {
            fail("intervals", e.message());
        }
    }

    if (!root.contains("mu")) fail("mu", "required");
    p.mu = number_array(root["mu"], "mu");
    if (p.mu.size() != p.n())
        fail("mu", "has " + std::to_string(p.mu.size()) + " entries, expected " + std::to_string(p.n()));
    for (std::size_t i = 0; i < p.mu.size(); ++i)
        if (p.mu[i] < 0.0) fail("mu[" + std::to_string(i) + "]", "must be nonnegative");

    if (!root.contains("query")) fail("query", "required");
    const json& q = object_at(root, "query", "query");
    allow_keys(q, "query", {"x", "xGrid", "y", "yGrid", "lambda", "lambdaGrid", "t"});
    p.xs = grid_field(q, "x", "xGrid", "query", true);
    p.ys = grid_field(q, "y", "yGrid", "query", p.mode == Mode::Joint);
    p.lambdas = grid_field(q, "lambda", "lambdaGrid", "query", false);
    for (std::size_t i = 0; i < p.lambdas.size(); ++i)
        if (!(p.lambdas[i] > 0.0)) fail("query.lambda", "values must be positive");
    if (q.contains("t")) p.t = positive(q["t"], "query.t");

    if (root.contains("inversion")) {
        const json& inv = object_at(root, "inversion", "inversion");
        allow_keys(inv, "inversion", {"order", "outerOrder", "experimental2d", "s"});
        if (inv.contains("order")) {
            if (!inv["order"].is_number_integer()) fail("inversion.order", "expected an integer");
            p.order = inv["order"].get<int>();
            if (p.order < 4 || p.order > 18 || p.order % 2) fail("inversion.order", "must be even and within [4, 18]");
        }
        if (inv.contains("outerOrder")) {
            if (!inv["outerOrder"].is_number_integer()) fail("inversion.outerOrder", "expected an integer");
            p.outer_order = inv["outerOrder"].get<int>();
            if (p.outer_order < 4 || p.outer_order > 18 || p.outer_order % 2)
                fail("inversion.outerOrder", "must be even and within [4, 18]");
        }
        if (inv.contains("experimental2d")) {
            if (!inv["experimental2d"].is_boolean()) fail("inversion.experimental2d", "expected a boolean");
            p.experimental2d = inv["experimental2d"].get<bool>();
        }
        if (inv.contains("s")) p.s = grid(inv["s"], "inversion.s");
    }

    if (root.contains("mc")) {
        const json& m = object_at(root, "mc", "mc");
        allow_keys(m, "mc", {"paths", "dt", "seed", "scheme", "antithetic", "band"});
        SimConfig c;
        if (m.contains("paths")) {
            if (!m["paths"].is_number_integer() || m["paths"].get<long long>() < 1) fail("mc.paths", "must be an integer >= 1");
            c.paths = static_cast<std::size_t>(m["paths"].get<long long>());
        }
        if (m.contains("dt")) c.dt = positive(m["dt"], "mc.dt");
        if (m.contains("seed")) {
            if (!m["seed"].is_number_unsigned()) fail("mc.seed", "must be a nonnegative integer");
            c.seed = m["seed"].get<std::uint64_t>();
        }
        if (m.contains("scheme")) {
            const std::string s = m["scheme"].is_string() ? m["scheme"].get<std::string>() : "";
            if (s == "exact") c.scheme = Scheme::ExactBrownian;
            else if (s == "euler") c.scheme = Scheme::EulerMaruyama;
            else fail("mc.scheme", "must be exact or euler");
        }
        if (m.contains("antithetic")) {
            if (!m["antithetic"].is_boolean()) fail("mc.antithetic", "expected a boolean");
            c.antithetic = m["antithetic"].get<bool>();
            if (c.antithetic && c.paths % 2) fail("mc.paths", "must be even with antithetic pairing");
        }
        if (m.contains("band")) p.band = positive(m["band"], "mc.band");
        if (p.t && c.dt > *p.t) fail("mc.dt", "must not exceed query.t");
        if (p.t) c.t = *p.t;
        p.mc = c;
    }

    if (root.contains("compare")) {
        const json& c = object_at(root, "compare", "compare");
        allow_keys(c, "compare", {"tolerance", "sigmas"});
        if (c.contains("tolerance")) p.tolerance = positive(c["tolerance"], "compare.tolerance");
        if (c.contains("sigmas")) p.sigmas = positive(c["sigmas"], "compare.sigmas");
    }
    return p;
}

// ---------------------------------------------------------------------------
// Commands

namespace detail {

using AnyBasis = std::variant<BrownianBasis, ConstantCoefficientBasis>;

inline AnyBasis make_basis(const Problem& p) {
    if (p.kind == "brownian") return BrownianBasis{};
    return ConstantCoefficientBasis(p.sigma, p.drift);
}

inline void need_mode(const Problem& p, std::initializer_list<Mode> ok, const char* cmd) {
    for (Mode m : ok)
        if (p.mode == m) return;
    fail("mode", std::string("not accepted by ") + cmd);
}

inline void need_lambdas(const Problem& p) {
    if (p.lambdas.empty()) fail("query.lambda", "required");
}

inline double need_t(const Problem& p, const char* cmd) {
    if (!p.t) fail("query.t", std::string("required by ") + cmd);
    return *p.t;
}

inline const SimConfig& need_mc(const Problem& p, const char* cmd) {
    if (!p.mc) fail("mc", std::string("required by ") + cmd);
    return *p.mc;
}

/// Evaluates rows concurrently and keeps them in index order. Numerical
/// errors are re-thrown with the query echoed.
template <class F>
std::vector<std::vector<std::string>> rows_parallel(std::size_t count, unsigned threads, F&& row) {
    std::vector<std::vector<std::string>> out(count);
    sojourn::detail::parallel_for(count, threads, [&](std::size_t k) { out[k] = row(k); });
    return out;
}

inline std::string echo(std::initializer_list<std::pair<const char*, double>> q) {
    std::string s;
    for (const auto& [k, v] : q) s += (s.empty() ? "" : ", ") + std::string(k) + "=" + fmt17(v);
    return s;
}

template <class F>
auto with_query(const std::string& query, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) throw;
        throw Error(e.code(), e.message() + " [query: " + query + "]");
    }
}

inline std::vector<std::string> mu_header(std::size_t n) {
    std::vector<std::string> h;
    for (std::size_t i = 1; i <= n; ++i) h.push_back("mu" + std::to_string(i));
    return h;
}

} // namespace detail

inline Outcome cmd_transform(const Problem& p, const Options& o) {
    using namespace detail;
    need_mode(p, {Mode::Sojourn, Mode::Joint}, "transform");
    need_lambdas(p);
    const auto E = IntervalUnion::make(p.intervals);
    const AnyBasis basis = make_basis(p);
    Outcome out;
    out.table.header = {"x", "lambda"};
    for (auto& h : mu_header(p.n())) out.table.header.push_back(h);
    out.table.header.push_back("phi");
    const std::size_t nl = p.lambdas.size();
    out.table.rows = rows_parallel(p.xs.size() * nl, o.threads, [&](std::size_t k) {
        const double x = p.xs[k / nl], lam = p.lambdas[k % nl];
        const double v = with_query(echo({{"x", x}, {"lambda", lam}}), [&] {
            return std::visit([&](const auto& b) { return phi(b, E, LaplaceParams(lam, p.mu), x); }, basis);
        });
        std::vector<std::string> r{fmt17(x), fmt17(lam)};
        for (double m : p.mu) r.push_back(fmt17(m));
        r.push_back(fmt17(v));
        return r;
    });
    return out;
}

inline Outcome cmd_joint(const Problem& p, const Options& o) {
    using namespace detail;
    need_mode(p, {Mode::Joint}, "joint");
    need_lambdas(p);
    const auto E = IntervalUnion::make(p.intervals);
    const AnyBasis basis = make_basis(p);
    Outcome out;
    out.table.header = {"x", "y", "lambda", "psi"};
    if (o.check_integral) out.table.header.push_back("integral_residual");
    const std::size_t ny = p.ys.size(), nl = p.lambdas.size();
    return std::visit(
        [&](const auto& b) {
            using B = std::decay_t<decltype(b)>;
            std::vector<JointEngine<B>> engines;
            for (double lam : p.lambdas)
                engines.push_back(with_query(echo({{"lambda", lam}}),
                                             [&] { return JointEngine<B>(b, E, LaplaceParams(lam, p.mu)); }));
            // ∫ψ dy - φ depends on (x, λ) only
            std::vector<double> residual(p.xs.size() * nl, 0.0);
            if (o.check_integral) {
                sojourn::detail::parallel_for(residual.size(), o.threads, [&](std::size_t k) {
                    const double x = p.xs[k / nl], lam = p.lambdas[k % nl];
                    residual[k] = with_query(echo({{"x", x}, {"lambda", lam}}), [&] {
                        return integrate_psi(engines[k % nl], E, lam, x) - phi(b, E, LaplaceParams(lam, p.mu), x);
                    });
                });
            }
            out.table.rows = rows_parallel(p.xs.size() * ny * nl, o.threads, [&](std::size_t k) {
                const std::size_t ix = k / (ny * nl), iy = (k / nl) % ny, il = k % nl;
                const double x = p.xs[ix], y = p.ys[iy], lam = p.lambdas[il];
                const double v = with_query(echo({{"x", x}, {"y", y}, {"lambda", lam}}),
                                            [&] { return engines[il].solve(y)(x); });
                std::vector<std::string> r{fmt17(x), fmt17(y), fmt17(lam), fmt17(v)};
                if (o.check_integral) r.push_back(fmt17(residual[ix * nl + il]));
                return r;
            });
            return out;
        },
        basis);
}

inline Outcome cmd_localtime(const Problem& p, const Options& o) {
    using namespace detail;
    need_mode(p, {Mode::LocalTime}, "localtime");
    need_lambdas(p);
    const auto pts = PointSet::make(p.points);
    Outcome out;
    out.table.header = {"x", "lambda"};
    for (auto& h : mu_header(p.n())) out.table.header.push_back(h);
    out.table.header.push_back("value");
    const std::size_t nl = p.lambdas.size();
    out.table.rows = rows_parallel(p.xs.size() * nl, o.threads, [&](std::size_t k) {
        const double x = p.xs[k / nl], lam = p.lambdas[k % nl];
        const double v = with_query(echo({{"x", x}, {"lambda", lam}}),
                                    [&] { return local_time_transform(pts, LaplaceParams(lam, p.mu), x); });
        std::vector<std::string> r{fmt17(x), fmt17(lam)};
        for (double m : p.mu) r.push_back(fmt17(m));
        r.push_back(fmt17(v));
        return r;
    });
    return out;
}

namespace detail {

inline TimeDomainEstimate inverted(const Problem& p, const AnyBasis& basis, double x, double t) {
    const InversionConfig cfg{p.order, t};
    if (p.mode == Mode::LocalTime) return local_time_expectation_at_time(PointSet::make(p.points), p.mu, x, cfg);
    const auto E = IntervalUnion::make(p.intervals);
    return std::visit([&](const auto& b) { return expectation_at_time(b, E, p.mu, x, cfg); }, basis);
}

inline SimEstimate simulated(const Problem& p, const AnyBasis& basis, double x, SimConfig cfg, unsigned threads) {
    cfg.threads = threads;
    if (p.mode == Mode::LocalTime)
        return estimate_local_time_transform(PointSet::make(p.points), p.mu, x, cfg, p.band);
    const auto E = IntervalUnion::make(p.intervals);
    return std::visit([&](const auto& b) { return estimate_sojourn_transform(b, E, p.mu, x, cfg); }, basis);
}

} // namespace detail

inline Outcome cmd_invert(const Problem& p, const Options& o) {
    using namespace detail;
    need_mode(p, {Mode::Sojourn, Mode::LocalTime}, "invert");
    const double t = need_t(p, "invert");
    const AnyBasis basis = make_basis(p);
    Outcome out;
    if (p.experimental2d && !o.experimental) fail("inversion.experimental2d", "needs the --experimental flag");
    if (o.experimental) {
        if (p.mode != Mode::Sojourn) fail("mode", "the experimental distribution function needs mode sojourn");
        if (p.s.empty()) fail("inversion.s", "required with --experimental");
        const auto E = IntervalUnion::make(p.intervals);
        out.table.header = {"x", "t", "s", "cdf", "raw", "clamped"};
        const std::size_t ns = p.s.size();
        out.table.rows = rows_parallel(p.xs.size() * ns, o.threads, [&](std::size_t k) {
            const double x = p.xs[k / ns], s = p.s[k % ns];
            const auto e = with_query(echo({{"x", x}, {"t", t}, {"s", s}}), [&] {
                return std::visit([&](const auto& b) { return sojourn_cdf(b, E, x, s, InversionConfig{p.order, t}, p.outer_order); },
                                  basis);
            });
            return std::vector<std::string>{fmt17(x), fmt17(t), fmt17(s), fmt17(e.value), fmt17(e.raw),
                                            e.clamped ? "1" : "0"};
        });
        return out;
    }
    out.table.header = {"x", "t", "expectation", "raw", "clamped"};
    out.table.rows = rows_parallel(p.xs.size(), o.threads, [&](std::size_t k) {
        const double x = p.xs[k];
        const auto e = with_query(echo({{"x", x}, {"t", t}}), [&] { return inverted(p, basis, x, t); });
        return std::vector<std::string>{fmt17(x), fmt17(t), fmt17(e.value), fmt17(e.raw), e.clamped ? "1" : "0"};
    });
    return out;
}

inline Outcome cmd_mc(const Problem& p, const Options& o) {
    using namespace detail;
    need_mode(p, {Mode::Sojourn, Mode::LocalTime}, "mc");
    need_t(p, "mc");
    const SimConfig& cfg = need_mc(p, "mc");
    const AnyBasis basis = make_basis(p);
    Outcome out;
    out.table.header = {"x", "t", "mean", "std_error", "paths", "dt"};
    for (double x : p.xs) {
        const auto e = with_query(echo({{"x", x}}), [&] { return simulated(p, basis, x, cfg, o.threads); });
        out.table.rows.push_back({fmt17(x), fmt17(cfg.t), fmt17(e.mean), fmt17(e.std_error),
                                  std::to_string(e.paths), fmt17(e.dt)});
    }
    return out;
}

/// Inversion against simulation, per x. A row passes when
/// |inverted - mc| ≤ sigmas·stdError + tolerance (+ 2·band for local times).
inline Outcome cmd_compare(const Problem& p, const Options& o) {
    using namespace detail;
    need_mode(p, {Mode::Sojourn, Mode::LocalTime}, "compare");
    const double t = need_t(p, "compare");
    const SimConfig& cfg = need_mc(p, "compare");
    const AnyBasis basis = make_basis(p);
    Outcome out;
    out.table.header = {"x", "t", "inverted", "mc_mean", "mc_std_error", "difference", "bound", "verdict"};
    std::size_t failures = 0;
    for (double x : p.xs) {
        const auto inv = with_query(echo({{"x", x}, {"t", t}}), [&] { return inverted(p, basis, x, t); });
        const auto sim = with_query(echo({{"x", x}}), [&] { return simulated(p, basis, x, cfg, o.threads); });
        const double diff = std::fabs(inv.value - sim.mean);
        const double bound =
            p.sigmas * sim.std_error + p.tolerance + (p.mode == Mode::LocalTime ? 2.0 * p.band : 0.0);
        const bool pass = diff <= bound;
        failures += pass ? 0 : 1;
        out.table.rows.push_back({fmt17(x), fmt17(t), fmt17(inv.value), fmt17(sim.mean), fmt17(sim.std_error),
                                  fmt17(diff), fmt17(bound), pass ? "PASS" : "FAIL"});
    }
    out.exit_code = failures ? 4 : 0;
    out.message = failures ? "compare: FAIL (" + std::to_string(failures) + " of " + std::to_string(p.xs.size()) +
                                 " rows outside the bound)"
                           : "compare: PASS";
    return out;
}

/// Runs one command on config text. Exit codes: 0 ok, 2 config error,
/// 3 numerical error, 4 comparison failure.
inline Outcome run(const std::string& command, const std::string& config_text, const Options& o) {
    try {
        const Problem p = parse_problem(config_text);
        if (command == "transform") return cmd_transform(p, o);
        if (command == "joint") return cmd_joint(p, o);
        if (command == "localtime") return cmd_localtime(p, o);
        if (command == "invert") return cmd_invert(p, o);
        if (command == "mc") return cmd_mc(p, o);
        if (command == "compare") return cmd_compare(p, o);
        return {{}, 2, "unknown command " + command};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Config) return {{}, 2, "config error: " + e.message()};
        return {{}, 3, "numerical error (" + std::string(to_string(e.code())) + "): " + e.message()};
    }
}

} // namespace sojourn::cli
