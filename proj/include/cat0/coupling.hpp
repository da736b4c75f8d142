#pragma once
// Reflected random walks by the projection (discrete Skorokhod) scheme,
// co-adapted couplings Y' = J^T dB + K^T dA, the drifted pursuit coupling,
// and Monte Carlo probes built on them.

#include <optional>
#include <string>
#include <vector>

#include "cat0/checks.hpp"
#include "cat0/parallel.hpp"
#include "cat0/random.hpp"

namespace cat0 {

/// Row-major 2x2 matrix.
struct Mat2 {
    double a = 0.0, b = 0.0;
    double c = 0.0, d = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }
    static Mat2 rotation(double th) {
        const double cs = std::cos(th), sn = std::sin(th);
        return {cs, -sn, sn, cs};
    }
    static constexpr Mat2 outer(Vec2 u, Vec2 v) { return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y}; }

    constexpr Mat2 transpose() const { return {a, c, b, d}; }
    constexpr Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    constexpr Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    constexpr Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}); }
};

struct CouplingStep {
    Mat2 J = Mat2::identity();
    Mat2 K = Mat2::zero();

    /// max |J^T J + K^T K - I|.
    double identity_error() const {
        return (J.transpose() * J + K.transpose() * K - Mat2::identity()).max_abs();
    }
    /// Y's noise increment given the two driving increments.
    Vec2 apply(Vec2 dB, Vec2 dA) const { return J.transpose() * dB + K.transpose() * dA; }
};

enum class CouplingKind { synchronous, mirror, independent, perverse_radial, custom_rotation };

inline const char* to_string(CouplingKind k) {
    switch (k) {
        case CouplingKind::synchronous: return "synchronous";
        case CouplingKind::mirror: return "mirror";
        case CouplingKind::independent: return "independent";
        case CouplingKind::perverse_radial: return "perverse_radial";
        case CouplingKind::custom_rotation: return "custom_rotation";
    }
    return "?";
}

inline CouplingKind coupling_kind_from_string(const std::string& s) {
    for (auto k : {CouplingKind::synchronous, CouplingKind::mirror, CouplingKind::independent,
                   CouplingKind::perverse_radial, CouplingKind::custom_rotation})
        if (s == to_string(k)) return k;
    throw Error(ErrorCode::InvalidArgument, "unknown coupling strategy '" + s + "'");
}

/// Maps the present state (X, Y) to (J, K).
struct CouplingStrategy {
    CouplingKind kind = CouplingKind::synchronous;
    double theta = 0.0;  // custom_rotation

    std::string label() const {
        std::string s = to_string(kind);
        if (kind == CouplingKind::custom_rotation) s += "(" + std::to_string(theta) + ")";
        return s;
    }

    /// perverse_radial is our reading of a coupling with deterministic
    /// separation growth; reports carry this flag.
    bool interpretive() const { return kind == CouplingKind::perverse_radial; }

    CouplingStep step(Vec2 X, Vec2 Y) const {
        switch (kind) {
            case CouplingKind::synchronous: return {};
            case CouplingKind::independent: return {Mat2::zero(), Mat2::identity()};
            case CouplingKind::custom_rotation: return {Mat2::rotation(theta), Mat2::zero()};
            case CouplingKind::mirror:
            case CouplingKind::perverse_radial: {
                const Vec2 z = X - Y;
                const double r = norm(z);
                if (r <= kGeomTol) return {};
                const Vec2 u = z / r;
                // Householder reflection across the bisector, or its negative:
                // the latter keeps radial noise shared and flips the tangential
                // part, so d|X-Y| = 2/|X-Y| dt away from the boundary.
                const Mat2 H = Mat2::identity() - Mat2::outer(u, u) * 2.0;
                return {kind == CouplingKind::mirror ? H : H * -1.0, Mat2::zero()};
            }
        }
        return {};
    }
};

/// Largest Gaussian step accepted by the projection scheme: sqrt(dt) <= r/8.
inline double max_diffusion_step(const PolygonalDomain& d) {
    const double h = d.rounding_radius() / 8.0;
    return h * h;
}

/// z <- proj(z + delta), split into ceil(|delta| / (r/4)) projected sub-steps.
/// Adds the total push-back to local_time.
inline Vec2 skorokhod_step(const PolygonalDomain& d, Vec2 z, Vec2 delta, double& local_time) {
    const double len = norm(delta);
    const double sub = d.rounding_radius() / 4.0;
    const int m = std::max(1, static_cast<int>(std::ceil(len / sub)));
    const Vec2 piece = delta / m;
    for (int i = 0; i < m; ++i) {
        const Vec2 q = z + piece;
        if (d.classify(q) == Membership::exterior) {
            const Vec2 p = d.nearest_boundary_point(q).first;
            local_time += distance(q, p);
            z = p;
        } else {
            z = q;
        }
    }
    return z;
}

struct ReflectedPath {
    double dt = 0.0;
    std::vector<Vec2> points;
    std::vector<double> local_time;
};

namespace detail {

inline void require_inside(const PolygonalDomain& d, Vec2 p, const char* what) {
    if (d.classify(p) == Membership::exterior)
        throw Error(ErrorCode::PointOutsideDomain, std::string(what) + " outside the closed domain");
}

inline void require_step(const PolygonalDomain& d, double dt, double noise_scale, double drift) {
    const double var = noise_scale * noise_scale * dt;
    if (var > max_diffusion_step(d) * (1.0 + 1e-12))
        throw Error(ErrorCode::StepTooLarge, "noise variance per step " + std::to_string(var) + " exceeds (r/8)^2 = " +
                                                 std::to_string(max_diffusion_step(d)));
    if (drift * dt > d.rounding_radius() / 8.0 * (1.0 + 1e-12))
        throw Error(ErrorCode::StepTooLarge, "drift step " + std::to_string(drift * dt) + " exceeds r/8");
}

}  // namespace detail

/// Reflected random walk driven by one stream of the driver.
inline ReflectedPath reflected_bm(const PolygonalDomain& d, Vec2 x0, const BrownianDriver& driver, std::uint64_t stream,
                                  std::size_t steps) {
    detail::require_step(d, driver.dt(), 1.0, 0.0);
    detail::require_inside(d, x0, "start");
    ReflectedPath p;
    p.dt = driver.dt();
    p.points.reserve(steps + 1);
    p.local_time.reserve(steps + 1);
    p.points.push_back(x0);
    p.local_time.push_back(0.0);
    Vec2 z = x0;
    double L = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        z = skorokhod_step(d, z, driver.increment(stream, k), L);
        p.points.push_back(z);
        p.local_time.push_back(L);
    }
    return p;
}

/// Reflected path of a deterministic free path given by its increments.
inline ReflectedPath reflect_increments(const PolygonalDomain& d, Vec2 x0, const std::vector<Vec2>& increments, double dt) {
    detail::require_inside(d, x0, "start");
    ReflectedPath p;
    p.dt = dt;
    p.points.push_back(x0);
    p.local_time.push_back(0.0);
    Vec2 z = x0;
    double L = 0.0;
    for (const auto& inc : increments) {
        z = skorokhod_step(d, z, inc, L);
        p.points.push_back(z);
        p.local_time.push_back(L);
    }
    return p;
}

struct CoupledPath {
    double dt = 0.0;
    std::vector<Vec2> X, Y;
    std::vector<double> LX, LY;
    std::vector<Vec2> noise_x;  // per-step noise term of X, empty unless recorded
};

struct CoupledOptions {
    double drift = 0.0;        // n >= 0
    double noise_scale = 1.0;  // 1/sqrt(n) in the rescaled system
    bool record_noise = false;
};

/// One coupled step; drift is dropped when the pair is within tau_geom.
struct CoupledState {
    Vec2 X, Y;
    double LX = 0.0, LY = 0.0;
};

inline Vec2 coupled_advance(const PolygonalDomain& d, CoupledState& s, const CouplingStrategy& strategy, Vec2 dB, Vec2 dA,
                            const CoupledOptions& opt, double dt) {
    const CouplingStep cs = strategy.step(s.X, s.Y);
    Vec2 cx{};
    if (opt.drift > 0.0) {
        const auto g = geodesic(d, s.X, s.Y);
        if (g.length() > kGeomTol) cx = g.direction_at(0.0) * (opt.drift * dt);
    }
    const Vec2 nx = dB * opt.noise_scale;
    const Vec2 ny = cs.apply(dB, dA) * opt.noise_scale;
    s.X = skorokhod_step(d, s.X, nx + cx, s.LX);
    s.Y = skorokhod_step(d, s.Y, ny + cs.J.transpose() * cx, s.LY);
    return nx;
}

inline CoupledPath simulate_coupled(const PolygonalDomain& d, Vec2 x0, Vec2 y0, const CouplingStrategy& strategy,
                                    const BrownianDriver& driver, std::size_t steps, const CoupledOptions& opt = {}) {
    if (opt.drift < 0.0) throw Error(ErrorCode::InvalidArgument, "drift must be non-negative");
    detail::require_step(d, driver.dt(), opt.noise_scale, opt.drift);
    detail::require_inside(d, x0, "X start");
    detail::require_inside(d, y0, "Y start");
    CoupledPath out;
    out.dt = driver.dt();
    CoupledState s{x0, y0};
    auto push = [&] {
        out.X.push_back(s.X);
        out.Y.push_back(s.Y);
        out.LX.push_back(s.LX);
        out.LY.push_back(s.LY);
    };
    push();
    for (std::size_t k = 0; k < steps; ++k) {
        const Vec2 nx = coupled_advance(d, s, strategy, driver.increment(streams::B, k), driver.increment(streams::A, k), opt,
                                        driver.dt());
        if (opt.record_noise) out.noise_x.push_back(nx);
        push();
    }
    return out;
}

struct SeparationSummary {
    double min = 0.0;
    double mean = 0.0;
    double median = 0.0;
    double max = 0.0;
};

struct ShynessReport {
    std::string strategy;
    bool interpretive = false;
    double epsilon = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    int trials = 0;
    int hits = 0;
    double hit_fraction = 0.0;
    int euclidean_hits = 0;
    SeparationSummary min_separation;
    std::vector<int> window_hits;
    std::vector<double> window_rates;
    /// Fraction of trials with no hit in windows 0..k.
    std::vector<double> survival;
    /// p in survival_k ~ (1-p)^(k+1), least squares on log survival.
    std::optional<double> fitted_window_rate;
};

struct ShynessOptions {
    double epsilon = 0.2;
    double t1 = 20.0;
    int trials = 200;
    std::uint64_t base_seed = 0;
    double dt = 2.5e-3;
    int windows = 1;
    unsigned threads = 0;
};

namespace detail {

struct TrialOutcome {
    double min_first = std::numeric_limits<double>::infinity();  // intrinsic min over [0, t1]
    bool euclid_hit = false;
    std::vector<char> window_hit;
};

inline TrialOutcome shyness_trial(const PolygonalDomain& d, Vec2 x0, Vec2 y0, const CouplingStrategy& strategy,
                                  const ShynessOptions& o, std::uint64_t seed) {
    const BrownianDriver drv(seed, o.dt);
    const auto per_window = static_cast<std::size_t>(std::ceil(o.t1 / o.dt - 1e-9));
    TrialOutcome out;
    out.window_hit.assign(o.windows, 0);
    CoupledState s{x0, y0};
    const CoupledOptions copt{};
    std::size_t k = 0;
    for (int w = 0; w < o.windows; ++w) {
        double wmin = std::numeric_limits<double>::infinity();
        // Window w covers samples w*per_window .. (w+1)*per_window; the shared
        // endpoint is counted in the earlier window only.
        for (std::size_t j = 0; j <= per_window; ++j) {
            if (j > 0 || w == 0) {
                const double e = distance(s.X, s.Y);
                if (w == 0 && e <= o.epsilon) out.euclid_hit = true;
                // Intrinsic >= Euclidean, so only evaluate when it can lower the minimum.
                if (e < wmin) wmin = std::min(wmin, intrinsic_distance(d, s.X, s.Y));
            }
            if (j == per_window) break;
            coupled_advance(d, s, strategy, drv.increment(streams::B, k), drv.increment(streams::A, k), copt, o.dt);
            ++k;
        }
        out.window_hit[w] = wmin <= o.epsilon;
        if (w == 0) out.min_first = wmin;
    }
    return out;
}

}  // namespace detail

/// Monte Carlo evidence for non-shyness: trial i uses seed base_seed + i.
inline ShynessReport shyness_probe(const PolygonalDomain& d, Vec2 x0, Vec2 y0, const CouplingStrategy& strategy,
                                   const ShynessOptions& o) {
    if (!(o.epsilon > 0.0) || o.trials < 1 || o.windows < 1 || !(o.t1 > 0.0))
        throw Error(ErrorCode::InvalidArgument, "probe needs epsilon > 0, t1 > 0, trials >= 1, windows >= 1");
    detail::require_step(d, o.dt, 1.0, 0.0);
    detail::require_inside(d, x0, "X start");
    detail::require_inside(d, y0, "Y start");

    std::vector<detail::TrialOutcome> res(o.trials);
    parallel_for(res.size(), o.threads, [&](std::size_t i) {
        res[i] = detail::shyness_trial(d, x0, y0, strategy, o, o.base_seed + i);
    });

    ShynessReport r;
    r.strategy = strategy.label();
    r.interpretive = strategy.interpretive();
    r.epsilon = o.epsilon;
    r.t1 = o.t1;
    r.dt = o.dt;
    r.trials = o.trials;
    r.window_hits.assign(o.windows, 0);
    std::vector<double> mins;
    std::vector<int> alive(o.windows, 0);
    for (const auto& t : res) {
        mins.push_back(t.min_first);
        if (t.min_first <= o.epsilon) ++r.hits;
        if (t.euclid_hit) ++r.euclidean_hits;
        bool survived = true;
        for (int w = 0; w < o.windows; ++w) {
            r.window_hits[w] += t.window_hit[w];
            survived = survived && !t.window_hit[w];
            alive[w] += survived;
        }
    }
    r.hit_fraction = static_cast<double>(r.hits) / o.trials;
    for (int w = 0; w < o.windows; ++w) {
        r.window_rates.push_back(static_cast<double>(r.window_hits[w]) / o.trials);
        r.survival.push_back(static_cast<double>(alive[w]) / o.trials);
    }
    std::sort(mins.begin(), mins.end());
    double sum = 0.0;
    for (double m : mins) sum += m;
    const std::size_t n = mins.size();
    r.min_separation = {mins.front(), sum / n, n % 2 ? mins[n / 2] : 0.5 * (mins[n / 2 - 1] + mins[n / 2]), mins.back()};

    // Through-origin fit of log S_k = (k+1) log(1-p), skipping empty survival.
    double num = 0.0, den = 0.0;
    bool all_dead = true;
    for (int w = 0; w < o.windows; ++w) {
        if (r.survival[w] <= 0.0) continue;
        all_dead = false;
        num += (w + 1) * std::log(r.survival[w]);
        den += static_cast<double>(w + 1) * (w + 1);
    }
    if (all_dead) r.fitted_window_rate = 1.0;
    else if (den > 0.0) r.fitted_window_rate = 1.0 - std::exp(num / den);
    return r;
}

struct DeviationRow {
    double n = 0.0;
    double deviation = 0.0;
    std::size_t steps = 0;
    double t_end = 0.0;
    /// max over steps of |dX| - (dt + |noise|); <= 0 up to projection error.
    double max_step_excess = 0.0;
    /// mean |noise term| / dt.
    double noise_share = 0.0;
};

struct DeviationTable {
    std::string strategy;
    std::uint64_t seed = 0;
    double dt = 0.0;
    double t_horizon = 0.0;
    std::vector<DeviationRow> rows;
    int inversions = 0;
    bool pass = false;
};

struct RescaledOptions {
    double dt = 1e-3;
    double t_horizon = 2.0;
    /// Runs stop once the drifted pair is this close (chi degenerates).
    double stop_separation = 0.05;
};

/// Non-increasing across rows, allowing one inversion within 10%.
inline void grade_deviation_table(DeviationTable& t) {
    t.inversions = 0;
    bool ok = true;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        if (t.rows[i].deviation > t.rows[i - 1].deviation) {
            ++t.inversions;
            if (t.rows[i].deviation > 1.1 * t.rows[i - 1].deviation) ok = false;
        }
    }
    t.pass = ok && t.inversions <= 1;
}

/// Time-rescaled drifted pair (noise variance dt/n, unit drift chi) against the
/// deterministic Lion integrated with the same scheme, driven by the realized
/// Y path.  Reports the sup-norm gap for each n.
inline DeviationTable rescaled_convergence_experiment(const PolygonalDomain& d, Vec2 x0, Vec2 y0,
                                                      const CouplingStrategy& strategy, const std::vector<double>& n_list,
                                                      std::uint64_t seed, const RescaledOptions& o = {}) {
    DeviationTable tab;
    tab.strategy = strategy.label();
    tab.seed = seed;
    tab.dt = o.dt;
    tab.t_horizon = o.t_horizon;
    const BrownianDriver drv(seed, o.dt);
    const auto steps = static_cast<std::size_t>(std::ceil(o.t_horizon / o.dt - 1e-9));
    for (double n : n_list) {
        if (!(n > 0.0)) throw Error(ErrorCode::InvalidArgument, "n must be positive");
        CoupledOptions copt;
        copt.drift = 1.0;
        copt.noise_scale = 1.0 / std::sqrt(n);
        detail::require_step(d, o.dt, copt.noise_scale, copt.drift);
        CoupledState s{x0, y0};
        Vec2 lion = x0;
        double dummy = 0.0;
        DeviationRow row;
        row.n = n;
        double noise_sum = 0.0;
        std::size_t k = 0;
        for (; k < steps; ++k) {
            if (intrinsic_distance(d, s.X, s.Y) <= o.stop_separation || intrinsic_distance(d, lion, s.Y) <= o.stop_separation)
                break;
            const Vec2 y_now = s.Y;
            const Vec2 x_prev = s.X;
            const Vec2 nx = coupled_advance(d, s, strategy, drv.increment(streams::B, k), drv.increment(streams::A, k), copt, o.dt);
            lion = skorokhod_step(d, lion, chi(d, lion, y_now) * o.dt, dummy);
            row.deviation = std::max(row.deviation, distance(s.X, lion));
            row.max_step_excess = std::max(row.max_step_excess, distance(s.X, x_prev) - (o.dt + norm(nx)));
            noise_sum += norm(nx);
        }
        row.steps = k;
        row.t_end = k * o.dt;
        row.noise_share = k ? noise_sum / (k * o.dt) : 0.0;
        tab.rows.push_back(row);
    }
    grade_deviation_table(tab);
    return tab;
}

/// Intrinsic Lip(1) of a sampled path: max d(Z_i, Z_j) / ((j - i) dt) over lags
/// 1..max_lag and all power-of-two lags; PASS iff <= 1 + c dt.
inline CheckReport intrinsic_lip1_check(const std::vector<Vec2>& path, const PolygonalDomain& d, double dt,
                                        int max_lag = 16, double c = 1.0) {
    CheckReport rep{"intrinsic_lip1"};
    std::vector<std::size_t> lags;
    for (int l = 1; l <= max_lag; ++l) lags.push_back(l);
    for (std::size_t l = static_cast<std::size_t>(max_lag) * 2; l < path.size(); l *= 2) lags.push_back(l);
    double worst = 0.0;
    for (std::size_t lag : lags)
        for (std::size_t i = 0; i + lag < path.size(); ++i)
            worst = std::max(worst, intrinsic_distance(d, path[i], path[i + lag]) / (lag * dt));
    const double limit = 1.0 + c * dt;
    rep.margin = limit - worst;
    rep.status = path.size() < 2 ? CheckStatus::not_applicable : worst <= limit ? CheckStatus::pass : CheckStatus::fail;
    rep.details = {{"max_ratio", worst}, {"limit", limit}, {"lags", lags.size()}};
    return rep;
}

/// Exact worst-case displacement of one projected step of free length a
/// against a disc obstacle of radius r: sqrt(2 r^2 - 2 r sqrt(r^2 - a^2)).
inline double projected_step_exact_bound(double a, double r) {
    return std::sqrt(2.0 * r * r - 2.0 * r * std::sqrt(std::max(0.0, r * r - a * a)));
}

/// The polynomial bound a (1 + a^2 / (8 r^2)).
inline double projected_step_bound(double a, double r) { return a * (1.0 + a * a / (8.0 * r * r)); }

}  // namespace cat0
