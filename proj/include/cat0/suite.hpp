#pragma once
// Batched geometric verification over random samples of one domain.

#include <vector>

#include "cat0/checks.hpp"
#include "cat0/shapes.hpp"

namespace cat0 {

struct SuiteOptions {
    int triangles = 10;
    int grid_n = 16;
    int gauss_pairs = 10;
    int close_pairs = 100;
    int lipschitz_pairs = 10;
    int taut_pairs = 20;
    std::uint64_t seed = 0;
};

/// Worst-case aggregate of many reports of one kind.
inline CheckReport aggregate(const std::string& name, const std::vector<CheckReport>& reps) {
    CheckReport out{name};
    int pass = 0, fail = 0, na = 0;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& r : reps) {
        if (r.status == CheckStatus::pass) ++pass;
        if (r.status == CheckStatus::fail) ++fail;
        if (r.status == CheckStatus::not_applicable) ++na;
        if (r.status != CheckStatus::not_applicable) margin = std::min(margin, r.margin);
    }
    out.status = fail ? CheckStatus::fail : pass ? CheckStatus::pass : CheckStatus::not_applicable;
    out.margin = std::isfinite(margin) ? margin : 0.0;
    out.details = {{"pass", pass}, {"fail", fail}, {"not_applicable", na}};
    return out;
}

/// Two sample points at least `min_gap` apart (Euclidean).
inline std::pair<Vec2, Vec2> sample_pair(const PolygonalDomain& d, CounterRng& rng, double min_gap, double clearance = 0.0) {
    for (int tries = 0; tries < 10000; ++tries) {
        const Vec2 a = sample_point(d, rng, clearance), b = sample_point(d, rng, clearance);
        if (distance(a, b) >= min_gap) return {a, b};
    }
    throw Error(ErrorCode::InvalidArgument, "could not sample a separated pair");
}

inline CheckReport suite_cat0(const PolygonalDomain& d, int count, int grid_n, std::uint64_t seed) {
    CounterRng rng(seed, streams::sampling + 1);
    std::vector<CheckReport> reps;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        const Vec2 a = sample_point(d, rng), b = sample_point(d, rng), c = sample_point(d, rng);
        reps.push_back(cat0_triangle_check(d, a, b, c, grid_n));
        worst = std::max(worst, reps.back().details["max_violation"].get<double>());
    }
    auto r = aggregate("cat0_triangle", reps);
    r.details["max_violation"] = count ? worst : 0.0;
    r.details["tolerance"] = cat_tolerance(d);
    return r;
}

/// Gradient of d(., y) against -chi at h = 1e-4 diam, plus the pooled
/// first-order residual exponent over steps {h, h/2, h/4}.
inline CheckReport suite_gauss(const PolygonalDomain& d, int count, std::uint64_t seed, double min_exponent = 1.4) {
    CounterRng rng(seed, streams::sampling + 2);
    const double diam = d.euclidean_diameter();
    const double h = 1e-4 * diam;
    std::vector<CheckReport> reps;
    std::vector<double> pooled(3, 0.0), steps;
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const auto [x, y] = sample_pair(d, rng, 0.25 * diam, 2.0 * h);
        auto r = gauss_check(d, x, y, h);
        if (r.status != CheckStatus::not_applicable) {
            worst = std::max(worst, r.details["gradient_error"].get<double>());
            const auto res = r.details["residuals"].get<std::vector<double>>();
            for (int k = 0; k < 3; ++k) pooled[k] += res[k];
            steps = r.details["steps"].get<std::vector<double>>();
        }
        reps.push_back(std::move(r));
    }
    auto out = aggregate("gauss", reps);
    out.details["max_gradient_error"] = worst;
    out.details["h"] = h;
    if (!steps.empty()) {
        const double e = loglog_slope(steps, pooled);
        out.details["residual_exponent"] = std::isnan(e) ? json(nullptr) : json(e);
        out.details["pooled_residuals"] = pooled;
        if (d.mode() == BoundaryMode::rounded) {
            out.details["min_exponent"] = min_exponent;
            // All-zero residuals (exactly linear distance) carry no exponent.
            const bool flat = pooled[0] == 0.0;
            if (!flat && !(e >= min_exponent)) out.status = CheckStatus::fail;
        }
    }
    return out;
}

/// Sandwich bounds on admissible close pairs, and the quadratic decay of
/// d/|x-y| - 1 for chords of the rounding arcs.
inline CheckReport suite_sandwich(const PolygonalDomain& d, int count, std::uint64_t seed, double min_exponent = 1.8) {
    CounterRng rng(seed, streams::sampling + 3);
    const double thr = d.closeness_threshold();
    std::vector<CheckReport> reps;
    for (int i = 0; i < count; ++i) {
        for (int tries = 0; tries < 1000; ++tries) {
            const Vec2 x = sample_point(d, rng);
            const double ang = rng.uniform(0.0, 2.0 * kPi);
            const double rho = rng.uniform(0.0, 1.0) * thr * 0.999;
            const Vec2 y = x + Vec2{std::cos(ang), std::sin(ang)} * rho;
            if (d.classify(y) == Membership::exterior || rho <= 0.0) continue;
            reps.push_back(metric_sandwich_check(d, x, y));
            break;
        }
    }
    auto out = aggregate("metric_sandwich", reps);

    // Symmetric chords of each arc: ratio - 1 = phi / sin(phi) - 1 for angle 2 phi.
    std::vector<double> rhos, excess;
    if (d.mode() == BoundaryMode::rounded && !d.arcs().empty()) {
        const auto& arc = d.arcs().front();
        const double half_max = std::min(0.5 * std::abs(arc.sweep), thr / (2.0 * arc.radius));
        const double mid = arc.start_angle + 0.5 * arc.sweep;
        for (double f : {1.0, 0.5, 0.25, 0.125}) {
            const double phi = 0.9 * half_max * f;
            const Vec2 a = arc.point_at_angle(mid - phi), b = arc.point_at_angle(mid + phi);
            const double rho = distance(a, b);
            rhos.push_back(rho);
            excess.push_back(intrinsic_distance(d, a, b) / rho - 1.0);
        }
        const double e = loglog_slope(rhos, excess);
        out.details["taylor_rho"] = rhos;
        out.details["taylor_excess"] = excess;
        out.details["taylor_exponent"] = std::isnan(e) ? json(nullptr) : json(e);
        out.details["min_exponent"] = min_exponent;
        if (!(e >= min_exponent)) out.status = CheckStatus::fail;
    }
    return out;
}

/// Direction-Lipschitz and chord bounds on geodesics between random pairs.
inline std::vector<CheckReport> suite_regularity(const PolygonalDomain& d, int count, std::uint64_t seed) {
    if (d.mode() != BoundaryMode::rounded) return {};
    CounterRng rng(seed, streams::sampling + 4);
    std::vector<CheckReport> lip, chord;
    const double r = d.rounding_radius();
    for (int i = 0; i < count; ++i) {
        const auto [a, b] = sample_pair(d, rng, 0.25 * d.euclidean_diameter());
        const auto g = geodesic(d, a, b);
        lip.push_back(direction_lipschitz_check(g, d));
        for (double t : {r / 8, r / 4, r / 2}) {
            if (t >= d.closeness_threshold()) continue;
            chord.push_back(chord_approx_check(g, t, d));
        }
    }
    return {aggregate("direction_lipschitz", lip), aggregate("chord_approx", chord)};
}

/// Sharp-model geodesics are straight between reflex corners and wrap them
/// from the obstacle side.
inline CheckReport suite_taut(const PolygonalDomain& d, int count, std::uint64_t seed) {
    CheckReport out{"taut_corners"};
    const auto sharp = d.with_mode(BoundaryMode::sharp);
    CounterRng rng(seed, streams::sampling + 5);
    int bad = 0, bends = 0;
    for (int i = 0; i < count; ++i) {
        const auto [a, b] = sample_pair(sharp, rng, 0.0);
        const auto g = geodesic(sharp, a, b);
        bends += static_cast<int>(g.corner_vertices().size());
        if (!taut_at_corners(sharp, g)) ++bad;
    }
    out.status = bad ? CheckStatus::fail : CheckStatus::pass;
    out.margin = -bad;
    out.details = {{"paths", count}, {"corner_contacts", bends}, {"violations", bad}};
    return out;
}

inline std::vector<CheckReport> run_verify_suite(const PolygonalDomain& d, const SuiteOptions& o) {
    std::vector<CheckReport> out;
    out.push_back(suite_cat0(d, o.triangles, o.grid_n, o.seed));
    out.push_back(suite_gauss(d, o.gauss_pairs, o.seed));
    if (d.mode() == BoundaryMode::rounded) {
        out.push_back(suite_sandwich(d, o.close_pairs, o.seed));
        for (auto& r : suite_regularity(d, o.lipschitz_pairs, o.seed)) out.push_back(std::move(r));
    }
    out.push_back(suite_taut(d, o.taut_pairs, o.seed));
    return out;
}

}  // namespace cat0
