#pragma once
// Numerical verifiers for the geometric estimates on intrinsic geodesics.
// Every check returns a CheckReport; margin > 0 means slack to the bound.

#include <string>
#include <vector>

#include "json.hpp"

#include "cat0/metric.hpp"

namespace cat0 {

using nlohmann::json;

enum class CheckStatus { pass, fail, not_applicable };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::not_applicable: return "NOT-APPLICABLE";
    }
    return "?";
}

struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::not_applicable;
    double margin = 0.0;
    nlohmann::json details = nlohmann::json::object();

    bool passed() const { return status == CheckStatus::pass; }
    bool failed() const { return status == CheckStatus::fail; }
};

inline nlohmann::json to_json(const CheckReport& r) {
    return {{"name", r.name}, {"status", to_string(r.status)}, {"margin", r.margin}, {"details", r.details}};
}

/// tau_cat = 1e-6 * Euclidean diameter.
inline double cat_tolerance(const PolygonalDomain& d) { return 1e-6 * d.euclidean_diameter(); }

/// Relative slack on the direction-Lipschitz bound for sampled tangents.
inline constexpr double kLipSlack = 0.05;

/// Least-squares slope of log(y) against log(x), skipping non-positive y.
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(ys[i] > 0.0) || !(xs[i] > 0.0)) continue;
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Triangle comparison against the flat triangle with the same side lengths,
/// evaluated on a grid_n x grid_n grid of points on the sides from a.
inline CheckReport cat0_triangle_check(const PolygonalDomain& d, Vec2 a, Vec2 b, Vec2 c, int grid_n = 16) {
    CheckReport rep{"cat0_triangle"};
    const auto gab = geodesic(d, a, b);
    const auto gac = geodesic(d, a, c);
    const double ab = gab.length(), ac = gac.length(), bc = intrinsic_distance(d, b, c);
    const double slack = kGeomTol * std::max(1.0, d.euclidean_diameter());
    if (ab > ac + bc + slack || ac > ab + bc + slack || bc > ab + ac + slack)
        throw Error(ErrorCode::DegenerateTriangle, "side lengths violate the triangle inequality");

    // Comparison triangle: a' = 0, b' on the x axis, c' above it.
    const Vec2 bb{ab, 0.0};
    Vec2 cc{ac, 0.0};
    if (ab > 0.0 && ac > 0.0) {
        const double cosang = std::clamp((ab * ab + ac * ac - bc * bc) / (2.0 * ab * ac), -1.0, 1.0);
        cc = Vec2{ac * cosang, ac * std::sqrt(std::max(0.0, 1.0 - cosang * cosang))};
    }
    const int n = std::max(2, grid_n);
    double worst = -std::numeric_limits<double>::infinity();
    double worst_rel_negative = 0.0;
    for (int i = 0; i < n; ++i) {
        const double s = static_cast<double>(i) / (n - 1);
        const Vec2 p = gab.point_at(s * ab);
        for (int j = 0; j < n; ++j) {
            const double t = static_cast<double>(j) / (n - 1);
            const Vec2 q = gac.point_at(t * ac);
            const double chord = intrinsic_distance(d, p, q);
            const double flat = distance(bb * s, cc * t);
            worst = std::max(worst, chord - flat);
            worst_rel_negative = std::min(worst_rel_negative, chord - flat);
        }
    }
    const double tol = cat_tolerance(d);
    rep.margin = tol - worst;
    rep.status = worst <= tol ? CheckStatus::pass : CheckStatus::fail;
    rep.details = {{"max_violation", worst}, {"min_difference", worst_rel_negative}, {"tolerance", tol},
                   {"sides", {ab, ac, bc}}, {"grid_n", n}};
    return rep;
}

/// 2 r sin(a) sin(d / (2 r sin a)) <= |a-b| <= d for close pairs, and the
/// cruder |a-b| <= d <= 2|a-b|.
inline CheckReport metric_sandwich_check(const PolygonalDomain& d, Vec2 a, Vec2 b) {
    CheckReport rep{"metric_sandwich"};
    const double rho = distance(a, b);
    const double threshold = d.closeness_threshold();
    rep.details["euclidean"] = rho;
    rep.details["threshold"] = threshold;
    if (!(rho < threshold)) {
        rep.status = CheckStatus::not_applicable;
        return rep;
    }
    const double dist = intrinsic_distance(d, a, b);
    const double R = d.curvature_scale();
    const double lower = R * std::sin(dist / R);
    const double slack = kGeomTol;
    const double m1 = rho - lower;       // left inequality
    const double m2 = dist - rho;        // right inequality
    const double m3 = 2.0 * rho - dist;  // crude upper bound
    rep.margin = std::min({m1, m2, m3});
    rep.status = rep.margin >= -slack ? CheckStatus::pass : CheckStatus::fail;
    rep.details["intrinsic"] = dist;
    rep.details["lower_bound"] = lower;
    rep.details["ratio"] = rho > 0.0 ? dist / rho : 1.0;
    return rep;
}

/// Lipschitz constant (4/sqrt 3) / (2 r sin a) of geodesic direction fields.
inline double direction_lipschitz_bound(const PolygonalDomain& d) {
    return 4.0 / std::sqrt(3.0) / d.curvature_scale();
}

/// Largest sampled |G'(s2) - G'(s1)| / (s2 - s1) along a rounded-model geodesic.
inline CheckReport direction_lipschitz_check(const GeodesicPath& path, const PolygonalDomain& d, int samples = 2000) {
    if (d.mode() != BoundaryMode::rounded)
        throw Error(ErrorCode::SharpModeUnsupported, "direction field is discontinuous at sharp corners");
    CheckReport rep{"direction_lipschitz"};
    const double L = path.length();
    const double bound = direction_lipschitz_bound(d);
    double worst = 0.0;
    if (L > kGeomTol) {
        const int n = std::max(2, samples);
        std::vector<Vec2> dirs(n + 1);
        for (int i = 0; i <= n; ++i) dirs[i] = path.direction_at(L * i / n);
        const double ds = L / n;
        for (int lag = 1; lag <= 8; ++lag)
            for (int i = 0; i + lag <= n; ++i) worst = std::max(worst, norm(dirs[i + lag] - dirs[i]) / (lag * ds));
    }
    const double limit = bound * (1.0 + kLipSlack);
    rep.margin = limit - worst;
    rep.status = worst <= limit ? CheckStatus::pass : CheckStatus::fail;
    rep.details = {{"max_ratio", worst}, {"bound", bound}, {"limit", limit}};
    return rep;
}

/// |G(s+t) - G(s) - G'(s) t| <= (4/3) t^2 / (2 r sin a), sampled over start points s.
inline CheckReport chord_approx_check(const GeodesicPath& path, double t, const PolygonalDomain& d, int starts = 200) {
    if (d.mode() != BoundaryMode::rounded)
        throw Error(ErrorCode::SharpModeUnsupported, "chord estimate needs the rounded boundary");
    CheckReport rep{"chord_approx"};
    const double bound = 4.0 / 3.0 * t * t / d.curvature_scale();
    rep.details = {{"t", t}, {"bound", bound}, {"threshold", d.closeness_threshold()}};
    if (!(t > 0.0) || !(t < d.closeness_threshold()) || path.length() < t) {
        rep.status = CheckStatus::not_applicable;
        return rep;
    }
    double worst = 0.0;
    const int n = std::max(1, starts);
    for (int i = 0; i <= n; ++i) {
        const double s = (path.length() - t) * i / n;
        const Vec2 lhs = path.point_at(s + t) - path.point_at(s) - path.direction_at(s) * t;
        worst = std::max(worst, norm(lhs));
    }
    rep.margin = bound - worst;
    rep.status = worst <= bound + kGeomTol ? CheckStatus::pass : CheckStatus::fail;
    rep.details["max_deviation"] = worst;
    return rep;
}

/// Finite-difference gradient of d(., y) at x against -chi(x, y), plus the
/// first-order expansion residuals at steps {h, h/2, h/4}.
inline CheckReport gauss_check(const PolygonalDomain& d, Vec2 x, Vec2 y, double h, double tolerance = 5e-3) {
    CheckReport rep{"gauss"};
    const double dxy = intrinsic_distance(d, x, y);
    const Vec2 dirs[8] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1},
                          Vec2{1, 1} / std::sqrt(2.0), Vec2{-1, 1} / std::sqrt(2.0),
                          Vec2{-1, -1} / std::sqrt(2.0), Vec2{1, -1} / std::sqrt(2.0)};
    auto probes_ok = [&](double step) {
        for (const auto& e : dirs)
            if (d.classify(x + e * step) == Membership::exterior) return false;
        return true;
    };
    if (!probes_ok(h)) {
        h *= 0.5;
        if (!probes_ok(h)) throw Error(ErrorCode::ProbeOutsideDomain, "finite-difference probe left the domain");
    }
    if (dxy < 10.0 * h) {
        rep.status = CheckStatus::not_applicable;
        rep.details = {{"distance", dxy}, {"h", h}};
        return rep;
    }
    const Vec2 c = chi(d, x, y);
    const double gx = (intrinsic_distance(d, x + Vec2{h, 0}, y) - intrinsic_distance(d, x - Vec2{h, 0}, y)) / (2 * h);
    const double gy = (intrinsic_distance(d, x + Vec2{0, h}, y) - intrinsic_distance(d, x - Vec2{0, h}, y)) / (2 * h);
    const Vec2 g{gx, gy};
    const double err = norm(g + c);

    std::vector<double> steps, residuals;
    for (double step : {h, h / 2, h / 4}) {
        double worst = 0.0;
        for (const auto& e : dirs) {
            const double predicted = dxy + step * dot(e, -c);
            worst = std::max(worst, std::abs(intrinsic_distance(d, x + e * step, y) - predicted));
        }
        steps.push_back(step);
        residuals.push_back(worst);
    }
    const double exponent = loglog_slope(steps, residuals);
    rep.margin = tolerance - err;
    rep.status = err <= tolerance ? CheckStatus::pass : CheckStatus::fail;
    rep.details = {{"gradient", {g.x, g.y}}, {"chi", {c.x, c.y}}, {"gradient_error", err},
                   {"h", h}, {"steps", steps}, {"residuals", residuals},
                   {"residual_exponent", std::isnan(exponent) ? nlohmann::json(nullptr) : nlohmann::json(exponent)}};
    return rep;
}

/// Wedge condition at every kinked waypoint of a sharp geodesic: the obstacle
/// wedge at the corner lies inside the turn, so no shortcut exists.
inline bool taut_at_corners(const PolygonalDomain& d, const GeodesicPath& g) {
    const auto& w = g.waypoints();
    const auto& cv = g.corner_vertices();
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        const int v = cv[i - 1];
        const Vec2 cur = d.vertex(v);
        const Vec2 in = w[i] - w[i - 1], out = w[i + 1] - w[i];
        const double turn = cross(in, out);
        if (std::abs(turn) <= kGeomTol * norm(in) * norm(out)) continue;
        const double side = turn > 0.0 ? 1.0 : -1.0;
        const Vec2 bisector = normalized(d.vertex(v + d.size() - 1) - cur) + normalized(d.vertex(v + 1) - cur);
        if (side * cross(out, bisector) < 0.0 || side * cross(bisector, -in) < 0.0) return false;
    }
    return true;
}

}  // namespace cat0
