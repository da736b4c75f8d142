#pragma once
// Intrinsic (shortest-path) metric of a polygonal domain.
//
// Sharp model: shortest paths bend only at reflex vertices, so a visibility
// graph over {a, b, reflex vertices} plus Dijkstra is exact.
// Rounded model: the sharp path fixes which reflex corners are wrapped and on
// which side; the path is then pulled taut around the rounding discs.

#include <limits>
#include <optional>
#include <vector>

#include "cat0/domain.hpp"

namespace cat0 {

/// Straight segment or circular arc of a geodesic.
struct PathPiece {
    enum class Kind { segment, arc } kind = Kind::segment;
    Vec2 a;
    Vec2 b;
    Vec2 center;
    double radius = 0.0;
    double start_angle = 0.0;
    double sweep = 0.0;  // signed, counter-clockwise positive
    double length = 0.0;

    Vec2 point_at(double s) const {
        if (kind == Kind::segment) return length > 0.0 ? a + (b - a) * (s / length) : a;
        const double ang = start_angle + (sweep >= 0.0 ? 1.0 : -1.0) * s / radius;
        return center + Vec2{std::cos(ang), std::sin(ang)} * radius;
    }
    Vec2 direction_at(double s) const {
        if (kind == Kind::segment) return normalized(b - a);
        const double sign = sweep >= 0.0 ? 1.0 : -1.0;
        const double ang = start_angle + sign * s / radius;
        return left_perp(Vec2{std::cos(ang), std::sin(ang)}) * sign;
    }
};

/// Tangent arc wrapped by a rounded-model geodesic at a reflex corner.
struct ArcAnnotation {
    int vertex = -1;
    Vec2 center;
    double radius = 0.0;
    Vec2 entry;
    Vec2 exit;
    double sweep = 0.0;
};

class GeodesicPath {
public:
    GeodesicPath() = default;

    static GeodesicPath point(Vec2 p) {
        GeodesicPath g;
        g.waypoints_ = {p};
        return g;
    }

    static GeodesicPath polyline(std::vector<Vec2> pts, std::vector<int> corner_vertices = {}) {
        GeodesicPath g;
        g.waypoints_ = std::move(pts);
        g.corner_vertices_ = std::move(corner_vertices);
        for (std::size_t i = 0; i + 1 < g.waypoints_.size(); ++i) {
            PathPiece p;
            p.a = g.waypoints_[i];
            p.b = g.waypoints_[i + 1];
            p.length = distance(p.a, p.b);
            g.add(p);
        }
        return g;
    }

    void add(const PathPiece& p) {
        pieces_.push_back(p);
        length_ += p.length;
    }

    /// Endpoints plus the reflex corners touched, in order.
    const std::vector<Vec2>& waypoints() const { return waypoints_; }
    const std::vector<int>& corner_vertices() const { return corner_vertices_; }
    const std::vector<ArcAnnotation>& arcs() const { return arcs_; }
    const std::vector<PathPiece>& pieces() const { return pieces_; }
    double length() const { return length_; }
    Vec2 start() const { return waypoints_.front(); }
    Vec2 end() const { return waypoints_.back(); }

    Vec2 point_at(double s) const {
        if (pieces_.empty()) return waypoints_.front();
        s = std::clamp(s, 0.0, length_);
        for (const auto& p : pieces_) {
            if (s <= p.length) return p.point_at(s);
            s -= p.length;
        }
        return pieces_.back().point_at(pieces_.back().length);
    }

    /// Unit tangent; right-continuous at joints, left limit at the far end.
    Vec2 direction_at(double s) const {
        constexpr double kMinPiece = 1e-14;
        if (length_ <= kMinPiece) throw Error(ErrorCode::CoincidentPoints, "direction of a degenerate path");
        s = std::clamp(s, 0.0, length_);
        const PathPiece* last = nullptr;
        for (const auto& p : pieces_) {
            if (p.length <= kMinPiece) continue;
            if (s < p.length) return p.direction_at(s);
            s -= p.length;
            last = &p;
        }
        return last->direction_at(last->length);
    }

    /// Total absolute turning: kinks between pieces plus arc sweeps.
    double total_turning() const {
        double total = 0.0;
        const PathPiece* prev = nullptr;
        for (const auto& p : pieces_) {
            if (p.length <= 1e-14) continue;
            if (p.kind == PathPiece::Kind::arc) total += std::abs(p.sweep);
            if (prev) total += std::abs(signed_angle(prev->direction_at(prev->length), p.direction_at(0.0)));
            prev = &p;
        }
        return total;
    }

    GeodesicPath reversed() const {
        GeodesicPath g;
        g.waypoints_.assign(waypoints_.rbegin(), waypoints_.rend());
        g.corner_vertices_.assign(corner_vertices_.rbegin(), corner_vertices_.rend());
        for (auto it = arcs_.rbegin(); it != arcs_.rend(); ++it) {
            ArcAnnotation a = *it;
            std::swap(a.entry, a.exit);
            a.sweep = -a.sweep;
            g.arcs_.push_back(a);
        }
        for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) {
            PathPiece p = *it;
            std::swap(p.a, p.b);
            if (p.kind == PathPiece::Kind::arc) {
                p.start_angle += p.sweep;
                p.sweep = -p.sweep;
            }
            g.add(p);
        }
        return g;
    }

private:
    friend GeodesicPath geodesic(const PolygonalDomain&, Vec2, Vec2);
    std::vector<Vec2> waypoints_;
    std::vector<int> corner_vertices_;
    std::vector<ArcAnnotation> arcs_;
    std::vector<PathPiece> pieces_;
    double length_ = 0.0;
};

namespace detail {

struct SharpRoute {
    std::vector<Vec2> points;
    std::vector<int> corners;  // polygon vertex index of each interior point
    double length = 0.0;
};

/// Shortest path in the closed sharp polygon (a, b assumed inside).
inline SharpRoute sharp_route(const PolygonalDomain& d, Vec2 a, Vec2 b) {
    SharpRoute route;
    if (distance(a, b) <= kGeomTol) {
        route.points = {a, b};
        route.length = distance(a, b);
        return route;
    }
    if (d.visible(a, b)) {
        route.points = {a, b};
        route.length = distance(a, b);
        return route;
    }
    const auto reflex = d.reflex_vertices();
    const std::size_t k = reflex.size();
    const std::size_t nodes = k + 2;  // 0 = a, 1 = b, 2.. = reflex
    auto pos = [&](std::size_t i) { return i == 0 ? a : i == 1 ? b : d.vertex(reflex[i - 2]); };
    std::vector<char> vis_a(k), vis_b(k);
    for (std::size_t i = 0; i < k; ++i) {
        vis_a[i] = d.visible(a, pos(i + 2));
        vis_b[i] = d.visible(b, pos(i + 2));
    }
    auto connected = [&](std::size_t i, std::size_t j) -> bool {
        if (i > j) std::swap(i, j);
        if (i == 0 && j == 1) return false;  // handled above
        if (i == 0) return vis_a[j - 2];
        if (i == 1) return vis_b[j - 2];
        return d.reflex_pair_visible(i - 2, j - 2);
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes, inf);
    std::vector<int> prev(nodes, -1);
    std::vector<char> done(nodes, 0);
    dist[0] = 0.0;
    for (std::size_t iter = 0; iter < nodes; ++iter) {
        std::size_t u = nodes;
        for (std::size_t i = 0; i < nodes; ++i)
            if (!done[i] && dist[i] < inf && (u == nodes || dist[i] < dist[u])) u = i;
        if (u == nodes || u == 1) break;
        done[u] = 1;
        for (std::size_t v = 0; v < nodes; ++v) {
            if (done[v] || v == u || !connected(u, v)) continue;
            const double nd = dist[u] + distance(pos(u), pos(v));
            if (nd < dist[v] - 1e-15) {
                dist[v] = nd;
                prev[v] = static_cast<int>(u);
            }
        }
    }
    if (!(dist[1] < inf)) throw Error(ErrorCode::GeodesicFailure, "no path between the points");
    std::vector<std::size_t> chain;
    for (int v = 1; v != -1; v = prev[v]) chain.push_back(static_cast<std::size_t>(v));
    std::reverse(chain.begin(), chain.end());
    for (std::size_t v : chain) {
        route.points.push_back(pos(v));
        if (v >= 2) route.corners.push_back(reflex[v - 2]);
    }
    route.length = dist[1];
    return route;
}

/// Adds reflex vertices that a route passes straight through.
inline void mark_touched_corners(const PolygonalDomain& d, SharpRoute& route) {
    SharpRoute out;
    out.length = route.length;
    std::size_t corner = 0;
    for (std::size_t i = 0; i + 1 < route.points.size(); ++i) {
        out.points.push_back(route.points[i]);
        if (i > 0) out.corners.push_back(route.corners[corner++]);
        const Segment s{route.points[i], route.points[i + 1]};
        std::vector<std::pair<double, int>> hits;
        for (int v : d.reflex_vertices()) {
            const Vec2 p = d.vertex(v);
            if (distance(p, s.a) <= kGeomTol || distance(p, s.b) <= kGeomTol) continue;
            if (point_segment_distance(p, s) <= kGeomTol) hits.emplace_back(closest_param(s, p), v);
        }
        std::sort(hits.begin(), hits.end());
        for (const auto& [t, v] : hits) {
            out.points.push_back(d.vertex(v));
            out.corners.push_back(v);
        }
    }
    out.points.push_back(route.points.back());
    route = std::move(out);
}

/// Tangent point on circle (c, r) for travel from p with the centre on side s
/// (+1 left, -1 right).  Points on or inside the circle map radially onto it.
inline Vec2 tangent_from_point(Vec2 p, Vec2 c, double r, double s) {
    const Vec2 dv = c - p;
    const double d = norm(dv);
    if (d <= r) return d > 0.0 ? c - dv * (r / d) : c + Vec2{r, 0.0};
    const double beta = std::asin(r / d);
    const Vec2 w = rotated(dv / d, -s * beta);
    return p + w * std::sqrt(std::max(0.0, d * d - r * r));
}

/// Directed common tangent leaving circle 1 (side s1) and reaching circle 2 (side s2).
inline std::pair<Vec2, Vec2> bitangent(Vec2 c1, double s1, Vec2 c2, double s2, double r) {
    const double D = distance(c1, c2);
    if (s1 == s2) {
        const Vec2 w = (c2 - c1) / D;
        const Vec2 off = left_perp(w) * (-s1 * r);
        return {c1 + off, c2 + off};
    }
    if (D <= 2.0 * r) throw Error(ErrorCode::GeodesicFailure, "rounding discs overlap for a crossing tangent");
    const Vec2 m = (c1 + c2) * 0.5;
    const Vec2 t2 = tangent_from_point(m, c2, r, s2);
    return {m * 2.0 - t2, t2};
}

struct Wrap {
    int vertex;
    Vec2 center;
    double side;
};

struct TautString {
    std::vector<Vec2> entry, exit;
    std::vector<double> sweep;
};

inline TautString pull_taut(Vec2 a, Vec2 b, const std::vector<Wrap>& w, double r) {
    TautString t;
    const std::size_t k = w.size();
    t.entry.resize(k);
    t.exit.resize(k);
    t.sweep.resize(k);
    if (k == 0) return t;
    t.entry[0] = tangent_from_point(a, w[0].center, r, w[0].side);
    for (std::size_t i = 0; i + 1 < k; ++i) {
        const auto [x, e] = bitangent(w[i].center, w[i].side, w[i + 1].center, w[i + 1].side, r);
        t.exit[i] = x;
        t.entry[i + 1] = e;
    }
    t.exit[k - 1] = tangent_from_point(b, w[k - 1].center, r, -w[k - 1].side);
    for (std::size_t i = 0; i < k; ++i)
        t.sweep[i] = signed_angle(t.entry[i] - w[i].center, t.exit[i] - w[i].center);
    return t;
}

inline double point_segment_gap(Vec2 c, Vec2 p, Vec2 q) { return point_segment_distance(c, {p, q}); }

}  // namespace detail

/// Unique intrinsic geodesic from a to b in the active boundary model.
inline GeodesicPath geodesic(const PolygonalDomain& d, Vec2 a, Vec2 b) {
    if (d.classify(a) == Membership::exterior || d.classify(b) == Membership::exterior)
        throw Error(ErrorCode::PointOutsideDomain, "geodesic endpoint outside the closed domain");
    if (distance(a, b) <= kGeomTol) return GeodesicPath::point(a);

    const PolygonalDomain sharp = d.with_mode(BoundaryMode::sharp);
    if (d.mode() == BoundaryMode::sharp) {
        auto route = detail::sharp_route(sharp, a, b);
        detail::mark_touched_corners(sharp, route);
        return GeodesicPath::polyline(std::move(route.points), std::move(route.corners));
    }

    // Rounded model.  Endpoints inside a corner fillet are moved onto the sharp
    // polygon only to pick the homotopy class.
    auto anchor = [&](Vec2 p) {
        return sharp.classify(p) == Membership::exterior ? sharp.nearest_boundary_point(p).first : p;
    };
    const auto route = detail::sharp_route(sharp, anchor(a), anchor(b));
    const double r = d.rounding_radius();
    std::vector<detail::Wrap> wraps;
    for (std::size_t i = 0; i < route.corners.size(); ++i) {
        const Vec2 prev = route.points[i], cur = route.points[i + 1], next = route.points[i + 2];
        const double turn = cross(cur - prev, next - cur);
        const RoundingArc* arc = d.arc_for_vertex(route.corners[i]);
        wraps.push_back({route.corners[i], arc->center, turn >= 0.0 ? 1.0 : -1.0});
    }

    detail::TautString taut;
    const std::size_t max_iter = 4 * (d.arcs().size() + 2);
    bool settled = false;
    for (std::size_t iter = 0; iter < max_iter && !settled; ++iter) {
        taut = detail::pull_taut(a, b, wraps, r);
        // Drop the most negatively wrapped disc, if any.
        std::size_t worst = wraps.size();
        double worst_val = -1e-12;
        for (std::size_t i = 0; i < wraps.size(); ++i) {
            const double v = wraps[i].side * taut.sweep[i];
            if (v < worst_val) {
                worst_val = v;
                worst = i;
            }
        }
        if (worst < wraps.size()) {
            wraps.erase(wraps.begin() + static_cast<std::ptrdiff_t>(worst));
            continue;
        }
        // Insert a disc that a straight run cuts through.
        settled = true;
        for (std::size_t s = 0; s <= wraps.size() && settled; ++s) {
            const Vec2 p = s == 0 ? a : taut.exit[s - 1];
            const Vec2 q = s == wraps.size() ? b : taut.entry[s];
            for (const auto& arc : d.arcs()) {
                const bool adjacent = (s > 0 && wraps[s - 1].vertex == arc.vertex) ||
                                      (s < wraps.size() && wraps[s].vertex == arc.vertex);
                if (adjacent) continue;
                if (detail::point_segment_gap(arc.center, p, q) < r * (1.0 - 1e-10)) {
                    const double side = cross(q - p, arc.center - p) >= 0.0 ? 1.0 : -1.0;
                    wraps.insert(wraps.begin() + static_cast<std::ptrdiff_t>(s), {arc.vertex, arc.center, side});
                    settled = false;
                    break;
                }
            }
        }
    }
    if (!settled) throw Error(ErrorCode::GeodesicFailure, "taut-string iteration did not settle");

    GeodesicPath g;
    g.waypoints_.push_back(a);
    Vec2 cursor = a;
    for (std::size_t i = 0; i < wraps.size(); ++i) {
        PathPiece seg;
        seg.a = cursor;
        seg.b = taut.entry[i];
        seg.length = distance(seg.a, seg.b);
        g.add(seg);
        PathPiece arc;
        arc.kind = PathPiece::Kind::arc;
        arc.a = taut.entry[i];
        arc.b = taut.exit[i];
        arc.center = wraps[i].center;
        arc.radius = r;
        arc.start_angle = std::atan2(arc.a.y - arc.center.y, arc.a.x - arc.center.x);
        arc.sweep = wraps[i].side * std::max(0.0, wraps[i].side * taut.sweep[i]);
        arc.length = r * std::abs(arc.sweep);
        g.add(arc);
        g.arcs_.push_back({wraps[i].vertex, arc.center, r, arc.a, arc.b, arc.sweep});
        g.waypoints_.push_back(d.vertex(wraps[i].vertex));
        g.corner_vertices_.push_back(wraps[i].vertex);
        cursor = taut.exit[i];
    }
    PathPiece last;
    last.a = cursor;
    last.b = b;
    last.length = distance(cursor, b);
    g.add(last);
    g.waypoints_.push_back(b);
    return g;
}

inline double intrinsic_distance(const PolygonalDomain& d, Vec2 a, Vec2 b) {
    if (d.mode() == BoundaryMode::sharp) {
        if (d.classify(a) == Membership::exterior || d.classify(b) == Membership::exterior)
            throw Error(ErrorCode::PointOutsideDomain, "distance endpoint outside the closed domain");
        return detail::sharp_route(d, a, b).length;
    }
    return geodesic(d, a, b).length();
}

/// Unit initial direction at x of the geodesic from x to y.
inline Vec2 chi(const PolygonalDomain& d, Vec2 x, Vec2 y) {
    const auto g = geodesic(d, x, y);
    if (g.length() <= kGeomTol) throw Error(ErrorCode::CoincidentPoints, "chi needs separated points");
    return g.direction_at(0.0);
}

/// Boundary sample set used by intrinsic_diameter: all vertices plus each edge
/// split into 2^level pieces.  Nested in `level`.
inline std::vector<Vec2> boundary_samples(const PolygonalDomain& d, int level) {
    std::vector<Vec2> pts;
    const int parts = 1 << std::max(0, level);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const Segment e = d.edge(i);
        for (int j = 0; j < parts; ++j) pts.push_back(e.at(static_cast<double>(j) / parts));
    }
    return pts;
}

/// Largest intrinsic distance between boundary samples (an under-estimate that
/// is non-decreasing in `level`).
inline double intrinsic_diameter(const PolygonalDomain& d, int level = 0) {
    const auto pts = boundary_samples(d, level);
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, intrinsic_distance(d, pts[i], pts[j]));
    return best;
}

/// Sampled containment of a path in the closed domain; returns the worst
/// distance outside (0 when contained).
inline double path_excursion(const PolygonalDomain& d, const GeodesicPath& g, int samples_per_piece = 32) {
    double worst = 0.0;
    double s0 = 0.0;
    for (const auto& p : g.pieces()) {
        for (int k = 0; k <= samples_per_piece; ++k) {
            const Vec2 q = g.point_at(s0 + p.length * k / samples_per_piece);
            if (d.classify(q) == Membership::exterior) worst = std::max(worst, d.boundary_distance(q));
        }
        s0 += p.length;
    }
    return worst;
}

}  // namespace cat0
