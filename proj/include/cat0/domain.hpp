#pragma once
// Simple-polygon arenas with boundary regularity parameters.
//
// A PolygonalDomain is the closure of a simple polygon, stored counter-clockwise.
// Two boundary models share one vertex list:
//   sharp   - the raw polygon;
//   rounded - every reflex vertex replaced by the arc of radius r tangent to
//             both incident edges (the arc lies in the complement, so the
//             rounded domain contains the sharp one).

#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cat0/geometry.hpp"

namespace cat0 {

enum class BoundaryMode { sharp, rounded };

inline const char* to_string(BoundaryMode m) { return m == BoundaryMode::sharp ? "sharp" : "rounded"; }

enum class Membership { interior, boundary, exterior };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::interior: return "interior";
        case Membership::boundary: return "boundary";
        case Membership::exterior: return "exterior";
    }
    return "?";
}

struct DomainReport {
    bool is_simple = false;
    bool orientation_fixed = false;
    std::vector<int> reflex_vertex_indices;
    /// Infinite when the polygon has no reflex vertex.
    double max_admissible_rounding = std::numeric_limits<double>::infinity();
    double euclidean_diameter = 0.0;
    /// Minimum distance between non-adjacent edges (altitude for triangles).
    double feature_size = 0.0;
};

/// Tangent arc replacing reflex vertex `vertex` in the rounded model.
/// Traversed clockwise from `entry` (on the incoming edge) to `exit`.
struct RoundingArc {
    int vertex = -1;
    Vec2 corner;
    Vec2 center;
    Vec2 entry;
    Vec2 exit;
    double radius = 0.0;
    double start_angle = 0.0;  // angle of entry - center
    double sweep = 0.0;        // negative: clockwise
    double tangent_length = 0.0;

    Vec2 point_at_angle(double a) const { return center + Vec2{std::cos(a), std::sin(a)} * radius; }
    Vec2 midpoint() const { return point_at_angle(start_angle + 0.5 * sweep); }
};

/// One piece of the boundary in counter-clockwise order.
struct BoundaryPiece {
    enum class Kind { segment, arc } kind = Kind::segment;
    Vec2 a;  // start
    Vec2 b;  // end
    int index = -1;  // edge index for segments, arc index for arcs
    double length() const;
};

/// Nearest point on a piece, plus a tie-breaking parameter in [0,1].
struct PieceProjection {
    Vec2 point;
    double param = 0.0;
    double dist = 0.0;
};

enum class NormalSetKind { empty, single, fan };

/// Exterior unit normals at a boundary point.  A fan is the closed arc of unit
/// vectors swept counter-clockwise from `first` to `last`.
struct NormalSet {
    NormalSetKind kind = NormalSetKind::empty;
    Vec2 first;
    Vec2 last;

    bool contains(Vec2 n, double tol = 1e-12) const {
        switch (kind) {
            case NormalSetKind::empty: return false;
            case NormalSetKind::single: return norm(n - first) <= tol;
            case NormalSetKind::fan: {
                const double span = std::atan2(cross(first, last), dot(first, last));
                const double a = std::atan2(cross(first, n), dot(first, n));
                return a >= -tol && a <= span + tol;
            }
        }
        return false;
    }
};

struct ProjectionResult {
    Vec2 point;
    double distance = 0.0;
    /// distance >= rounding radius: the caller's step was too large.
    bool outside_reach = false;
};

namespace detail {

inline double signed_area(std::span<const Vec2> v) {
    double a = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
    return 0.5 * a;
}

/// Left-turn angle at vertex i of a ring (positive = convex for CCW).
inline double turning_angle(std::span<const Vec2> v, std::size_t i) {
    const std::size_t n = v.size();
    const Vec2 prev = v[(i + n - 1) % n], cur = v[i], next = v[(i + 1) % n];
    return signed_angle(cur - prev, next - cur);
}

inline bool adjacent_edges(std::size_t i, std::size_t j, std::size_t n) {
    return i == j || (i + 1) % n == j || (j + 1) % n == i;
}

inline double feature_size(std::span<const Vec2> v) {
    const std::size_t n = v.size();
    double best = std::numeric_limits<double>::infinity();
    if (n == 3) {
        for (std::size_t i = 0; i < 3; ++i)
            best = std::min(best, point_segment_distance(v[i], {v[(i + 1) % 3], v[(i + 2) % 3]}));
        return best;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (adjacent_edges(i, j, n)) continue;
            best = std::min(best, segment_segment_distance({v[i], v[(i + 1) % n]}, {v[j], v[(j + 1) % n]}));
        }
    return best;
}

/// Crossing-number classification of the sharp polygon.
inline Membership classify_sharp(std::span<const Vec2> v, Vec2 p, double tol) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        if (point_segment_distance(p, {v[i], v[(i + 1) % n]}) <= tol) return Membership::boundary;
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = v[i], b = v[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xi) inside = !inside;
        }
    }
    return inside ? Membership::interior : Membership::exterior;
}

inline RoundingArc make_arc(std::span<const Vec2> v, int i, double r) {
    const std::size_t n = v.size();
    const Vec2 prev = v[(i + n - 1) % n], cur = v[i], next = v[(i + 1) % n];
    const Vec2 ein = normalized(cur - prev), eout = normalized(next - cur);
    const double phi = -signed_angle(ein, eout);  // right turn magnitude, > 0
    RoundingArc arc;
    arc.vertex = i;
    arc.corner = cur;
    arc.radius = r;
    arc.tangent_length = r * std::tan(0.5 * phi);
    arc.entry = cur - ein * arc.tangent_length;
    arc.exit = cur + eout * arc.tangent_length;
    arc.center = arc.entry + right_perp(ein) * r;
    arc.start_angle = std::atan2(arc.entry.y - arc.center.y, arc.entry.x - arc.center.x);
    arc.sweep = -phi;
    return arc;
}

inline bool rounding_fits(std::span<const Vec2> v, std::span<const int> reflex, double r) {
    const std::size_t n = v.size();
    if (reflex.empty()) return true;
    std::vector<double> tangent(n, 0.0);
    std::vector<RoundingArc> arcs;
    for (int i : reflex) {
        arcs.push_back(make_arc(v, i, r));
        tangent[i] = arcs.back().tangent_length;
    }
    for (std::size_t e = 0; e < n; ++e) {
        const double len = distance(v[e], v[(e + 1) % n]);
        if (tangent[e] + tangent[(e + 1) % n] > len * (1.0 - 1e-12)) return false;
    }
    for (const auto& arc : arcs) {
        if (classify_sharp(v, arc.center, 0.0) == Membership::interior) return false;
        for (std::size_t e = 0; e < n; ++e) {
            const std::size_t i = static_cast<std::size_t>(arc.vertex);
            if (e == i || (e + 1) % n == i) continue;
            if (point_segment_distance(arc.center, {v[e], v[(e + 1) % n]}) < r * (1.0 - 1e-9)) return false;
        }
    }
    return true;
}

inline double max_rounding(std::span<const Vec2> v, std::span<const int> reflex) {
    const std::size_t n = v.size();
    if (reflex.empty()) return std::numeric_limits<double>::infinity();
    std::vector<double> half_tan(n, 0.0);
    for (int i : reflex) half_tan[i] = std::tan(-0.5 * turning_angle(v, i));
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t e = 0; e < n; ++e) {
        const double t = half_tan[e] + half_tan[(e + 1) % n];
        if (t > 0.0) hi = std::min(hi, distance(v[e], v[(e + 1) % n]) / t);
    }
    hi *= 1.0 - 1e-9;
    if (rounding_fits(v, reflex, hi)) return hi;
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rounding_fits(v, reflex, mid) ? lo : hi) = mid;
    }
    return lo;
}

/// Shared validation path: returns the report and the CCW vertex ring.
inline DomainReport validate(std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    if (n < 3) throw Error(ErrorCode::DegeneratePolygon, "a polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(v[i].x) || !std::isfinite(v[i].y))
            throw Error(ErrorCode::DegeneratePolygon, "non-finite vertex coordinate");
        if (distance(v[i], v[(i + 1) % n]) <= kGeomTol)
            throw Error(ErrorCode::DegeneratePolygon, "repeated vertex " + std::to_string((i + 1) % n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
        const Vec2 d1 = b - a, d2 = c - b;
        if (std::abs(cross(d1, d2)) <= kGeomTol * norm(d1) * norm(d2) && dot(d1, d2) < 0.0)
            throw Error(ErrorCode::DegeneratePolygon, "edges fold back at vertex " + std::to_string(i));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (adjacent_edges(i, j, n)) continue;
            if (segment_segment_distance({v[i], v[(i + 1) % n]}, {v[j], v[(j + 1) % n]}) <= kGeomTol)
                throw Error(ErrorCode::SelfIntersecting,
                            "edges " + std::to_string(i) + " and " + std::to_string(j) + " meet");
        }
    const double area = signed_area(v);
    double diam = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, distance(v[i], v[j]));
    if (std::abs(area) <= kGeomTol * diam * diam) throw Error(ErrorCode::DegeneratePolygon, "zero area");

    DomainReport rep;
    rep.is_simple = true;
    if (area < 0.0) {
        std::reverse(v.begin() + 1, v.end());
        rep.orientation_fixed = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (turning_angle(v, i) < -1e-12) rep.reflex_vertex_indices.push_back(static_cast<int>(i));
    rep.euclidean_diameter = diam;
    rep.feature_size = feature_size(v);
    rep.max_admissible_rounding = max_rounding(v, rep.reflex_vertex_indices);
    return rep;
}

}  // namespace detail

/// Checks a vertex ring and reports simplicity, reflex vertices (indices in the
/// counter-clockwise order), the largest admissible rounding radius and the
/// Euclidean diameter.  Throws DegeneratePolygon or SelfIntersecting.
inline DomainReport validate_domain(std::span<const Vec2> vertices) {
    std::vector<Vec2> v(vertices.begin(), vertices.end());
    return detail::validate(v);
}

class PolygonalDomain {
public:
    /// Builds a domain; cone radius and angle are derived when not given.
    static PolygonalDomain create(std::vector<Vec2> vertices, double rounding_radius,
                                  std::optional<double> cone_radius = std::nullopt,
                                  std::optional<double> cone_angle = std::nullopt,
                                  BoundaryMode mode = BoundaryMode::sharp) {
        if (!(rounding_radius > 0.0) || !std::isfinite(rounding_radius))
            throw Error(ErrorCode::InvalidArgument, "rounding radius must be positive and finite");
        auto shared = std::make_shared<Shared>();
        shared->report = detail::validate(vertices);
        shared->vertices = std::move(vertices);
        const auto& v = shared->vertices;
        const std::size_t n = v.size();
        if (rounding_radius > shared->report.max_admissible_rounding * (1.0 + 1e-9))
            throw Error(ErrorCode::RoundingTooLarge,
                        "rounding radius " + std::to_string(rounding_radius) + " exceeds admissible " +
                            std::to_string(shared->report.max_admissible_rounding));
        shared->rounding_radius = rounding_radius;

        if (cone_radius) {
            if (!(*cone_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "cone radius must be positive");
            shared->cone_radius = *cone_radius;
        } else {
            shared->cone_radius = 0.5 * shared->report.feature_size;
        }
        if (cone_angle) {
            if (!(*cone_angle > 0.0 && *cone_angle <= 0.5 * kPi))
                throw Error(ErrorCode::InvalidArgument, "cone angle must lie in (0, pi/2]");
            shared->cone_angle = *cone_angle;
        } else {
            double alpha = 0.5 * kPi;
            for (std::size_t i = 0; i < n; ++i)
                alpha = std::min(alpha, 0.5 * (kPi - std::abs(detail::turning_angle(v, i))));
            shared->cone_angle = alpha;
        }
        shared->lipschitz = shared->cone_angle >= 0.5 * kPi ? 0.0 : 1.0 / std::tan(shared->cone_angle);

        shared->is_reflex.assign(n, false);
        for (int i : shared->report.reflex_vertex_indices) {
            shared->is_reflex[i] = true;
            shared->arcs.push_back(detail::make_arc(v, i, rounding_radius));
        }
        std::vector<int> arc_of(n, -1);
        for (std::size_t k = 0; k < shared->arcs.size(); ++k) arc_of[shared->arcs[k].vertex] = static_cast<int>(k);
        for (std::size_t e = 0; e < n; ++e) {
            const std::size_t f = (e + 1) % n;
            shared->sharp_pieces.push_back({BoundaryPiece::Kind::segment, v[e], v[f], static_cast<int>(e)});
            const Vec2 a = arc_of[e] >= 0 ? shared->arcs[arc_of[e]].exit : v[e];
            const Vec2 b = arc_of[f] >= 0 ? shared->arcs[arc_of[f]].entry : v[f];
            shared->rounded_pieces.push_back({BoundaryPiece::Kind::segment, a, b, static_cast<int>(e)});
            if (arc_of[f] >= 0) {
                const auto& arc = shared->arcs[arc_of[f]];
                shared->rounded_pieces.push_back({BoundaryPiece::Kind::arc, arc.entry, arc.exit, arc_of[f]});
            }
        }
        PolygonalDomain d(std::move(shared), mode);
        d.shared_->reflex_visible = d.compute_reflex_visibility();
        return d;
    }

    BoundaryMode mode() const { return mode_; }
    PolygonalDomain with_mode(BoundaryMode m) const { return PolygonalDomain(shared_, m); }

    std::span<const Vec2> vertices() const { return shared_->vertices; }
    std::size_t size() const { return shared_->vertices.size(); }
    Vec2 vertex(std::size_t i) const { return shared_->vertices[i % size()]; }
    Segment edge(std::size_t i) const { return {vertex(i), vertex(i + 1)}; }
    /// Outward unit normal of edge i.
    Vec2 edge_normal(std::size_t i) const { return right_perp(normalized(edge(i).b - edge(i).a)); }

    const DomainReport& report() const { return shared_->report; }
    double rounding_radius() const { return shared_->rounding_radius; }
    double cone_radius() const { return shared_->cone_radius; }
    double cone_angle() const { return shared_->cone_angle; }
    /// cot(cone_angle); zero for a right-angled cone.
    double lipschitz() const { return shared_->lipschitz; }
    double euclidean_diameter() const { return shared_->report.euclidean_diameter; }
    double feature_size() const { return shared_->report.feature_size; }
    bool is_reflex(std::size_t i) const { return shared_->is_reflex[i % size()]; }
    std::span<const int> reflex_vertices() const { return shared_->report.reflex_vertex_indices; }
    std::span<const RoundingArc> arcs() const { return shared_->arcs; }
    const RoundingArc* arc_for_vertex(int vertex) const {
        for (const auto& a : shared_->arcs)
            if (a.vertex == vertex) return &a;
        return nullptr;
    }

    /// Boundary pieces of the active model, counter-clockwise.
    std::span<const BoundaryPiece> pieces() const {
        return mode_ == BoundaryMode::sharp ? shared_->sharp_pieces : shared_->rounded_pieces;
    }

    /// 2 r sin(alpha), the radius scale of the regularity estimates.
    double curvature_scale() const { return 2.0 * rounding_radius() * std::sin(cone_angle()); }
    /// min{delta/(4 lambda), 2 r sin(alpha)}: the "close pairs" threshold.
    double closeness_threshold() const {
        const double a = lipschitz() > 0.0 ? cone_radius() / (4.0 * lipschitz()) : std::numeric_limits<double>::infinity();
        return std::min(a, curvature_scale());
    }

    PieceProjection project_onto(const BoundaryPiece& p, Vec2 q) const {
        if (p.kind == BoundaryPiece::Kind::segment) {
            const Segment s{p.a, p.b};
            const double t = closest_param(s, q);
            const Vec2 x = s.at(t);
            return {x, t, distance(x, q)};
        }
        const auto& arc = shared_->arcs[p.index];
        const Vec2 rel = q - arc.center;
        const double rn = norm(rel);
        if (rn > 0.0) {
            // Clockwise angular offset from the entry direction.
            double off = arc.start_angle - std::atan2(rel.y, rel.x);
            off = std::fmod(off, 2.0 * kPi);
            if (off < 0.0) off += 2.0 * kPi;
            if (off <= -arc.sweep) {
                const Vec2 x = arc.center + rel * (arc.radius / rn);
                return {x, off / -arc.sweep, std::abs(rn - arc.radius)};
            }
        }
        const double da = distance(q, arc.entry), db = distance(q, arc.exit);
        return da <= db ? PieceProjection{arc.entry, 0.0, da} : PieceProjection{arc.exit, 1.0, db};
    }

    /// Distance to the nearest boundary point of the active model.
    double boundary_distance(Vec2 p) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& pc : pieces()) best = std::min(best, project_onto(pc, p).dist);
        return best;
    }

    /// Nearest boundary point; ties go to the lowest piece index, then the lowest parameter.
    std::pair<Vec2, std::size_t> nearest_boundary_point(Vec2 p) const {
        const auto ps = pieces();
        PieceProjection best{};
        best.dist = std::numeric_limits<double>::infinity();
        std::size_t which = 0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const auto pr = project_onto(ps[i], p);
            if (pr.dist < best.dist - kGeomTol) {
                best = pr;
                which = i;
            }
        }
        return {best.point, which};
    }

    Membership classify(Vec2 p) const {
        const auto v = vertices();
        if (mode_ == BoundaryMode::sharp) return detail::classify_sharp(v, p, kGeomTol);
        if (boundary_distance(p) <= kGeomTol) return Membership::boundary;
        for (const auto& arc : arcs()) {
            if (in_kite(arc, p)) return distance(p, arc.center) > arc.radius ? Membership::interior : Membership::exterior;
        }
        const auto m = detail::classify_sharp(v, p, 0.0);
        return m == Membership::exterior ? Membership::exterior : Membership::interior;
    }

    /// Segment pq lies in the closed sharp polygon.
    bool visible(Vec2 p, Vec2 q) const {
        const auto v = vertices();
        const std::size_t n = v.size();
        const Vec2 d = q - p;
        const double len = norm(d);
        if (len <= kGeomTol) return detail::classify_sharp(v, p, kGeomTol) != Membership::exterior;
        std::vector<double> ts{0.0, 1.0};
        constexpr double eps = 1e-12;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = v[i], b = v[(i + 1) % n];
            const Vec2 e = b - a;
            const double denom = cross(d, e);
            const double elen = norm(e);
            // Signed distances of p and q from the edge line.
            const double sp = cross(e, p - a) / elen, sq = cross(e, q - a) / elen;
            const bool collinear = std::abs(sp) <= kGeomTol && std::abs(sq) <= kGeomTol;
            if (!collinear && std::abs(denom) > 1e-14 * len * elen) {
                const double t = cross(a - p, e) / denom;
                const double u = cross(a - p, d) / denom;
                if (t < -eps || t > 1.0 + eps || u < -eps || u > 1.0 + eps) continue;
                const bool straddles = (sp > kGeomTol && sq < -kGeomTol) || (sp < -kGeomTol && sq > kGeomTol);
                const double uslack = kGeomTol / elen;
                if (straddles && u > uslack && u < 1.0 - uslack) return false;
                ts.push_back(std::clamp(t, 0.0, 1.0));
            } else if (collinear || std::abs(cross(a - p, d)) <= kGeomTol * len) {
                for (Vec2 w : {a, b}) {
                    const double t = dot(w - p, d) / (len * len);
                    if (t >= 0.0 && t <= 1.0) ts.push_back(t);
                }
            }
        }
        std::sort(ts.begin(), ts.end());
        for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
            if (ts[k + 1] - ts[k] < 1e-12) continue;
            const Vec2 m = p + d * (0.5 * (ts[k] + ts[k + 1]));
            if (detail::classify_sharp(v, m, kGeomTol) == Membership::exterior) return false;
        }
        return true;
    }

    /// Cached visibility between reflex vertices (indexes into reflex_vertices()).
    bool reflex_pair_visible(std::size_t i, std::size_t j) const {
        return shared_->reflex_visible[i * reflex_vertices().size() + j];
    }

private:
    struct Shared {
        std::vector<Vec2> vertices;
        DomainReport report;
        double rounding_radius = 0.0;
        double cone_radius = 0.0;
        double cone_angle = 0.0;
        double lipschitz = 0.0;
        std::vector<bool> is_reflex;
        std::vector<RoundingArc> arcs;
        std::vector<BoundaryPiece> sharp_pieces;
        std::vector<BoundaryPiece> rounded_pieces;
        std::vector<char> reflex_visible;
    };

    PolygonalDomain(std::shared_ptr<Shared> s, BoundaryMode m) : shared_(std::move(s)), mode_(m) {}

    std::vector<char> compute_reflex_visibility() const {
        const auto r = reflex_vertices();
        std::vector<char> vis(r.size() * r.size(), 0);
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i; j < r.size(); ++j) {
                const bool ok = i == j || visible(vertex(r[i]), vertex(r[j]));
                vis[i * r.size() + j] = vis[j * r.size() + i] = ok;
            }
        return vis;
    }

    /// Closed quadrilateral corner -> entry -> center -> exit.
    static bool in_kite(const RoundingArc& arc, Vec2 p) {
        const Vec2 q[4] = {arc.corner, arc.entry, arc.center, arc.exit};
        int pos = 0, neg = 0;
        for (int k = 0; k < 4; ++k) {
            const double o = orient(q[k], q[(k + 1) % 4], p);
            if (o > 1e-15) ++pos;
            if (o < -1e-15) ++neg;
        }
        return pos == 0 || neg == 0;
    }

    // Immutable after create(); shared between mode views.
    std::shared_ptr<Shared> shared_;
    BoundaryMode mode_ = BoundaryMode::sharp;
};

inline double BoundaryPiece::length() const { return distance(a, b); }

inline Membership contains(const PolygonalDomain& d, Vec2 p) { return d.classify(p); }

/// Euclidean nearest point of the closed domain (identity inside).
inline ProjectionResult project_to_closure(const PolygonalDomain& d, Vec2 p) {
    if (d.classify(p) != Membership::exterior) return {p, 0.0, false};
    const auto [q, piece] = d.nearest_boundary_point(p);
    (void)piece;
    const double dist = distance(p, q);
    return {q, dist, dist >= d.rounding_radius()};
}

/// Exterior normals N_{x,r} at a boundary point of the active model.
inline NormalSet exterior_normals(const PolygonalDomain& d, Vec2 x) {
    if (d.classify(x) != Membership::boundary)
        throw Error(ErrorCode::NotOnBoundary, "point is not on the domain boundary");
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (distance(x, d.vertex(i)) > kGeomTol) continue;
        if (d.is_reflex(i)) {
            // Reachable only in the sharp model: the rounded boundary avoids the corner.
            return {};
        }
        const Vec2 a = d.edge_normal((i + n - 1) % n), b = d.edge_normal(i);
        if (norm(a - b) <= 1e-12) return {NormalSetKind::single, a, a};
        return {NormalSetKind::fan, a, b};
    }
    if (d.mode() == BoundaryMode::rounded) {
        for (const auto& pc : d.pieces()) {
            if (pc.kind != BoundaryPiece::Kind::arc) continue;
            const auto& arc = d.arcs()[pc.index];
            if (d.project_onto(pc, x).dist <= kGeomTol) {
                const Vec2 nrm = normalized(arc.center - x);
                return {NormalSetKind::single, nrm, nrm};
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (point_segment_distance(x, d.edge(i)) <= kGeomTol) {
            const Vec2 nrm = d.edge_normal(i);
            return {NormalSetKind::single, nrm, nrm};
        }
    }
    throw Error(ErrorCode::NotOnBoundary, "no boundary piece within tolerance");
}

/// Axis of an interior cone at boundary point x: the normalized sum of inward
/// normals of the edges meeting the open ball B(x, delta).
inline Vec2 interior_cone_axis(const PolygonalDomain& d, Vec2 x) {
    Vec2 sum{};
    for (std::size_t i = 0; i < d.size(); ++i)
        if (point_segment_distance(x, d.edge(i)) < d.cone_radius() * (1.0 - 1e-9)) sum -= d.edge_normal(i);
    return normalized(sum);
}

}  // namespace cat0
