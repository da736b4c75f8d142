#pragma once
// Bundled test polygons and seeded point sampling.

#include <string>
#include <vector>

#include "cat0/domain.hpp"
#include "cat0/random.hpp"

namespace cat0::shapes {

inline std::vector<Vec2> unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

/// Reflex corner at (1, 1).
inline std::vector<Vec2> l_shape() { return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}; }

/// Reflex corners at (2, 2) and (1, 1).
inline std::vector<Vec2> z_channel() { return {{0, 0}, {2, 0}, {2, 2}, {3, 2}, {3, 3}, {1, 3}, {1, 1}, {0, 1}}; }

/// Regular n-gon inscribed in the unit circle.
inline std::vector<Vec2> regular_polygon(int n) {
    std::vector<Vec2> v;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * kPi * i / n;
        v.push_back({std::cos(a), std::sin(a)});
    }
    return v;
}

/// Five-pointed star, outer radius 1, inner radius 0.5.
inline std::vector<Vec2> star() {
    std::vector<Vec2> v;
    for (int i = 0; i < 10; ++i) {
        const double a = kPi / 2.0 + kPi * i / 5.0;
        const double r = i % 2 ? 0.5 : 1.0;
        v.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return v;
}

struct Bundled {
    std::string name;
    std::vector<Vec2> vertices;
    double rounding_radius;
};

/// The corpus used by the scenarios and the acceptance suite.
inline std::vector<Bundled> bundled() {
    return {{"square", unit_square(), 0.1},
            {"lshape", l_shape(), 0.1},
            {"zchannel", z_channel(), 0.1},
            {"gon20", regular_polygon(20), 0.1},
            {"star", star(), 0.1}};
}

inline PolygonalDomain make(const Bundled& b, BoundaryMode mode) {
    return PolygonalDomain::create(b.vertices, b.rounding_radius, std::nullopt, std::nullopt, mode);
}

}  // namespace cat0::shapes

namespace cat0 {

/// Uniform point of the domain by bounding-box rejection.  With
/// min_clearance > 0 the point also keeps that distance from the boundary.
inline Vec2 sample_point(const PolygonalDomain& d, CounterRng& rng, double min_clearance = 0.0) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& v : d.vertices()) {
        x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
    }
    for (int tries = 0; tries < 100000; ++tries) {
        const Vec2 p{rng.uniform(x0, x1), rng.uniform(y0, y1)};
        if (d.classify(p) != Membership::interior) continue;
        if (min_clearance > 0.0 && d.boundary_distance(p) < min_clearance) continue;
        return p;
    }
    throw Error(ErrorCode::InvalidArgument, "could not sample a point with the requested clearance");
}

}  // namespace cat0
