#pragma once
// Planar vector algebra and segment primitives shared by every module.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cat0 {

/// Boundary classification and tie-break slack, in domain units.
inline constexpr double kGeomTol = 1e-9;

inline constexpr double kPi = std::numbers::pi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Counter-clockwise quarter turn.
constexpr Vec2 left_perp(Vec2 a) { return {-a.y, a.x}; }
/// Clockwise quarter turn.
constexpr Vec2 right_perp(Vec2 a) { return {a.y, -a.x}; }

inline Vec2 normalized(Vec2 a) {
    const double n = norm(a);
    if (n == 0.0) throw std::domain_error("cannot normalize a zero vector");
    return a / n;
}

inline Vec2 rotated(Vec2 a, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Signed angle from a to b in (-pi, pi].
inline double signed_angle(Vec2 a, Vec2 b) { return std::atan2(cross(a, b), dot(a, b)); }

/// Orientation of c relative to the directed line a->b: >0 left, <0 right.
constexpr double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

struct Segment {
    Vec2 a;
    Vec2 b;

    double length() const { return distance(a, b); }
    Vec2 at(double t) const { return a + (b - a) * t; }
};

/// Parameter in [0,1] of the point of s closest to p.
inline double closest_param(const Segment& s, Vec2 p) {
    const Vec2 d = s.b - s.a;
    const double len2 = norm2(d);
    if (len2 == 0.0) return 0.0;
    double t = dot(p - s.a, d) / len2;
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    return t;
}

inline double point_segment_distance(Vec2 p, const Segment& s) {
    return distance(p, s.at(closest_param(s, p)));
}

inline double segment_segment_distance(const Segment& s, const Segment& t) {
    // Proper crossing gives zero; otherwise the minimum is attained at an endpoint.
    const double o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
    const double o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
    if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0)))
        return 0.0;
    return std::min(std::min(point_segment_distance(s.a, t), point_segment_distance(s.b, t)),
                    std::min(point_segment_distance(t.a, s), point_segment_distance(t.b, s)));
}

/// Codes for every error condition the library reports by exception.
enum class ErrorCode {
    DegeneratePolygon,
    SelfIntersecting,
    RoundingTooLarge,
    NotOnBoundary,
    PointOutsideDomain,
    CoincidentPoints,
    DegenerateTriangle,
    SharpModeUnsupported,
    ProbeOutsideDomain,
    StepTooLarge,
    NonmonotoneSeparation,
    GeodesicFailure,
    InvalidArgument,
};

inline const char* to_string(ErrorCode c) {
    switch (c) {
        case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
        case ErrorCode::SelfIntersecting: return "SelfIntersecting";
        case ErrorCode::RoundingTooLarge: return "RoundingTooLarge";
        case ErrorCode::NotOnBoundary: return "NotOnBoundary";
        case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorCode::SharpModeUnsupported: return "SharpModeUnsupported";
        case ErrorCode::ProbeOutsideDomain: return "ProbeOutsideDomain";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::NonmonotoneSeparation: return "NonmonotoneSeparation";
        case ErrorCode::GeodesicFailure: return "GeodesicFailure";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cat0
