#pragma once
// JSON and CSV encodings of domains, geodesics, traces and reports.

#include <cstdio>
#include <ostream>
#include <string>

#include "json.hpp"

#include "cat0/coupling.hpp"
#include "cat0/pursuit.hpp"

namespace cat0 {

using nlohmann::json;

inline json to_json(Vec2 p) { return json::array({p.x, p.y}); }

inline Vec2 vec2_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::InvalidArgument, "expected a point [x, y], got " + j.dump());
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Parses "x,y".
inline Vec2 vec2_from_string(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "expected x,y but got '" + s + "'");
    try {
        std::size_t used = 0;
        const double x = std::stod(s.substr(0, comma), &used);
        const std::string rest = s.substr(comma + 1);
        std::size_t used2 = 0;
        const double y = std::stod(rest, &used2);
        if (used2 != rest.size()) throw std::invalid_argument("trailing characters");
        return {x, y};
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidArgument, "expected x,y but got '" + s + "'");
    }
}

/// Infinite values are written as null.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const DomainReport& r) {
    return {{"is_simple", r.is_simple},
            {"orientation_fixed", r.orientation_fixed},
            {"reflex_vertex_indices", r.reflex_vertex_indices},
            {"max_admissible_rounding", finite_or_null(r.max_admissible_rounding)},
            {"euclidean_diameter", r.euclidean_diameter},
            {"feature_size", r.feature_size}};
}

/// {vertices, rounding_radius, cone_radius, cone_angle, mode}.
inline json to_json(const PolygonalDomain& d) {
    json v = json::array();
    for (const auto& p : d.vertices()) v.push_back(to_json(p));
    return {{"vertices", v},
            {"rounding_radius", d.rounding_radius()},
            {"cone_radius", d.cone_radius()},
            {"cone_angle", d.cone_angle()},
            {"mode", to_string(d.mode())}};
}

inline BoundaryMode mode_from_string(const std::string& s) {
    if (s == "sharp") return BoundaryMode::sharp;
    if (s == "rounded") return BoundaryMode::rounded;
    throw Error(ErrorCode::InvalidArgument, "mode must be 'sharp' or 'rounded', got '" + s + "'");
}

inline PolygonalDomain domain_from_json(const json& j, std::optional<BoundaryMode> mode = std::nullopt) {
    if (!j.is_object() || !j.contains("vertices") || !j.at("vertices").is_array())
        throw Error(ErrorCode::InvalidArgument, "domain needs a 'vertices' array");
    std::vector<Vec2> v;
    for (const auto& p : j.at("vertices")) v.push_back(vec2_from_json(p));
    const double r = j.value("rounding_radius", 0.1);
    auto opt = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    BoundaryMode m = mode.value_or(j.contains("mode") ? mode_from_string(j.at("mode").get<std::string>()) : BoundaryMode::sharp);
    return PolygonalDomain::create(std::move(v), r, opt("cone_radius"), opt("cone_angle"), m);
}

inline json to_json(const GeodesicPath& g) {
    json wp = json::array(), arcs = json::array();
    for (const auto& p : g.waypoints()) wp.push_back(to_json(p));
    for (const auto& a : g.arcs())
        arcs.push_back({{"vertex", a.vertex}, {"center", to_json(a.center)}, {"radius", a.radius},
                        {"entry", to_json(a.entry)}, {"exit", to_json(a.exit)}, {"sweep", a.sweep}});
    return {{"waypoints", wp}, {"length", g.length()}, {"arcs", arcs}};
}

inline json to_json(const CaptureBound& cb) {
    return {{"diam_intr", cb.diam_intr}, {"epsilon", cb.epsilon}, {"a", cb.a}, {"b", cb.b}, {"c", cb.c},
            {"q_c", cb.q_c}, {"t_c", cb.t_c}, {"epsilon_too_large", cb.epsilon_too_large}};
}

inline json to_json(const ShynessReport& r) {
    return {{"strategy", r.strategy},
            {"interpretive", r.interpretive},
            {"epsilon", r.epsilon},
            {"t1", r.t1},
            {"dt", r.dt},
            {"trials", r.trials},
            {"hits", r.hits},
            {"hit_fraction", r.hit_fraction},
            {"euclidean_hits", r.euclidean_hits},
            {"min_separation",
             {{"min", r.min_separation.min}, {"mean", r.min_separation.mean}, {"median", r.min_separation.median},
              {"max", r.min_separation.max}}},
            {"window_hits", r.window_hits},
            {"window_rates", r.window_rates},
            {"survival", r.survival},
            {"fitted_window_rate", r.fitted_window_rate ? json(*r.fitted_window_rate) : json(nullptr)}};
}

inline json to_json(const DeviationTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"n", r.n}, {"deviation", r.deviation}, {"steps", r.steps}, {"t_end", r.t_end},
                        {"max_step_excess", r.max_step_excess}, {"noise_share", r.noise_share}});
    return {{"strategy", t.strategy}, {"seed", t.seed},        {"dt", t.dt}, {"t_horizon", t.t_horizon},
            {"rows", rows},           {"inversions", t.inversions}, {"pass", t.pass}};
}

namespace detail {

inline void put(std::ostream& os, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
}

template <class... T>
void put_row(std::ostream& os, double first, T... rest) {
    put(os, first);
    ((os << ',', put(os, rest)), ...);
    os << '\n';
}

}  // namespace detail

/// t,x1,x2,y1,y2,d_intr,lion_turn
inline void write_pursuit_csv(std::ostream& os, const PursuitTrace& tr) {
    os << "t,x1,x2,y1,y2,d_intr,lion_turn\n";
    for (const auto& s : tr.samples) detail::put_row(os, s.t, s.x.x, s.x.y, s.y.x, s.y.y, s.d_intr, s.lion_turn);
}

/// t,X1,X2,Y1,Y2,d_intr,d_eucl,LX,LY
inline void write_coupled_csv(std::ostream& os, const PolygonalDomain& d, const CoupledPath& p) {
    os << "t,X1,X2,Y1,Y2,d_intr,d_eucl,LX,LY\n";
    for (std::size_t k = 0; k < p.X.size(); ++k) {
        const Vec2 X = p.X[k], Y = p.Y[k];
        detail::put_row(os, k * p.dt, X.x, X.y, Y.x, Y.y, intrinsic_distance(d, X, Y), distance(X, Y), p.LX[k], p.LY[k]);
    }
}

}  // namespace cat0
