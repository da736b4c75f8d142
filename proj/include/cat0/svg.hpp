#pragma once
// Deterministic SVG plots: fixed number formatting, no timestamps.

#include <cstdio>
#include <string>
#include <vector>

#include "cat0/domain.hpp"

namespace cat0 {

struct PlotPath {
    std::string label;
    std::string color;
    std::vector<Vec2> points;
};

struct PlotMarker {
    std::string label;
    std::string color;
    Vec2 center;
    double radius = 0.0;  // domain units; 0 draws a dot
};

struct PlotArtifact {
    std::string title;
    std::vector<PlotPath> paths;
    std::vector<PlotMarker> markers;
};

struct PlotStyle {
    int width = 640;
    int margin = 24;
    /// Paths longer than this are thinned to every k-th point (ends kept).
    std::size_t max_points = 4000;
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s(buf);
    return s == "-0.00" ? "0.00" : s;
}

inline std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace detail

inline std::string emit_plot(const PolygonalDomain& d, const PlotArtifact& art, const PlotStyle& style = {}) {
    double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
    for (const auto& v : d.vertices()) {
        x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
    }
    const double span = std::max(x1 - x0, y1 - y0);
    const double scale = (style.width - 2.0 * style.margin) / span;
    const int height = static_cast<int>(std::ceil((y1 - y0) * scale)) + 2 * style.margin;
    const int legend_h = 16 * static_cast<int>(art.paths.size() + art.markers.size()) + (art.title.empty() ? 0 : 18);
    auto X = [&](Vec2 p) { return detail::fmt(style.margin + (p.x - x0) * scale); };
    auto Y = [&](Vec2 p) { return detail::fmt(style.margin + (y1 - p.y) * scale); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) + "\" height=\"" +
         std::to_string(height + legend_h) + "\" viewBox=\"0 0 " + std::to_string(style.width) + " " +
         std::to_string(height + legend_h) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Boundary of the active model; arcs use the SVG arc command.
    std::string dpath;
    const auto pieces = d.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto& pc = pieces[i];
        if (i == 0) dpath += "M" + X(pc.a) + "," + Y(pc.a);
        if (pc.kind == BoundaryPiece::Kind::segment) {
            dpath += " L" + X(pc.b) + "," + Y(pc.b);
        } else {
            const auto& arc = d.arcs()[pc.index];
            // Clockwise in domain coordinates is counter-clockwise on screen (y flipped).
            dpath += " A" + detail::fmt(arc.radius * scale) + "," + detail::fmt(arc.radius * scale) + " 0 0 0 " + X(pc.b) +
                     "," + Y(pc.b);
        }
    }
    dpath += " Z";
    s += "<path d=\"" + dpath + "\" fill=\"#f4f4f4\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    for (const auto& p : art.paths) {
        if (p.points.empty()) continue;
        const std::size_t stride = p.points.size() > style.max_points ? (p.points.size() + style.max_points - 1) / style.max_points : 1;
        std::string pts;
        for (std::size_t i = 0; i < p.points.size(); i += stride) pts += X(p.points[i]) + "," + Y(p.points[i]) + " ";
        if ((p.points.size() - 1) % stride != 0) pts += X(p.points.back()) + "," + Y(p.points.back()) + " ";
        pts.pop_back();
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + p.color + "\" stroke-width=\"1.2\"/>\n";
    }
    for (const auto& m : art.markers) {
        const std::string r = m.radius > 0.0 ? detail::fmt(m.radius * scale) : "3.00";
        s += "<circle cx=\"" + X(m.center) + "\" cy=\"" + Y(m.center) + "\" r=\"" + r + "\" fill=\"" +
             (m.radius > 0.0 ? "none" : m.color) + "\" stroke=\"" + m.color + "\" stroke-width=\"1.2\"/>\n";
    }

    int ly = height + 4;
    if (!art.title.empty()) {
        ly += 14;
        s += "<text x=\"" + std::to_string(style.margin) + "\" y=\"" + std::to_string(ly) +
             "\" font-family=\"monospace\" font-size=\"12\">" + detail::escape_xml(art.title) + "</text>\n";
    }
    auto legend = [&](const std::string& color, const std::string& label) {
        ly += 16;
        s += "<rect x=\"" + std::to_string(style.margin) + "\" y=\"" + std::to_string(ly - 9) +
             "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        s += "<text x=\"" + std::to_string(style.margin + 16) + "\" y=\"" + std::to_string(ly) +
             "\" font-family=\"monospace\" font-size=\"12\">" + detail::escape_xml(label) + "</text>\n";
    };
    for (const auto& p : art.paths) legend(p.color, p.label);
    for (const auto& m : art.markers) legend(m.color, m.label);
    s += "</svg>\n";
    return s;
}

}  // namespace cat0
