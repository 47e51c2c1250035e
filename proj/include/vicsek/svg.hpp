#pragma once

// Static SVG rendering of a field on a level graph. Vertices sit at their
// exact coordinates (y up); colors come from a blue-white-red diverging map
// normalized by max |value|, so zero is always white.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "graph.hpp"

namespace vicsek {

struct SvgOptions {
    double size = 600.0;    // drawing width and height in user units
    double margin = 20.0;
    double vertex_radius = 0.0;  // 0: chosen from the level
    std::string title;
};

using Rgb = std::array<int, 3>;

inline constexpr Rgb kColdColor{33, 102, 172};
inline constexpr Rgb kMidColor{255, 255, 255};
inline constexpr Rgb kHotColor{178, 24, 43};

/// t in [-1, 1] to a color; -1 cold, 0 white, +1 hot.
inline Rgb diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    const Rgb& end = t < 0 ? kColdColor : kHotColor;
    const double s = std::abs(t);
    Rgb c{};
    for (std::size_t i = 0; i < 3; ++i)
        c[i] = static_cast<int>(std::lround(kMidColor[i] + s * (end[i] - kMidColor[i])));
    return c;
}

inline std::string hex_color(const Rgb& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
    return buf;
}

inline void write_svg(std::ostream& os, const LevelGraph& g, const EigenfunctionField& u, const SvgOptions& opt = {}) {
    check_level(g, u);
    double scale = 0.0;
    for (double v : u.values) scale = std::max(scale, std::abs(v));
    const double total = opt.size + 2 * opt.margin;
    const double r = opt.vertex_radius > 0 ? opt.vertex_radius : std::max(1.0, 8.0 / std::pow(2.0, g.level()));
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", x);
        return std::string(buf);
    };
    auto px = [&](VertexId v) {
        const auto [x, y] = g.point(v).to_double();
        return std::pair{opt.margin + x * opt.size, opt.margin + (1.0 - y) * opt.size};
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(total) << ' ' << fmt(total)
       << "\" width=\"" << fmt(total) << "\" height=\"" << fmt(total) << "\">\n";
    if (!opt.title.empty()) os << "<title>" << opt.title << "</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"#f4f4f4\"/>\n";
    os << "<g stroke=\"#777777\" stroke-width=\"" << fmt(r / 4) << "\">\n";
    for (const auto& [a, b] : g.edges()) {
        const auto [x1, y1] = px(a);
        const auto [x2, y2] = px(b);
        os << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
           << "\"/>\n";
    }
    os << "</g>\n<g stroke=\"#000000\" stroke-width=\"" << fmt(r / 6) << "\">\n";
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto [x, y] = px(v);
        const double t = scale > 0 ? u[v] / scale : 0.0;
        os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << fmt(r) << "\" fill=\""
           << hex_color(diverging_color(t)) << "\"/>\n";
    }
    os << "</g>\n</svg>\n";
}

}  // namespace vicsek
