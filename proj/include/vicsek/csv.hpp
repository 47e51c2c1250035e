#pragma once

// CSV export of level graphs and fields.
//   vertices: id,x_num,x_den,y_num,y_den,degree,is_boundary[,value]
//   edges:    source,target

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "error.hpp"
#include "graph.hpp"

namespace vicsek {

inline constexpr int kCsvSchemaVersion = 1;

/// Shortest text that reads back to the same double.
inline std::string format_value(double v) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline void write_vertex_csv(std::ostream& os, const LevelGraph& g, const EigenfunctionField* u = nullptr) {
    if (u) check_level(g, *u);
    os << "id,x_num,x_den,y_num,y_den,degree,is_boundary";
    if (u) os << ",value";
    os << '\n';
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        const auto p = g.point(v);
        os << v << ',' << p.x.numerator() << ',' << p.x.denominator() << ',' << p.y.numerator() << ','
           << p.y.denominator() << ',' << g.degree(v) << ',' << (g.is_boundary(v) ? 1 : 0);
        if (u) os << ',' << format_value((*u)[v]);
        os << '\n';
    }
}

inline void write_edge_csv(std::ostream& os, const LevelGraph& g) {
    os << "source,target\n";
    for (const auto& [a, b] : g.edges()) os << a << ',' << b << '\n';
}

}  // namespace vicsek
