#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapdraw/geometry.hpp"
#include "mapdraw/options.hpp"

namespace mapdraw {

/// How a drawn point is rendered: a numbered vertex circle, a numbered
/// crossing label, an anonymous boundary dot, or a bare polyline waypoint.
enum class NodeClass { Vertex, CrossLabel, CornerDot, Waypoint };

struct ScenePoint {
    Vec2 pos;
    NodeClass cls = NodeClass::Waypoint;
    int number = 0;     // printed 1-based number (Vertex and CrossLabel)
    int colour = -1;    // palette slot for crossing labels, -1 = black
    int copy = 0;       // disambiguates repeated copies of one vertex
    int degree = -1;    // degree in the input map (Vertex only)
    int stub_label = 0; // corner annotation: where the attached half leads
    Vec2 out_dir{0.0, 0.0}; // outward direction for corner annotations
};

struct SceneEdge {
    std::vector<int> pts; // waypoint chain, at least two entries
    int outer_bend = 0;   // nonzero: edge of the outer face, may be curved
};

/// One side of the fundamental polygon: corner, crossings in order, corner.
struct SceneSide {
    std::vector<int> pts;
    int pair = 0;          // identification pair, also the palette slot
    bool reversed = false; // identification arrow runs against point order
};

/// One dashed cut face as a closed walk of drawn points.
struct SceneCycle {
    std::vector<int> pts;
    int pair = 0;
    int loop_label = 0; // dual loops print the far endpoint inside instead
    Vec2 loop_center{0.0, 0.0};
};

struct SceneRay {
    int from = -1;  // drawn point the ray leaves
    int number = 0; // 1-based number of the vertex at infinity
    Vec2 dir{0.0, 0.0};
};

struct SceneInfo {
    int edges = 0;
    int vertices = 0;
    int faces = 0;
    int genus = 0;
};

/// A finished drawing: coordinates, render classes, and the mode-specific
/// boundary decorations, ready to serialize.
struct Scene {
    DrawMode mode = DrawMode::PlaneAuto;
    std::vector<ScenePoint> points;
    std::vector<SceneEdge> edges;
    std::vector<SceneSide> sides;
    std::vector<SceneCycle> cycles;
    std::vector<SceneRay> rays;
    SceneInfo info;
    int pair_count = 0;
};

inline constexpr double kTikzScale = 5.0;    // drawing units per layout unit
inline constexpr double kSideArcMaxDeg = 66.8; // full side bulge on a square
inline constexpr int kOuterBend = 25;        // degrees for curved outer edges

/// Central angle of the outward arc decorating each polygon side, flattened
/// on many-sided polygons so the bulges keep the boundary convex.
inline double side_arc_degrees(int sides) {
    if (sides < 3) return kSideArcMaxDeg;
    return std::min(kSideArcMaxDeg, 0.8 * 360.0 / sides);
}

/// Point at fraction t of the arc from a to b that bulges away from the
/// origin with the given central angle; theta_deg <= 0 walks the chord.
inline Vec2 side_arc_point(Vec2 a, Vec2 b, double theta_deg, double t) {
    if (theta_deg <= 0.0) return a + (b - a) * t;
    Vec2 mid = (a + b) * 0.5;
    double half = distance(a, b) * 0.5;
    if (half < kGeomEps) return a;
    double theta = theta_deg * std::numbers::pi / 180.0;
    double r = half / std::sin(theta / 2.0);
    Vec2 n{-(b - a).y, (b - a).x};
    n = n * (1.0 / norm(n));
    if (dot(n, mid) < 0.0) n = n * -1.0;
    Vec2 center = mid - n * (r * std::cos(theta / 2.0));
    double a0 = std::atan2(a.y - center.y, a.x - center.x);
    double sweep = std::atan2(b.y - center.y, b.x - center.x) - a0;
    while (sweep > std::numbers::pi) sweep -= 2.0 * std::numbers::pi;
    while (sweep < -std::numbers::pi) sweep += 2.0 * std::numbers::pi;
    double ang = a0 + sweep * t;
    return center + Vec2{std::cos(ang), std::sin(ang)} * r;
}

inline const std::array<std::string, 6>& side_palette() {
    static const std::array<std::string, 6> palette = {"red",    "blue",   "green",
                                                       "orange", "violet", "teal"};
    return palette;
}

namespace detail {

inline std::string fmt(double v) {
    double s = v * kTikzScale;
    if (std::abs(s) < 5e-5) s = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", s);
    return buf;
}

inline std::string coord(Vec2 p) { return "(" + fmt(p.x) + "," + fmt(p.y) + ")"; }

/// A,...,Z,AA,AB,... for identification pairs past the palette.
inline std::string pair_letter(int pair) {
    std::string s;
    int p = pair;
    do {
        s.insert(s.begin(), static_cast<char>('A' + p % 26));
        p = p / 26 - 1;
    } while (p >= 0);
    return s;
}

/// Stable node names: vertices by their printed number (copies suffixed),
/// crossings and corners by running count.
inline std::vector<std::string> point_names(const Scene& sc) {
    std::vector<std::string> names(sc.points.size());
    int crossings = 0, corners = 0;
    for (std::size_t i = 0; i < sc.points.size(); ++i) {
        const ScenePoint& pt = sc.points[i];
        switch (pt.cls) {
        case NodeClass::Vertex:
            names[i] = "v" + std::to_string(pt.number);
            if (pt.copy > 0) names[i] += "c" + std::to_string(pt.copy);
            break;
        case NodeClass::CrossLabel: names[i] = "x" + std::to_string(++crossings); break;
        case NodeClass::CornerDot: names[i] = "c" + std::to_string(++corners); break;
        case NodeClass::Waypoint: break;
        }
    }
    return names;
}

inline std::string point_ref(const Scene& sc, const std::vector<std::string>& names, int i) {
    if (names[static_cast<std::size_t>(i)].empty())
        return coord(sc.points[static_cast<std::size_t>(i)].pos);
    return "(" + names[static_cast<std::size_t>(i)] + ")";
}

inline void emit_points(const Scene& sc, const DrawSpec& spec, bool letters_on,
                        const std::vector<std::string>& names, std::string& out) {
    out += "% vertices and crossing labels\n";
    for (std::size_t i = 0; i < sc.points.size(); ++i) {
        const ScenePoint& pt = sc.points[i];
        switch (pt.cls) {
        case NodeClass::Vertex: {
            std::string style = "vtx";
            for (const DegreeColor& dc : spec.degree_colors)
                if (dc.degree == pt.degree) {
                    style += ", fill=" + dc.colour;
                    break;
                }
            out += "\\node[" + style + "] (" + names[i] + ") at " + coord(pt.pos) + " {" +
                   std::to_string(pt.number) + "};\n";
            break;
        }
        case NodeClass::CrossLabel: {
            std::string style = "xlb";
            if (!letters_on && pt.colour >= 0)
                style += ", text=" + side_palette()[static_cast<std::size_t>(pt.colour) %
                                                    side_palette().size()];
            out += "\\node[" + style + "] (" + names[i] + ") at " + coord(pt.pos) + " {" +
                   std::to_string(pt.number) + "};\n";
            break;
        }
        case NodeClass::CornerDot: {
            out += "\\node[cnr] (" + names[i] + ") at " + coord(pt.pos) + " {};\n";
            if (pt.stub_label > 0)
                out += "\\node[xlb] at " + coord(pt.pos + pt.out_dir * 0.1) + " {" +
                       std::to_string(pt.stub_label) + "};\n";
            break;
        }
        case NodeClass::Waypoint: break;
        }
    }
}

inline void emit_edges(const Scene& sc, const DrawSpec& spec,
                       const std::vector<std::string>& names, std::string& out) {
    if (sc.edges.empty()) return;
    out += "% edges\n";
    for (const SceneEdge& e : sc.edges) {
        std::string path = point_ref(sc, names, e.pts.front());
        if (spec.curved_outer && e.outer_bend != 0 && e.pts.size() == 2) {
            path += e.outer_bend > 0 ? " to[bend left=" : " to[bend right=";
            path += std::to_string(kOuterBend) + "] " + point_ref(sc, names, e.pts[1]);
        } else {
            for (std::size_t i = 1; i < e.pts.size(); ++i)
                path += " -- " + point_ref(sc, names, e.pts[i]);
        }
        out += "\\draw " + path + ";\n";
    }
}

/// Draws one polygon side through its boundary crossings with the
/// identification arrowhead at the middle; arcs bulge outward, option s
/// keeps the chord.
inline void emit_sides(const Scene& sc, const DrawSpec& spec, bool letters_on,
                       const std::vector<std::string>& names, std::string& out) {
    out += "% polygon boundary\n";
    const double theta =
        spec.straight_sides ? 0.0 : side_arc_degrees(static_cast<int>(sc.sides.size()));
    for (const SceneSide& side : sc.sides) {
        std::vector<int> pts = side.pts;
        if (side.reversed) std::reverse(pts.begin(), pts.end());
        Vec2 a = sc.points[static_cast<std::size_t>(pts.front())].pos;
        Vec2 b = sc.points[static_cast<std::size_t>(pts.back())].pos;
        const int k = static_cast<int>(pts.size()) - 1;
        const char* turn = cross(b - a, (a + b) * 0.5) > 0.0 ? "left" : "right";
        auto joint = [&](double deg) {
            if (theta <= 0.0) return std::string(" -- ");
            char buf[48];
            std::snprintf(buf, sizeof buf, " to[bend %s=%.1f] ", turn, deg);
            return std::string(buf);
        };
        std::string colour;
        if (!letters_on)
            colour = side_palette()[static_cast<std::size_t>(side.pair) % side_palette().size()];
        std::string arrow_opts = colour.empty() ? "[->] " : "[" + colour + ", ->] ";
        std::string plain_opts = colour.empty() ? " " : "[" + colour + "] ";
        double seg = theta / (2.0 * k); // tangent-chord angle per segment
        std::string first, second;
        if (k % 2 == 0) {
            // a crossing sits at the middle; the arrow lands on its border
            for (int i = 0; i <= k / 2; ++i) {
                if (i > 0) first += joint(seg);
                first += point_ref(sc, names, pts[static_cast<std::size_t>(i)]);
            }
            second = point_ref(sc, names, pts[static_cast<std::size_t>(k / 2)]);
            for (int i = k / 2 + 1; i <= k; ++i)
                second += joint(seg) + point_ref(sc, names, pts[static_cast<std::size_t>(i)]);
        } else {
            // split the middle segment at the apex of the side
            Vec2 apex = side_arc_point(a, b, theta, 0.5);
            int m = k / 2;
            for (int i = 0; i <= m; ++i) {
                if (i > 0) first += joint(seg);
                first += point_ref(sc, names, pts[static_cast<std::size_t>(i)]);
            }
            first += joint(seg / 2.0) + coord(apex);
            second = coord(apex);
            for (int i = m + 1; i <= k; ++i) {
                second += i == m + 1 ? joint(seg / 2.0) : joint(seg);
                second += point_ref(sc, names, pts[static_cast<std::size_t>(i)]);
            }
        }
        out += "\\draw" + arrow_opts + first + ";\n";
        out += "\\draw" + plain_opts + second + ";\n";
        if (letters_on) {
            Vec2 apex = side_arc_point(a, b, theta, 0.5);
            Vec2 outn = norm(apex) > kGeomEps ? apex * (1.0 / norm(apex)) : Vec2{0.0, 1.0};
            out += "\\node[xlb] at " + coord(apex + outn * 0.12) + " {" +
                   pair_letter(side.pair) + "};\n";
        }
    }
}

inline void emit_cycles(const Scene& sc, bool letters_on,
                        const std::vector<std::string>& names, std::string& out) {
    out += "% identified cut faces\n";
    for (const SceneCycle& cyc : sc.cycles) {
        std::string colour =
            letters_on
                ? std::string()
                : side_palette()[static_cast<std::size_t>(cyc.pair) % side_palette().size()] +
                      ", ";
        std::string path;
        for (int p : cyc.pts) path += point_ref(sc, names, p) + " -- ";
        out += "\\draw[" + colour + "densely dashed] " + path + "cycle;\n";
        Vec2 center{0.0, 0.0};
        for (int p : cyc.pts) center += sc.points[static_cast<std::size_t>(p)].pos;
        center = center * (1.0 / static_cast<double>(cyc.pts.size()));
        if (cyc.loop_label > 0) {
            std::string style = "xlb";
            if (!letters_on)
                style += ", text=" + side_palette()[static_cast<std::size_t>(cyc.pair) %
                                                    side_palette().size()];
            out += "\\node[" + style + "] at " + coord(cyc.loop_center) + " {" +
                   std::to_string(cyc.loop_label) + "};\n";
        }
        if (letters_on)
            out += "\\node[xlb] at " + coord(center) + " {" + pair_letter(cyc.pair) + "};\n";
    }
}

inline void emit_rays(const Scene& sc, const std::vector<std::string>& names, std::string& out) {
    out += "% edges toward the vertex at infinity\n";
    for (const SceneRay& ray : sc.rays) {
        Vec2 base = sc.points[static_cast<std::size_t>(ray.from)].pos;
        out += "\\draw[->] " + point_ref(sc, names, ray.from) + " -- " +
               coord(base + ray.dir * 0.45) + ";\n";
        out += "\\node[xlb] at " + coord(base + ray.dir * 0.58) + " {" +
               std::to_string(ray.number) + "};\n";
    }
}

inline void emit_info(const Scene& sc, std::string& out) {
    double lo = 0.0, hi = 0.0, left = 0.0;
    bool first = true;
    for (const ScenePoint& pt : sc.points) {
        if (first || pt.pos.y < lo) lo = pt.pos.y;
        if (first || pt.pos.x < left) left = pt.pos.x;
        if (first || pt.pos.x > hi) hi = pt.pos.x;
        first = false;
    }
    Vec2 at{(left + hi) / 2.0, lo - 0.7};
    out += "% counts\n";
    out += "\\node[anchor=north] at " + coord(at) + " {edges: " + std::to_string(sc.info.edges) +
           ", vertices: " + std::to_string(sc.info.vertices) +
           ", faces: " + std::to_string(sc.info.faces) +
           ", genus: " + std::to_string(sc.info.genus) + "};\n";
}

inline std::string emit_scene(const Scene& sc, const DrawSpec& spec) {
    const bool letters_on =
        spec.letter_labels || sc.pair_count > static_cast<int>(side_palette().size());
    std::string out;
    out += "\\def\\vertexscale{1.0}\n";
    out += "\\def\\labelscale{1.0}\n";
    out += "\\begin{tikzpicture}[\n";
    out += "  vtx/.style={circle, draw, fill=white, inner sep=1pt, minimum size=9pt, "
           "font=\\footnotesize, scale=\\vertexscale},\n";
    out += "  xlb/.style={fill=white, inner sep=1pt, font=\\scriptsize, scale=\\labelscale},\n";
    out += "  cnr/.style={circle, fill, inner sep=1.2pt}]\n";
    std::vector<std::string> names = point_names(sc);
    emit_points(sc, spec, letters_on, names, out);
    if (!sc.sides.empty()) emit_sides(sc, spec, letters_on, names, out);
    if (!sc.cycles.empty()) emit_cycles(sc, letters_on, names, out);
    emit_edges(sc, spec, names, out);
    if (!sc.rays.empty()) emit_rays(sc, names, out);
    if (spec.info) emit_info(sc, out);
    out += "\\end{tikzpicture}\n";
    return out;
}

} // namespace detail

/// Serializes a fundamental-polygon drawing: 4g identified sides with colour
/// pairs or letters, crossing labels on the boundary, everything else inside.
inline std::string emit_fundamental(const Scene& scene, const DrawSpec& spec) {
    if (scene.mode != DrawMode::FundamentalPolygon)
        throw std::invalid_argument("scene is not a fundamental-polygon drawing");
    return detail::emit_scene(scene, spec);
}

/// Serializes a disjoint-cycle drawing: dashed identified cut faces in shared
/// colours, destination labels on every crossing.
inline std::string emit_disjoint(const Scene& scene, const DrawSpec& spec) {
    if (scene.mode != DrawMode::Disjoint)
        throw std::invalid_argument("scene is not a disjoint-cycle drawing");
    return detail::emit_scene(scene, spec);
}

/// Serializes a plane drawing, including outward rays when one vertex was
/// placed at infinity.
inline std::string emit_plane(const Scene& scene, const DrawSpec& spec) {
    if (scene.mode != DrawMode::PlaneAuto)
        throw std::invalid_argument("scene is not a plane drawing");
    return detail::emit_scene(scene, spec);
}

} // namespace mapdraw
