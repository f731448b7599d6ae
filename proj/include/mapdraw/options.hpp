#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mapdraw {

enum class DrawMode { FundamentalPolygon, Disjoint, PlaneAuto };

/// Where the cutting cycles meet: a face chosen by the search or fixed by the
/// user, an edge midpoint, a vertex, or free vertex-cutting cycles.
enum class CenterPolicy {
    FaceDefault,
    FaceFixed,
    Edge,
    EdgeFixed,
    Vertex,
    VertexFixed,
    VertexCutting
};

struct DegreeColor {
    int degree = 0;
    std::string colour;
};

/// Everything the command line can request. Vertex numbers are kept 1-based
/// exactly as given and resolved against each map separately.
struct DrawSpec {
    DrawMode mode = DrawMode::FundamentalPolygon;
    CenterPolicy center = CenterPolicy::FaceDefault;
    int cf_x = -1, cf_y = -1;
    int ce_x = -1, ce_y = -1;
    int cv_x = -1;
    std::vector<std::pair<int, int>> forbidden_edges;
    std::vector<int> forbidden_vertices;
    std::vector<DegreeColor> degree_colors;
    bool letter_labels = false;
    bool info = false;
    bool straight_sides = false;
    bool curved_outer = false;
    bool vertex_at_infinity = false;
    bool maximize_interior_faces = false;
    double quality_threshold = -1.0; // negative: default 0.3 / sqrt(drawn points)
    bool force_ascii = false;
};

struct OptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string usage_text() {
    return "usage: mapdraw [options] < maps.pc > drawing.tex\n"
           "  if            prefer drawings keeping more faces uncut\n"
           "  cf x y        center the cut cycles in the face left of edge [x,y]\n"
           "  NE x y        never cut through edge {x,y} (repeatable)\n"
           "  b             label the polygon sides A,B,... instead of colours\n"
           "  d x colour    fill vertices of degree x with the given colour (repeatable)\n"
           "  i             write edge, vertex, face, and genus counts into the drawing\n"
           "  s             draw the polygon sides as straight segments\n"
           "  e             center the cut cycles on an edge midpoint\n"
           "  ce x y        center the cut cycles on the midpoint of edge {x,y}\n"
           "  v             center the cut cycles on a vertex\n"
           "  cv x          center the cut cycles on vertex x\n"
           "  V             allow cut cycles to pass through vertices\n"
           "  NV x          never cut through vertex x (repeatable)\n"
           "  C             draw outer edges curved to create room inside\n"
           "  O             place one vertex at infinity (plane maps only)\n"
           "  -T            cut along disjoint cycles instead of a fundamental polygon\n"
           "  --ascii       force ascii input\n"
           "  --threshold q accept the first drawing scoring at least q\n";
}

namespace detail {

inline int parse_count(const std::string& flag, const std::string& token) {
    if (token.empty()) throw OptionError("option " + flag + " needs a number");
    long v = 0;
    for (char c : token) {
        if (c < '0' || c > '9')
            throw OptionError("option " + flag + ": '" + token + "' is not a number");
        v = v * 10 + (c - '0');
        if (v > 1 << 20) throw OptionError("option " + flag + ": number out of range");
    }
    return static_cast<int>(v);
}

} // namespace detail

/// Parses the bare-word option list. Center choices are mutually exclusive
/// except for the fixing pairs e/ce and v/cv.
inline DrawSpec parse_options(const std::vector<std::string>& args) {
    DrawSpec spec;
    enum Cat { None, Face, Edge, Vertex, VertexCut } cat = None;
    bool fixed = false;
    auto claim = [&](Cat want, bool fix, const std::string& flag) {
        bool compatible = cat == None || (cat == want && !(fix && fixed));
        if (!compatible)
            throw OptionError("option " + flag + " conflicts with an earlier center choice");
        cat = want;
        fixed = fixed || fix;
    };

    std::size_t i = 0;
    auto next = [&](const std::string& flag) -> std::string {
        if (i >= args.size()) throw OptionError("option " + flag + " is missing an argument");
        return args[i++];
    };
    while (i < args.size()) {
        const std::string a = args[i++];
        if (a == "if") {
            spec.maximize_interior_faces = true;
        } else if (a == "cf") {
            claim(Face, true, a);
            spec.cf_x = detail::parse_count(a, next(a));
            spec.cf_y = detail::parse_count(a, next(a));
        } else if (a == "NE") {
            int x = detail::parse_count(a, next(a));
            int y = detail::parse_count(a, next(a));
            spec.forbidden_edges.emplace_back(x, y);
        } else if (a == "b") {
            spec.letter_labels = true;
        } else if (a == "d") {
            DegreeColor dc;
            dc.degree = detail::parse_count(a, next(a));
            dc.colour = next(a);
            if (dc.colour.empty()) throw OptionError("option d needs a colour name");
            spec.degree_colors.push_back(std::move(dc));
        } else if (a == "i") {
            spec.info = true;
        } else if (a == "s") {
            spec.straight_sides = true;
        } else if (a == "e") {
            claim(Edge, false, a);
        } else if (a == "ce") {
            claim(Edge, true, a);
            spec.ce_x = detail::parse_count(a, next(a));
            spec.ce_y = detail::parse_count(a, next(a));
        } else if (a == "v") {
            claim(Vertex, false, a);
        } else if (a == "cv") {
            claim(Vertex, true, a);
            spec.cv_x = detail::parse_count(a, next(a));
        } else if (a == "V") {
            claim(VertexCut, false, a);
        } else if (a == "NV") {
            spec.forbidden_vertices.push_back(detail::parse_count(a, next(a)));
        } else if (a == "C") {
            spec.curved_outer = true;
        } else if (a == "O") {
            spec.vertex_at_infinity = true;
        } else if (a == "-T") {
            spec.mode = DrawMode::Disjoint;
        } else if (a == "--ascii") {
            spec.force_ascii = true;
        } else if (a == "--threshold") {
            const std::string t = next(a);
            try {
                std::size_t used = 0;
                spec.quality_threshold = std::stod(t, &used);
                if (used != t.size()) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw OptionError("option --threshold: '" + t + "' is not a number");
            }
            if (spec.quality_threshold < 0.0)
                throw OptionError("option --threshold must not be negative");
        } else {
            throw OptionError("unknown option '" + a + "'\n" + usage_text());
        }
    }

    switch (cat) {
    case None: spec.center = CenterPolicy::FaceDefault; break;
    case Face: spec.center = CenterPolicy::FaceFixed; break;
    case Edge: spec.center = fixed ? CenterPolicy::EdgeFixed : CenterPolicy::Edge; break;
    case Vertex: spec.center = fixed ? CenterPolicy::VertexFixed : CenterPolicy::Vertex; break;
    case VertexCut: spec.center = CenterPolicy::VertexCutting; break;
    }
    return spec;
}

} // namespace mapdraw
