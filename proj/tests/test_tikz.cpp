#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "tikz_fixtures.hpp"

using namespace mapdraw;

namespace {

std::string read_golden(const std::string& name) {
    std::ifstream f(std::string(MAPDRAW_GOLDEN_DIR) + "/" + name, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + 1))
        ++n;
    return n;
}

} // namespace

TEST_CASE("side arc geometry") {
    SECTION("flattens as the polygon gains sides") {
        CHECK(side_arc_degrees(4) == Catch::Approx(66.8));
        CHECK(side_arc_degrees(8) == Catch::Approx(36.0));
        CHECK(side_arc_degrees(12) == Catch::Approx(24.0));
    }
    SECTION("interpolates the chord when flat") {
        Vec2 a{1.0, 0.0}, b{0.0, 1.0};
        Vec2 p = side_arc_point(a, b, 0.0, 0.25);
        CHECK(p.x == Catch::Approx(0.75));
        CHECK(p.y == Catch::Approx(0.25));
    }
    SECTION("hits the endpoints and bulges away from the origin") {
        Vec2 a{0.0, 1.0}, b{1.0, 0.0};
        double theta = side_arc_degrees(4);
        CHECK(distance(side_arc_point(a, b, theta, 0.0), a) < 1e-12);
        CHECK(distance(side_arc_point(a, b, theta, 1.0), b) < 1e-12);
        Vec2 apex = side_arc_point(a, b, theta, 0.5);
        Vec2 mid = (a + b) * 0.5;
        // sagitta of a 66.8 degree arc is 15 percent of the chord
        CHECK(distance(apex, mid) == Catch::Approx(0.15 * distance(a, b)).margin(1e-3));
        CHECK(norm(apex) > norm(mid));
        for (int i = 1; i < 8; ++i) {
            Vec2 p = side_arc_point(a, b, theta, i / 8.0);
            CHECK(norm(p) > norm(mid) - 1e-12);
            CHECK(norm(p) < 1.0 + 1e-12); // stays inside the corner circle
        }
    }
}

TEST_CASE("fundamental polygon serialization") {
    Scene sc = fixtures::fundamental_scene();
    DrawSpec spec = parse_options({"i", "d", "4", "lightgray"});
    std::string out = emit_fundamental(sc, spec);

    SECTION("matches the frozen snapshot byte for byte") {
        CHECK(out == read_golden("fundamental.tex"));
    }
    SECTION("is deterministic") { CHECK(out == emit_fundamental(sc, spec)); }
    SECTION("draws every vertex number exactly once per drawn copy") {
        CHECK(count_occurrences(out, "(v1)") >= 1);
        CHECK(count_occurrences(out, "\\node[vtx] (v1) at") == 1);
        CHECK(count_occurrences(out, "\\node[vtx, fill=lightgray] (v2) at") == 1);
        CHECK(count_occurrences(out, "\\node[vtx, fill=lightgray] (v2c1) at") == 1);
        CHECK(count_occurrences(out, "\\node[vtx] (v3) at") == 1);
    }
    SECTION("colours each identification pair consistently") {
        CHECK(count_occurrences(out, "\\draw[red, ->]") == 2);
        CHECK(count_occurrences(out, "\\draw[blue, ->]") == 2);
        CHECK(count_occurrences(out, "\\draw[red]") == 2);
        CHECK(count_occurrences(out, "\\draw[blue]") == 2);
    }
    SECTION("labels boundary crossings in the side colour") {
        CHECK(count_occurrences(out, "xlb, text=red") == 4);
        CHECK(count_occurrences(out, "xlb, text=blue") == 2);
    }
    SECTION("prints corner stubs and the count line") {
        CHECK(out.find("\\node[xlb] at (0.0000,5.5000) {2};") != std::string::npos);
        CHECK(out.find("edges: 9, vertices: 3, faces: 6, genus: 1") != std::string::npos);
    }
    SECTION("straight sides use chords") {
        std::string flat =
            emit_fundamental(fixtures::fundamental_scene(true), parse_options({"i", "s"}));
        CHECK(flat == read_golden("fundamental_straight.tex"));
        CHECK(flat.find("bend") == std::string::npos);
    }
    SECTION("rejects scenes of another mode") {
        CHECK_THROWS_AS(emit_disjoint(sc, spec), std::invalid_argument);
        CHECK_THROWS_AS(emit_plane(sc, spec), std::invalid_argument);
    }
}

TEST_CASE("letter labeled sides") {
    Scene sc = fixtures::fundamental_scene();
    SECTION("option b replaces colours with letters") {
        std::string out = emit_fundamental(sc, parse_options({"b"}));
        CHECK(out.find("red") == std::string::npos);
        CHECK(out.find("blue") == std::string::npos);
        CHECK(count_occurrences(out, "{A}") == 2);
        CHECK(count_occurrences(out, "{B}") == 2);
        CHECK(count_occurrences(out, "\\draw[->]") == 4);
    }
    SECTION("letters switch on by themselves past the palette") {
        sc.pair_count = 7;
        std::string out = emit_fundamental(sc, parse_options({}));
        CHECK(out.find("red") == std::string::npos);
        CHECK(count_occurrences(out, "{A}") == 2);
    }
    SECTION("pairs past Z spill into double letters") {
        CHECK(detail::pair_letter(0) == "A");
        CHECK(detail::pair_letter(25) == "Z");
        CHECK(detail::pair_letter(26) == "AA");
        CHECK(detail::pair_letter(27) == "AB");
    }
}

TEST_CASE("disjoint cycle serialization") {
    Scene sc = fixtures::disjoint_scene();
    DrawSpec spec = parse_options({"-T", "i"});
    std::string out = emit_disjoint(sc, spec);

    SECTION("matches the frozen snapshot byte for byte") {
        CHECK(out == read_golden("disjoint.tex"));
    }
    SECTION("draws each cut face pair dashed in its colour") {
        CHECK(count_occurrences(out, "\\draw[red, densely dashed]") == 1);
        CHECK(count_occurrences(out, "\\draw[blue, densely dashed]") == 1);
        CHECK(count_occurrences(out, "cycle;") == 2);
    }
    SECTION("prints the far endpoint inside a dual loop") {
        CHECK(out.find("\\node[xlb, text=blue] at (-1.0000,-3.5000) {2};") !=
              std::string::npos);
    }
    SECTION("rejects scenes of another mode") {
        CHECK_THROWS_AS(emit_fundamental(sc, spec), std::invalid_argument);
    }
}

TEST_CASE("plane serialization") {
    Scene sc = fixtures::plane_scene();
    SECTION("matches the frozen snapshot byte for byte") {
        std::string out = emit_plane(sc, parse_options({"i", "C"}));
        CHECK(out == read_golden("plane.tex"));
    }
    SECTION("outer edges stay straight without option C") {
        std::string out = emit_plane(sc, parse_options({}));
        CHECK(out.find("bend") == std::string::npos);
    }
    SECTION("rays point outward and carry the vertex at infinity") {
        std::string out = emit_plane(sc, parse_options({}));
        CHECK(count_occurrences(out, "\\draw[->] (v") == 3);
        CHECK(count_occurrences(out, "{4}") == 3);
    }
    SECTION("negative zero never reaches the output") {
        Scene tiny;
        tiny.mode = DrawMode::PlaneAuto;
        tiny.points.push_back({{-1e-9, -0.0}, NodeClass::Vertex, 1, -1, 0, 0});
        std::string out = emit_plane(tiny, parse_options({}));
        CHECK(out.find("-0.0000") == std::string::npos);
        CHECK(out.find("(0.0000,0.0000)") != std::string::npos);
    }
}

TEST_CASE("option parsing") {
    SECTION("defaults") {
        DrawSpec spec = parse_options({});
        CHECK(spec.mode == DrawMode::FundamentalPolygon);
        CHECK(spec.center == CenterPolicy::FaceDefault);
        CHECK_FALSE(spec.info);
        CHECK(spec.quality_threshold < 0.0);
    }
    SECTION("bare word flags combine") {
        DrawSpec spec = parse_options({"-T", "i", "b", "s", "e", "NE", "2", "5"});
        CHECK(spec.mode == DrawMode::Disjoint);
        CHECK(spec.info);
        CHECK(spec.letter_labels);
        CHECK(spec.straight_sides);
        CHECK(spec.center == CenterPolicy::Edge);
        REQUIRE(spec.forbidden_edges.size() == 1);
        CHECK(spec.forbidden_edges[0].first == 2);
        CHECK(spec.forbidden_edges[0].second == 5);
    }
    SECTION("fixed centers capture their arguments") {
        DrawSpec f = parse_options({"cf", "7", "2"});
        CHECK(f.center == CenterPolicy::FaceFixed);
        CHECK(f.cf_x == 7);
        CHECK(f.cf_y == 2);
        DrawSpec e = parse_options({"ce", "1", "4"});
        CHECK(e.center == CenterPolicy::EdgeFixed);
        DrawSpec v = parse_options({"cv", "3"});
        CHECK(v.center == CenterPolicy::VertexFixed);
        CHECK(v.cv_x == 3);
        DrawSpec vc = parse_options({"V", "NV", "6"});
        CHECK(vc.center == CenterPolicy::VertexCutting);
        REQUIRE(vc.forbidden_vertices.size() == 1);
        CHECK(vc.forbidden_vertices[0] == 6);
    }
    SECTION("repeated non-fixing center flags are idempotent") {
        CHECK(parse_options({"e", "e"}).center == CenterPolicy::Edge);
        CHECK(parse_options({"e", "ce", "1", "2"}).center == CenterPolicy::EdgeFixed);
        CHECK(parse_options({"v", "cv", "3"}).center == CenterPolicy::VertexFixed);
    }
    SECTION("conflicting centers are rejected") {
        CHECK_THROWS_AS(parse_options({"cf", "1", "2", "e"}), OptionError);
        CHECK_THROWS_AS(parse_options({"v", "V"}), OptionError);
        CHECK_THROWS_AS(parse_options({"cf", "1", "2", "cf", "3", "4"}), OptionError);
    }
    SECTION("malformed input is rejected") {
        CHECK_THROWS_AS(parse_options({"cf", "1"}), OptionError);
        CHECK_THROWS_AS(parse_options({"cf", "x", "2"}), OptionError);
        CHECK_THROWS_AS(parse_options({"--threshold"}), OptionError);
        CHECK_THROWS_AS(parse_options({"--threshold", "-1"}), OptionError);
        CHECK_THROWS_AS(parse_options({"--threshold", "0.5x"}), OptionError);
        CHECK_THROWS_AS(parse_options({"frobnicate"}), OptionError);
        CHECK_THROWS_AS(parse_options({"d", "3"}), OptionError);
    }
    SECTION("remaining toggles") {
        DrawSpec spec = parse_options({"C", "O", "if", "--ascii", "--threshold", "0.45"});
        CHECK(spec.curved_outer);
        CHECK(spec.vertex_at_infinity);
        CHECK(spec.maximize_interior_faces);
        CHECK(spec.force_ascii);
        CHECK(spec.quality_threshold == Catch::Approx(0.45));
    }
}
