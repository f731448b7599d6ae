#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mapdraw/geometry.hpp"
#include "mapdraw/layout.hpp"
#include "mapdraw/map.hpp"
#include "support/corpus.hpp"

using mapdraw::Augmented;
using mapdraw::BoundaryPlacement;
using mapdraw::CombinatorialMap;
using mapdraw::DartMap;
using mapdraw::DrawingQuality;
using mapdraw::FaceSet;
using mapdraw::Normalized;
using mapdraw::QualityPoint;
using mapdraw::SceneSegment;
using mapdraw::Vec2;

namespace {

CombinatorialMap map_of(std::vector<std::vector<int>> one_based) {
    return CombinatorialMap::from_raw(corpus::raw_from(std::move(one_based)));
}

/// Square 1-2-3-4 with a path 1-5-6-7-3 drawn inside; faces {4, 6, 6}.
CombinatorialMap square_with_path() {
    return map_of({{2, 5, 4}, {3, 1}, {4, 7, 2}, {1, 3}, {1, 6}, {5, 7}, {6, 3}});
}

/// Two triangles 1-2-3 and 3-4-5 glued at vertex 3; faces {3, 3, 6}.
CombinatorialMap two_triangles() {
    return map_of({{2, 3}, {3, 1}, {2, 1, 5, 4}, {5, 3}, {3, 4}});
}

int dart_of_face_size(const DartMap& m, int size) {
    FaceSet fs = mapdraw::trace_faces(m);
    for (int f = 0; f < fs.count(); ++f)
        if (fs.size(f) == size) return fs.face_darts[static_cast<std::size_t>(f)].front();
    return -1;
}

bool simple_underlying_graph(const DartMap& m) {
    std::vector<std::pair<int, int>> ends;
    for (int d = 0; d < m.dart_count(); ++d) {
        if (d > m.twin[static_cast<std::size_t>(d)]) continue;
        int u = m.origin[static_cast<std::size_t>(d)];
        int w = m.head(d);
        if (u == w) return false;
        ends.push_back({std::min(u, w), std::max(u, w)});
    }
    std::sort(ends.begin(), ends.end());
    return std::adjacent_find(ends.begin(), ends.end()) == ends.end();
}

double tutte_residual(const DartMap& m, const std::vector<Vec2>& pos,
                      const std::vector<char>& fixed) {
    double worst = 0.0;
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (fixed[static_cast<std::size_t>(v)] || m.degree(v) == 0) continue;
        Vec2 acc{0.0, 0.0};
        int deg = 0;
        for (int d : m.rotation(v)) {
            acc += pos[static_cast<std::size_t>(m.head(d))];
            ++deg;
        }
        worst = std::max(worst, distance(pos[static_cast<std::size_t>(v)],
                                         acc * (1.0 / deg)));
    }
    return worst;
}

/// Sum of squared deviations of interior face areas from their common target.
double area_variance(const DartMap& m, int outer_dart, const std::vector<Vec2>& pos,
                     const std::vector<Vec2>& polygon) {
    FaceSet fs = mapdraw::trace_faces(m);
    int outer = fs.face_of[static_cast<std::size_t>(outer_dart)];
    std::vector<double> areas;
    for (int f = 0; f < fs.count(); ++f) {
        if (f == outer) continue;
        double acc = 0.0;
        const std::vector<int>& orbit = fs.face_darts[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < orbit.size(); ++i) {
            Vec2 p = pos[static_cast<std::size_t>(m.origin[static_cast<std::size_t>(orbit[i])])];
            Vec2 q = pos[static_cast<std::size_t>(
                m.origin[static_cast<std::size_t>(orbit[(i + 1) % orbit.size()])])];
            acc += cross(p, q);
        }
        areas.push_back(std::abs(acc / 2.0));
    }
    double target = std::abs(mapdraw::polygon_signed_area(polygon)) /
                    static_cast<double>(areas.size());
    double var = 0.0;
    for (double a : areas) var += (a - target) * (a - target);
    return var;
}

/// Normalize, augment, pin the outer walk and solve; the plumbing every
/// plane drawing shares.
struct PlaneRun {
    Normalized nz;
    Augmented aug;
    BoundaryPlacement bp;
    std::vector<Vec2> pos;
};

PlaneRun run_plane_layout(const CombinatorialMap& m, int outer_dart,
                          const mapdraw::LayoutParams& params = {}) {
    PlaneRun r;
    r.nz = mapdraw::normalize_edges(m.darts());
    r.aug = mapdraw::augment_to_three_connected(r.nz.map, outer_dart);
    r.bp = mapdraw::place_outer_walk(r.aug.map, r.aug.outer_dart);
    r.pos = mapdraw::tutte_positions(r.aug.map, r.bp.pos, r.bp.fixed, params);
    return r;
}

} // namespace

TEST_CASE("edge normalization leaves simple maps untouched") {
    CombinatorialMap m = corpus::cube_map();
    Normalized nz = mapdraw::normalize_edges(m.darts());
    CHECK(nz.base_vertices == 8);
    CHECK(nz.map.vertex_count() == 8);
    CHECK(nz.map.dart_count() == m.darts().dart_count());
    for (int d = 0; d < m.darts().dart_count(); ++d) {
        REQUIRE(nz.chain[static_cast<std::size_t>(d)].size() == 2);
        CHECK(nz.chain[static_cast<std::size_t>(d)].front() == m.origin(d));
        CHECK(nz.chain[static_cast<std::size_t>(d)].back() == m.head(d));
    }
}

TEST_CASE("loops and parallel edges get bend vertices") {
    SECTION("a double edge becomes a four-cycle") {
        CombinatorialMap m = corpus::from_ascii_one(corpus::double_edge_ascii());
        Normalized nz = mapdraw::normalize_edges(m.darts());
        CHECK(nz.base_vertices == 2);
        CHECK(nz.map.vertex_count() == 4);
        CHECK(simple_underlying_graph(nz.map));
        CHECK(mapdraw::euler_info(nz.map).genus == 0);
        for (int d = 0; d < 4; ++d) {
            const std::vector<int>& c = nz.chain[static_cast<std::size_t>(d)];
            REQUIRE(c.size() == 3);
            CHECK(c[1] >= 2); // the bend is a fresh vertex
            std::vector<int> rev(c.rbegin(), c.rend());
            CHECK(nz.chain[static_cast<std::size_t>(m.twin(d))] == rev);
        }
    }
    SECTION("a loop becomes a triangle") {
        CombinatorialMap m = corpus::from_ascii_one("1 1 1 0\n");
        Normalized nz = mapdraw::normalize_edges(m.darts());
        CHECK(nz.map.vertex_count() == 3);
        CHECK(nz.map.dart_count() == 6);
        CHECK(simple_underlying_graph(nz.map));
        CHECK(mapdraw::euler_info(nz.map).genus == 0);
        const std::vector<int>& c = nz.chain[0];
        REQUIRE(c.size() == 4);
        CHECK(c.front() == 0);
        CHECK(c.back() == 0);
        CHECK(c[1] != c[2]);
    }
}

TEST_CASE("three-connectivity recognizes the classics") {
    CHECK(mapdraw::is_three_connected(corpus::cube_map().darts()));
    CHECK(mapdraw::is_three_connected(corpus::wheel_map(5).darts()));
    CHECK(mapdraw::is_three_connected(corpus::complete_graph_with_faces(4, 4).darts()));
    CHECK(mapdraw::is_three_connected(
        corpus::from_ascii_one(corpus::triangle_ascii()).darts()));
    CHECK_FALSE(mapdraw::is_three_connected(
        map_of({{2, 4}, {3, 1}, {4, 2}, {1, 3}}).darts()));
    CHECK_FALSE(mapdraw::is_three_connected(square_with_path().darts()));
    CHECK_FALSE(mapdraw::is_three_connected(two_triangles().darts()));
}

TEST_CASE("separator detection flags exactly the fragile vertices") {
    std::vector<char> flags = mapdraw::separator_vertices(square_with_path().darts());
    CHECK(flags == std::vector<char>{1, 0, 1, 0, 1, 1, 1});

    std::vector<char> cut = mapdraw::separator_vertices(two_triangles().darts());
    CHECK(cut[2] == 1); // the shared vertex alone separates the triangles

    std::vector<char> none = mapdraw::separator_vertices(corpus::cube_map().darts());
    CHECK(std::count(none.begin(), none.end(), 1) == 0);
}

TEST_CASE("augmentation stars interior faces until three-connected") {
    CombinatorialMap m = square_with_path();
    const DartMap& base = m.darts();
    int outer = dart_of_face_size(base, 4);
    REQUIRE(outer >= 0);
    std::vector<int> outer_walk = mapdraw::face_orbit(base, outer);

    Augmented aug = mapdraw::augment_to_three_connected(base, outer);
    CHECK(aug.first_new_vertex == 7);
    CHECK(aug.map.vertex_count() == 9); // one star per interior six-face
    CHECK(mapdraw::is_three_connected(aug.map));
    CHECK(mapdraw::euler_info(aug.map).genus == 0);
    // base darts and the outer walk survive untouched
    for (int d = 0; d < base.dart_count(); ++d) {
        CHECK(aug.map.origin[static_cast<std::size_t>(d)] ==
              base.origin[static_cast<std::size_t>(d)]);
        CHECK(aug.map.twin[static_cast<std::size_t>(d)] ==
              base.twin[static_cast<std::size_t>(d)]);
    }
    CHECK(mapdraw::face_orbit(aug.map, outer) == outer_walk);

    SECTION("an already sturdy map is left alone") {
        CombinatorialMap tri = corpus::plane_triangulation(12, 7);
        int od = tri.darts().vertex_dart[0];
        Augmented a2 = mapdraw::augment_to_three_connected(tri.darts(), od);
        CHECK(a2.map.vertex_count() == tri.vertex_count());
        CHECK(a2.map.dart_count() == tri.darts().dart_count());
    }
    SECTION("a cut vertex is absorbed") {
        CombinatorialMap tt = two_triangles();
        int od = dart_of_face_size(tt.darts(), 3);
        Augmented a3 = mapdraw::augment_to_three_connected(tt.darts(), od);
        CHECK(mapdraw::is_three_connected(a3.map));
        CHECK(mapdraw::euler_info(a3.map).genus == 0);
    }
}

TEST_CASE("boundary pinning spreads a walk around a polygon") {
    CombinatorialMap m = corpus::cube_map();
    int outer = dart_of_face_size(m.darts(), 4);
    BoundaryPlacement bp = mapdraw::place_outer_walk(m.darts(), outer);
    REQUIRE(bp.polygon.size() == 4);
    CHECK(std::count(bp.fixed.begin(), bp.fixed.end(), 1) == 4);
    for (int v = 0; v < 8; ++v)
        if (bp.fixed[static_cast<std::size_t>(v)])
            CHECK(std::abs(norm(bp.pos[static_cast<std::size_t>(v)]) - 1.0) < 1e-12);
    CHECK(std::abs(bp.polygon[0].x) < 1e-12);
    CHECK(std::abs(bp.polygon[0].y - 1.0) < 1e-12);

    SECTION("a repeated walk vertex sits at the mean of its corners") {
        CombinatorialMap tt = two_triangles();
        int od = dart_of_face_size(tt.darts(), 6);
        BoundaryPlacement hex = mapdraw::place_outer_walk(tt.darts(), od);
        REQUIRE(hex.polygon.size() == 6);
        CHECK(std::count(hex.fixed.begin(), hex.fixed.end(), 1) == 5);
        // vertex 3 of the fixture is visited twice, three corners apart
        CHECK(norm(hex.pos[2]) < 1e-9);
        for (int v : {0, 1, 3, 4})
            CHECK(std::abs(norm(hex.pos[static_cast<std::size_t>(v)]) - 1.0) < 1e-12);
    }
}

TEST_CASE("the hub of a wheel settles at the center") {
    CombinatorialMap m = corpus::wheel_map(4);
    int outer = dart_of_face_size(m.darts(), 4);
    BoundaryPlacement bp = mapdraw::place_outer_walk(m.darts(), outer);
    std::vector<Vec2> pos = mapdraw::tutte_positions(m.darts(), bp.pos, bp.fixed);
    CHECK(norm(pos[0]) < 1e-12);
    CHECK(tutte_residual(m.darts(), pos, bp.fixed) < 1e-9);
    CHECK(mapdraw::layout_valid(m.darts(), pos, bp.fixed, bp.polygon));
}

TEST_CASE("a lone interior vertex lands on the barycenter of its neighbors") {
    CombinatorialMap m = corpus::complete_graph_with_faces(4, 4);
    FaceSet fs = mapdraw::trace_faces(m);
    const std::vector<int>& walk = fs.face_darts[0];
    REQUIRE(walk.size() == 3);
    std::vector<char> fixed(4, 0);
    std::vector<Vec2> pos(4);
    std::vector<Vec2> corners{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    int interior = 0 + 1 + 2 + 3;
    for (std::size_t i = 0; i < 3; ++i) {
        int v = m.origin(walk[i]);
        fixed[static_cast<std::size_t>(v)] = 1;
        pos[static_cast<std::size_t>(v)] = corners[i];
        interior -= v;
    }
    pos = mapdraw::tutte_positions(m.darts(), pos, fixed);
    CHECK(std::abs(pos[static_cast<std::size_t>(interior)].x - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(pos[static_cast<std::size_t>(interior)].y - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("direct and sweeping solves agree") {
    CombinatorialMap m = corpus::plane_triangulation(15, 3);
    int outer = dart_of_face_size(m.darts(), 3);
    BoundaryPlacement bp = mapdraw::place_outer_walk(m.darts(), outer);

    std::vector<Vec2> direct = mapdraw::tutte_positions(m.darts(), bp.pos, bp.fixed);
    mapdraw::LayoutParams sweep;
    sweep.dense_limit = 0;
    std::vector<Vec2> iterated = mapdraw::tutte_positions(m.darts(), bp.pos, bp.fixed, sweep);

    CHECK(tutte_residual(m.darts(), direct, bp.fixed) < 1e-9);
    CHECK(tutte_residual(m.darts(), iterated, bp.fixed) < 1e-9);
    for (int v = 0; v < m.vertex_count(); ++v)
        CHECK(distance(direct[static_cast<std::size_t>(v)],
                       iterated[static_cast<std::size_t>(v)]) < 1e-8);
}

TEST_CASE("plane layouts of classic maps are crossing-free") {
    struct Case {
        const char* name;
        CombinatorialMap map;
        int outer_size;
    };
    std::vector<Case> cases;
    cases.push_back({"cube", corpus::cube_map(), 4});
    cases.push_back({"wheel", corpus::wheel_map(6), 6});
    cases.push_back({"double wheel", corpus::double_wheel_map(5), 3});
    cases.push_back({"triangulation", corpus::plane_triangulation(10, 5), 3});
    cases.push_back({"square with path", square_with_path(), 4});
    cases.push_back({"two triangles", two_triangles(), 3});
    for (Case& c : cases) {
        INFO(c.name);
        int outer = dart_of_face_size(c.map.darts(), c.outer_size);
        REQUIRE(outer >= 0);
        PlaneRun r = run_plane_layout(c.map, outer);
        CHECK(mapdraw::is_three_connected(r.aug.map));
        CHECK(tutte_residual(r.aug.map, r.pos, r.bp.fixed) < 1e-9);
        CHECK(mapdraw::layout_valid(r.aug.map, r.pos, r.bp.fixed, r.bp.polygon));
    }
}

TEST_CASE("spring refinement is a no-op at a symmetric fixed point") {
    CombinatorialMap m = corpus::wheel_map(4);
    int outer = dart_of_face_size(m.darts(), 4);
    BoundaryPlacement bp = mapdraw::place_outer_walk(m.darts(), outer);
    std::vector<Vec2> pos = mapdraw::tutte_positions(m.darts(), bp.pos, bp.fixed);
    std::vector<Vec2> before = pos;
    mapdraw::spring_refine(m.darts(), outer, pos, bp.fixed, bp.polygon);
    for (std::size_t v = 0; v < pos.size(); ++v)
        CHECK(distance(pos[v], before[v]) < 1e-12);

    SECTION("zero iterations change nothing") {
        mapdraw::LayoutParams params;
        params.spring_iterations = 0;
        std::vector<Vec2> frozen = before;
        mapdraw::spring_refine(m.darts(), outer, frozen, bp.fixed, bp.polygon, params);
        for (std::size_t v = 0; v < frozen.size(); ++v) {
            CHECK(frozen[v].x == before[v].x);
            CHECK(frozen[v].y == before[v].y);
        }
    }
}

TEST_CASE("spring refinement evens out lopsided faces") {
    CombinatorialMap m = corpus::cube_map();
    int outer = dart_of_face_size(m.darts(), 4);
    PlaneRun r = run_plane_layout(m, outer);
    double before = area_variance(r.aug.map, r.aug.outer_dart, r.pos, r.bp.polygon);
    std::vector<Vec2> pinned;
    for (int v = 0; v < r.aug.map.vertex_count(); ++v)
        if (r.bp.fixed[static_cast<std::size_t>(v)])
            pinned.push_back(r.pos[static_cast<std::size_t>(v)]);

    mapdraw::spring_refine(r.aug.map, r.aug.outer_dart, r.pos, r.bp.fixed, r.bp.polygon);

    double after = area_variance(r.aug.map, r.aug.outer_dart, r.pos, r.bp.polygon);
    CHECK(after < before);
    CHECK(mapdraw::layout_valid(r.aug.map, r.pos, r.bp.fixed, r.bp.polygon));
    std::size_t at = 0;
    for (int v = 0; v < r.aug.map.vertex_count(); ++v)
        if (r.bp.fixed[static_cast<std::size_t>(v)]) {
            CHECK(r.pos[static_cast<std::size_t>(v)].x == pinned[at].x);
            CHECK(r.pos[static_cast<std::size_t>(v)].y == pinned[at].y);
            ++at;
        }
}

TEST_CASE("segment compatibility tells contacts from crossings") {
    SceneSegment s{{0.0, 0.0}, {2.0, 0.0}, 0, 1};
    CHECK(mapdraw::segments_compatible(s, {{2.0, 0.0}, {3.0, 1.0}, 1, 2}));
    CHECK(mapdraw::segments_compatible(s, {{0.0, 1.0}, {2.0, 1.0}, 2, 3}));
    // shared endpoint but collinear overlap
    CHECK_FALSE(mapdraw::segments_compatible(s, {{2.0, 0.0}, {0.5, 0.0}, 1, 2}));
    // proper crossing with no shared ids
    CHECK_FALSE(mapdraw::segments_compatible({{0.0, -1.0}, {1.0, 1.0}, 2, 3},
                                             {{0.0, 1.0}, {1.0, -1.0}, 4, 5}));
    // a foreign endpoint resting mid-segment
    CHECK_FALSE(mapdraw::segments_compatible(s, {{1.0, 0.0}, {1.0, 1.0}, 2, 3}));
    // the same edge drawn twice
    CHECK_FALSE(mapdraw::segments_compatible(s, {{2.0, 0.0}, {0.0, 0.0}, 1, 0}));
}

TEST_CASE("layout validity catches crossings and escapes") {
    CombinatorialMap m = corpus::complete_graph_with_faces(4, 4);
    std::vector<Vec2> polygon{{-5.0, -5.0}, {5.0, -5.0}, {5.0, 5.0}, {-5.0, 5.0}};
    std::vector<char> all_fixed(4, 1);
    std::vector<Vec2> crossing{{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    CHECK_FALSE(mapdraw::layout_valid(m.darts(), crossing, all_fixed, polygon));

    std::vector<char> one_free{1, 1, 1, 0};
    std::vector<Vec2> good{{0.0, 0.0}, {4.0, 0.0}, {0.0, 4.0}, {1.0, 1.0}};
    CHECK(mapdraw::layout_valid(m.darts(), good, one_free, polygon));

    std::vector<Vec2> escaped{{0.0, 0.0}, {4.0, 0.0}, {0.0, 4.0}, {6.0, 6.0}};
    CHECK_FALSE(mapdraw::layout_valid(m.darts(), escaped, one_free, polygon));
}

TEST_CASE("quality measures match a hand count") {
    SECTION("two bare points") {
        std::vector<QualityPoint> pts{{{0.0, 0.0}, 0}, {{3.0, 4.0}, 1}};
        DrawingQuality q = mapdraw::measure_quality(pts, {}, 2.0);
        CHECK(q.min_vertex_vertex == 5.0);
        CHECK(q.score == 2.5);
    }
    SECTION("a unit square with its center") {
        std::vector<QualityPoint> pts{{{0.0, 0.0}, 0}, {{1.0, 0.0}, 1},
                                      {{1.0, 1.0}, 2}, {{0.0, 1.0}, 3},
                                      {{0.5, 0.5}, 4}};
        std::vector<SceneSegment> segs{{{0.0, 0.0}, {1.0, 0.0}, 0, 1},
                                       {{1.0, 0.0}, {1.0, 1.0}, 1, 2},
                                       {{1.0, 1.0}, {0.0, 1.0}, 2, 3},
                                       {{0.0, 1.0}, {0.0, 0.0}, 3, 0}};
        DrawingQuality q = mapdraw::measure_quality(pts, segs, 1.0);
        CHECK(std::abs(q.min_vertex_vertex - std::sqrt(2.0) / 2.0) < 1e-12);
        CHECK(std::abs(q.min_vertex_edge - 0.5) < 1e-12);
        CHECK(std::abs(q.score - 0.5) < 1e-12);
    }
}

TEST_CASE("quality agrees with an independent tally on random scenes") {
    corpus::Rng rng(2026);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 3 + rng.below(8);
        std::vector<QualityPoint> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back({{(rng.below(2001) - 1000) / 100.0,
                            (rng.below(2001) - 1000) / 100.0},
                           i});
        std::vector<SceneSegment> segs;
        int e = 1 + rng.below(6);
        for (int k = 0; k < e; ++k) {
            int i = rng.below(n);
            int j = rng.below(n);
            if (i == j) continue;
            segs.push_back({pts[static_cast<std::size_t>(i)].p,
                            pts[static_cast<std::size_t>(j)].p, i, j});
        }
        DrawingQuality q = mapdraw::measure_quality(pts, segs, 1.0);

        double vv = std::numeric_limits<double>::infinity();
        double ve = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                double dx = pts[i].p.x - pts[j].p.x;
                double dy = pts[i].p.y - pts[j].p.y;
                vv = std::min(vv, std::sqrt(dx * dx + dy * dy));
            }
        for (const QualityPoint& pt : pts)
            for (const SceneSegment& s : segs) {
                if (pt.id == s.va || pt.id == s.vb) continue;
                double vx = s.b.x - s.a.x, vy = s.b.y - s.a.y;
                double len2 = vx * vx + vy * vy;
                double t = len2 == 0.0 ? 0.0
                                       : ((pt.p.x - s.a.x) * vx + (pt.p.y - s.a.y) * vy) / len2;
                t = std::min(1.0, std::max(0.0, t));
                double dx = s.a.x + t * vx - pt.p.x;
                double dy = s.a.y + t * vy - pt.p.y;
                ve = std::min(ve, std::sqrt(dx * dx + dy * dy));
            }
        CHECK(std::abs(q.min_vertex_vertex - vv) < 1e-12);
        if (std::isfinite(ve)) CHECK(std::abs(q.min_vertex_edge - ve) < 1e-12);
        CHECK(std::abs(q.score - std::min(vv, ve)) < 1e-12);
    }
}

TEST_CASE("a removed vertex leaves rays and a merged outer face") {
    SECTION("tetrahedron") {
        CombinatorialMap m = corpus::complete_graph_with_faces(4, 4);
        auto scene = mapdraw::remove_vertex_to_infinity(m, 3);
        REQUIRE(scene.has_value());
        CHECK(scene->map.vertex_count() == 3);
        CHECK(scene->map.darts().edge_count() == 3);
        CHECK(scene->orig_vertex == std::vector<int>{0, 1, 2});
        std::vector<int> rays = scene->ray_vertices;
        std::sort(rays.begin(), rays.end());
        CHECK(rays == std::vector<int>{0, 1, 2});
        CHECK(mapdraw::genus(scene->map) == 0);
    }
    SECTION("double wheel loses one apex") {
        CombinatorialMap m = corpus::double_wheel_map(5);
        for (int apex : {6, 0}) {
            auto scene = mapdraw::remove_vertex_to_infinity(m, apex);
            REQUIRE(scene.has_value());
            CHECK(scene->map.vertex_count() == 6);
            CHECK(scene->map.darts().edge_count() == 10);
            CHECK(scene->ray_vertices.size() == 5);
            // the five faces around the lost apex merge into the rim pentagon
            std::vector<int> merged =
                mapdraw::face_orbit(scene->map.darts(), scene->outer_dart);
            CHECK(merged.size() == 5);
        }
    }
    SECTION("positive genus refuses") {
        CombinatorialMap m = corpus::from_ascii_one(corpus::k33_torus_ascii());
        CHECK_FALSE(mapdraw::remove_vertex_to_infinity(m, 0).has_value());
    }
}
