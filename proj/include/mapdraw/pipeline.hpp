#pragma once

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapdraw/cycles.hpp"
#include "mapdraw/layout.hpp"
#include "mapdraw/options.hpp"
#include "mapdraw/planarcode.hpp"
#include "mapdraw/tikz.hpp"

namespace mapdraw {

/// What drawing one map produced, plus the counters the stream reports.
struct DrawOutcome {
    std::string tikz;
    int attempts = 0;
    int systems = 0;
    double score = 0.0;
};

namespace detail {

/// A finished candidate drawing with everything the attempt loop ranks on.
struct SceneBuild {
    Scene scene;
    double score = 0.0;
    int scored_points = 0;
    int untouched = 0;
};

inline double score_target(const DrawSpec& spec, int scored_points) {
    if (spec.quality_threshold >= 0.0) return spec.quality_threshold;
    return 0.3 / std::sqrt(std::max(1, scored_points));
}

/// First dart from x to y in x's rotation order, or -1.
inline int find_dart(const CombinatorialMap& m, int x, int y) {
    if (x < 0 || x >= m.vertex_count()) return -1;
    for (int d : m.darts().rotation(x))
        if (m.head(d) == y) return d;
    return -1;
}

inline int resolve_dart(const CombinatorialMap& m, int x1, int y1, const char* what) {
    int d = find_dart(m, x1 - 1, y1 - 1);
    if (d < 0)
        throw MapError(std::string("no edge ") + std::to_string(x1) + " " + std::to_string(y1) +
                       " for " + what);
    return d;
}

/// Runs the barycentric solve and the face spring on a pinned boundary;
/// false when the result is not a crossing-free drawing.
inline bool solve_and_refine(const DartMap& m, int outer_dart, std::vector<Vec2>& pos,
                             const std::vector<char>& fixed, const std::vector<Vec2>& polygon,
                             const LayoutParams& params = {}) {
    pos = tutte_positions(m, std::move(pos), fixed, params);
    if (!layout_valid(m, pos, fixed, polygon)) return false;
    spring_refine(m, outer_dart, pos, fixed, polygon, params);
    return layout_valid(m, pos, fixed, polygon);
}

/// Registers scene points for layout vertices and turns normalized edge
/// chains into point index lists, creating bend waypoints on demand.
class SceneSink {
  public:
    SceneSink(const std::vector<Vec2>& pos) : pos_(&pos) {}

    int add(int layout_vertex, ScenePoint proto) {
        proto.pos = (*pos_)[static_cast<std::size_t>(layout_vertex)];
        if (proto.cls == NodeClass::Vertex) {
            int& seen = copies_[proto.number];
            proto.copy = seen++;
        }
        idx_[layout_vertex] = static_cast<int>(scene.points.size());
        layout_ids_.push_back(layout_vertex);
        scene.points.push_back(proto);
        return idx_[layout_vertex];
    }

    bool has(int layout_vertex) const { return idx_.count(layout_vertex) > 0; }

    int at(int layout_vertex) {
        auto it = idx_.find(layout_vertex);
        if (it != idx_.end()) return it->second;
        ScenePoint way;
        way.cls = NodeClass::Waypoint;
        return add(layout_vertex, way);
    }

    std::vector<int> chain_points(const std::vector<int>& chain) {
        std::vector<int> pts;
        pts.reserve(chain.size());
        for (int v : chain) pts.push_back(at(v));
        return pts;
    }

    /// Every numbered point, with its layout id for incidence checks.
    std::vector<QualityPoint> scored() const {
        std::vector<QualityPoint> out;
        for (std::size_t i = 0; i < scene.points.size(); ++i) {
            NodeClass cls = scene.points[i].cls;
            if (cls == NodeClass::Vertex || cls == NodeClass::CrossLabel)
                out.push_back({scene.points[i].pos, layout_ids_[i]});
        }
        return out;
    }

    Scene scene;

  private:
    const std::vector<Vec2>* pos_;
    std::map<int, int> idx_;
    std::map<int, int> copies_;
    std::vector<int> layout_ids_;
};

/// Interior faces of the cut map made purely of uncut original material.
inline int count_untouched_faces(const CutMap& cm, const FaceSet& fs, int outer_face) {
    int n = 0;
    for (int f = 0; f < fs.count(); ++f) {
        if (f == outer_face) continue;
        bool clean = true;
        for (int d : fs.face_darts[static_cast<std::size_t>(f)]) {
            if (cm.orig_dart[static_cast<std::size_t>(d)] < 0) clean = false;
            int v = cm.map.origin[static_cast<std::size_t>(d)];
            if (cm.vinfo[static_cast<std::size_t>(v)].kind != CopyKind::Plain) clean = false;
            if (!clean) break;
        }
        if (clean) ++n;
    }
    return n;
}

inline SceneInfo info_of(const CombinatorialMap& m) {
    EulerInfo e = genus_info(m);
    return {m.edge_count(), m.vertex_count(), e.faces, e.genus};
}

inline ScenePoint point_for_copy(const CombinatorialMap& base, const CutVertexInfo& vi) {
    ScenePoint pt;
    switch (vi.kind) {
    case CopyKind::Plain:
    case CopyKind::CutVertex:
        pt.cls = NodeClass::Vertex;
        pt.number = vi.orig_vertex + 1;
        pt.degree = base.degree(vi.orig_vertex);
        break;
    case CopyKind::EdgeCross:
        pt.cls = NodeClass::CrossLabel;
        pt.number = vi.dest_label + 1;
        pt.colour = vi.curve;
        break;
    case CopyKind::CenterCorner:
        if (vi.orig_vertex >= 0) {
            pt.cls = NodeClass::Vertex;
            pt.number = vi.orig_vertex + 1;
            pt.degree = base.degree(vi.orig_vertex);
        } else {
            pt.cls = NodeClass::CornerDot;
            if (vi.orig_edge >= 0 && vi.dest_label >= 0) pt.stub_label = vi.dest_label + 1;
        }
        break;
    }
    return pt;
}

/// Lays out a cut map as the fundamental polygon: boundary pinned on the 4g
/// side arcs, interior solved, everything turned into a scene.
inline std::optional<SceneBuild> assemble_fundamental(const CombinatorialMap& base,
                                                      const CutMap& cm,
                                                      const FundamentalBoundary& fb,
                                                      const DrawSpec& spec) {
    const DartMap& cut = cm.map;
    const int nsides = static_cast<int>(fb.sides.size());
    const double theta = spec.straight_sides ? 0.0 : side_arc_degrees(nsides);

    std::vector<char> on_boundary(static_cast<std::size_t>(cut.dart_count()), 0);
    std::vector<std::vector<int>> side_sets(static_cast<std::size_t>(cut.vertex_count()));
    for (int i = 0; i < nsides; ++i)
        for (int d : fb.sides[static_cast<std::size_t>(i)].darts) {
            on_boundary[static_cast<std::size_t>(d)] = 1;
            on_boundary[static_cast<std::size_t>(cut.twin[static_cast<std::size_t>(d)])] = 1;
            side_sets[static_cast<std::size_t>(cut.origin[static_cast<std::size_t>(d)])]
                .push_back(i);
        }
    // the corner closing side i also belongs to side i
    for (int i = 0; i < nsides; ++i) {
        int nxt = fb.sides[static_cast<std::size_t>((i + 1) % nsides)].darts[0];
        side_sets[static_cast<std::size_t>(cut.origin[static_cast<std::size_t>(nxt)])]
            .push_back(i);
    }

    // interior edges running within one side would lie on its chord
    std::vector<char> force_bend(static_cast<std::size_t>(cut.dart_count()), 0);
    for (int d = 0; d < cut.dart_count(); ++d) {
        if (d > cut.twin[static_cast<std::size_t>(d)]) continue;
        if (on_boundary[static_cast<std::size_t>(d)]) continue;
        const std::vector<int>& su =
            side_sets[static_cast<std::size_t>(cut.origin[static_cast<std::size_t>(d)])];
        const std::vector<int>& sv = side_sets[static_cast<std::size_t>(cut.head(d))];
        bool shared = false;
        for (int a : su)
            for (int b : sv)
                if (a == b) shared = true;
        if (shared) force_bend[static_cast<std::size_t>(d)] = 1;
    }

    Normalized norm = normalize_edges(cut, force_bend);
    int outer_dart = fb.sides[0].darts[0];
    Augmented aug = augment_to_three_connected(norm.map, outer_dart);

    std::vector<Vec2> pos(static_cast<std::size_t>(aug.map.vertex_count()), {0.0, 0.0});
    std::vector<char> fixed(static_cast<std::size_t>(aug.map.vertex_count()), 0);
    std::vector<Vec2> polygon;
    std::vector<Vec2> corners = regular_polygon(nsides >= 3 ? nsides : 3, 1.0);
    auto pin = [&](int v, Vec2 at) {
        pos[static_cast<std::size_t>(v)] = at;
        fixed[static_cast<std::size_t>(v)] = 1;
        polygon.push_back(at);
    };
    for (int i = 0; i < nsides; ++i) {
        const std::vector<int>& darts = fb.sides[static_cast<std::size_t>(i)].darts;
        Vec2 a = corners[static_cast<std::size_t>(i)];
        Vec2 b = corners[static_cast<std::size_t>((i + 1) % nsides)];
        const int k = static_cast<int>(darts.size());
        for (int j = 0; j < k; ++j) {
            double t0 = static_cast<double>(j) / k;
            pin(cut.origin[static_cast<std::size_t>(darts[static_cast<std::size_t>(j)])],
                side_arc_point(a, b, theta, t0));
            const std::vector<int>& chain =
                norm.chain[static_cast<std::size_t>(darts[static_cast<std::size_t>(j)])];
            const int bends = static_cast<int>(chain.size()) - 2;
            for (int bnum = 0; bnum < bends; ++bnum) {
                double t = (j + static_cast<double>(bnum + 1) / (bends + 1)) / k;
                pin(chain[static_cast<std::size_t>(bnum + 1)], side_arc_point(a, b, theta, t));
            }
        }
    }

    if (!solve_and_refine(aug.map, outer_dart, pos, fixed, polygon)) return std::nullopt;

    SceneSink sink(pos);
    sink.scene.mode = DrawMode::FundamentalPolygon;
    sink.scene.pair_count = nsides / 2;
    // boundary points in orbit order so crossings number around the polygon
    for (int i = 0; i < nsides; ++i)
        for (int d : fb.sides[static_cast<std::size_t>(i)].darts) {
            int v = cut.origin[static_cast<std::size_t>(d)];
            if (sink.has(v)) continue;
            ScenePoint pt = point_for_copy(base, cm.vinfo[static_cast<std::size_t>(v)]);
            Vec2 at = pos[static_cast<std::size_t>(v)];
            double len = mapdraw::norm(at);
            pt.out_dir = len > kGeomEps ? at * (1.0 / len) : Vec2{0.0, 1.0};
            sink.add(v, pt);
        }
    for (int v = 0; v < cut.vertex_count(); ++v) {
        if (sink.has(v)) continue;
        sink.add(v, point_for_copy(base, cm.vinfo[static_cast<std::size_t>(v)]));
    }
    for (int d = 0; d < cut.dart_count(); ++d) {
        if (d > cut.twin[static_cast<std::size_t>(d)]) continue;
        if (cm.orig_dart[static_cast<std::size_t>(d)] < 0) continue;
        sink.scene.edges.push_back({sink.chain_points(norm.chain[static_cast<std::size_t>(d)]), 0});
    }
    for (int i = 0; i < nsides; ++i) {
        const PolygonSide& ps = fb.sides[static_cast<std::size_t>(i)];
        SceneSide side;
        side.pair = ps.curve;
        side.reversed = cm.chord_forward[static_cast<std::size_t>(ps.darts[0])] == 0;
        for (int d : ps.darts)
            side.pts.push_back(sink.at(cut.origin[static_cast<std::size_t>(d)]));
        int nxt = fb.sides[static_cast<std::size_t>((i + 1) % nsides)].darts[0];
        side.pts.push_back(sink.at(cut.origin[static_cast<std::size_t>(nxt)]));
        sink.scene.sides.push_back(std::move(side));
    }
    sink.scene.info = info_of(base);

    SceneBuild build;
    std::vector<QualityPoint> pts = sink.scored();
    build.scored_points = static_cast<int>(pts.size());
    build.score = measure_quality(pts, map_segments(norm.map, pos), 1.0).score;
    FaceSet fs = trace_faces(cut);
    build.untouched = count_untouched_faces(cm, fs, fb.face);
    build.scene = std::move(sink.scene);
    return build;
}

/// Lays out a disjoint cut as a plane drawing with the chosen outer face,
/// rendering each cut face as a dashed identified cycle.
inline std::optional<SceneBuild> assemble_disjoint(const CombinatorialMap& base, const CutMap& cm,
                                                   const std::vector<CurveFacePair>& pairs,
                                                   const FaceSet& fs, int outer_face,
                                                   const DrawSpec& spec) {
    const DartMap& cut = cm.map;
    Normalized norm = normalize_edges(cut);
    int outer_dart = fs.face_darts[static_cast<std::size_t>(outer_face)][0];
    Augmented aug = augment_to_three_connected(norm.map, outer_dart);
    BoundaryPlacement bp = place_outer_walk(aug.map, outer_dart);
    if (!solve_and_refine(aug.map, outer_dart, bp.pos, bp.fixed, bp.polygon))
        return std::nullopt;

    // crossings whose cut face is a dual loop hand their label to the loop
    std::vector<char> loop_point(static_cast<std::size_t>(cut.vertex_count()), 0);
    for (const CurveFacePair& pr : pairs)
        for (int f : {pr.right_face, pr.left_face}) {
            const std::vector<int>& orbit = fs.face_darts[static_cast<std::size_t>(f)];
            if (orbit.size() == 1)
                loop_point[static_cast<std::size_t>(
                    cut.origin[static_cast<std::size_t>(orbit[0])])] = 1;
        }

    SceneSink sink(bp.pos);
    sink.scene.mode = DrawMode::Disjoint;
    sink.scene.pair_count = static_cast<int>(pairs.size());
    for (int v = 0; v < cut.vertex_count(); ++v) {
        ScenePoint pt = point_for_copy(base, cm.vinfo[static_cast<std::size_t>(v)]);
        if (loop_point[static_cast<std::size_t>(v)]) pt.cls = NodeClass::Waypoint;
        sink.add(v, pt);
    }

    std::vector<char> on_outer(static_cast<std::size_t>(norm.map.dart_count()), 0);
    for (int d : face_orbit(norm.map, outer_dart)) on_outer[static_cast<std::size_t>(d)] = 1;
    for (int d = 0; d < cut.dart_count(); ++d) {
        if (cm.orig_dart[static_cast<std::size_t>(d)] < 0) continue;
        int t = cut.twin[static_cast<std::size_t>(d)];
        bool outer_here = on_outer[static_cast<std::size_t>(d)];
        if (d > t && !(outer_here && !on_outer[static_cast<std::size_t>(t)])) continue;
        if (d < t && !outer_here && on_outer[static_cast<std::size_t>(t)]) continue;
        sink.scene.edges.push_back(
            {sink.chain_points(norm.chain[static_cast<std::size_t>(d)]), outer_here ? 1 : 0});
    }
    for (const CurveFacePair& pr : pairs)
        for (int f : {pr.right_face, pr.left_face}) {
            SceneCycle cyc;
            cyc.pair = pr.curve;
            const std::vector<int>& orbit = fs.face_darts[static_cast<std::size_t>(f)];
            for (int d : orbit) {
                const std::vector<int>& chain = norm.chain[static_cast<std::size_t>(d)];
                for (std::size_t i = 0; i + 1 < chain.size(); ++i)
                    cyc.pts.push_back(sink.at(chain[static_cast<std::size_t>(i)]));
            }
            if (orbit.size() == 1) {
                int v = cut.origin[static_cast<std::size_t>(orbit[0])];
                cyc.loop_label = cm.vinfo[static_cast<std::size_t>(v)].dest_label + 1;
                Vec2 center{0.0, 0.0};
                for (int p : cyc.pts)
                    center += sink.scene.points[static_cast<std::size_t>(p)].pos;
                cyc.loop_center = center * (1.0 / static_cast<double>(cyc.pts.size()));
            }
            sink.scene.cycles.push_back(std::move(cyc));
        }
    sink.scene.info = info_of(base);

    SceneBuild build;
    std::vector<QualityPoint> pts = sink.scored();
    build.scored_points = static_cast<int>(pts.size());
    build.score = measure_quality(pts, map_segments(norm.map, bp.pos), 1.0).score;
    build.untouched = count_untouched_faces(cm, fs, outer_face);
    build.scene = std::move(sink.scene);
    return build;
}

/// A plane drawing job: the map to lay out, the labels and degrees its
/// vertices carry, and any rays toward a vertex at infinity.
struct PlaneContext {
    const DartMap* drawn = nullptr;
    std::vector<int> number; // drawn vertex -> 1-based printed label
    std::vector<int> degree; // drawn vertex -> degree in the input map
    int outer_dart = -1;
    std::vector<int> ray_vertices;
    int ray_number = 0;
    SceneInfo info;
};

inline std::optional<SceneBuild> assemble_plane(const PlaneContext& ctx, const DrawSpec&) {
    const DartMap& dm = *ctx.drawn;
    Normalized norm = normalize_edges(dm);
    Augmented aug = augment_to_three_connected(norm.map, ctx.outer_dart);
    BoundaryPlacement bp = place_outer_walk(aug.map, ctx.outer_dart);
    if (!solve_and_refine(aug.map, ctx.outer_dart, bp.pos, bp.fixed, bp.polygon))
        return std::nullopt;

    SceneSink sink(bp.pos);
    sink.scene.mode = DrawMode::PlaneAuto;
    for (int v = 0; v < dm.vertex_count(); ++v) {
        ScenePoint pt;
        pt.cls = NodeClass::Vertex;
        pt.number = ctx.number[static_cast<std::size_t>(v)];
        pt.degree = ctx.degree[static_cast<std::size_t>(v)];
        sink.add(v, pt);
    }
    std::vector<char> on_outer(static_cast<std::size_t>(norm.map.dart_count()), 0);
    for (int d : face_orbit(norm.map, ctx.outer_dart))
        on_outer[static_cast<std::size_t>(d)] = 1;
    for (int d = 0; d < dm.dart_count(); ++d) {
        int t = dm.twin[static_cast<std::size_t>(d)];
        bool outer_here = on_outer[static_cast<std::size_t>(d)];
        if (d > t && !(outer_here && !on_outer[static_cast<std::size_t>(t)])) continue;
        if (d < t && !outer_here && on_outer[static_cast<std::size_t>(t)]) continue;
        sink.scene.edges.push_back(
            {sink.chain_points(norm.chain[static_cast<std::size_t>(d)]), outer_here ? 1 : 0});
    }
    for (int rv : ctx.ray_vertices) {
        Vec2 at = bp.pos[static_cast<std::size_t>(rv)];
        double len = mapdraw::norm(at);
        SceneRay ray;
        ray.from = sink.at(rv);
        ray.number = ctx.ray_number;
        ray.dir = len > kGeomEps ? at * (1.0 / len) : Vec2{0.0, 1.0};
        sink.scene.rays.push_back(ray);
    }
    sink.scene.info = ctx.info;

    SceneBuild build;
    std::vector<QualityPoint> pts = sink.scored();
    build.scored_points = static_cast<int>(pts.size());
    build.score = measure_quality(pts, map_segments(norm.map, bp.pos), 1.0).score;
    build.scene = std::move(sink.scene);
    return build;
}

/// Start configurations honoring the center options; fixed centers keep every
/// configuration matching their face, edge, or vertex.
inline std::vector<StartConfig> configs_for(const CombinatorialMap& m, const DrawSpec& spec) {
    switch (spec.center) {
    case CenterPolicy::FaceDefault:
    case CenterPolicy::VertexCutting: return enumerate_start_configs(m);
    case CenterPolicy::FaceFixed: {
        int d = resolve_dart(m, spec.cf_x, spec.cf_y, "cf");
        FaceSet fs = trace_faces(m);
        int f = fs.face_of[static_cast<std::size_t>(d)];
        std::vector<StartConfig> out;
        for (const StartConfig& c : enumerate_start_configs(m))
            if (c.face == f) out.push_back(c);
        return out;
    }
    case CenterPolicy::Edge: return enumerate_edge_configs(m);
    case CenterPolicy::EdgeFixed: {
        int d = resolve_dart(m, spec.ce_x, spec.ce_y, "ce");
        int e = m.edge_of(d);
        std::vector<StartConfig> out;
        for (const StartConfig& c : enumerate_edge_configs(m))
            if (m.edge_of(c.dart) == e) out.push_back(c);
        return out;
    }
    case CenterPolicy::Vertex: return enumerate_vertex_configs(m);
    case CenterPolicy::VertexFixed: {
        if (spec.cv_x < 1 || spec.cv_x > m.vertex_count())
            throw MapError("no vertex " + std::to_string(spec.cv_x) + " for cv");
        std::vector<StartConfig> out;
        for (const StartConfig& c : enumerate_vertex_configs(m))
            if (c.vertex == spec.cv_x - 1) out.push_back(c);
        return out;
    }
    }
    return {};
}

inline SearchParams search_params_for(const CombinatorialMap& m, const DrawSpec& spec) {
    SearchParams params;
    params.allow_vertex_cross = spec.center == CenterPolicy::VertexCutting;
    params.forbidden_edge.assign(static_cast<std::size_t>(m.edge_count()), 0);
    params.forbidden_vertex.assign(static_cast<std::size_t>(m.vertex_count()), 0);
    for (const std::pair<int, int>& fe : spec.forbidden_edges) {
        int d = find_dart(m, fe.first - 1, fe.second - 1);
        if (d >= 0) params.forbidden_edge[static_cast<std::size_t>(m.edge_of(d))] = 1;
    }
    for (int fv : spec.forbidden_vertices)
        if (fv >= 1 && fv <= m.vertex_count())
            params.forbidden_vertex[static_cast<std::size_t>(fv - 1)] = 1;
    return params;
}

/// Keeps the best candidate: higher score wins, or more untouched interior
/// faces first under option if.
inline bool better_build(const SceneBuild& cand, const SceneBuild& best, bool favor_untouched) {
    if (favor_untouched) {
        if (cand.untouched != best.untouched) return cand.untouched > best.untouched;
        return cand.score > best.score;
    }
    return cand.score > best.score;
}

inline DrawOutcome finish(const SceneBuild& build, const DrawSpec& spec, int attempts,
                          int systems) {
    DrawOutcome out;
    switch (build.scene.mode) {
    case DrawMode::FundamentalPolygon: out.tikz = emit_fundamental(build.scene, spec); break;
    case DrawMode::Disjoint: out.tikz = emit_disjoint(build.scene, spec); break;
    case DrawMode::PlaneAuto: out.tikz = emit_plane(build.scene, spec); break;
    }
    out.attempts = attempts;
    out.systems = systems;
    out.score = build.score;
    return out;
}

inline DrawOutcome draw_plane_map(const CombinatorialMap& m, const DrawSpec& spec) {
    SceneInfo info = info_of(m);
    if (spec.vertex_at_infinity) {
        std::optional<SceneBuild> best;
        int attempts = 0;
        std::vector<int> order(static_cast<std::size_t>(m.vertex_count()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return m.degree(a) > m.degree(b); });
        for (int v : order) {
            std::optional<InfinityScene> inf = remove_vertex_to_infinity(m, v);
            if (!inf) continue;
            ++attempts;
            PlaneContext ctx;
            DartMap dm = inf->map.darts();
            ctx.drawn = &dm;
            ctx.outer_dart = inf->outer_dart;
            ctx.ray_vertices = inf->ray_vertices;
            ctx.ray_number = v + 1;
            ctx.info = info;
            for (int u = 0; u < inf->map.vertex_count(); ++u) {
                int ov = inf->orig_vertex[static_cast<std::size_t>(u)];
                ctx.number.push_back(ov + 1);
                ctx.degree.push_back(m.degree(ov));
            }
            std::optional<SceneBuild> build = assemble_plane(ctx, spec);
            if (!build) continue;
            if (!best || better_build(*build, *best, false)) best = std::move(build);
            if (best->score >= score_target(spec, best->scored_points)) break;
        }
        if (!best) throw MapError("no vertex leads to a drawing with a vertex at infinity");
        return finish(*best, spec, attempts, 0);
    }

    FaceSet fs = trace_faces(m);
    int outer = -1;
    if (spec.center == CenterPolicy::FaceFixed) {
        int d = resolve_dart(m, spec.cf_x, spec.cf_y, "cf");
        outer = fs.face_of[static_cast<std::size_t>(d)];
    } else {
        for (int f = 0; f < fs.count(); ++f)
            if (outer < 0 || fs.size(f) > fs.size(outer)) outer = f;
    }
    PlaneContext ctx;
    DartMap dm = m.darts();
    ctx.drawn = &dm;
    ctx.outer_dart = fs.face_darts[static_cast<std::size_t>(outer)][0];
    ctx.info = info;
    for (int v = 0; v < m.vertex_count(); ++v) {
        ctx.number.push_back(v + 1);
        ctx.degree.push_back(m.degree(v));
    }
    std::optional<SceneBuild> build = assemble_plane(ctx, spec);
    if (!build) throw MapError("plane layout failed");
    return finish(*build, spec, 1, 0);
}

/// Outer face candidates for a disjoint drawing: non-cut faces no more than
/// one smaller than the largest face of the uncut map, then the remaining
/// non-cut faces as fallback; larger faces first, then lower ids. Cut faces
/// never go outside, their dashed decoration assumes an interior drawing.
inline std::vector<int> disjoint_outer_candidates(const CombinatorialMap& base, const FaceSet& fs,
                                                  const std::vector<CurveFacePair>& pairs) {
    std::vector<char> is_cut(static_cast<std::size_t>(fs.count()), 0);
    for (const CurveFacePair& pr : pairs) {
        is_cut[static_cast<std::size_t>(pr.right_face)] = 1;
        is_cut[static_cast<std::size_t>(pr.left_face)] = 1;
    }
    FaceSet base_fs = trace_faces(base);
    int max_uncut = 0;
    for (int f = 0; f < base_fs.count(); ++f) max_uncut = std::max(max_uncut, base_fs.size(f));
    std::vector<int> cand, rest;
    for (int f = 0; f < fs.count(); ++f) {
        if (is_cut[static_cast<std::size_t>(f)]) continue;
        (fs.size(f) >= max_uncut - 1 ? cand : rest).push_back(f);
    }
    auto larger_first = [&](int a, int b) { return fs.size(a) > fs.size(b); };
    std::stable_sort(cand.begin(), cand.end(), larger_first);
    std::stable_sort(rest.begin(), rest.end(), larger_first);
    cand.insert(cand.end(), rest.begin(), rest.end());
    return cand;
}

inline DrawOutcome draw_surface_map(const CombinatorialMap& m, int g, const DrawSpec& spec) {
    SearchParams params = search_params_for(m, spec);
    std::vector<StartConfig> configs = configs_for(m, spec);
    std::optional<SceneBuild> best;
    int attempts = 0, systems = 0;
    bool stop = false;
    for (const StartConfig& config : configs) {
        std::optional<CutPlan> plan = spec.mode == DrawMode::Disjoint
                                          ? find_disjoint_system(m, params, config)
                                          : find_fundamental_system(m, params, config);
        if (!plan) continue;
        ++systems;
        CutMap cm = cut_along(*plan);
        if (!verify_cut_roundtrip(m, cm)) continue;
        std::vector<SceneBuild> builds;
        if (spec.mode == DrawMode::Disjoint) {
            std::optional<std::vector<CurveFacePair>> pairs = disjoint_cut_faces(cm, g);
            if (!pairs) continue;
            FaceSet fs = trace_faces(cm.map);
            for (int f : disjoint_outer_candidates(m, fs, *pairs)) {
                ++attempts;
                std::optional<SceneBuild> build =
                    assemble_disjoint(m, cm, *pairs, fs, f, spec);
                if (!build) continue;
                if (!best || better_build(*build, *best, spec.maximize_interior_faces))
                    best = std::move(*build);
                if (!spec.maximize_interior_faces &&
                    best->score >= score_target(spec, best->scored_points)) {
                    stop = true;
                    break;
                }
            }
        } else {
            std::optional<FundamentalBoundary> fb = fundamental_boundary(cm, g);
            if (!fb) continue;
            ++attempts;
            std::optional<SceneBuild> build = assemble_fundamental(m, cm, *fb, spec);
            if (build) {
                if (!best || better_build(*build, *best, spec.maximize_interior_faces))
                    best = std::move(*build);
                if (!spec.maximize_interior_faces &&
                    best->score >= score_target(spec, best->scored_points))
                    stop = true;
            }
        }
        if (stop) break;
    }
    if (!best) throw MapError("no drawable cycle system found");
    return finish(*best, spec, attempts, systems);
}

} // namespace detail

/// Draws one map: plane pipeline at genus zero, cycle systems above.
inline DrawOutcome draw_one_map(const CombinatorialMap& m, const DrawSpec& spec) {
    int g = genus(m);
    if (g == 0) return detail::draw_plane_map(m, spec);
    if (spec.vertex_at_infinity)
        throw MapError("a vertex at infinity needs a planar map, genus is " + std::to_string(g));
    return detail::draw_surface_map(m, g, spec);
}

struct StreamResult {
    int total = 0;
    int drawn = 0;
    bool ok() const { return drawn == total; }
};

/// Reads planarcode records from the input bytes, draws each map, writes tikz
/// to out and one status line per map to err. A malformed record aborts the
/// rest of the stream; an invalid or undrawable map only fails its own record.
inline StreamResult run_stream(const std::vector<std::uint8_t>& input, const DrawSpec& spec,
                               std::ostream& out, std::ostream& err) {
    StreamResult res;
    int k = 0;
    auto handle = [&](RawMap raw) {
        ++k;
        ++res.total;
        auto t0 = std::chrono::steady_clock::now();
        try {
            CombinatorialMap m = detail::build_checked(std::move(raw));
            DrawOutcome oc = draw_one_map(m, spec);
            out << "% map " << k << "\n" << oc.tikz;
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                              .count();
            char line[160];
            std::snprintf(line, sizeof line,
                          "map %d: attempts=%d systems=%d score=%.4f time=%.3f\n", k,
                          oc.attempts, oc.systems, oc.score, secs);
            err << line;
            ++res.drawn;
        } catch (const MapError& e) {
            err << "map " << k << ": error: " << e.what() << "\n";
        }
    };
    try {
        if (spec.force_ascii || looks_like_ascii(input)) {
            std::string_view text(reinterpret_cast<const char*>(input.data()), input.size());
            std::vector<long> values;
            std::size_t i = 0;
            while (i < text.size()) {
                if (std::isspace(static_cast<unsigned char>(text[i]))) {
                    ++i;
                    continue;
                }
                bool neg = text[i] == '-';
                std::size_t j = i + (neg ? 1 : 0);
                long v = 0;
                bool any = false;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                    v = v * 10 + (text[j] - '0');
                    any = true;
                    ++j;
                }
                if (!any)
                    throw MapError("unexpected character '" + std::string(1, text[i]) +
                                   "' in ascii planarcode");
                values.push_back(neg ? -v : v);
                i = j;
            }
            std::size_t pos = 0;
            auto next_value = [&]() -> int {
                if (pos >= values.size()) throw MapError("truncated planarcode record");
                long v = values[pos++];
                if (v < 0 || v > 1 << 20) throw MapError("planarcode value out of range");
                return static_cast<int>(v);
            };
            while (pos < values.size()) {
                int n = next_value();
                if (n < 1)
                    throw MapError("planarcode record with vertex count " + std::to_string(n));
                RawMap raw;
                raw.adj.resize(static_cast<std::size_t>(n));
                for (int v = 0; v < n; ++v)
                    for (;;) {
                        int w = next_value();
                        if (w == 0) break;
                        raw.adj[static_cast<std::size_t>(v)].push_back(w - 1);
                    }
                handle(std::move(raw));
            }
        } else {
            std::size_t pos = 0;
            std::string_view head(reinterpret_cast<const char*>(input.data()),
                                  std::min(input.size(), kPlanarcodeHeader.size()));
            if (head == kPlanarcodeHeader) pos = kPlanarcodeHeader.size();
            while (pos < input.size()) handle(detail::read_binary_record(input, pos));
        }
    } catch (const MapError& e) {
        ++res.total; // the unreadable record never became a map
        err << "input: error: " << e.what() << "\n";
    }
    return res;
}

} // namespace mapdraw
