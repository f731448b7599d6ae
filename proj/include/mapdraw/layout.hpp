#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "mapdraw/dartmap.hpp"
#include "mapdraw/geometry.hpp"
#include "mapdraw/map.hpp"

namespace mapdraw {

struct LayoutParams {
    double solve_tolerance = 1e-10; // max coordinate change ending the iterative solve
    int dense_limit = 2000;         // direct elimination up to this many interior vertices
    int spring_iterations = 200;
    double spring_step = 0.1;
};

/// What a drawn point stands for; bends and stars are scaffolding that never
/// reaches the final picture as labeled nodes.
enum class PointRole { Vertex, Crossing, Corner, Bend, Augment };

namespace detail {

/// Splits dart d with a new vertex. d keeps its origin links and ends at the
/// new vertex; back and fwd leave the new vertex toward the old endpoints.
struct DartSplit {
    int mid = -1;
    int back = -1;
    int fwd = -1;
};

inline DartSplit split_dart(DartMap& m, int d) {
    int t = m.twin[d];
    DartSplit s;
    s.mid = m.add_vertex();
    auto [back, fwd] = m.add_edge_darts(s.mid, s.mid);
    s.back = back;
    s.fwd = fwd;
    m.twin[d] = back;
    m.twin[back] = d;
    m.twin[t] = fwd;
    m.twin[fwd] = t;
    m.next[back] = fwd;
    m.prev[back] = fwd;
    m.next[fwd] = back;
    m.prev[fwd] = back;
    m.vertex_dart[s.mid] = back;
    return s;
}

} // namespace detail

/// A copy of a plane map where loops carry two bend vertices and parallel
/// edges one, so every drawn edge is a straight segment chain of a simple
/// graph. chain[d] lists the drawn vertices of base dart d from tail to head.
struct Normalized {
    DartMap map;
    int base_vertices = 0;
    std::vector<std::vector<int>> chain; // indexed by base dart
};

inline Normalized normalize_edges(const DartMap& base,
                                  const std::vector<char>& force_bend = {}) {
    Normalized out;
    out.map = base;
    out.base_vertices = base.vertex_count();
    out.chain.assign(static_cast<std::size_t>(base.dart_count()), {});

    auto multiplicity = [&](int u, int v) {
        int lo = std::min(u, v), hi = std::max(u, v);
        int c = 0;
        for (int d = 0; d < base.dart_count(); ++d) {
            if (d > base.twin[d]) continue;
            int a = base.origin[static_cast<std::size_t>(d)];
            int b = base.head(d);
            if (std::min(a, b) == lo && std::max(a, b) == hi) ++c;
        }
        return c;
    };

    for (int d = 0; d < base.dart_count(); ++d) {
        if (d > base.twin[d]) continue;
        int t = base.twin[d];
        int u = base.origin[static_cast<std::size_t>(d)];
        int v = base.origin[static_cast<std::size_t>(t)];
        int bends = u == v ? 2 : (multiplicity(u, v) > 1 ? 1 : 0);
        if (bends == 0 && static_cast<std::size_t>(d) < force_bend.size() &&
            force_bend[static_cast<std::size_t>(d)])
            bends = 1;
        std::vector<int> mids;
        int cur = d; // dart reaching the current far end within out.map
        for (int k = 0; k < bends; ++k) {
            detail::DartSplit s = detail::split_dart(out.map, cur);
            mids.push_back(s.mid);
            cur = s.fwd;
        }
        out.chain[static_cast<std::size_t>(d)] = mids;
        out.chain[static_cast<std::size_t>(d)].insert(out.chain[static_cast<std::size_t>(d)].begin(), u);
        out.chain[static_cast<std::size_t>(d)].push_back(v);
        std::vector<int> rev(out.chain[static_cast<std::size_t>(d)].rbegin(),
                             out.chain[static_cast<std::size_t>(d)].rend());
        out.chain[static_cast<std::size_t>(t)] = std::move(rev);
    }
    return out;
}

/// Vertex connectivity at least 3 on the underlying simple graph; maps on at
/// most 3 vertices count as unseparable.
inline bool is_three_connected(const DartMap& m) {
    const int n = m.vertex_count();
    if (!m.connected()) return false;
    if (n <= 3) return true;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int d = 0; d < m.dart_count(); ++d) {
        int u = m.origin[static_cast<std::size_t>(d)];
        int w = m.head(d);
        if (u == w) continue;
        auto& row = adj[static_cast<std::size_t>(u)];
        if (std::find(row.begin(), row.end(), w) == row.end()) row.push_back(w);
    }
    auto separated = [&](int x, int y) {
        int start = -1;
        for (int v = 0; v < n; ++v)
            if (v != x && v != y) {
                start = v;
                break;
            }
        if (start < 0) return false;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        seen[static_cast<std::size_t>(start)] = 1;
        std::vector<int> stack{start};
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (w == x || w == y || seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
        int excluded = (x >= 0 ? 1 : 0) + (y >= 0 && y != x ? 1 : 0);
        return reached != n - excluded;
    };
    for (int x = 0; x < n; ++x)
        if (separated(x, -1)) return false;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (separated(x, y)) return false;
    return true;
}

/// Vertices participating in some separating set of size 1 or 2.
inline std::vector<char> separator_vertices(const DartMap& m) {
    const int n = m.vertex_count();
    std::vector<char> out(static_cast<std::size_t>(n), 0);
    if (n <= 3) return out;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int d = 0; d < m.dart_count(); ++d) {
        int u = m.origin[static_cast<std::size_t>(d)];
        int w = m.head(d);
        if (u == w) continue;
        auto& row = adj[static_cast<std::size_t>(u)];
        if (std::find(row.begin(), row.end(), w) == row.end()) row.push_back(w);
    }
    auto separated = [&](int x, int y) {
        int start = -1;
        for (int v = 0; v < n; ++v)
            if (v != x && v != y) {
                start = v;
                break;
            }
        if (start < 0) return false;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        seen[static_cast<std::size_t>(start)] = 1;
        std::vector<int> stack{start};
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (w == x || w == y || seen[static_cast<std::size_t>(w)]) continue;
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
        int excluded = 1 + (y >= 0 && y != x ? 1 : 0);
        return reached != n - excluded;
    };
    for (int x = 0; x < n; ++x)
        if (separated(x, -1)) out[static_cast<std::size_t>(x)] = 1;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (separated(x, y)) {
                out[static_cast<std::size_t>(x)] = 1;
                out[static_cast<std::size_t>(y)] = 1;
            }
    return out;
}

/// Map plus a star vertex inside one face, joined once to every distinct
/// vertex of the face walk; splits the face into triangles where the walk is
/// simple.
inline int star_face(DartMap& m, const std::vector<int>& walk) {
    int s = m.add_vertex();
    std::vector<int> spokes;
    std::vector<char> seen(static_cast<std::size_t>(m.vertex_count()), 0);
    for (int d : walk) {
        int u = m.origin[static_cast<std::size_t>(d)];
        if (seen[static_cast<std::size_t>(u)]) continue;
        seen[static_cast<std::size_t>(u)] = 1;
        auto [su, us] = m.add_edge_darts(s, u);
        m.link_after(m.prev[static_cast<std::size_t>(d)], us);
        spokes.push_back(su);
    }
    const int k = static_cast<int>(spokes.size());
    assert(k >= 1);
    for (int i = 0; i < k; ++i) {
        // clockwise rotation at the star runs against the face walk
        m.next[static_cast<std::size_t>(spokes[static_cast<std::size_t>(i)])] =
            spokes[static_cast<std::size_t>((i + k - 1) % k)];
        m.prev[static_cast<std::size_t>(spokes[static_cast<std::size_t>(i)])] =
            spokes[static_cast<std::size_t>((i + 1) % k)];
    }
    m.vertex_dart[static_cast<std::size_t>(s)] = spokes[0];
    return s;
}

struct Augmented {
    DartMap map;
    int outer_dart = -1;
    int first_new_vertex = 0; // vertices from here on are removable stars
};

/// Stars interior faces until the map is 3-connected: first every interior
/// face with at least 4 boundary darts, then faces touching small separators,
/// then every interior face, rechecking connectivity between rounds. The
/// outer face is never touched; all artifacts are vertices >= first_new_vertex
/// plus their incident edges.
inline Augmented augment_to_three_connected(const DartMap& base, int outer_dart) {
    Augmented out{base, outer_dart, base.vertex_count()};
    DartMap& m = out.map;
    for (int round = 0; round < 4; ++round) {
        if (is_three_connected(m)) break;
        FaceSet fs = trace_faces(m);
        int outer = fs.face_of[static_cast<std::size_t>(outer_dart)];
        std::vector<char> near_separator;
        if (round >= 1) near_separator = separator_vertices(m);
        std::vector<std::vector<int>> targets;
        for (int f = 0; f < fs.count(); ++f) {
            if (f == outer) continue;
            const std::vector<int>& walk = fs.face_darts[static_cast<std::size_t>(f)];
            bool pick = false;
            if (round == 0) {
                pick = walk.size() >= 4;
            } else if (round == 1) {
                for (int d : walk)
                    if (near_separator[static_cast<std::size_t>(m.origin[static_cast<std::size_t>(d)])])
                        pick = true;
            } else {
                pick = true;
            }
            if (pick) targets.push_back(walk);
        }
        if (targets.empty()) continue;
        for (const std::vector<int>& walk : targets) star_face(m, walk);
    }
    return out;
}

/// Places every interior vertex at the centroid of its neighbors, boundary
/// held fixed: direct elimination at desk scale, neighborhood sweeps beyond.
inline std::vector<Vec2> tutte_positions(const DartMap& m, std::vector<Vec2> pos,
                                         const std::vector<char>& fixed,
                                         const LayoutParams& params = {}) {
    const int n = m.vertex_count();
    std::vector<int> interior;
    std::vector<int> slot(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        if (!fixed[static_cast<std::size_t>(v)] && m.degree(v) > 0) {
            slot[static_cast<std::size_t>(v)] = static_cast<int>(interior.size());
            interior.push_back(v);
        }
    const int k = static_cast<int>(interior.size());
    if (k == 0) return pos;

    if (k <= params.dense_limit) {
        std::vector<std::vector<double>> a(static_cast<std::size_t>(k),
                                           std::vector<double>(static_cast<std::size_t>(k), 0.0));
        std::vector<std::vector<double>> rhs(2, std::vector<double>(static_cast<std::size_t>(k), 0.0));
        for (int i = 0; i < k; ++i) {
            int v = interior[static_cast<std::size_t>(i)];
            for (int d : m.rotation(v)) {
                int w = m.head(d);
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += 1.0;
                int j = slot[static_cast<std::size_t>(w)];
                if (j >= 0) {
                    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= 1.0;
                } else {
                    rhs[0][static_cast<std::size_t>(i)] += pos[static_cast<std::size_t>(w)].x;
                    rhs[1][static_cast<std::size_t>(i)] += pos[static_cast<std::size_t>(w)].y;
                }
            }
        }
        std::vector<std::vector<double>> sol = solve_dense(std::move(a), std::move(rhs));
        for (int i = 0; i < k; ++i)
            pos[static_cast<std::size_t>(interior[static_cast<std::size_t>(i)])] = {
                sol[0][static_cast<std::size_t>(i)], sol[1][static_cast<std::size_t>(i)]};
        return pos;
    }

    for (int v : interior) pos[static_cast<std::size_t>(v)] = {0.0, 0.0};
    for (long sweep = 0; sweep < 2000000; ++sweep) {
        double moved = 0.0;
        for (int v : interior) {
            Vec2 acc{0.0, 0.0};
            int deg = 0;
            for (int d : m.rotation(v)) {
                acc += pos[static_cast<std::size_t>(m.head(d))];
                ++deg;
            }
            Vec2 target = acc * (1.0 / deg);
            moved = std::max(moved, std::abs(target.x - pos[static_cast<std::size_t>(v)].x));
            moved = std::max(moved, std::abs(target.y - pos[static_cast<std::size_t>(v)].y));
            pos[static_cast<std::size_t>(v)] = target;
        }
        if (moved < params.solve_tolerance) break;
    }
    return pos;
}

/// Boundary data for one layout: which vertices are pinned, where, and the
/// polygon that must contain everything else.
struct BoundaryPlacement {
    std::vector<char> fixed;
    std::vector<Vec2> pos;
    std::vector<Vec2> polygon;
};

/// Pins the outer face walk onto a regular polygon, one corner per walk slot;
/// a vertex visited twice sits at the mean of its corners.
inline BoundaryPlacement place_outer_walk(const DartMap& m, int outer_dart, double radius = 1.0) {
    std::vector<int> walk = face_orbit(m, outer_dart);
    const int k = static_cast<int>(walk.size());
    BoundaryPlacement out;
    out.fixed.assign(static_cast<std::size_t>(m.vertex_count()), 0);
    out.pos.assign(static_cast<std::size_t>(m.vertex_count()), {0.0, 0.0});
    out.polygon = k >= 3 ? regular_polygon(k, radius)
                         : std::vector<Vec2>{{0.0, radius}, {radius, -radius}, {-radius, -radius}};
    std::vector<int> hits(static_cast<std::size_t>(m.vertex_count()), 0);
    for (int i = 0; i < k; ++i) {
        int v = m.origin[static_cast<std::size_t>(walk[static_cast<std::size_t>(i)])];
        Vec2 corner = k >= 3 ? out.polygon[static_cast<std::size_t>(i)]
                             : out.polygon[static_cast<std::size_t>(i % 2)];
        out.fixed[static_cast<std::size_t>(v)] = 1;
        out.pos[static_cast<std::size_t>(v)] += corner;
        ++hits[static_cast<std::size_t>(v)];
    }
    for (int v = 0; v < m.vertex_count(); ++v)
        if (hits[static_cast<std::size_t>(v)] > 1)
            out.pos[static_cast<std::size_t>(v)] =
                out.pos[static_cast<std::size_t>(v)] * (1.0 / hits[static_cast<std::size_t>(v)]);
    return out;
}

/// One straight piece of the picture; va/vb are drawn-point ids used to tell
/// shared endpoints from genuine contacts.
struct SceneSegment {
    Vec2 a;
    Vec2 b;
    int va = -1;
    int vb = -1;
};

inline std::vector<SceneSegment> map_segments(const DartMap& m, const std::vector<Vec2>& pos) {
    std::vector<SceneSegment> out;
    for (int d = 0; d < m.dart_count(); ++d) {
        if (d > m.twin[d]) continue;
        int u = m.origin[static_cast<std::size_t>(d)];
        int w = m.head(d);
        out.push_back({pos[static_cast<std::size_t>(u)], pos[static_cast<std::size_t>(w)], u, w});
    }
    return out;
}

/// Two scene segments may meet only at a shared declared endpoint.
inline bool segments_compatible(const SceneSegment& s, const SceneSegment& t) {
    bool a_shared = s.va >= 0 && (s.va == t.va || s.va == t.vb);
    bool b_shared = s.vb >= 0 && (s.vb == t.va || s.vb == t.vb);
    if (a_shared && b_shared) return false;
    if (!a_shared && !b_shared) return !segments_intersect(s.a, s.b, t.a, t.b);
    if (point_on_segment(a_shared ? s.b : s.a, t.a, t.b)) return false;
    Vec2 t_far = (t.va == (a_shared ? s.va : s.vb)) ? t.b : t.a;
    if (point_on_segment(t_far, s.a, s.b)) return false;
    return true;
}

/// Crossing-freeness, strict polygon containment of unpinned points, and no
/// point resting on a foreign segment.
inline bool layout_valid(const DartMap& m, const std::vector<Vec2>& pos,
                         const std::vector<char>& fixed, const std::vector<Vec2>& polygon) {
    std::vector<SceneSegment> segs = map_segments(m, pos);
    for (std::size_t i = 0; i < segs.size(); ++i)
        for (std::size_t j = i + 1; j < segs.size(); ++j)
            if (!segments_compatible(segs[i], segs[j])) return false;
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (m.degree(v) == 0) continue;
        if (!fixed[static_cast<std::size_t>(v)] &&
            !point_strictly_inside(pos[static_cast<std::size_t>(v)], polygon))
            return false;
        for (const SceneSegment& s : segs) {
            if (s.va == v || s.vb == v) continue;
            if (point_on_segment(pos[static_cast<std::size_t>(v)], s.a, s.b)) return false;
        }
    }
    return true;
}

/// Evens out interior face areas: every face pushes its corners away from or
/// toward its centroid in proportion to its area deficit. Each step must keep
/// the drawing valid and must not increase the area variance, else it is
/// halved up to three times and the run stops.
inline void spring_refine(const DartMap& m, int outer_dart, std::vector<Vec2>& pos,
                          const std::vector<char>& fixed, const std::vector<Vec2>& polygon,
                          const LayoutParams& params = {}) {
    if (params.spring_iterations <= 0) return;
    FaceSet fs = trace_faces(m);
    int outer = fs.face_of[static_cast<std::size_t>(outer_dart)];
    std::vector<std::vector<int>> walks; // interior faces as vertex slot lists
    for (int f = 0; f < fs.count(); ++f) {
        if (f == outer) continue;
        std::vector<int> w;
        for (int d : fs.face_darts[static_cast<std::size_t>(f)])
            w.push_back(m.origin[static_cast<std::size_t>(d)]);
        walks.push_back(std::move(w));
    }
    if (walks.empty()) return;
    const double target =
        std::abs(polygon_signed_area(polygon)) / static_cast<double>(walks.size());
    if (target <= 0.0) return;

    auto face_area = [&](const std::vector<int>& w, const std::vector<Vec2>& p) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            acc += cross(p[static_cast<std::size_t>(w[i])],
                         p[static_cast<std::size_t>(w[(i + 1) % w.size()])]);
        return std::abs(acc / 2.0);
    };
    auto variance = [&](const std::vector<Vec2>& p) {
        double acc = 0.0;
        for (const std::vector<int>& w : walks) {
            double d = face_area(w, p) - target;
            acc += d * d;
        }
        return acc;
    };

    double current_var = variance(pos);
    for (int iter = 0; iter < params.spring_iterations; ++iter) {
        std::vector<Vec2> disp(pos.size(), Vec2{0.0, 0.0});
        for (const std::vector<int>& w : walks) {
            Vec2 centroid{0.0, 0.0};
            for (int v : w) centroid += pos[static_cast<std::size_t>(v)];
            centroid = centroid * (1.0 / static_cast<double>(w.size()));
            double coeff = params.spring_step * (target - face_area(w, pos)) / target;
            for (int v : w)
                if (!fixed[static_cast<std::size_t>(v)])
                    disp[static_cast<std::size_t>(v)] +=
                        (pos[static_cast<std::size_t>(v)] - centroid) * coeff;
        }
        bool accepted = false;
        double scale = 1.0;
        for (int attempt = 0; attempt < 4; ++attempt, scale /= 2.0) {
            std::vector<Vec2> cand = pos;
            for (std::size_t v = 0; v < cand.size(); ++v)
                if (!fixed[v]) cand[v] += disp[v] * scale;
            double cand_var = variance(cand);
            if (cand_var <= current_var + 1e-12 && layout_valid(m, cand, fixed, polygon)) {
                pos = std::move(cand);
                current_var = cand_var;
                accepted = true;
                break;
            }
        }
        if (!accepted) return;
    }
}

struct DrawingQuality {
    double min_vertex_vertex = std::numeric_limits<double>::infinity();
    double min_vertex_edge = std::numeric_limits<double>::infinity();
    double score = 0.0;
};

/// A scored point: its coordinates plus the drawn-point id segments use for
/// incidence.
struct QualityPoint {
    Vec2 p;
    int id = -1;
};

/// Exact brute-force minimum distances between scored points and between each
/// point and every segment of an edge not incident to it, normalized by the
/// outer circumradius.
inline DrawingQuality measure_quality(const std::vector<QualityPoint>& points,
                                      const std::vector<SceneSegment>& segments,
                                      double circumradius) {
    DrawingQuality q;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            q.min_vertex_vertex = std::min(q.min_vertex_vertex, distance(points[i].p, points[j].p));
    for (const QualityPoint& pt : points)
        for (const SceneSegment& s : segments) {
            if (pt.id >= 0 && (pt.id == s.va || pt.id == s.vb)) continue;
            q.min_vertex_edge = std::min(q.min_vertex_edge, distance_point_segment(pt.p, s.a, s.b));
        }
    q.score = std::min(q.min_vertex_vertex, q.min_vertex_edge) / circumradius;
    return q;
}

/// Residual scene after sending one vertex to infinity: the remaining map with
/// compacted ids, the face its removal opened up, and the former neighbors
/// that carry outward rays.
struct InfinityScene {
    CombinatorialMap map;
    std::vector<int> orig_vertex; // residual vertex -> vertex of the input map
    int outer_dart = -1;
    std::vector<int> ray_vertices; // residual ids, one per removed edge end
};

inline std::optional<InfinityScene> remove_vertex_to_infinity(const CombinatorialMap& m, int v) {
    if (genus(m) != 0) return std::nullopt;
    if (m.vertex_count() < 2 || m.degree(v) == 0) return std::nullopt;

    std::vector<int> new_id(static_cast<std::size_t>(m.vertex_count()), -1);
    std::vector<int> orig;
    for (int u = 0; u < m.vertex_count(); ++u)
        if (u != v) {
            new_id[static_cast<std::size_t>(u)] = static_cast<int>(orig.size());
            orig.push_back(u);
        }
    RawMap raw;
    raw.adj.resize(orig.size());
    for (std::size_t i = 0; i < orig.size(); ++i)
        for (int d : m.darts().rotation(orig[i])) {
            int w = m.head(d);
            if (w == v) continue;
            raw.adj[i].push_back(new_id[static_cast<std::size_t>(w)]);
        }
    if (!validate(raw).empty()) return std::nullopt;
    CombinatorialMap res = CombinatorialMap::from_raw(raw);
    if (genus(res) != 0) return std::nullopt;

    InfinityScene out{std::move(res), std::move(orig), -1, {}};
    // the merged face picks up right after a removed spoke in some rotation
    int u = -1, follow = -1;
    for (int d : m.darts().rotation(v)) {
        int cand = m.head(d);
        for (int e : m.darts().rotation(cand)) {
            // cyclically next dart at cand after the spoke back to v
            if (m.head(e) != v) continue;
            int x = m.next(e);
            while (m.head(x) == v && x != e) x = m.next(x);
            if (m.head(x) == v) break; // every edge at cand leads to v
            u = cand;
            follow = x;
            break;
        }
        if (u >= 0) break;
    }
    if (u < 0) return std::nullopt;
    int idx = 0; // slot of `follow` in u's rotation with spokes removed
    for (int e : m.darts().rotation(u)) {
        if (e == follow) break;
        if (m.head(e) != v) ++idx;
    }
    std::vector<int> res_rot = out.map.darts().rotation(new_id[static_cast<std::size_t>(u)]);
    assert(idx < static_cast<int>(res_rot.size()));
    out.outer_dart = res_rot[static_cast<std::size_t>(idx)];
    for (int d : m.darts().rotation(v))
        out.ray_vertices.push_back(new_id[static_cast<std::size_t>(m.head(d))]);
    return out;
}

} // namespace mapdraw
