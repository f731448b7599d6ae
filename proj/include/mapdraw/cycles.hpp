#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "mapdraw/overlay.hpp"

namespace mapdraw {

enum class CenterKind { Face, EdgeMid, Vertex };

/// One candidate way to start a cycle system. Face: the cycles share a point
/// inside face `face` and the first cycle leaves by crossing `dart`. EdgeMid:
/// the shared point is the midpoint of dart's edge and the first cycle starts
/// in the corner on dart's left. Vertex: the shared point is `vertex` and the
/// first cycle starts in its corner clockwise-after `dart`.
struct StartConfig {
    CenterKind kind = CenterKind::Face;
    int face = -1;
    int dart = -1;
    int vertex = -1;
};

struct CrossEvent {
    bool at_vertex = false;
    int index = -1; // crossed edge id, or passed-through vertex id
    bool operator==(const CrossEvent&) const = default;
};

struct NcCycle {
    int curve = -1;
    std::vector<CrossEvent> events;
    int length() const { return static_cast<int>(events.size()); }
};

struct SearchParams {
    bool allow_vertex_cross = false;
    std::vector<char> forbidden_edge;   // indexed by edge id; 1 = never cross
    std::vector<char> forbidden_vertex; // indexed by vertex id; 1 = never pass through
    long node_budget = 400000;
};

/// A full system of cycles drawn on an overlay, ready to cut.
struct CutPlan {
    bool fundamental = true;
    Overlay overlay;
    std::vector<NcCycle> cycles;
    StartConfig config;
};

inline bool connected_after_cut(const Overlay& ov) { return ov.components_after_cut() == 1; }

/// A cycle is contractible iff cutting along it alone splits the surface and
/// one of the two pieces is a disk (genus zero after capping the cut face).
inline bool is_contractible(const Overlay& ov, int curve) {
    Overlay solo = ov.restricted({curve});
    CutMap cm = solo.cut();
    const DartMap& m = cm.map;
    const int nv = m.vertex_count();
    std::vector<int> comp(static_cast<std::size_t>(nv), -1);
    int ncomp = 0;
    std::vector<int> stack;
    for (int v = 0; v < nv; ++v) {
        if (comp[static_cast<std::size_t>(v)] >= 0) continue;
        comp[static_cast<std::size_t>(v)] = ncomp;
        stack.assign(1, v);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int d : m.rotation(u)) {
                int h = m.origin[static_cast<std::size_t>(m.twin[static_cast<std::size_t>(d)])];
                if (comp[static_cast<std::size_t>(h)] < 0) {
                    comp[static_cast<std::size_t>(h)] = ncomp;
                    stack.push_back(h);
                }
            }
        }
        ++ncomp;
    }
    if (ncomp == 1) return false;
    std::vector<int> vc(static_cast<std::size_t>(ncomp), 0);
    std::vector<int> dc(static_cast<std::size_t>(ncomp), 0);
    std::vector<int> fc(static_cast<std::size_t>(ncomp), 0);
    for (int v = 0; v < nv; ++v) ++vc[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])];
    for (int d = 0; d < m.dart_count(); ++d)
        ++dc[static_cast<std::size_t>(comp[static_cast<std::size_t>(m.origin[static_cast<std::size_t>(d)])])];
    FaceSet fs = trace_faces(m);
    for (int f = 0; f < fs.count(); ++f) {
        int d = fs.face_darts[static_cast<std::size_t>(f)].front();
        ++fc[static_cast<std::size_t>(comp[static_cast<std::size_t>(m.origin[static_cast<std::size_t>(d)])])];
    }
    for (int c = 0; c < ncomp; ++c) {
        int chi = vc[static_cast<std::size_t>(c)] - dc[static_cast<std::size_t>(c)] / 2 +
                  fc[static_cast<std::size_t>(c)];
        if (chi == 2) return true; // this piece is a sphere, the cycle bounded a disk
    }
    return false;
}

/// Depth-first search for one more cycle on top of a committed overlay.
/// Iterative deepening over the exact crossing count keeps the first hit
/// shortest; seed order breaks ties deterministically.
class CycleSearcher {
  public:
    struct Found {
        Overlay overlay;
        NcCycle cycle;
    };

    /// start.vertex >= 0: begin at that corner. forced_dart >= 0: the cycle's
    /// first move crosses that dart; with no start corner the cycle is a loop
    /// anchored at the crossing point itself.
    struct Seed {
        Corner start{};
        int forced_dart = -1;
    };

    CycleSearcher(const CombinatorialMap& base, const SearchParams& params)
        : base_(&base), params_(&params) {}

    bool budget_hit() const { return budget_hit_; }

    /// close_center >= 0: cycles end at any corner of that overlay vertex.
    /// Otherwise each seed must loop back to the corner facing its first
    /// crossing. Accept gets the candidate overlay with the cycle inserted.
    template <class Accept>
    std::optional<Found> search(const Overlay& committed, const std::vector<Seed>& seeds,
                                int close_center, int min_len, int max_len, Accept&& accept) {
        budget_ = params_->node_budget;
        budget_hit_ = false;
        found_.reset();
        for (int len = std::max(min_len, 1); len <= max_len; ++len) {
            for (const Seed& seed : seeds) {
                Overlay ov = committed;
                int curve = ov.begin_curve();
                CloseSpec close;
                close.center = close_center;
                Corner tip = seed.start;
                int remaining = len;
                events_.clear();
                if (seed.forced_dart >= 0) {
                    if (!crossable(ov, seed.forced_dart)) continue;
                    int e = base_->edge_of(ov.orig(seed.forced_dart));
                    int back = -1, fwd = -1;
                    int w = ov.subdivide(seed.forced_dart, &back, &fwd);
                    events_.push_back({false, e});
                    if (seed.start.vertex >= 0) {
                        ov.insert_chord(seed.start, Corner{w, back}, curve);
                    } else {
                        close.center = -1;
                        close.anchor = Corner{w, back};
                        close.use_anchor = true;
                    }
                    tip = Corner{w, fwd};
                    remaining = len - 1;
                }
                if (dfs(ov, tip, remaining, close, curve, accept)) {
                    Found out = std::move(*found_);
                    found_.reset();
                    return out;
                }
                if (budget_hit_) return std::nullopt;
            }
        }
        return std::nullopt;
    }

  private:
    struct CloseSpec {
        int center = -1;
        Corner anchor{};
        bool use_anchor = false;
    };

    bool crossable(const Overlay& ov, int dart) const {
        int od = ov.orig(dart);
        if (od < 0) return false;
        int e = base_->edge_of(od);
        const auto& f = params_->forbidden_edge;
        return e >= static_cast<int>(f.size()) || f[static_cast<std::size_t>(e)] == 0;
    }

    bool vertex_forbidden(int v) const {
        const auto& f = params_->forbidden_vertex;
        return v < static_cast<int>(f.size()) && f[static_cast<std::size_t>(v)] != 0;
    }

    template <class Accept>
    bool dfs(const Overlay& ov, Corner tip, int remaining, const CloseSpec& close, int curve,
             Accept&& accept) {
        if (--budget_ < 0) {
            budget_hit_ = true;
            return false;
        }
        const DartMap& m = ov.darts();
        const int s0 = m.next[static_cast<std::size_t>(tip.after)];
        int s = s0;
        do {
            Corner before{m.origin[static_cast<std::size_t>(s)], m.prev[static_cast<std::size_t>(s)]};
            if (!(before == tip)) {
                if (remaining == 0) {
                    bool match = close.use_anchor ? before == close.anchor
                                                  : before.vertex == close.center;
                    if (match) {
                        if (--budget_ < 0) {
                            budget_hit_ = true;
                            return false;
                        }
                        Overlay cand = ov;
                        cand.insert_chord(tip, before, curve);
                        if (accept(cand, curve)) {
                            found_.emplace(Found{std::move(cand), NcCycle{curve, events_}});
                            return true;
                        }
                    }
                } else if (params_->allow_vertex_cross) {
                    int z = before.vertex;
                    if (ov.kind(z) == PointKind::Original && z != close.center &&
                        !ov.is_vertex_cut(z) && !vertex_forbidden(z)) {
                        // pass straight through the vertex: enter at this
                        // corner, leave by any corner but the entry gap
                        std::vector<int> rot = m.rotation(z);
                        std::size_t idx = 0;
                        while (rot[idx] != before.after) ++idx;
                        events_.push_back({true, z});
                        for (std::size_t k = 1; k < rot.size(); ++k) {
                            int q = rot[(idx + k) % rot.size()];
                            Overlay cand = ov;
                            cand.insert_chord(tip, before, curve);
                            cand.mark_cut_vertex(curve, z);
                            bool ok = dfs(cand, Corner{z, q}, remaining - 1, close, curve, accept);
                            if (ok) {
                                events_.pop_back();
                                return true;
                            }
                            if (budget_hit_) {
                                events_.pop_back();
                                return false;
                            }
                        }
                        events_.pop_back();
                    }
                }
            }
            if (remaining > 0 && crossable(ov, s)) {
                int e = base_->edge_of(ov.orig(s));
                Overlay cand = ov;
                int back = -1, fwd = -1;
                int w = cand.subdivide(s, &back, &fwd);
                cand.insert_chord(tip, Corner{w, back}, curve);
                events_.push_back({false, e});
                bool ok = dfs(cand, Corner{w, fwd}, remaining - 1, close, curve, accept);
                events_.pop_back();
                if (ok) return true;
                if (budget_hit_) return false;
            }
            s = m.next[static_cast<std::size_t>(m.twin[static_cast<std::size_t>(s)])];
        } while (s != s0);
        return false;
    }

    const CombinatorialMap* base_;
    const SearchParams* params_;
    long budget_ = 0;
    bool budget_hit_ = false;
    std::vector<CrossEvent> events_;
    std::optional<Found> found_;
};

/// All (face, dart) starting configurations: faces largest first, then by id,
/// darts in face orbit order.
inline std::vector<StartConfig> enumerate_start_configs(const CombinatorialMap& map) {
    FaceSet fs = trace_faces(map.darts());
    std::vector<int> order(static_cast<std::size_t>(fs.count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (fs.size(a) != fs.size(b)) return fs.size(a) > fs.size(b);
        return a < b;
    });
    std::vector<StartConfig> out;
    for (int f : order)
        for (int d : fs.face_darts[static_cast<std::size_t>(f)])
            out.push_back({CenterKind::Face, f, d, -1});
    return out;
}

/// Same pairs as the face configurations, with the shared point moved to the
/// midpoint of each pair's edge.
inline std::vector<StartConfig> enumerate_edge_configs(const CombinatorialMap& map) {
    std::vector<StartConfig> out = enumerate_start_configs(map);
    for (StartConfig& c : out) c.kind = CenterKind::EdgeMid;
    return out;
}

/// Vertex-centered configurations: vertices of highest degree first, then by
/// id, corners in rotation order.
inline std::vector<StartConfig> enumerate_vertex_configs(const CombinatorialMap& map) {
    std::vector<int> order(static_cast<std::size_t>(map.vertex_count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (map.degree(a) != map.degree(b)) return map.degree(a) > map.degree(b);
        return a < b;
    });
    std::vector<StartConfig> out;
    for (int v : order)
        for (int q : map.darts().rotation(v)) out.push_back({CenterKind::Vertex, -1, q, v});
    return out;
}

struct Center {
    CenterKind kind = CenterKind::Face;
    int face = -1;
    int edge = -1;
    int vertex = -1;
};

/// Shortest non-contractible cycle through the given center, if any exists
/// within the crossing-count cap of twice the edge count.
inline std::optional<CycleSearcher::Found> find_nc_cycle(const CombinatorialMap& map,
                                                         const Center& center, int min_length,
                                                         const SearchParams& params) {
    Overlay ov(map);
    CycleSearcher searcher(map, params);
    std::vector<CycleSearcher::Seed> seeds;
    int close_center = -1;
    switch (center.kind) {
    case CenterKind::Face: {
        int c = ov.add_center_point();
        ov.set_center(c);
        close_center = c;
        FaceSet fs = trace_faces(map.darts());
        for (int d : fs.face_darts[static_cast<std::size_t>(center.face)])
            seeds.push_back({Corner{c, -1}, d});
        break;
    }
    case CenterKind::EdgeMid: {
        int back = -1, fwd = -1;
        int w = ov.subdivide(map.edge_dart(center.edge), &back, &fwd);
        ov.set_center(w);
        close_center = w;
        seeds.push_back({Corner{w, back}, -1});
        seeds.push_back({Corner{w, fwd}, -1});
        break;
    }
    case CenterKind::Vertex: {
        ov.set_center(center.vertex);
        close_center = center.vertex;
        for (int q : map.darts().rotation(center.vertex))
            seeds.push_back({Corner{center.vertex, q}, -1});
        break;
    }
    }
    auto accept = [](Overlay& cand, int curve) { return !is_contractible(cand, curve); };
    return searcher.search(ov, seeds, close_center, min_length, 2 * map.edge_count(), accept);
}

/// One side of the cut polygon: a maximal run of chord copies belonging to
/// one bank of one cycle, in boundary orbit order.
struct PolygonSide {
    int curve = -1;
    int side = -1; // 0 right bank, 1 left bank
    std::vector<int> darts;
};

struct FundamentalBoundary {
    int face = -1;
    std::vector<PolygonSide> sides;
};

/// Locates the single all-chord face of a fundamental cut and splits its
/// boundary into polygon sides. Fails if the cut does not have the shape of a
/// fundamental polygon: one chord face, 4g sides, each bank exactly once.
inline std::optional<FundamentalBoundary> fundamental_boundary(const CutMap& cm, int genus_count) {
    FaceSet fs = trace_faces(cm.map);
    int chord_face = -1;
    for (int f = 0; f < fs.count(); ++f) {
        const std::vector<int>& orbit = fs.face_darts[static_cast<std::size_t>(f)];
        bool all_chords = true;
        for (int d : orbit)
            if (cm.orig_dart[static_cast<std::size_t>(d)] >= 0) all_chords = false;
        if (!all_chords) continue;
        if (chord_face >= 0) return std::nullopt;
        chord_face = f;
    }
    if (chord_face < 0) return std::nullopt;

    const std::vector<int>& orbit = fs.face_darts[static_cast<std::size_t>(chord_face)];
    const int n = static_cast<int>(orbit.size());
    auto key = [&](int i) {
        int d = orbit[static_cast<std::size_t>(i)];
        return std::pair<int, int>(cm.chord_curve[static_cast<std::size_t>(d)],
                                   cm.chord_side[static_cast<std::size_t>(d)]);
    };
    int start = -1;
    for (int i = 0; i < n; ++i)
        if (key(i) != key((i + n - 1) % n)) {
            start = i;
            break;
        }
    if (start < 0) return std::nullopt;

    FundamentalBoundary out;
    out.face = chord_face;
    for (int i = 0; i < n;) {
        PolygonSide side;
        auto k = key((start + i) % n);
        side.curve = k.first;
        side.side = k.second;
        while (i < n && key((start + i) % n) == k) {
            side.darts.push_back(orbit[static_cast<std::size_t>((start + i) % n)]);
            ++i;
        }
        out.sides.push_back(std::move(side));
    }
    if (static_cast<int>(out.sides.size()) != 4 * genus_count) return std::nullopt;
    std::vector<std::array<char, 2>> seen(static_cast<std::size_t>(2 * genus_count), {0, 0});
    for (const PolygonSide& s : out.sides) {
        if (s.curve < 0 || s.curve >= 2 * genus_count || s.side < 0) return std::nullopt;
        if (seen[static_cast<std::size_t>(s.curve)][static_cast<std::size_t>(s.side)]) return std::nullopt;
        seen[static_cast<std::size_t>(s.curve)][static_cast<std::size_t>(s.side)] = 1;
    }
    return out;
}

/// The two banks of one cut cycle must visit the same crossing points in
/// opposite boundary order.
inline bool check_disjoint_identification(const CutMap& cm, const FaceSet& fs, int face_a,
                                          int face_b) {
    auto points = [&](int f) {
        std::vector<int> out;
        for (int d : fs.face_darts[static_cast<std::size_t>(f)])
            out.push_back(
                cm.vinfo[static_cast<std::size_t>(cm.map.origin[static_cast<std::size_t>(d)])]
                    .overlay_vertex);
        return out;
    };
    std::vector<int> a = points(face_a);
    std::vector<int> b = points(face_b);
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    std::reverse(b.begin(), b.end());
    std::vector<int> doubled(a);
    doubled.insert(doubled.end(), a.begin(), a.end());
    return std::search(doubled.begin(), doubled.end(), b.begin(), b.end()) != doubled.end();
}

struct CurveFacePair {
    int curve = -1;
    int right_face = -1;
    int left_face = -1;
};

/// Locates the two all-chord faces each disjoint cycle leaves behind and
/// checks they identify point for point.
inline std::optional<std::vector<CurveFacePair>> disjoint_cut_faces(const CutMap& cm,
                                                                    int genus_count) {
    FaceSet fs = trace_faces(cm.map);
    std::vector<std::array<int, 2>> got(static_cast<std::size_t>(genus_count), {-1, -1});
    int chord_faces = 0;
    for (int f = 0; f < fs.count(); ++f) {
        const std::vector<int>& orbit = fs.face_darts[static_cast<std::size_t>(f)];
        bool all_chords = true;
        for (int d : orbit)
            if (cm.orig_dart[static_cast<std::size_t>(d)] >= 0) all_chords = false;
        if (!all_chords) continue;
        ++chord_faces;
        int curve = cm.chord_curve[static_cast<std::size_t>(orbit[0])];
        int side = cm.chord_side[static_cast<std::size_t>(orbit[0])];
        for (int d : orbit)
            if (cm.chord_curve[static_cast<std::size_t>(d)] != curve ||
                cm.chord_side[static_cast<std::size_t>(d)] != side)
                return std::nullopt;
        if (curve < 0 || curve >= genus_count || side < 0) return std::nullopt;
        if (got[static_cast<std::size_t>(curve)][static_cast<std::size_t>(side)] >= 0)
            return std::nullopt;
        got[static_cast<std::size_t>(curve)][static_cast<std::size_t>(side)] = f;
    }
    if (chord_faces != 2 * genus_count) return std::nullopt;
    std::vector<CurveFacePair> out;
    for (int c = 0; c < genus_count; ++c) {
        CurveFacePair p;
        p.curve = c;
        p.right_face = got[static_cast<std::size_t>(c)][0];
        p.left_face = got[static_cast<std::size_t>(c)][1];
        if (p.right_face < 0 || p.left_face < 0) return std::nullopt;
        if (!check_disjoint_identification(cm, fs, p.right_face, p.left_face)) return std::nullopt;
        out.push_back(p);
    }
    return out;
}

/// Replays every original edge through the cut map and rebuilds every original
/// rotation from the vertex copies; the cut is faithful iff both reproduce the
/// input map exactly.
inline bool verify_cut_roundtrip(const CombinatorialMap& base, const CutMap& cm) {
    const DartMap& m = cm.map;
    const int nd = m.dart_count();
    const int nbd = base.dart_count();

    std::vector<std::vector<int>> darts_of(static_cast<std::size_t>(nbd));
    for (int d = 0; d < nd; ++d) {
        int od = cm.orig_dart[static_cast<std::size_t>(d)];
        if (od >= 0) {
            if (od >= nbd) return false;
            darts_of[static_cast<std::size_t>(od)].push_back(d);
        }
    }

    std::vector<char> used(static_cast<std::size_t>(nd), 0);
    auto vertex_info = [&](int d) -> const CutVertexInfo& {
        return cm.vinfo[static_cast<std::size_t>(m.origin[static_cast<std::size_t>(d)])];
    };
    for (int od = 0; od < nbd; ++od) {
        const std::vector<int>& cands = darts_of[static_cast<std::size_t>(od)];
        int cur = -1;
        for (int d : cands)
            if (vertex_info(d).orig_vertex == base.origin(od)) {
                if (cur >= 0) return false;
                cur = d;
            }
        if (cur < 0) return false;
        std::size_t steps = 0;
        for (;;) {
            if (used[static_cast<std::size_t>(cur)] || ++steps > cands.size()) return false;
            used[static_cast<std::size_t>(cur)] = 1;
            int h = m.origin[static_cast<std::size_t>(m.twin[static_cast<std::size_t>(cur)])];
            const CutVertexInfo& hv = cm.vinfo[static_cast<std::size_t>(h)];
            if (hv.orig_vertex >= 0) {
                if (hv.orig_vertex != base.head(od)) return false;
                break;
            }
            int next = -1;
            for (int d : cands)
                if (!used[static_cast<std::size_t>(d)] &&
                    vertex_info(d).overlay_vertex == hv.overlay_vertex) {
                    if (next >= 0) return false;
                    next = d;
                }
            if (next < 0) return false;
            cur = next;
        }
        for (int d : cands)
            if (!used[static_cast<std::size_t>(d)]) return false;
    }

    // group vertex copies and replay each original rotation
    std::vector<std::vector<int>> copies(static_cast<std::size_t>(base.vertex_count()));
    for (int v = 0; v < static_cast<int>(cm.vinfo.size()); ++v) {
        const CutVertexInfo& info = cm.vinfo[static_cast<std::size_t>(v)];
        if (info.orig_vertex >= 0) {
            if (info.orig_vertex >= base.vertex_count()) return false;
            copies[static_cast<std::size_t>(info.orig_vertex)].push_back(v);
        }
    }
    for (int u = 0; u < base.vertex_count(); ++u) {
        std::vector<int>& cs = copies[static_cast<std::size_t>(u)];
        std::sort(cs.begin(), cs.end(), [&](int a, int b) {
            return cm.vinfo[static_cast<std::size_t>(a)].copy_index <
                   cm.vinfo[static_cast<std::size_t>(b)].copy_index;
        });
        std::vector<int> seq;
        for (int c : cs)
            for (int d : m.rotation(c)) {
                int od = cm.orig_dart[static_cast<std::size_t>(d)];
                if (od >= 0) seq.push_back(od);
            }
        std::vector<int> want = base.darts().rotation(u);
        if (seq.size() != want.size()) return false;
        if (seq.empty()) continue;
        std::vector<int> doubled(seq);
        doubled.insert(doubled.end(), seq.begin(), seq.end());
        if (std::search(doubled.begin(), doubled.end(), want.begin(), want.end()) == doubled.end())
            return false;
    }
    return true;
}

inline CutMap cut_along(const CutPlan& plan) { return plan.overlay.cut(); }

/// Grows a fundamental system: 2g cycles through one shared center, each
/// shortest first, keeping the cut surface connected after every cycle, then
/// validates the polygon shape of the final cut.
inline std::optional<CutPlan> find_fundamental_system(const CombinatorialMap& map,
                                                      const SearchParams& params,
                                                      const StartConfig& config) {
    const int g = genus(map);
    if (g <= 0) return std::nullopt;
    Overlay ov(map);
    CycleSearcher searcher(map, params);
    int close_center = -1;
    std::vector<CycleSearcher::Seed> first_seeds;
    switch (config.kind) {
    case CenterKind::Face: {
        int c = ov.add_center_point();
        ov.set_center(c);
        close_center = c;
        first_seeds.push_back({Corner{c, -1}, config.dart});
        break;
    }
    case CenterKind::EdgeMid: {
        int back = -1, fwd = -1;
        int w = ov.subdivide(config.dart, &back, &fwd);
        ov.set_center(w);
        close_center = w;
        first_seeds.push_back({Corner{w, back}, -1});
        break;
    }
    case CenterKind::Vertex: {
        ov.set_center(config.vertex);
        close_center = config.vertex;
        first_seeds.push_back({Corner{config.vertex, config.dart}, -1});
        break;
    }
    }
    std::vector<NcCycle> cycles;
    int min_len = 1;
    const int cap = 2 * map.edge_count();
    auto accept = [](Overlay& cand, int) { return cand.components_after_cut() == 1; };
    for (int i = 0; i < 2 * g; ++i) {
        std::vector<CycleSearcher::Seed> seeds;
        if (i == 0) {
            seeds = first_seeds;
        } else {
            for (int q : ov.darts().rotation(close_center))
                seeds.push_back({Corner{close_center, q}, -1});
        }
        auto found = searcher.search(ov, seeds, close_center, min_len, cap, accept);
        if (!found) return std::nullopt;
        min_len = found->cycle.length();
        cycles.push_back(std::move(found->cycle));
        ov = std::move(found->overlay);
    }
    CutMap cm = ov.cut();
    if (cm.map.component_count() != 1) return std::nullopt;
    EulerInfo ei = euler_info(cm.map);
    if (!euler_genus_valid(ei) || ei.genus != 0) return std::nullopt;
    if (!fundamental_boundary(cm, g)) return std::nullopt;
    if (!verify_cut_roundtrip(map, cm)) return std::nullopt;
    return CutPlan{true, std::move(ov), std::move(cycles), config};
}

/// Grows g pairwise disjoint cycles, each a loop anchored at its first
/// crossing, keeping the cut connected, then validates that each cycle left
/// two matching cut faces.
inline std::optional<CutPlan> find_disjoint_system(const CombinatorialMap& map,
                                                   const SearchParams& params,
                                                   const StartConfig& config) {
    const int g = genus(map);
    if (g <= 0) return std::nullopt;
    Overlay ov(map);
    CycleSearcher searcher(map, params);
    std::vector<NcCycle> cycles;
    int min_len = 1;
    const int cap = 2 * map.edge_count();
    auto accept = [](Overlay& cand, int) { return cand.components_after_cut() == 1; };
    for (int i = 0; i < g; ++i) {
        std::vector<CycleSearcher::Seed> seeds;
        if (i == 0) {
            seeds.push_back({Corner{-1, -1}, config.dart});
        } else {
            FaceSet fs = trace_faces(ov.darts());
            std::vector<int> order(static_cast<std::size_t>(fs.count()));
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (fs.size(a) != fs.size(b)) return fs.size(a) > fs.size(b);
                return a < b;
            });
            for (int f : order)
                for (int d : fs.face_darts[static_cast<std::size_t>(f)])
                    if (ov.orig(d) >= 0) seeds.push_back({Corner{-1, -1}, d});
        }
        auto found = searcher.search(ov, seeds, -1, min_len, cap, accept);
        if (!found) return std::nullopt;
        min_len = found->cycle.length();
        cycles.push_back(std::move(found->cycle));
        ov = std::move(found->overlay);
    }
    CutMap cm = ov.cut();
    if (cm.map.component_count() != 1) return std::nullopt;
    EulerInfo ei = euler_info(cm.map);
    if (!euler_genus_valid(ei) || ei.genus != 0) return std::nullopt;
    if (!disjoint_cut_faces(cm, g)) return std::nullopt;
    if (!verify_cut_roundtrip(map, cm)) return std::nullopt;
    return CutPlan{false, std::move(ov), std::move(cycles), config};
}

} // namespace mapdraw
