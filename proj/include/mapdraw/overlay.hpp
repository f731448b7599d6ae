#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "mapdraw/dartmap.hpp"
#include "mapdraw/map.hpp"

namespace mapdraw {

/// Corner of a rotation: the gap clockwise-after dart `after` at `vertex`.
/// after = -1 addresses the whole neighbourhood of a still dartless vertex.
struct Corner {
    int vertex = -1;
    int after = -1;
    bool operator==(const Corner&) const = default;
};

enum class PointKind { Original, EdgePoint, CenterPoint };

enum class CopyKind { Plain, EdgeCross, CenterCorner, CutVertex };

/// Provenance of one vertex of the cut map.
struct CutVertexInfo {
    CopyKind kind = CopyKind::Plain;
    int overlay_vertex = -1; // vertex of the overlay this copy descends from
    int copy_index = 0;      // sector position among the copies of that vertex
    int orig_vertex = -1;    // original vertex id when the point descends from one
    int orig_edge = -1;      // original edge id for points sitting on an edge
    int dest_label = -1;     // original vertex the crossed edge finally leads to
    int curve = -1;          // crossing curve (EdgeCross copies)
    int side = -1;           // 0 = right bank of travel, 1 = left bank
};

/// Plane map obtained by cutting, with provenance back to the input map.
struct CutMap {
    DartMap map;
    std::vector<CutVertexInfo> vinfo; // per cut vertex
    std::vector<int> orig_dart;       // per dart: original-map dart or -1
    std::vector<int> chord_curve;     // per dart: curve id or -1
    std::vector<int> chord_side;      // per dart: 0 right, 1 left, -1 n/a
    std::vector<int> chord_forward;   // per dart: 1 along travel, 0 against, -1 n/a
    int curve_count = 0;
};

/// Mutable copy of a map into which cutting curves are drawn chord by chord.
/// Original darts stay traceable through subdivisions via orig(); chord darts
/// carry their curve id. Copying an Overlay is cheap and is how the searcher
/// backtracks.
class Overlay {
  public:
    explicit Overlay(const CombinatorialMap& base)
        : base_(&base),
          m_(base.darts()),
          orig_(static_cast<std::size_t>(base.dart_count())),
          curve_of_(static_cast<std::size_t>(base.dart_count()), -1),
          forward_(static_cast<std::size_t>(base.dart_count()), 0),
          kind_(static_cast<std::size_t>(base.vertex_count()), PointKind::Original),
          src_edge_(static_cast<std::size_t>(base.vertex_count()), -1),
          cut_flag_(static_cast<std::size_t>(base.vertex_count()), 0) {
        for (int d = 0; d < base.dart_count(); ++d) orig_[static_cast<std::size_t>(d)] = d;
    }

    const CombinatorialMap& base() const { return *base_; }
    const DartMap& darts() const { return m_; }
    int orig(int d) const { return orig_[static_cast<std::size_t>(d)]; }
    int curve_of(int d) const { return curve_of_[static_cast<std::size_t>(d)]; }
    bool chord_forward(int d) const { return forward_[static_cast<std::size_t>(d)] != 0; }
    PointKind kind(int v) const { return kind_[static_cast<std::size_t>(v)]; }
    int src_edge(int v) const { return src_edge_[static_cast<std::size_t>(v)]; }
    bool is_vertex_cut(int v) const { return cut_flag_[static_cast<std::size_t>(v)] != 0; }
    int center() const { return center_; }
    void set_center(int v) { center_ = v; }

    int curve_count() const { return static_cast<int>(curves_.size()); }
    const std::vector<int>& chords(int curve) const { return curves_[static_cast<std::size_t>(curve)]; }
    const std::vector<int>& cut_vertices(int curve) const { return curve_cuts_[static_cast<std::size_t>(curve)]; }

    int begin_curve() {
        curves_.emplace_back();
        curve_cuts_.emplace_back();
        return curve_count() - 1;
    }

    void mark_cut_vertex(int curve, int v) {
        cut_flag_[static_cast<std::size_t>(v)] = 1;
        curve_cuts_[static_cast<std::size_t>(curve)].push_back(v);
    }

    /// Dartless point placed inside a face (the shared cycle center).
    int add_center_point() {
        int v = m_.add_vertex();
        kind_.push_back(PointKind::CenterPoint);
        src_edge_.push_back(-1);
        cut_flag_.push_back(0);
        return v;
    }

    /// Splits dart d = (u -> v) at a new point w. d keeps its links at u and
    /// becomes (u -> w); twin(d) likewise becomes (v -> w). The new darts at w
    /// are back = (w -> u) and fwd = (w -> v); w's rotation is (back, fwd).
    /// The corner (w, back) faces the side d faces; (w, fwd) the other side.
    int subdivide(int d, int* back_dart = nullptr, int* fwd_dart = nullptr) {
        int t = m_.twin[static_cast<std::size_t>(d)];
        int w = m_.add_vertex();
        kind_.push_back(PointKind::EdgePoint);
        src_edge_.push_back(base_->edge_of(orig(d)));
        cut_flag_.push_back(0);

        auto [back, fwd] = m_.add_edge_darts(w, w);
        // rewire twins: {d, back} and {t, fwd} are the two half edges
        m_.twin[static_cast<std::size_t>(d)] = back;
        m_.twin[static_cast<std::size_t>(back)] = d;
        m_.twin[static_cast<std::size_t>(t)] = fwd;
        m_.twin[static_cast<std::size_t>(fwd)] = t;
        m_.next[static_cast<std::size_t>(back)] = fwd;
        m_.next[static_cast<std::size_t>(fwd)] = back;
        m_.prev[static_cast<std::size_t>(back)] = fwd;
        m_.prev[static_cast<std::size_t>(fwd)] = back;
        m_.vertex_dart[static_cast<std::size_t>(w)] = back;

        orig_.insert(orig_.end(), {orig(t), orig(d)});
        curve_of_.insert(curve_of_.end(), {-1, -1});
        forward_.insert(forward_.end(), {0, 0});
        if (back_dart) *back_dart = back;
        if (fwd_dart) *fwd_dart = fwd;
        return w;
    }

    /// Draws a curve chord between two corners of a common face. Returns the
    /// dart pointing from `from` to `to`; its twin is the reverse.
    int insert_chord(Corner from, Corner to, int curve) {
        assert(!(from == to));
        auto [x, y] = m_.add_edge_darts(from.vertex, to.vertex);
        orig_.insert(orig_.end(), {-1, -1});
        curve_of_.insert(curve_of_.end(), {curve, curve});
        forward_.insert(forward_.end(), {1, 0});
        if (from.after >= 0)
            m_.link_after(from.after, x);
        else
            m_.link_single(x);
        if (to.after >= 0)
            m_.link_after(to.after, y);
        else
            m_.link_single(y);
        curves_[static_cast<std::size_t>(curve)].push_back(x);
        return x;
    }

    /// Cuts the surface open along every inserted curve: each vertex carrying
    /// curve darts splits into one copy per rotation sector between
    /// consecutive curve darts, and every chord doubles into its two banks.
    CutMap cut() const {
        const int nd = m_.dart_count();
        const int nv = m_.vertex_count();
        CutMap out;
        out.curve_count = curve_count();

        std::vector<int> plain_copy(static_cast<std::size_t>(nd), -1);
        std::vector<int> after_copy(static_cast<std::size_t>(nd), -1); // per curve dart
        std::vector<int> before_copy(static_cast<std::size_t>(nd), -1);

        // pass 1: create cut vertices and per-vertex rotations of old darts,
        // remembering which new dart slot each old dart (or copy) occupies
        struct Slot {
            int old_dart;
            int role; // 0 plain, 1 after-copy, 2 before-copy
        };
        std::vector<std::vector<Slot>> rot_new; // rotation of each new vertex

        auto new_vertex = [&](CutVertexInfo info) {
            out.vinfo.push_back(info);
            rot_new.emplace_back();
            return static_cast<int>(out.vinfo.size()) - 1;
        };

        for (int v = 0; v < nv; ++v) {
            std::vector<int> rot = m_.rotation(v);
            if (rot.empty()) continue; // unused dartless point: drop it
            std::vector<int> curve_pos;
            for (int i = 0; i < static_cast<int>(rot.size()); ++i)
                if (curve_of(rot[static_cast<std::size_t>(i)]) >= 0) curve_pos.push_back(i);

            if (curve_pos.empty()) {
                CutVertexInfo info;
                info.kind = CopyKind::Plain;
                info.overlay_vertex = v;
                info.orig_vertex = kind(v) == PointKind::Original ? v : -1;
                int nvtx = new_vertex(info);
                for (int d : rot) {
                    plain_copy[static_cast<std::size_t>(d)] = nvtx;
                    rot_new[static_cast<std::size_t>(nvtx)].push_back({d, 0});
                }
                continue;
            }

            const int k = static_cast<int>(curve_pos.size());
            for (int j = 0; j < k; ++j) {
                int p = rot[static_cast<std::size_t>(curve_pos[static_cast<std::size_t>(j)])];
                int qpos = curve_pos[static_cast<std::size_t>((j + 1) % k)];
                int q = rot[static_cast<std::size_t>(qpos)];

                CutVertexInfo info;
                info.overlay_vertex = v;
                info.copy_index = j;
                if (v == center_) {
                    info.kind = CopyKind::CenterCorner;
                    info.orig_vertex = kind(v) == PointKind::Original ? v : -1;
                    info.orig_edge = src_edge(v);
                } else if (kind(v) == PointKind::EdgePoint) {
                    info.kind = CopyKind::EdgeCross;
                    info.orig_edge = src_edge(v);
                    info.curve = curve_of(p);
                    // the sector opened by the forward (out) dart is the
                    // right bank of the travel direction
                    info.side = chord_forward(p) ? 0 : 1;
                } else {
                    info.kind = CopyKind::CutVertex;
                    info.orig_vertex = v;
                }
                int nvtx = new_vertex(info);

                auto& slots = rot_new[static_cast<std::size_t>(nvtx)];
                after_copy[static_cast<std::size_t>(p)] = nvtx;
                slots.push_back({p, 1});
                for (int i = curve_pos[static_cast<std::size_t>(j)] + 1;; ++i) {
                    int pos = i % static_cast<int>(rot.size());
                    if (pos == qpos) break;
                    int d = rot[static_cast<std::size_t>(pos)];
                    plain_copy[static_cast<std::size_t>(d)] = nvtx;
                    slots.push_back({d, 0});
                    // a crossing copy is labeled with the vertex reached by
                    // walking in along its attached half and on through the
                    // identification: the far end, not the near one
                    if (out.vinfo[static_cast<std::size_t>(nvtx)].kind != CopyKind::CutVertex &&
                        orig(d) >= 0)
                        out.vinfo[static_cast<std::size_t>(nvtx)].dest_label =
                            base_->origin(orig(d));
                }
                before_copy[static_cast<std::size_t>(q)] = nvtx;
                slots.push_back({q, 2});
            }
        }

        // pass 2: materialize darts grouped per new vertex
        const int total_vertices = static_cast<int>(out.vinfo.size());
        std::vector<int> slot_dart_plain(static_cast<std::size_t>(nd), -1);
        std::vector<int> slot_dart_after(static_cast<std::size_t>(nd), -1);
        std::vector<int> slot_dart_before(static_cast<std::size_t>(nd), -1);
        DartMap& cm = out.map;
        cm.vertex_dart.assign(static_cast<std::size_t>(total_vertices), -1);
        int id = 0;
        for (int v = 0; v < total_vertices; ++v)
            for (const Slot& s : rot_new[static_cast<std::size_t>(v)]) {
                if (s.role == 0)
                    slot_dart_plain[static_cast<std::size_t>(s.old_dart)] = id;
                else if (s.role == 1)
                    slot_dart_after[static_cast<std::size_t>(s.old_dart)] = id;
                else
                    slot_dart_before[static_cast<std::size_t>(s.old_dart)] = id;
                ++id;
            }
        const int total_darts = id;
        cm.twin.assign(static_cast<std::size_t>(total_darts), -1);
        cm.next.assign(static_cast<std::size_t>(total_darts), -1);
        cm.prev.assign(static_cast<std::size_t>(total_darts), -1);
        cm.origin.assign(static_cast<std::size_t>(total_darts), -1);
        out.orig_dart.assign(static_cast<std::size_t>(total_darts), -1);
        out.chord_curve.assign(static_cast<std::size_t>(total_darts), -1);
        out.chord_side.assign(static_cast<std::size_t>(total_darts), -1);
        out.chord_forward.assign(static_cast<std::size_t>(total_darts), -1);

        id = 0;
        for (int v = 0; v < total_vertices; ++v) {
            const auto& slots = rot_new[static_cast<std::size_t>(v)];
            int first = id;
            for (std::size_t i = 0; i < slots.size(); ++i, ++id) {
                const Slot& s = slots[i];
                cm.origin[static_cast<std::size_t>(id)] = v;
                cm.next[static_cast<std::size_t>(id)] = first + static_cast<int>((i + 1) % slots.size());
                cm.prev[static_cast<std::size_t>(id)] =
                    first + static_cast<int>((i + slots.size() - 1) % slots.size());
                int od = s.old_dart;
                if (s.role == 0) {
                    out.orig_dart[static_cast<std::size_t>(id)] = orig(od);
                } else {
                    out.chord_curve[static_cast<std::size_t>(id)] = curve_of(od);
                    out.chord_forward[static_cast<std::size_t>(id)] = chord_forward(od) ? 1 : 0;
                    bool right = (s.role == 1) == chord_forward(od);
                    out.chord_side[static_cast<std::size_t>(id)] = right ? 0 : 1;
                }
            }
            cm.vertex_dart[static_cast<std::size_t>(v)] = slots.empty() ? -1 : first;
        }

        for (int d = 0; d < nd; ++d) {
            int t = m_.twin[static_cast<std::size_t>(d)];
            if (curve_of(d) < 0) {
                if (slot_dart_plain[static_cast<std::size_t>(d)] >= 0)
                    cm.twin[static_cast<std::size_t>(slot_dart_plain[static_cast<std::size_t>(d)])] =
                        slot_dart_plain[static_cast<std::size_t>(t)];
            } else {
                // the two banks of a chord: after-copy pairs with the twin's
                // before-copy (right bank) and vice versa (left bank)
                cm.twin[static_cast<std::size_t>(slot_dart_after[static_cast<std::size_t>(d)])] =
                    slot_dart_before[static_cast<std::size_t>(t)];
                cm.twin[static_cast<std::size_t>(slot_dart_before[static_cast<std::size_t>(d)])] =
                    slot_dart_after[static_cast<std::size_t>(t)];
            }
        }
        return out;
    }

    int components_after_cut() const {
        // a still dartless center must not count as its own component
        if (curves_.empty() && center_ < 0) return m_.component_count();
        return cut().map.component_count();
    }

    /// Copy of this overlay keeping only the listed curves; other curves'
    /// chords disappear (their edge points stay as plain subdivision points).
    /// Used to test one cycle of a system in isolation.
    Overlay restricted(const std::vector<int>& keep) const {
        std::vector<char> keep_flag(static_cast<std::size_t>(curve_count()), 0);
        for (int c : keep) keep_flag[static_cast<std::size_t>(c)] = 1;
        auto alive = [&](int d) {
            int c = curve_of(d);
            return c < 0 || keep_flag[static_cast<std::size_t>(c)] != 0;
        };

        Overlay out(*base_);
        out.m_ = DartMap{};
        out.orig_.clear();
        out.curve_of_.clear();
        out.forward_.clear();
        out.kind_.clear();
        out.src_edge_.clear();
        out.cut_flag_.clear();

        std::vector<int> vmap(static_cast<std::size_t>(m_.vertex_count()), -1);
        for (int v = 0; v < m_.vertex_count(); ++v) {
            std::vector<int> rot = m_.rotation(v);
            bool any = false;
            for (int d : rot)
                if (alive(d)) any = true;
            if (!any) continue;
            vmap[static_cast<std::size_t>(v)] = out.m_.add_vertex();
            out.kind_.push_back(kind(v));
            out.src_edge_.push_back(src_edge(v));
            out.cut_flag_.push_back(0);
        }
        std::vector<int> dmap(static_cast<std::size_t>(m_.dart_count()), -1);
        for (int v = 0; v < m_.vertex_count(); ++v) {
            if (vmap[static_cast<std::size_t>(v)] < 0) continue;
            std::vector<int> rot = m_.rotation(v);
            int prev_new = -1, first_new = -1;
            for (int d : rot) {
                if (!alive(d)) continue;
                int nd2 = out.m_.dart_count();
                out.m_.twin.push_back(-1);
                out.m_.next.push_back(-1);
                out.m_.prev.push_back(-1);
                out.m_.origin.push_back(vmap[static_cast<std::size_t>(v)]);
                out.orig_.push_back(orig(d));
                out.curve_of_.push_back(curve_of(d));
                out.forward_.push_back(forward_[static_cast<std::size_t>(d)]);
                dmap[static_cast<std::size_t>(d)] = nd2;
                if (first_new < 0) first_new = nd2;
                if (prev_new >= 0) {
                    out.m_.next[static_cast<std::size_t>(prev_new)] = nd2;
                    out.m_.prev[static_cast<std::size_t>(nd2)] = prev_new;
                }
                prev_new = nd2;
            }
            if (first_new >= 0) {
                out.m_.next[static_cast<std::size_t>(prev_new)] = first_new;
                out.m_.prev[static_cast<std::size_t>(first_new)] = prev_new;
                out.m_.vertex_dart[static_cast<std::size_t>(vmap[static_cast<std::size_t>(v)])] = first_new;
            }
        }
        for (int d = 0; d < m_.dart_count(); ++d)
            if (dmap[static_cast<std::size_t>(d)] >= 0)
                out.m_.twin[static_cast<std::size_t>(dmap[static_cast<std::size_t>(d)])] =
                    dmap[static_cast<std::size_t>(m_.twin[static_cast<std::size_t>(d)])];

        for (int c = 0; c < curve_count(); ++c) {
            if (!keep_flag[static_cast<std::size_t>(c)]) continue;
            int nc = out.begin_curve();
            for (int ch : curves_[static_cast<std::size_t>(c)])
                out.curves_[static_cast<std::size_t>(nc)].push_back(dmap[static_cast<std::size_t>(ch)]);
            for (int v : curve_cuts_[static_cast<std::size_t>(c)])
                out.mark_cut_vertex(nc, vmap[static_cast<std::size_t>(v)]);
        }
        if (center_ >= 0 && vmap[static_cast<std::size_t>(center_)] >= 0)
            out.center_ = vmap[static_cast<std::size_t>(center_)];
        return out;
    }

  private:
    const CombinatorialMap* base_;
    DartMap m_;
    std::vector<int> orig_;
    std::vector<int> curve_of_;
    std::vector<char> forward_;
    std::vector<PointKind> kind_;
    std::vector<int> src_edge_;
    std::vector<char> cut_flag_;
    std::vector<std::vector<int>> curves_;
    std::vector<std::vector<int>> curve_cuts_;
    int center_ = -1;
};

} // namespace mapdraw
