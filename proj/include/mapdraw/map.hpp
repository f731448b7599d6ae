#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mapdraw/dartmap.hpp"

namespace mapdraw {

class MapError : public std::runtime_error {
  public:
    explicit MapError(const std::string& what) : std::runtime_error(what) {}
};

/// A map exactly as read from planarcode: vertex count plus each vertex's
/// neighbor list in clockwise rotation order. Vertices are 0-based here;
/// serialization shifts to the 1-based numbers of the wire format.
struct RawMap {
    std::vector<std::vector<int>> adj;

    int vertex_count() const { return static_cast<int>(adj.size()); }
};

struct Violation {
    enum Kind {
        BadVertexCount,
        IndexOutOfRange,
        AsymmetricAdjacency,
        OddLoopEntries,
        Disconnected,
    };
    Kind kind;
    std::string message;
};

using ValidationReport = std::vector<Violation>;

/// Structural checks a neighbor-list map must pass before darts can be
/// paired into a rotation system. An empty report means valid.
inline ValidationReport validate(const RawMap& raw) {
    ValidationReport report;
    int n = raw.vertex_count();
    if (n < 1) {
        report.push_back({Violation::BadVertexCount, "vertex count must be at least 1"});
        return report;
    }
    bool in_range = true;
    for (int v = 0; v < n; ++v) {
        for (int w : raw.adj[static_cast<std::size_t>(v)]) {
            if (w < 0 || w >= n) {
                report.push_back({Violation::IndexOutOfRange,
                                  "vertex " + std::to_string(v + 1) + " lists neighbor " +
                                      std::to_string(w + 1) + " outside 1.." + std::to_string(n)});
                in_range = false;
            }
        }
    }
    if (!in_range) return report;

    auto count_of = [&](int v, int w) {
        int c = 0;
        for (int x : raw.adj[static_cast<std::size_t>(v)])
            if (x == w) ++c;
        return c;
    };
    for (int v = 0; v < n; ++v) {
        int loops = count_of(v, v);
        if (loops % 2 != 0)
            report.push_back({Violation::OddLoopEntries,
                              "vertex " + std::to_string(v + 1) + " has " + std::to_string(loops) +
                                  " loop entries (loops need two)"});
        for (int w = v + 1; w < n; ++w) {
            int cv = count_of(v, w);
            int cw = count_of(w, v);
            if (cv != cw)
                report.push_back({Violation::AsymmetricAdjacency,
                                  "edge " + std::to_string(v + 1) + "-" + std::to_string(w + 1) +
                                      " listed " + std::to_string(cv) + " vs " +
                                      std::to_string(cw) + " times"});
        }
    }
    if (!report.empty()) return report;

    // connectivity over the underlying graph
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : raw.adj[static_cast<std::size_t>(v)]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    if (reached != n)
        report.push_back({Violation::Disconnected,
                          "map is disconnected (" + std::to_string(reached) + " of " +
                              std::to_string(n) + " vertices reachable)"});
    return report;
}

/// Immutable oriented map. Darts are the positions of the neighbor lists;
/// reverse pairing matches the i-th occurrence of w at v with the i-th
/// occurrence of v at w, and loop entries pairwise in rotation order.
class CombinatorialMap {
  public:
    static CombinatorialMap from_raw(RawMap raw) {
        ValidationReport report = validate(raw);
        if (!report.empty()) throw MapError("invalid map: " + report.front().message);

        CombinatorialMap m;
        m.raw_ = std::move(raw);
        const RawMap& r = m.raw_;
        int n = r.vertex_count();
        DartMap& d = m.darts_;
        d.vertex_dart.assign(static_cast<std::size_t>(n), -1);

        std::vector<int> first_pos(static_cast<std::size_t>(n) + 1, 0);
        for (int v = 0; v < n; ++v)
            first_pos[static_cast<std::size_t>(v) + 1] =
                first_pos[static_cast<std::size_t>(v)] +
                static_cast<int>(r.adj[static_cast<std::size_t>(v)].size());
        int total = first_pos[static_cast<std::size_t>(n)];
        d.twin.assign(static_cast<std::size_t>(total), -1);
        d.next.resize(static_cast<std::size_t>(total));
        d.prev.resize(static_cast<std::size_t>(total));
        d.origin.resize(static_cast<std::size_t>(total));

        for (int v = 0; v < n; ++v) {
            int deg = static_cast<int>(r.adj[static_cast<std::size_t>(v)].size());
            int base = first_pos[static_cast<std::size_t>(v)];
            for (int i = 0; i < deg; ++i) {
                int dd = base + i;
                d.origin[static_cast<std::size_t>(dd)] = v;
                d.next[static_cast<std::size_t>(dd)] = base + (i + 1) % deg;
                d.prev[static_cast<std::size_t>(dd)] = base + (i + deg - 1) % deg;
            }
            if (deg > 0) d.vertex_dart[static_cast<std::size_t>(v)] = base;
        }

        auto positions_of = [&](int v, int w) {
            std::vector<int> out;
            const auto& lst = r.adj[static_cast<std::size_t>(v)];
            for (int i = 0; i < static_cast<int>(lst.size()); ++i)
                if (lst[static_cast<std::size_t>(i)] == w)
                    out.push_back(first_pos[static_cast<std::size_t>(v)] + i);
            return out;
        };
        for (int v = 0; v < n; ++v) {
            std::vector<int> loops = positions_of(v, v);
            for (std::size_t i = 0; i + 1 < loops.size(); i += 2) {
                d.twin[static_cast<std::size_t>(loops[i])] = loops[i + 1];
                d.twin[static_cast<std::size_t>(loops[i + 1])] = loops[i];
            }
            for (int w = v + 1; w < n; ++w) {
                std::vector<int> av = positions_of(v, w);
                if (av.empty()) continue;
                std::vector<int> aw = positions_of(w, v);
                for (std::size_t i = 0; i < av.size(); ++i) {
                    d.twin[static_cast<std::size_t>(av[i])] = aw[i];
                    d.twin[static_cast<std::size_t>(aw[i])] = av[i];
                }
            }
        }

        m.edge_of_.assign(static_cast<std::size_t>(total), -1);
        for (int dd = 0; dd < total; ++dd) {
            if (m.edge_of_[static_cast<std::size_t>(dd)] != -1) continue;
            int e = static_cast<int>(m.edge_darts_.size());
            m.edge_of_[static_cast<std::size_t>(dd)] = e;
            m.edge_of_[static_cast<std::size_t>(d.twin[static_cast<std::size_t>(dd)])] = e;
            m.edge_darts_.push_back(dd);
        }
        return m;
    }

    const DartMap& darts() const { return darts_; }
    const RawMap& raw() const { return raw_; }

    int vertex_count() const { return darts_.vertex_count(); }
    int edge_count() const { return static_cast<int>(edge_darts_.size()); }
    int dart_count() const { return darts_.dart_count(); }

    int origin(int d) const { return darts_.origin[static_cast<std::size_t>(d)]; }
    int head(int d) const { return darts_.head(d); }
    int twin(int d) const { return darts_.twin[static_cast<std::size_t>(d)]; }
    int next(int d) const { return darts_.next[static_cast<std::size_t>(d)]; }
    int prev(int d) const { return darts_.prev[static_cast<std::size_t>(d)]; }
    int degree(int v) const { return darts_.degree(v); }

    int edge_of(int d) const { return edge_of_[static_cast<std::size_t>(d)]; }
    int edge_dart(int e) const { return edge_darts_[static_cast<std::size_t>(e)]; }
    std::pair<int, int> edge_endpoints(int e) const {
        int d = edge_dart(e);
        return {origin(d), head(d)};
    }

    /// First dart from x to y in x's rotation, or -1.
    int dart_between(int x, int y) const {
        int d0 = darts_.vertex_dart[static_cast<std::size_t>(x)];
        if (d0 < 0) return -1;
        int d = d0;
        do {
            if (head(d) == y) return d;
            d = next(d);
        } while (d != d0);
        return -1;
    }

  private:
    RawMap raw_;
    DartMap darts_;
    std::vector<int> edge_of_;
    std::vector<int> edge_darts_;
};

inline FaceSet trace_faces(const CombinatorialMap& m) { return trace_faces(m.darts()); }

inline EulerInfo genus_info(const CombinatorialMap& m) {
    FaceSet fs = trace_faces(m);
    EulerInfo info = euler_info(m.darts(), fs);
    if (!euler_genus_valid(info)) throw MapError("broken rotation system: Euler formula failed");
    return info;
}

inline int genus(const CombinatorialMap& m) { return genus_info(m).genus; }

struct DualEdge {
    int edge;
    int left_face;  // face of the edge's lower dart
    int right_face; // face of its twin
};

/// One dual edge per map edge; a dual loop (left == right) marks an edge
/// with the same face on both sides.
inline std::vector<DualEdge> dual_adjacency(const CombinatorialMap& m, const FaceSet& fs) {
    std::vector<DualEdge> out;
    out.reserve(static_cast<std::size_t>(m.edge_count()));
    for (int e = 0; e < m.edge_count(); ++e) {
        int d = m.edge_dart(e);
        out.push_back({e, fs.face_of[static_cast<std::size_t>(d)],
                       fs.face_of[static_cast<std::size_t>(m.twin(d))]});
    }
    return out;
}

inline int max_face_size(const FaceSet& fs) {
    int best = 0;
    for (int f = 0; f < fs.count(); ++f)
        if (fs.size(f) > best) best = fs.size(f);
    return best;
}

/// Faces around v in rotation order (one entry per corner, repeats possible).
inline std::vector<int> faces_at_vertex(const CombinatorialMap& m, const FaceSet& fs, int v) {
    std::vector<int> out;
    for (int d : m.darts().rotation(v))
        out.push_back(fs.face_of[static_cast<std::size_t>(corner_face_dart(m.darts(), d))]);
    return out;
}

inline std::pair<int, int> faces_at_edge(const CombinatorialMap& m, const FaceSet& fs, int e) {
    int d = m.edge_dart(e);
    return {fs.face_of[static_cast<std::size_t>(d)],
            fs.face_of[static_cast<std::size_t>(m.twin(d))]};
}

} // namespace mapdraw
