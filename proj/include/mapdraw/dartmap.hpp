#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace mapdraw {

/// Rotation-system primitive: a set of darts (oriented edge halves) with
///   twin(d)  the opposite half of the same edge,
///   next(d)  the clockwise-next dart at origin(d),
///   prev(d)  the inverse of next.
/// Faces are the orbits of d -> next(twin(d)); with clockwise vertex
/// rotations that orbit keeps its face on the left of every dart.
struct DartMap {
    std::vector<int> twin;
    std::vector<int> next;
    std::vector<int> prev;
    std::vector<int> origin;
    std::vector<int> vertex_dart; // some dart at each vertex, -1 for isolated

    int dart_count() const { return static_cast<int>(twin.size()); }
    int vertex_count() const { return static_cast<int>(vertex_dart.size()); }
    int edge_count() const { return dart_count() / 2; }
    int head(int d) const { return origin[twin[d]]; }
    int face_successor(int d) const { return next[twin[d]]; }

    int add_vertex() {
        vertex_dart.push_back(-1);
        return vertex_count() - 1;
    }

    /// Allocates a twinned dart pair (u->v, v->u) with no rotation links yet.
    std::pair<int, int> add_edge_darts(int u, int v) {
        int d = dart_count();
        int t = d + 1;
        twin.push_back(t);
        twin.push_back(d);
        next.insert(next.end(), {-1, -1});
        prev.insert(prev.end(), {-1, -1});
        origin.push_back(u);
        origin.push_back(v);
        return {d, t};
    }

    /// Splices dart d into the rotation at its origin directly after `after`
    /// in clockwise order. `after` must belong to the same vertex.
    void link_after(int after, int d) {
        assert(origin[after] == origin[d]);
        int nxt = next[after];
        next[after] = d;
        prev[d] = after;
        next[d] = nxt;
        prev[nxt] = d;
    }

    /// Makes d the only dart of its origin (a fresh degree-1 vertex).
    void link_single(int d) {
        next[d] = d;
        prev[d] = d;
        vertex_dart[origin[d]] = d;
    }

    int degree(int v) const {
        int d0 = vertex_dart[v];
        if (d0 < 0) return 0;
        int deg = 0;
        int d = d0;
        do {
            ++deg;
            d = next[d];
        } while (d != d0);
        return deg;
    }

    /// Darts at v in clockwise rotation order starting from vertex_dart[v].
    std::vector<int> rotation(int v) const {
        std::vector<int> out;
        int d0 = vertex_dart[v];
        if (d0 < 0) return out;
        int d = d0;
        do {
            out.push_back(d);
            d = next[d];
        } while (d != d0);
        return out;
    }

    bool connected() const {
        if (vertex_count() == 0) return true;
        std::vector<char> seen(static_cast<std::size_t>(vertex_count()), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            int d0 = vertex_dart[v];
            if (d0 < 0) continue;
            int d = d0;
            do {
                int w = head(d);
                if (!seen[w]) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
                d = next[d];
            } while (d != d0);
        }
        return reached == vertex_count();
    }

    int component_count() const {
        int n = vertex_count();
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        int comps = 0;
        for (int s = 0; s < n; ++s) {
            if (seen[s]) continue;
            ++comps;
            std::vector<int> stack{s};
            seen[s] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                int d0 = vertex_dart[v];
                if (d0 < 0) continue;
                int d = d0;
                do {
                    int w = head(d);
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
                    d = next[d];
                } while (d != d0);
            }
        }
        return comps;
    }
};

struct FaceSet {
    std::vector<std::vector<int>> face_darts; // orbit of next(twin(.)) per face
    std::vector<int> face_of;                 // dart -> face index

    int count() const { return static_cast<int>(face_darts.size()); }
    int size(int f) const { return static_cast<int>(face_darts[static_cast<std::size_t>(f)].size()); }
};

/// Orbits of the face successor, discovered in dart-id order.
inline FaceSet trace_faces(const DartMap& m) {
    FaceSet fs;
    fs.face_of.assign(static_cast<std::size_t>(m.dart_count()), -1);
    for (int d0 = 0; d0 < m.dart_count(); ++d0) {
        if (fs.face_of[static_cast<std::size_t>(d0)] != -1) continue;
        int f = fs.count();
        fs.face_darts.emplace_back();
        int d = d0;
        do {
            fs.face_of[static_cast<std::size_t>(d)] = f;
            fs.face_darts.back().push_back(d);
            d = m.face_successor(d);
        } while (d != d0);
    }
    return fs;
}

/// Walks one face orbit without tracing the whole map.
inline std::vector<int> face_orbit(const DartMap& m, int start_dart) {
    std::vector<int> orbit;
    int d = start_dart;
    do {
        orbit.push_back(d);
        d = m.face_successor(d);
    } while (d != start_dart);
    return orbit;
}

/// Face of the corner that follows dart p clockwise at its origin; the walk
/// of that face enters the corner along twin(p).
inline int corner_face_dart(const DartMap& m, int p) { return m.twin[p]; }

struct EulerInfo {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int genus = 0;
};

/// Genus of a connected map from v - e + f = 2 - 2g. Asserts integrality;
/// a fractional or negative result means the dart structure is corrupt.
inline EulerInfo euler_info(const DartMap& m, const FaceSet& fs) {
    EulerInfo info;
    info.vertices = m.vertex_count();
    info.edges = m.edge_count();
    // a dartless map (single vertex on the sphere) still has one face
    info.faces = m.dart_count() == 0 ? 1 : fs.count();
    int chi = info.vertices - info.edges + info.faces;
    info.genus = (2 - chi) / 2;
    return info;
}

inline EulerInfo euler_info(const DartMap& m) { return euler_info(m, trace_faces(m)); }

inline bool euler_genus_valid(const EulerInfo& info) {
    int chi = info.vertices - info.edges + info.faces;
    return (2 - chi) % 2 == 0 && info.genus >= 0;
}

} // namespace mapdraw
