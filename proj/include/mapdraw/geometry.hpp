#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace mapdraw {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(Vec2 o) {
        x += o.x;
        y += o.y;
        return *this;
    }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Sign of the turn a->b->c; positive for a counterclockwise turn.
inline double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

inline constexpr double kGeomEps = 1e-12;

inline bool point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    if (std::abs(orient(a, b, p)) > kGeomEps * std::max(1.0, distance(a, b))) return false;
    return dot(p - a, p - b) <= kGeomEps;
}

/// Whether closed segments ab and cd share at least one point.
inline bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    double o1 = orient(a, b, c), o2 = orient(a, b, d);
    double o3 = orient(c, d, a), o4 = orient(c, d, b);
    auto sgn = [](double v) { return v > kGeomEps ? 1 : (v < -kGeomEps ? -1 : 0); };
    int s1 = sgn(o1), s2 = sgn(o2), s3 = sgn(o3), s4 = sgn(o4);
    if (s1 * s2 < 0 && s3 * s4 < 0) return true;
    if (s1 == 0 && point_on_segment(c, a, b)) return true;
    if (s2 == 0 && point_on_segment(d, a, b)) return true;
    if (s3 == 0 && point_on_segment(a, c, d)) return true;
    if (s4 == 0 && point_on_segment(b, c, d)) return true;
    return false;
}

inline double distance_point_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= kGeomEps * kGeomEps) return distance(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

/// Signed area of a closed polyline; positive when counterclockwise.
inline double polygon_signed_area(const std::vector<Vec2>& poly) {
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        Vec2 p = poly[i];
        Vec2 q = poly[(i + 1) % poly.size()];
        a += cross(p, q);
    }
    return a / 2.0;
}

/// Strict interior test by ray casting, with a margin away from the boundary.
inline bool point_strictly_inside(Vec2 p, const std::vector<Vec2>& poly, double margin = kGeomEps) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        if (distance_point_segment(p, poly[i], poly[(i + 1) % n]) <= margin) return false;
    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (xi > p.x) inside = !inside;
        }
    }
    return inside;
}

/// Corners of a regular k-gon of the given circumradius, clockwise from the
/// top so the drawing reads in rotation order.
inline std::vector<Vec2> regular_polygon(int k, double radius) {
    assert(k >= 3);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(k));
    const double pi = std::acos(-1.0);
    for (int i = 0; i < k; ++i) {
        double ang = pi / 2.0 - 2.0 * pi * i / k;
        out.push_back({radius * std::cos(ang), radius * std::sin(ang)});
    }
    return out;
}

/// Gaussian elimination with partial pivoting; solves A x = b for each given
/// right-hand side in place. A is dense row-major n x n.
inline std::vector<std::vector<double>> solve_dense(std::vector<std::vector<double>> a,
                                                    std::vector<std::vector<double>> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        assert(std::abs(a[pivot][col]) > 0.0 && "singular barycentric system");
        std::swap(a[col], a[pivot]);
        for (auto& b : rhs) std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            for (auto& b : rhs) b[r] -= f * b[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (auto& b : rhs) {
            b[col] /= a[col][col];
            for (std::size_t r = 0; r < col; ++r) b[r] -= a[r][col] * b[col];
        }
    }
    return rhs;
}

} // namespace mapdraw
