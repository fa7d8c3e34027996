#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace swarmlab {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
    Vec2& operator+=(Vec2 r) { x += r.x; y += r.y; return *this; }
    Vec2& operator-=(Vec2 r) { x -= r.x; y -= r.y; return *this; }

    constexpr double dot(Vec2 r) const { return x * r.x + y * r.y; }
    constexpr double cross(Vec2 r) const { return x * r.y - y * r.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_sq() const { return x * x + y * y; }
    constexpr bool operator==(const Vec2&) const = default;
};

// Wraps an angle to [-pi, pi).
inline double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * kPi);
    if (a >= kPi) a -= 2.0 * kPi;   // remainder may return +pi
    return a;
}

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// A polar quantity (magnitude, bearing). Bearings are robot-relative,
// 0 = heading, positive counterclockwise, in [-pi, pi].
struct Polar {
    double magnitude = 0.0;
    double angle = 0.0;

    constexpr bool operator==(const Polar&) const = default;
    Vec2 to_vec() const { return {magnitude * std::cos(angle), magnitude * std::sin(angle)}; }
    static Polar from_vec(Vec2 v) {
        double m = v.norm();
        return {m, m == 0.0 ? 0.0 : std::atan2(v.y, v.x)};
    }
};

// Convex polygon with counterclockwise vertices. Supplies the signed
// clearance and ray queries the simulator needs for walls.
struct ConvexPolygon {
    std::vector<Vec2> vertices;

    bool empty() const { return vertices.size() < 3; }
    std::size_t size() const { return vertices.size(); }

    // Distance from p to the polygon boundary, positive inside.
    // For convex CCW polygons this is min over edges of the inward
    // distance to the edge line.
    double inner_clearance(Vec2 p) const {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = vertices[i];
            const Vec2 b = vertices[(i + 1) % n];
            const Vec2 e = b - a;
            const double len = e.norm();
            if (len == 0.0) continue;
            // inward normal of a CCW edge is (-e.y, e.x)/len
            const double d = (e.x * (p.y - a.y) - e.y * (p.x - a.x)) / len;
            best = std::min(best, d);
        }
        return best;
    }

    bool contains(Vec2 p) const { return inner_clearance(p) >= 0.0; }

    // Pushes p inward until every edge clearance is >= radius.
    // Convex, so a couple of sweeps over the edges converge.
    Vec2 clamp_inside(Vec2 p, double radius) const {
        const std::size_t n = vertices.size();
        for (int pass = 0; pass < 4; ++pass) {
            bool moved = false;
            for (std::size_t i = 0; i < n; ++i) {
                const Vec2 a = vertices[i];
                const Vec2 b = vertices[(i + 1) % n];
                const Vec2 e = b - a;
                const double len = e.norm();
                if (len == 0.0) continue;
                const Vec2 inward{-e.y / len, e.x / len};
                const double d = inward.dot(p - a);
                if (d < radius) {
                    p += inward * (radius - d);
                    moved = true;
                }
            }
            if (!moved) break;
        }
        return p;
    }

    // Nearest intersection of the ray origin+t*dir with the polygon
    // boundary, t > 0. Returns nullopt when the ray never crosses an
    // edge (origin outside, pointing away).
    std::optional<double> ray_hit(Vec2 origin, Vec2 dir) const {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            const Vec2 a = vertices[i];
            const Vec2 b = vertices[(i + 1) % n];
            const Vec2 e = b - a;
            const double denom = dir.cross(e);
            if (denom == 0.0) continue;   // parallel
            const Vec2 ao = a - origin;
            const double t = ao.cross(e) / denom;
            const double u = ao.cross(dir) / denom;
            if (t > 0.0 && u >= 0.0 && u <= 1.0) best = std::min(best, t);
        }
        if (!std::isfinite(best)) return std::nullopt;
        return best;
    }

    // Axis-aligned bounding box as (min, max).
    std::pair<Vec2, Vec2> bounding_box() const {
        Vec2 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
        Vec2 hi{-lo.x, -lo.y};
        for (const Vec2& v : vertices) {
            lo.x = std::min(lo.x, v.x); lo.y = std::min(lo.y, v.y);
            hi.x = std::max(hi.x, v.x); hi.y = std::max(hi.y, v.y);
        }
        return {lo, hi};
    }

    double area() const {
        double s = 0.0;
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) s += vertices[i].cross(vertices[(i + 1) % n]);
        return 0.5 * s;
    }
};

// Nearest intersection of a ray with a circle, t > 0; nullopt on miss.
inline std::optional<double> ray_circle_hit(Vec2 origin, Vec2 dir, Vec2 center, double radius) {
    const Vec2 oc = origin - center;
    const double b = oc.dot(dir);
    const double c = oc.norm_sq() - radius * radius;
    const double disc = b * b - c;   // dir assumed unit length
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    double t = -b - sq;
    if (t <= 0.0) t = -b + sq;
    if (t <= 0.0) return std::nullopt;
    return t;
}

// True when circle (center, r) blocks the open segment p-q.
inline bool circle_blocks_segment(Vec2 p, Vec2 q, Vec2 center, double r) {
    const Vec2 d = q - p;
    const double len_sq = d.norm_sq();
    if (len_sq == 0.0) return false;
    double t = (center - p).dot(d) / len_sq;
    t = std::max(0.0, std::min(1.0, t));
    const Vec2 nearest = p + d * t;
    return (nearest - center).norm_sq() < r * r;
}

}  // namespace swarmlab
