#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tact {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

// Left normal of a unit tangent.
inline Vec2 left_normal(const Vec2& t) { return {-t.y, t.x}; }

// Wraps an angle to (-pi, pi].
inline double wrap_angle(double phi) {
    double w = std::remainder(phi, 2.0 * M_PI);
    if (w <= -M_PI) w += 2.0 * M_PI;
    return w;
}

// Piecewise-linear curve parameterized by arc length.
class Polyline {
  public:
    Polyline() = default;
    explicit Polyline(std::vector<Vec2> pts) : pts_(std::move(pts)) { rebuild(); }

    const std::vector<Vec2>& points() const { return pts_; }
    double length() const { return cum_.empty() ? 0.0 : cum_.back(); }

    Vec2 point_at(double s) const;
    Vec2 tangent_at(double s) const;  // unit tangent of the segment containing s
    double heading_at(double s) const {
        Vec2 t = tangent_at(s);
        return std::atan2(t.y, t.x);
    }

    // Nearest point on the curve; returns arc length s and signed lateral
    // offset (positive to the left of the tangent).
    struct Projection {
        double s = 0.0;
        double offset = 0.0;
        double distance = 0.0;
    };
    Projection project(const Vec2& p) const;

  private:
    void rebuild();
    std::vector<Vec2> pts_;
    std::vector<double> cum_;  // cumulative length at each vertex
};

}  // namespace tact
