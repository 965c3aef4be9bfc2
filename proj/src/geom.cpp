#include "tact/geom.hpp"

#include <algorithm>
#include <cassert>

namespace tact {

void Polyline::rebuild() {
    assert(pts_.size() >= 2);
    cum_.resize(pts_.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        cum_[i] = cum_[i - 1] + (pts_[i] - pts_[i - 1]).norm();
    }
}

Vec2 Polyline::point_at(double s) const {
    if (s <= 0.0) return pts_.front();
    if (s >= length()) return pts_.back();
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());  // s < cum_[i]
    double seg_len = cum_[i] - cum_[i - 1];
    double u = (s - cum_[i - 1]) / seg_len;
    return pts_[i - 1] + (pts_[i] - pts_[i - 1]) * u;
}

Vec2 Polyline::tangent_at(double s) const {
    std::size_t i = 1;
    if (s >= length()) {
        i = pts_.size() - 1;
    } else if (s > 0.0) {
        auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
        i = static_cast<std::size_t>(it - cum_.begin());
    }
    Vec2 d = pts_[i] - pts_[i - 1];
    double n = d.norm();
    return {d.x / n, d.y / n};
}

Polyline::Projection Polyline::project(const Vec2& p) const {
    Projection best;
    best.distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < pts_.size(); ++i) {
        Vec2 a = pts_[i - 1];
        Vec2 d = pts_[i] - a;
        double seg_len2 = d.dot(d);
        double u = seg_len2 > 0.0 ? std::clamp((p - a).dot(d) / seg_len2, 0.0, 1.0) : 0.0;
        Vec2 q = a + d * u;
        double dist = (p - q).norm();
        if (dist < best.distance) {
            double seg_len = std::sqrt(seg_len2);
            Vec2 t = {d.x / seg_len, d.y / seg_len};
            best.distance = dist;
            best.s = cum_[i - 1] + u * seg_len;
            best.offset = (p - q).dot(left_normal(t));
        }
    }
    return best;
}

}  // namespace tact
