#include "tact/observation.hpp"

#include <algorithm>
#include <cmath>

namespace tact {

namespace {

float squash(double v) {
    return static_cast<float>(std::clamp(v, -1.0, 1.0));
}

}  // namespace

FeatureFrame encode_frame(const WorldState& world, const LaneCounters& counters,
                          const ObservationParams& params) {
    FeatureFrame f{};
    const RoadMap& map = world.map();
    const Lane& occupied = map.lane(world.ego.lane_id);

    f[0] = squash(world.ego.speed / occupied.speed_limit);
    f[1] = squash(world.ego.lane_offset / occupied.width);
    f[2 + static_cast<int>(occupied.lane_class)] = 1.0f;
    f[6] = world.ego.lane_id == world.navigation_lane() ? 1.0f : 0.0f;

    double entry = world.intersection_entry_s();
    if (std::isfinite(entry)) {
        f[7] = squash(std::max(0.0, entry - world.ego.s) / params.d_max);
    } else {
        f[7] = 1.0f;
    }

    const TrafficLight* tl =
        map.light_for(world.route().lane_ids[0], world.route().lane_ids[1]);
    if (tl != nullptr && world.ego.s < entry) {
        f[8 + static_cast<int>(tl->phase_at(world.clock()))] = 1.0f;
        f[11] = squash(tl->time_to_change(world.clock()) / tl->cycle_length());
    }

    Vec2 tan = world.route_tangent(world.ego.s);
    const int lanes[3] = {occupied.left_neighbor, world.ego.lane_id, occupied.right_neighbor};
    for (int li = 0; li < 3; ++li) {
        for (int ahead = 1; ahead >= 0; --ahead) {
            std::size_t base = 12 + static_cast<std::size_t>(li) * 6 +
                               static_cast<std::size_t>(1 - ahead) * 3;
            f[base + 0] = 1.0f;  // absent-slot sentinel: gap 1, rel speed 0, presence 0
            if (lanes[li] == kNoLane) continue;
            double best = params.d_max + 1.0;
            const VehicleState* nearest = nullptr;
            for (const auto& npc : world.npcs) {
                if (npc.lane_id != lanes[li]) continue;
                double delta = (npc.position - world.ego.position).dot(tan);
                if (ahead ? delta <= 0.0 : delta >= 0.0) continue;
                double dist = std::abs(delta);
                if (dist < best) {
                    best = dist;
                    nearest = &npc;
                }
            }
            if (nearest == nullptr || best > params.d_max) continue;
            double v_along = nearest->speed *
                             (std::cos(nearest->heading) * tan.x +
                              std::sin(nearest->heading) * tan.y);
            f[base + 0] = squash(best / params.d_max);
            f[base + 1] = squash((v_along - world.ego.speed) / occupied.speed_limit);
            f[base + 2] = 1.0f;
        }
    }

    f[30] = squash(static_cast<double>(counters.biking) / counters.cap);
    f[31] = squash(static_cast<double>(counters.opposite) / counters.cap);
    return f;
}

void FrameHistory::push(const FeatureFrame& f) {
    frames_.push_back(f);
    if (frames_.size() > kFrameStack) frames_.erase(frames_.begin());
}

Observation FrameHistory::stacked() const {
    Observation obs{};
    std::size_t missing = kFrameStack - std::min(frames_.size(), kFrameStack);
    for (std::size_t slot = 0; slot < kFrameStack; ++slot) {
        // pad missing history by repeating the oldest frame
        std::size_t idx = slot < missing ? 0 : slot - missing;
        std::copy(frames_[idx].begin(), frames_[idx].end(), obs.begin() + slot * kFrameSize);
    }
    return obs;
}

Observation push_and_stack(FrameHistory& history, const FeatureFrame& frame) {
    history.push(frame);
    return history.stacked();
}

}  // namespace tact
