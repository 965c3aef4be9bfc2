#include "tact/world.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace tact {

const char* to_string(TerminationCause c) {
    switch (c) {
        case TerminationCause::success: return "success";
        case TerminationCause::collision_risk_exceeded: return "collision_risk_exceeded";
        case TerminationCause::stuck_timeout: return "stuck_timeout";
        case TerminationCause::unpermitted_intersection_entry:
            return "unpermitted_intersection_entry";
    }
    return "?";
}

WorldState::WorldState(const RoadMap& map, Route route) : map_(&map), route_(std::move(route)) {
    int cur = route_.lane_ids.front();
    ref_cum_.push_back(0.0);
    while (cur != kNoLane) {
        ref_chain_.push_back(cur);
        ref_cum_.push_back(ref_cum_.back() + map_->lane(cur).length());
        cur = map_->lane(cur).successor;
    }
}

int WorldState::navigation_lane() const {
    double s = ego.s;
    if (ref_lane_at(s).intersection) return route_.lane_ids[1];
    return s < intersection_entry_s() ? route_.lane_ids[0] : route_.lane_ids[2];
}

const Lane& WorldState::ref_lane_at(double s) const {
    for (std::size_t i = 0; i + 1 < ref_cum_.size(); ++i) {
        if (s < ref_cum_[i + 1] || i + 2 == ref_cum_.size()) return map_->lane(ref_chain_[i]);
    }
    return map_->lane(ref_chain_.back());
}

double WorldState::ref_lane_start(double s) const {
    for (std::size_t i = 0; i + 1 < ref_cum_.size(); ++i) {
        if (s < ref_cum_[i + 1] || i + 2 == ref_cum_.size()) return ref_cum_[i];
    }
    return ref_cum_[ref_cum_.size() - 2];
}

Vec2 WorldState::route_point(double s, double offset) const {
    const Lane& l = ref_lane_at(s);
    double local = std::clamp(s - ref_lane_start(s), 0.0, l.length());
    Vec2 base = l.centerline.point_at(local);
    Vec2 t = l.centerline.tangent_at(local);
    return base + left_normal(t) * offset;
}

Vec2 WorldState::route_tangent(double s) const {
    const Lane& l = ref_lane_at(s);
    double local = std::clamp(s - ref_lane_start(s), 0.0, l.length());
    return l.centerline.tangent_at(local);
}

double WorldState::intersection_entry_s() const {
    for (std::size_t i = 0; i < ref_chain_.size(); ++i) {
        if (map_->lane(ref_chain_[i]).intersection) return ref_cum_[i];
    }
    return std::numeric_limits<double>::infinity();
}

bool WorldState::in_intersection(double s) const {
    return ref_lane_at(s).intersection;
}

bool WorldState::lane_center_offset(double s, int lane_id, double* out) const {
    const Lane* cur = &ref_lane_at(s);
    double off = 0.0;
    if (cur->id == lane_id) {
        *out = 0.0;
        return true;
    }
    // walk left, then right
    for (int dir = 0; dir < 2; ++dir) {
        const Lane* l = cur;
        off = 0.0;
        while (true) {
            int next = dir == 0 ? l->left_neighbor : l->right_neighbor;
            if (next == kNoLane) break;
            const Lane& n = map_->lane(next);
            double step = 0.5 * (l->width + n.width);
            off += dir == 0 ? step : -step;
            if (n.id == lane_id) {
                *out = off;
                return true;
            }
            l = &n;
        }
    }
    return false;
}

std::pair<int, double> WorldState::locate_lane(double s, double ref_offset) const {
    const Lane* cur = &ref_lane_at(s);
    double rel = ref_offset;
    while (true) {
        if (rel > 0.5 * cur->width && cur->left_neighbor != kNoLane) {
            const Lane& n = map_->lane(cur->left_neighbor);
            rel -= 0.5 * (cur->width + n.width);
            cur = &n;
        } else if (rel < -0.5 * cur->width && cur->right_neighbor != kNoLane) {
            const Lane& n = map_->lane(cur->right_neighbor);
            rel += 0.5 * (cur->width + n.width);
            cur = &n;
        } else {
            return {cur->id, rel};
        }
    }
}

double WorldState::s_on_lane(int lane_id, const Vec2& position) const {
    return map_->lane(lane_id).centerline.project(position).s;
}

void WorldState::clear_step_events() {
    entered_on_red = false;
    entered_unpermitted = false;
}

void WorldState::refresh_ego_pose() {
    double s = std::clamp(ego.s, 0.0, route_length());
    ego.position = route_point(s, ego.ref_offset);
    Vec2 t = route_tangent(s);
    double base = std::atan2(t.y, t.x);
    double slip = std::atan2(ego.lateral_rate, std::max(ego.speed, 0.3));
    ego.heading = wrap_angle(base + slip);
    auto [lane_id, lane_off] = locate_lane(s, ego.ref_offset);
    ego.lane_id = lane_id;
    ego.lane_offset = lane_off;
}

void WorldState::refresh_npc_pose(VehicleState& npc) const {
    const Lane& l = map_->lane(npc.lane_id);
    double local = std::clamp(npc.s, 0.0, l.length());
    npc.position = l.centerline.point_at(local);
    npc.heading = l.centerline.heading_at(local);
    npc.lane_offset = 0.0;
}

WorldState sample_episode(const RoadMap& map, std::uint64_t seed, int n_npcs,
                          const WorldParams& params) {
    if (n_npcs < 0) throw std::invalid_argument("n_npcs must be non-negative");
    Rng rng(seed);
    Rng route_rng = rng.fork(1);
    Rng place_rng = rng.fork(2);

    const Route& route =
        map.routes[static_cast<std::size_t>(route_rng.uniform_int(0, map.routes.size() - 1))];
    WorldState w(map, route);
    w.ego.s = 0.0;
    w.ego.ref_offset = 0.0;
    w.ego.speed = params.ego_start_speed;
    w.refresh_ego_pose();

    // Candidate spawn lanes: the neighbor closure of the route's segment
    // lanes, restricted to drivable classes.
    std::vector<int> spawn_lanes;
    auto add_closure = [&](int lane_id) {
        const Lane* l = &map.lane(lane_id);
        while (l->right_neighbor != kNoLane) l = &map.lane(l->right_neighbor);
        for (; l != nullptr; l = l->left_neighbor == kNoLane ? nullptr : &map.lane(l->left_neighbor)) {
            bool drivable = l->lane_class == LaneClass::normal ||
                            (l->lane_class == LaneClass::opposite && params.npc_spawn_opposite);
            if (drivable && !l->intersection &&
                std::find(spawn_lanes.begin(), spawn_lanes.end(), l->id) == spawn_lanes.end()) {
                spawn_lanes.push_back(l->id);
            }
        }
    };
    add_closure(route.lane_ids[0]);
    add_closure(route.lane_ids[2]);
    if (spawn_lanes.empty() && n_npcs > 0) throw PlacementError("no spawnable lanes");

    const double margin = 5.0;
    for (int i = 0; i < n_npcs; ++i) {
        VehicleState npc;
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
            int lane_id = spawn_lanes[static_cast<std::size_t>(
                place_rng.uniform_int(0, spawn_lanes.size() - 1))];
            const Lane& lane = map.lane(lane_id);
            if (lane.length() <= 2.0 * margin) continue;
            double s = place_rng.uniform(margin, lane.length() - margin);
            npc.lane_id = lane_id;
            npc.s = s;
            npc.cruise_speed = place_rng.uniform(params.npc_speed_lo, params.npc_speed_hi);
            npc.speed = npc.cruise_speed;
            npc.ref_offset = 0.0;
            w.refresh_npc_pose(npc);
            // keep clear of the ego start and of same-lane NPCs
            if ((npc.position - w.ego.position).norm() < params.ego_spawn_clearance) continue;
            bool overlap = false;
            for (const auto& other : w.npcs) {
                if (other.lane_id == lane_id &&
                    std::abs(other.s - s) < params.npc_min_gap_factor * npc.length) {
                    overlap = true;
                    break;
                }
            }
            if (!overlap) placed = true;
        }
        if (!placed) {
            throw PlacementError("cannot place " + std::to_string(n_npcs) +
                                 " NPCs without overlap");
        }
        w.npcs.push_back(npc);
    }
    return w;
}

void step_world(WorldState& state, double ego_accel, double ego_lateral_rate, double dt,
                std::span<const double> npc_accels, const WorldParams& params) {
    assert(dt > 0.0);
    state.dt_ = dt;
    const RoadMap& map = state.map();

    double a = std::clamp(ego_accel, -params.accel_clamp, params.accel_clamp);
    double lat = std::clamp(ego_lateral_rate, -params.lateral_rate_clamp,
                            params.lateral_rate_clamp);

    double prev_s = state.ego.s;
    int prev_occupied = state.ego.lane_id;
    state.ego.speed = std::max(0.0, state.ego.speed + a * dt);
    state.ego.s = std::min(prev_s + state.ego.speed * dt, state.route_length());
    state.ego.ref_offset = std::clamp(state.ego.ref_offset + lat * dt,
                                      -params.road_half_width, params.road_half_width);
    state.ego.lateral_rate = lat;

    // intersection entry events
    double entry = state.intersection_entry_s();
    if (prev_s < entry && state.ego.s >= entry) {
        const Lane& from = map.lane(prev_occupied);
        if (from.successor == kNoLane || from.lane_class == LaneClass::biking ||
            from.lane_class == LaneClass::opposite) {
            state.entered_unpermitted = true;
        } else if (const TrafficLight* tl = map.light_for(from.id, from.successor)) {
            if (tl->phase_at(state.clock()) == LightPhase::red) state.entered_on_red = true;
        }
    }

    for (std::size_t i = 0; i < state.npcs.size(); ++i) {
        VehicleState& npc = state.npcs[i];
        double na = i < npc_accels.size()
                        ? std::clamp(npc_accels[i], -params.accel_clamp, params.accel_clamp)
                        : 0.0;
        npc.speed = std::max(0.0, npc.speed + na * dt);
        npc.s += npc.speed * dt;
        const Lane* lane = &map.lane(npc.lane_id);
        while (npc.s > lane->length()) {
            if (lane->successor == kNoLane) {
                npc.lane_id = kNoLane;  // reached road end, despawn
                break;
            }
            npc.s -= lane->length();
            npc.lane_id = lane->successor;
            lane = &map.lane(npc.lane_id);
        }
    }
    std::erase_if(state.npcs, [](const VehicleState& n) { return n.lane_id == kNoLane; });

    state.ticks_ += 1;
    if (state.ego.speed <= params.stationary_eps) {
        state.stationary_ticks_ += 1;
    } else {
        state.stationary_ticks_ = 0;
    }

    state.refresh_ego_pose();
    for (auto& npc : state.npcs) state.refresh_npc_pose(npc);
}

std::optional<TerminationCause> check_termination(const WorldState& state, double current_risk,
                                                  const WorldParams& params) {
    if (current_risk > 1.0) return TerminationCause::collision_risk_exceeded;
    if (state.entered_on_red || state.entered_unpermitted) {
        return TerminationCause::unpermitted_intersection_entry;
    }
    if (state.ego.s >= state.route_length() && state.ego.lane_id == state.final_lane()) {
        return TerminationCause::success;
    }
    if (state.stationary_seconds() >= params.stuck_timeout_s) {
        return TerminationCause::stuck_timeout;
    }
    return std::nullopt;
}

}  // namespace tact
