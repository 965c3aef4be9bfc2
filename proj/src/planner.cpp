#include "tact/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tact {

const char* to_string(TacticalAction a) {
    switch (a) {
        case TacticalAction::keep_lane: return "keep_lane";
        case TacticalAction::switch_left: return "switch_left";
        case TacticalAction::switch_right: return "switch_right";
        case TacticalAction::no_op: return "no_op";
    }
    return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Allowed speed toward a hard stop `dist` meters ahead: time-headway barrier
// plus a comfortable-braking envelope.
double stop_line_speed(double dist, const PlannerParams& p) {
    double d = dist - p.stop_margin;
    if (d <= 0.0) return 0.0;
    double headway_speed = d / p.headway_s;
    double brake_speed = std::sqrt(std::max(0.0, 2.0 * 2.2 * (d - 0.5)));
    return std::min(headway_speed, brake_speed);
}

double follow_speed(double gap, const PlannerParams& p) {
    return std::max(0.0, (gap - p.min_gap) / p.headway_s);
}

// Nearest body ahead of arc position `s` on `lane_id`, searching across the
// successor chain up to the lookahead range. `skip` excludes the querying
// NPC itself. Returns the bumper-to-bumper gap or +inf.
double leader_gap(const WorldState& world, int lane_id, double s, double own_half_len,
                  const VehicleState* skip, const PlannerParams& p) {
    const RoadMap& map = world.map();
    double best = kInf;
    double base = 0.0;
    int cur = lane_id;
    while (cur != kNoLane && base < p.lookahead) {
        const Lane& lane = map.lane(cur);
        for (const auto& npc : world.npcs) {
            if (&npc == skip || npc.lane_id != cur) continue;
            double delta = base + npc.s - s;
            if (delta <= 0.0 || delta > p.lookahead) continue;
            best = std::min(best, delta - own_half_len - 0.5 * npc.length);
        }
        if (world.ego.lane_id == cur && skip != &world.ego) {
            double delta = base + world.s_on_lane(cur, world.ego.position) - s;
            if (delta > 0.0 && delta <= p.lookahead) {
                best = std::min(best, delta - own_half_len - 0.5 * world.ego.length);
            }
        }
        base += lane.length() - (cur == lane_id ? s : 0.0);
        s = 0.0;
        cur = lane.successor;
    }
    return best;
}

double approach_accel(double v, double v_target, const PlannerParams& p) {
    double a = std::clamp(p.speed_gain * (v_target - v), -p.world.accel_clamp,
                          p.world.accel_clamp);
    if (v <= 0.0 && a < 0.0) a = 0.0;  // never reverse
    return a;
}

}  // namespace

double npc_control(const VehicleState& npc, const WorldState& world,
                   const PlannerParams& params) {
    const RoadMap& map = world.map();
    const Lane& lane = map.lane(npc.lane_id);
    double v_target = std::min(npc.cruise_speed, lane.speed_limit);

    double gap = leader_gap(world, npc.lane_id, npc.s, 0.5 * npc.length, &npc, params);
    if (gap < kInf) v_target = std::min(v_target, follow_speed(gap, params));

    // red-light stop at the lane end; lane ends without successor just let
    // the vehicle drive off the mapped area
    if (lane.successor != kNoLane) {
        if (const TrafficLight* tl = map.light_for(lane.id, lane.successor)) {
            if (tl->phase_at(world.clock()) == LightPhase::red) {
                double dist = lane.length() - npc.s - 0.5 * npc.length;
                v_target = std::min(v_target, stop_line_speed(dist, params));
            }
        }
    }
    return approach_accel(npc.speed, v_target, params);
}

PlanOutput plan_ego(TacticalAction decision, const PlanState& plan, const WorldState& world,
                    double dt, const PlannerParams& params) {
    const RoadMap& map = world.map();
    const Lane& occupied = map.lane(world.ego.lane_id);
    PlanOutput out;
    out.plan = plan;

    // --- resolve the decision ---
    if (decision == TacticalAction::keep_lane) {
        out.plan.active_maneuver = Maneuver::following;
        out.plan.maneuver_progress = 0.0;
        out.plan.target_lane = occupied.id;
    } else if (decision == TacticalAction::switch_left ||
               decision == TacticalAction::switch_right) {
        bool left = decision == TacticalAction::switch_left;
        int neighbor = left ? occupied.left_neighbor : occupied.right_neighbor;
        if (neighbor == kNoLane) {
            out.degraded_to_keep = true;
            out.plan.active_maneuver = Maneuver::following;
            out.plan.maneuver_progress = 0.0;
            out.plan.target_lane = occupied.id;
        } else {
            Maneuver wanted = left ? Maneuver::changing_left : Maneuver::changing_right;
            bool continuing = plan.active_maneuver == wanted && plan.target_lane == neighbor &&
                              plan.maneuver_progress < 1.0;
            if (!continuing) {
                double target_center = 0.0;
                world.lane_center_offset(world.ego.s, neighbor, &target_center);
                out.plan.active_maneuver = wanted;
                out.plan.maneuver_progress = 0.0;
                out.plan.target_lane = neighbor;
                out.plan.start_offset = world.ego.ref_offset;
                out.plan.target_offset = target_center;
            }
        }
    }
    // no_op: continue the current plan untouched

    // --- lateral control ---
    double lat_clamp = params.world.lateral_rate_clamp;
    if (out.plan.active_maneuver == Maneuver::following) {
        double center = 0.0;
        world.lane_center_offset(world.ego.s, occupied.id, &center);
        double err = center - world.ego.ref_offset;
        out.lateral_rate = std::clamp(err * params.center_gain, -lat_clamp, lat_clamp);
    } else {
        double elapsed = out.plan.maneuver_progress * params.lane_change_s;
        double remaining = params.lane_change_s - elapsed;
        if (remaining <= dt) {
            out.lateral_rate = std::clamp((out.plan.target_offset - world.ego.ref_offset) / dt,
                                          -lat_clamp, lat_clamp);
            out.plan.maneuver_progress = 1.0;
            out.plan.active_maneuver = Maneuver::following;
        } else {
            out.lateral_rate =
                std::clamp((out.plan.target_offset - out.plan.start_offset) /
                               params.lane_change_s,
                           -lat_clamp, lat_clamp);
            out.plan.maneuver_progress =
                std::min(1.0, out.plan.maneuver_progress + dt / params.lane_change_s);
        }
    }

    // --- longitudinal control ---
    double v_target = occupied.speed_limit;
    Vec2 route_tan = world.route_tangent(world.ego.s);
    double s_occ = world.s_on_lane(occupied.id, world.ego.position);
    double gap = leader_gap(world, occupied.id, s_occ, 0.5 * world.ego.length, &world.ego,
                            params);
    // leader_gap walks the occupied lane in its own direction; valid only
    // when the ego travels with the lane
    Vec2 lane_tan = occupied.centerline.tangent_at(s_occ);
    bool aligned = route_tan.dot(lane_tan) > 0.0;
    if (aligned && gap < kInf) v_target = std::min(v_target, follow_speed(gap, params));
    if (!aligned) {
        // driving against the lane: brake for oncoming bodies by plain distance
        for (const auto& npc : world.npcs) {
            if (npc.lane_id != occupied.id) continue;
            double delta = (npc.position - world.ego.position).dot(route_tan);
            if (delta <= 0.0 || delta > params.lookahead) continue;
            double g = delta - 0.5 * world.ego.length - 0.5 * npc.length;
            v_target = std::min(v_target, follow_speed(g, params));
        }
    }

    if (aligned) {
        double line_dist = kInf;
        if (occupied.successor == kNoLane) {
            line_dist = occupied.length() - s_occ - 0.5 * world.ego.length;
        } else if (out.plan.active_maneuver == Maneuver::following) {
            // the red-light stop is a following-mode safety; mid-maneuver the
            // planner cannot guarantee it
            if (const TrafficLight* tl = map.light_for(occupied.id, occupied.successor)) {
                if (tl->phase_at(world.clock()) == LightPhase::red) {
                    line_dist = occupied.length() - s_occ - 0.5 * world.ego.length;
                }
            }
        }
        if (line_dist < kInf) v_target = std::min(v_target, stop_line_speed(line_dist, params));
    }

    out.accel = approach_accel(world.ego.speed, v_target, params);
    return out;
}

}  // namespace tact
