#include "tact/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tact {

const char* to_string(RewardVariant v) {
    switch (v) {
        case RewardVariant::none: return "none";
        case RewardVariant::global_goal: return "global_goal";
        case RewardVariant::const_1_0: return "const_1.0";
        case RewardVariant::const_0_1: return "const_0.1";
        case RewardVariant::local_goal: return "local_goal";
    }
    return "?";
}

RewardVariant reward_variant_from_string(const std::string& s) {
    if (s == "none") return RewardVariant::none;
    if (s == "global_goal") return RewardVariant::global_goal;
    if (s == "const_1.0") return RewardVariant::const_1_0;
    if (s == "const_0.1") return RewardVariant::const_0_1;
    if (s == "local_goal") return RewardVariant::local_goal;
    throw std::invalid_argument("unknown reward variant: " + s);
}

double rcos(double phi, double beta) {
    double w = wrap_angle(phi);
    if (std::abs(w) > beta) return 0.0;
    return 0.5 * (1.0 + std::cos(M_PI * w / beta));
}

double isotropic_risk(double d, const RiskParams& p) {
    return std::exp(-d + p.d0);
}

double directional_risk(const VehicleState& ego, const VehicleState& target,
                        const RiskParams& p) {
    double theta_et = std::atan2(target.position.y - ego.position.y,
                                 target.position.x - ego.position.x);
    double first = rcos(theta_et - ego.heading, p.beta);
    double center = p.literal_second_factor ? theta_et : theta_et + M_PI;
    double second = rcos(center - target.heading, p.beta);
    return first * second;
}

double collision_risk(const VehicleState& ego, std::span<const VehicleState> targets,
                      const RiskParams& p) {
    double total = 0.0;
    for (const auto& t : targets) {
        double d = (t.position - ego.position).norm();
        if (d > p.region_of_interest || d <= 0.0) continue;
        total += isotropic_risk(d, p) * directional_risk(ego, t, p);
    }
    return total;
}

LaneCounters update_counters(const LaneCounters& c, LaneClass occupied) {
    LaneCounters next = c;
    next.biking = occupied == LaneClass::biking ? std::min(c.biking + 1, c.cap) : 0;
    next.opposite = occupied == LaneClass::opposite ? std::min(c.opposite + 1, c.cap) : 0;
    return next;
}

double dangerous_lane_risk(double x) {
    return x > 1.0 ? 0.1 * x + 0.9 : 0.0;
}

double traffic_light_alert(const WorldState& world) {
    return world.entered_on_red ? 1.0 : 0.0;
}

RewardBreakdown compose(const WorldState& world, const WorldState& prev_world,
                        TacticalAction decision, const LaneCounters& counters,
                        const RewardWeights& weights, const ComposeExtras& extras) {
    (void)prev_world;
    RewardBreakdown b;
    b.collision_risk = collision_risk(world.ego, world.npcs, extras.risk);
    b.traffic_light = traffic_light_alert(world);

    LaneClass occupied = world.map().lane(world.ego.lane_id).lane_class;
    switch (extras.variant) {
        case RewardVariant::const_1_0:
            b.biking_risk = occupied == LaneClass::biking ? 1.0 : 0.0;
            b.opposite_risk = occupied == LaneClass::opposite ? 1.0 : 0.0;
            break;
        case RewardVariant::const_0_1:
            b.biking_risk = occupied == LaneClass::biking ? 0.1 : 0.0;
            b.opposite_risk = occupied == LaneClass::opposite ? 0.1 : 0.0;
            break;
        default:
            b.biking_risk = dangerous_lane_risk(counters.biking);
            b.opposite_risk = dangerous_lane_risk(counters.opposite);
            break;
    }

    b.speed = world.ego.speed / world.map().lane(world.ego.lane_id).speed_limit;
    b.lane_switch = (decision == TacticalAction::switch_left ||
                     decision == TacticalAction::switch_right)
                        ? 1.0
                        : 0.0;
    b.step_cost = 1.0;

    if (extras.variant == RewardVariant::global_goal && extras.terminal) {
        b.global_goal = extras.success ? 1.0 : -1.0;
    }
    if (extras.variant == RewardVariant::local_goal) {
        double nav_center = 0.0;
        int nav = world.navigation_lane();
        if (world.lane_center_offset(world.ego.s, nav, &nav_center)) {
            double dev = std::abs(world.ego.ref_offset - nav_center) /
                         world.map().lane(nav).width;
            b.local_goal = std::min(dev, 3.0);
        }
    }

    b.combined = weights.collision * b.collision_risk + weights.traffic_light * b.traffic_light +
                 weights.biking_lane * b.biking_risk + weights.opposite_lane * b.opposite_risk +
                 weights.speed * b.speed + weights.lane_switch * b.lane_switch +
                 weights.step * b.step_cost + weights.global_goal * b.global_goal +
                 weights.local_goal * b.local_goal;
    return b;
}

}  // namespace tact
