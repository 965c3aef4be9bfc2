#pragma once

#include <string>

#include "tact/planner.hpp"
#include "tact/world.hpp"

namespace tact {

struct RiskParams {
    double d0 = 8.0;            // normalizing distance, meters
    double beta = M_PI / 4.0;   // raised-cosine half-width, radians
    double region_of_interest = 50.0;
    // When true the second raised-cosine factor is centered on the ego->target
    // direction for both vehicles (the literal reading); the default centers
    // it on target->ego so that head-on geometry peaks at 1.
    bool literal_second_factor = false;
};

struct LaneCounters {
    int biking = 0;
    int opposite = 0;
    int cap = 20;
};

struct RewardWeights {
    double collision = -1.0;
    double traffic_light = -1.0;
    double biking_lane = -0.2;
    double opposite_lane = -0.4;
    double speed = 0.1;
    double lane_switch = -0.4;
    double step = -0.1;
    // variant-only weights
    double global_goal = 1.0;
    double local_goal = -0.1;
};

enum class RewardVariant { none, global_goal, const_1_0, const_0_1, local_goal };

const char* to_string(RewardVariant v);
RewardVariant reward_variant_from_string(const std::string& s);

struct RewardBreakdown {
    double collision_risk = 0.0;
    double traffic_light = 0.0;
    double biking_risk = 0.0;
    double opposite_risk = 0.0;
    double speed = 0.0;
    double lane_switch = 0.0;
    double step_cost = 0.0;
    double global_goal = 0.0;  // nonzero only under the global_goal variant
    double local_goal = 0.0;   // nonzero only under the local_goal variant
    double combined = 0.0;
};

// Raised-cosine taper: 0.5*(1+cos(pi*phi/beta)) inside |phi| <= beta, 0 outside.
double rcos(double phi, double beta);

// Distance factor e^(-d + d0).
double isotropic_risk(double d, const RiskParams& p);

// Product of two raised-cosine patterns centered on the two headings.
double directional_risk(const VehicleState& ego, const VehicleState& target,
                        const RiskParams& p);

double collision_risk(const VehicleState& ego, std::span<const VehicleState> targets,
                      const RiskParams& p);

// Occupied dangerous class saturates upward at cap; the others reset to 0.
LaneCounters update_counters(const LaneCounters& c, LaneClass occupied);

// R = (0.1x + 0.9) * [x > 1].
double dangerous_lane_risk(double x);

// 1 exactly on the step where the ego crossed a stop line against red.
double traffic_light_alert(const WorldState& world);

struct ComposeExtras {
    RewardVariant variant = RewardVariant::none;
    bool terminal = false;      // terminal env step (for the global-goal variant)
    bool success = false;
    RiskParams risk;
};

RewardBreakdown compose(const WorldState& world, const WorldState& prev_world,
                        TacticalAction decision, const LaneCounters& counters,
                        const RewardWeights& weights, const ComposeExtras& extras = {});

}  // namespace tact
