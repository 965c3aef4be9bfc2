#pragma once

#include "tact/world.hpp"

namespace tact {

enum class TacticalAction { keep_lane, switch_left, switch_right, no_op };

const char* to_string(TacticalAction a);

enum class Maneuver { following, changing_left, changing_right };

struct PlanState {
    Maneuver active_maneuver = Maneuver::following;
    double maneuver_progress = 0.0;  // fraction of the lane change completed
    double horizon = 4.0;            // seconds; must cover the longest skip period
    int target_lane = kNoLane;
    double start_offset = 0.0;       // ref-frame offset when the maneuver began
    double target_offset = 0.0;      // ref-frame offset of the target lane center
};

struct PlannerParams {
    double headway_s = 1.5;        // constant-time-headway rule
    double min_gap = 2.0;          // bumper-to-bumper, meters
    double speed_gain = 2.0;       // accel = gain * (v_target - v)
    double lookahead = 60.0;       // leader search range
    double lane_change_s = 3.0;    // T_lc
    double stop_margin = 0.5;      // halt this far before a stop line
    double center_gain = 1.0;      // lateral rate per meter of centering error
    WorldParams world;
};

// Gap-based car following for background traffic: tracks the cruise speed,
// holds a time headway behind leaders, and stops for red lights and lane
// ends. Never commands reverse.
double npc_control(const VehicleState& npc, const WorldState& world,
                   const PlannerParams& params = {});

struct PlanOutput {
    double accel = 0.0;
    double lateral_rate = 0.0;
    PlanState plan;
    bool degraded_to_keep = false;  // switch toward a missing neighbor
};

// Translates a tactical decision into one tick of control. keep_lane centers
// on the occupied lane with car-following longitudinal control (including the
// red-light safety stop); switch_* runs a fixed-duration lateral maneuver
// toward the neighbor of the currently occupied lane; no_op leaves the active
// plan untouched.
PlanOutput plan_ego(TacticalAction decision, const PlanState& plan, const WorldState& world,
                    double dt, const PlannerParams& params = {});

}  // namespace tact
