#include "tact/env.hpp"

#include <cassert>

namespace tact {

Observation Environment::reset(const RoadMap& map, std::uint64_t episode_seed, int n_npcs) {
    world_ = sample_episode(map, episode_seed, n_npcs, params_.world);
    plan_ = PlanState{};
    plan_.target_lane = world_.ego.lane_id;
    counters_ = LaneCounters{};
    counters_.cap = params_.counter_cap;
    history_.clear();
    done_ = false;
    steps_ = 0;
    return push_and_stack(history_, encode_frame(world_, counters_, params_.observation));
}

StepInfo Environment::step(TacticalAction decision) {
    assert(!done_);
    StepInfo info;
    world_.clear_step_events();
    WorldState prev = world_;

    double speed_sum = 0.0;
    double lat_sum = 0.0;
    for (int t = 0; t < params_.ticks_per_step; ++t) {
        TacticalAction act = t == 0 ? decision : TacticalAction::no_op;
        PlanOutput out = plan_ego(act, plan_, world_, params_.dt, params_.planner);
        plan_ = out.plan;
        if (t == 0) info.degraded_to_keep = out.degraded_to_keep;

        std::vector<double> npc_accels(world_.npcs.size());
        for (std::size_t i = 0; i < world_.npcs.size(); ++i) {
            npc_accels[i] = npc_control(world_.npcs[i], world_, params_.planner);
        }
        step_world(world_, out.accel, out.lateral_rate, params_.dt, npc_accels,
                   params_.world);
        speed_sum += world_.ego.speed;
        lat_sum += std::abs(world_.ego.lateral_rate);
    }
    info.step_speed = speed_sum / params_.ticks_per_step;
    info.step_abs_lateral = lat_sum / params_.ticks_per_step;

    LaneClass occupied = world_.map().lane(world_.ego.lane_id).lane_class;
    counters_ = update_counters(counters_, occupied);
    info.occupied_lane = world_.ego.lane_id;
    info.occupied_class = occupied;
    info.on_dangerous_lane =
        occupied == LaneClass::biking || occupied == LaneClass::opposite;

    info.risk = collision_risk(world_.ego, world_.npcs, params_.risk);
    info.cause = check_termination(world_, info.risk, params_.world);
    info.truncated = !info.cause && world_.clock() >= params_.max_episode_s;
    info.done = info.cause.has_value() || info.truncated;
    done_ = info.done;

    ComposeExtras extras;
    extras.variant = params_.variant;
    extras.terminal = info.cause.has_value();
    extras.success = info.cause == TerminationCause::success;
    extras.risk = params_.risk;
    info.breakdown = compose(world_, prev, decision, counters_, params_.weights, extras);
    info.reward = info.breakdown.combined;

    info.obs = push_and_stack(history_, encode_frame(world_, counters_, params_.observation));
    steps_ += 1;
    return info;
}

}  // namespace tact
