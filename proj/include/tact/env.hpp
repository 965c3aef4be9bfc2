#pragma once

#include <optional>

#include "tact/observation.hpp"
#include "tact/planner.hpp"
#include "tact/reward.hpp"
#include "tact/world.hpp"

namespace tact {

struct EnvParams {
    double dt = 0.1;
    int ticks_per_step = 5;  // agent interaction at 2 Hz
    double max_episode_s = 240.0;
    WorldParams world;
    PlannerParams planner;
    RiskParams risk;
    RewardWeights weights;
    RewardVariant variant = RewardVariant::none;
    ObservationParams observation;
    int counter_cap = 20;
};

struct StepInfo {
    Observation obs{};
    double reward = 0.0;
    RewardBreakdown breakdown;
    bool done = false;       // terminal or truncated
    bool truncated = false;  // episode clock exhausted, no terminal cause
    std::optional<TerminationCause> cause;
    double risk = 0.0;
    bool degraded_to_keep = false;
    bool on_dangerous_lane = false;
    double step_speed = 0.0;      // ego speed averaged over the step's ticks
    double step_abs_lateral = 0.0;
    int occupied_lane = kNoLane;
    LaneClass occupied_class = LaneClass::normal;
    double epsilon_used = 0.0;    // filled by the training loop for logging
};

// One simulated episode at the agent's interaction rate: each step consumes
// the tactical decision once and lets the planner run the remaining ticks.
class Environment {
  public:
    explicit Environment(const EnvParams& params = {}) : params_(params) {
        params_.planner.world = params_.world;
        params_.world.dt = params_.dt;
    }

    Observation reset(const RoadMap& map, std::uint64_t episode_seed, int n_npcs);
    StepInfo step(TacticalAction decision);

    bool done() const { return done_; }
    const WorldState& world() const { return world_; }
    const LaneCounters& counters() const { return counters_; }
    const PlanState& plan() const { return plan_; }
    const EnvParams& params() const { return params_; }
    int steps_taken() const { return steps_; }

  private:
    EnvParams params_;
    WorldState world_;
    PlanState plan_;
    LaneCounters counters_;
    FrameHistory history_;
    bool done_ = true;
    int steps_ = 0;
};

}  // namespace tact
