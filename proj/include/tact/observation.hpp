#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "tact/reward.hpp"
#include "tact/world.hpp"

namespace tact {

// Frame layout (all elements bounded to [-1, 1]):
//   [0]      ego speed / lane speed limit
//   [1]      lateral offset / lane width
//   [2..5]   occupied lane class one-hot (normal, biking, opposite, dead_end)
//   [6]      on-navigation-lane flag
//   [7]      distance to intersection entry / D_max (1 when none ahead)
//   [8..10]  upcoming light phase one-hot (green, yellow, red)
//   [11]     light time-to-change / cycle length
//   [12..29] per-lane blocks {left, current, right} x {ahead, behind}:
//            gap / D_max, relative speed / limit, presence
//   [30]     biking counter / cap
//   [31]     opposite counter / cap
inline constexpr std::size_t kFrameSize = 32;
inline constexpr std::size_t kFrameStack = 3;
inline constexpr std::size_t kObsSize = kFrameSize * kFrameStack;

using FeatureFrame = std::array<float, kFrameSize>;
using Observation = std::array<float, kObsSize>;

struct ObservationParams {
    double d_max = 50.0;  // region of interest for gaps and the intersection
};

FeatureFrame encode_frame(const WorldState& world, const LaneCounters& counters,
                          const ObservationParams& params = {});

// Rolling window of the frames from the latest agent steps.
class FrameHistory {
  public:
    void clear() { frames_.clear(); }
    void push(const FeatureFrame& f);
    std::size_t size() const { return frames_.size(); }
    // Chronological stack; start-of-episode gaps repeat the oldest frame.
    Observation stacked() const;

  private:
    std::vector<FeatureFrame> frames_;
};

// Convenience form matching the two-step usage: push then stack.
Observation push_and_stack(FrameHistory& history, const FeatureFrame& frame);

}  // namespace tact
