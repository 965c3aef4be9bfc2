#pragma once

#include <map>
#include <string>
#include <vector>

#include "tact/env.hpp"
#include "tact/rng.hpp"

namespace tact {

enum class SkipMode { none, repeat, skip_uniform, skip_non_uniform, skip_dynamic };

const char* to_string(SkipMode m);
SkipMode skip_mode_from_string(const std::string& s);

struct SkipScheme {
    SkipMode mode = SkipMode::none;
    int k_uniform = 1;
    std::map<TacticalAction, int> k_per_action;  // required for non-uniform
    std::vector<int> k_choices = {2, 6};         // dynamic composite factors

    // Inference preset from the experiments: short keep, switch covers a
    // whole lane change.
    static SkipScheme non_uniform_preset();
    static SkipScheme uniform(int k, SkipMode mode = SkipMode::skip_uniform);
};

// Factor for a plain tactical action. Dynamic schemes carry the factor in the
// composite action instead; see composite helpers below.
int skip_factor(TacticalAction action, const SkipScheme& scheme);

// Composite action space: plain schemes expose 3 actions; dynamic mode takes
// the product {keep,left,right} x k_choices.
int action_count(const SkipScheme& scheme);
std::pair<TacticalAction, int> decode_action(int index, const SkipScheme& scheme);

struct MetaResult {
    Observation obs{};
    double meta_reward = 0.0;  // mean of the per-step rewards collected
    bool done = false;
    bool truncated = false;
    std::optional<TerminationCause> cause;
    int steps_consumed = 0;
    double reward_sum = 0.0;
    std::vector<StepInfo> inner;  // per-step detail, in order
};

// Executes one meta action: repeat re-issues the decision, the skip modes
// issue it once followed by null actions. Early termination averages over the
// steps actually collected. `extra_steps` lengthens the skipping period (the
// training-time phase extension of the first meta step).
MetaResult meta_step(Environment& env, TacticalAction action, const SkipScheme& scheme,
                     int factor, int extra_steps = 0);
MetaResult meta_step(Environment& env, TacticalAction action, const SkipScheme& scheme);

// Extra inner steps floor(u * k) for u drawn uniformly from [0, 1).
int phase_extension_steps(double u, int k);
int phase_extension(Rng& rng, int k);

}  // namespace tact
