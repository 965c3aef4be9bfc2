#include "tact/skipping.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace tact {

const char* to_string(SkipMode m) {
    switch (m) {
        case SkipMode::none: return "none";
        case SkipMode::repeat: return "repeat";
        case SkipMode::skip_uniform: return "skip_uniform";
        case SkipMode::skip_non_uniform: return "skip_non_uniform";
        case SkipMode::skip_dynamic: return "skip_dynamic";
    }
    return "?";
}

SkipMode skip_mode_from_string(const std::string& s) {
    if (s == "none") return SkipMode::none;
    if (s == "repeat") return SkipMode::repeat;
    if (s == "skip_uniform") return SkipMode::skip_uniform;
    if (s == "skip_non_uniform") return SkipMode::skip_non_uniform;
    if (s == "skip_dynamic") return SkipMode::skip_dynamic;
    throw std::invalid_argument("unknown skip mode: " + s);
}

SkipScheme SkipScheme::non_uniform_preset() {
    SkipScheme s;
    s.mode = SkipMode::skip_non_uniform;
    s.k_per_action = {{TacticalAction::keep_lane, 2},
                      {TacticalAction::switch_left, 6},
                      {TacticalAction::switch_right, 6}};
    return s;
}

SkipScheme SkipScheme::uniform(int k, SkipMode mode) {
    SkipScheme s;
    s.mode = mode;
    s.k_uniform = k;
    return s;
}

int skip_factor(TacticalAction action, const SkipScheme& scheme) {
    switch (scheme.mode) {
        case SkipMode::none:
            return 1;
        case SkipMode::repeat:
        case SkipMode::skip_uniform:
            return scheme.k_uniform;
        case SkipMode::skip_non_uniform: {
            auto it = scheme.k_per_action.find(action);
            if (it == scheme.k_per_action.end()) {
                throw std::invalid_argument(std::string("no skip factor for action ") +
                                            to_string(action));
            }
            return it->second;
        }
        case SkipMode::skip_dynamic:
            throw std::invalid_argument("dynamic skip factors live in the composite action");
    }
    return 1;
}

int action_count(const SkipScheme& scheme) {
    return scheme.mode == SkipMode::skip_dynamic
               ? 3 * static_cast<int>(scheme.k_choices.size())
               : 3;
}

std::pair<TacticalAction, int> decode_action(int index, const SkipScheme& scheme) {
    static const TacticalAction kDecisions[3] = {
        TacticalAction::keep_lane, TacticalAction::switch_left, TacticalAction::switch_right};
    if (scheme.mode == SkipMode::skip_dynamic) {
        int choice = index / 3;
        return {kDecisions[index % 3], scheme.k_choices.at(choice)};
    }
    return {kDecisions[index], skip_factor(kDecisions[index], scheme)};
}

MetaResult meta_step(Environment& env, TacticalAction action, const SkipScheme& scheme,
                     int factor, int extra_steps) {
    assert(action != TacticalAction::no_op);
    assert(factor >= 1 && extra_steps >= 0);
    MetaResult res;
    int total = factor + extra_steps;
    for (int j = 0; j < total; ++j) {
        TacticalAction act =
            j == 0 ? action
                   : (scheme.mode == SkipMode::repeat ? action : TacticalAction::no_op);
        StepInfo info = env.step(act);
        res.reward_sum += info.reward;
        res.steps_consumed += 1;
        res.inner.push_back(info);
        if (info.done) {
            res.done = true;
            res.truncated = info.truncated;
            res.cause = info.cause;
            res.obs = info.obs;
            break;
        }
        res.obs = info.obs;
    }
    res.meta_reward = res.reward_sum / res.steps_consumed;
    return res;
}

MetaResult meta_step(Environment& env, TacticalAction action, const SkipScheme& scheme) {
    return meta_step(env, action, scheme, skip_factor(action, scheme), 0);
}

int phase_extension_steps(double u, int k) {
    return static_cast<int>(std::floor(u * k));
}

int phase_extension(Rng& rng, int k) {
    return phase_extension_steps(rng.uniform(), k);
}

}  // namespace tact
