#pragma once

#include <array>
#include <string>

#include "tact/planner.hpp"
#include "tact/world.hpp"

namespace tact {

enum class MaskRule { none, rule1, rule2 };

const char* to_string(MaskRule r);
MaskRule mask_rule_from_string(const std::string& s);

struct MaskRuleSet {
    MaskRule rule = MaskRule::none;
    double v_slow = 2.0;  // m/s
};

// Index order: keep_lane, switch_left, switch_right.
using ActionMask = std::array<bool, 3>;

// Rule 1 removes lane switches while the ego moves slowly on the navigation
// lane; rule 2 additionally bans switches whose destination is an opposite or
// biking lane. keep_lane always stays allowed.
ActionMask allowed_actions(const MaskRuleSet& rules, const WorldState& world);

}  // namespace tact
