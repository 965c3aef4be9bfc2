#include "tact/action_mask.hpp"

#include <stdexcept>

namespace tact {

const char* to_string(MaskRule r) {
    switch (r) {
        case MaskRule::none: return "none";
        case MaskRule::rule1: return "rule1";
        case MaskRule::rule2: return "rule2";
    }
    return "?";
}

MaskRule mask_rule_from_string(const std::string& s) {
    if (s == "none") return MaskRule::none;
    if (s == "rule1") return MaskRule::rule1;
    if (s == "rule2") return MaskRule::rule2;
    throw std::invalid_argument("unknown mask rule: " + s);
}

ActionMask allowed_actions(const MaskRuleSet& rules, const WorldState& world) {
    ActionMask mask{true, true, true};
    if (rules.rule == MaskRule::none) return mask;

    bool slow_on_nav = world.ego.lane_id == world.navigation_lane() &&
                       world.ego.speed < rules.v_slow;
    if (slow_on_nav) {
        mask[1] = false;
        mask[2] = false;
    }
    if (rules.rule == MaskRule::rule2) {
        const Lane& occupied = world.map().lane(world.ego.lane_id);
        auto dangerous = [&](int id) {
            if (id == kNoLane) return false;
            LaneClass c = world.map().lane(id).lane_class;
            return c == LaneClass::opposite || c == LaneClass::biking;
        };
        if (dangerous(occupied.left_neighbor)) mask[1] = false;
        if (dangerous(occupied.right_neighbor)) mask[2] = false;
    }
    return mask;
}

}  // namespace tact
