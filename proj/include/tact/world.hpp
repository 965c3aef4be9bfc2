#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tact/geom.hpp"
#include "tact/road_map.hpp"
#include "tact/rng.hpp"

namespace tact {

struct VehicleState {
    Vec2 position;
    double heading = 0.0;      // radians
    double speed = 0.0;        // m/s, longitudinal, never negative
    int lane_id = kNoLane;     // occupied lane
    double lane_offset = 0.0;  // lateral offset from the occupied lane center
    double length = 4.5;
    double width = 1.8;

    // Simulation-frame state. For the ego vehicle `s` is arc length along the
    // route reference chain and `ref_offset` the lateral offset from it; for
    // NPCs `s` runs along their own lane and `ref_offset` stays 0.
    double s = 0.0;
    double ref_offset = 0.0;
    double lateral_rate = 0.0;
    double cruise_speed = 0.0;  // NPC target speed
};

enum class TerminationCause {
    success,
    collision_risk_exceeded,
    stuck_timeout,
    unpermitted_intersection_entry,
};

const char* to_string(TerminationCause c);

struct WorldParams {
    double dt = 0.1;                 // world tick
    double accel_clamp = 3.0;        // m/s^2
    double lateral_rate_clamp = 1.5; // m/s
    double stationary_eps = 0.05;    // m/s
    double stuck_timeout_s = 40.0;
    double road_half_width = 20.0;   // |ref_offset| bound
    double npc_speed_lo = 0.0;       // cruise-speed draw range
    double npc_speed_hi = 5.0;
    bool npc_spawn_opposite = true;
    double npc_min_gap_factor = 2.0; // initial spacing = factor * length
    double ego_start_speed = 0.0;
    double ego_spawn_clearance = 20.0;
};

struct PlacementError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class WorldState {
  public:
    WorldState() = default;
    WorldState(const RoadMap& map, Route route);

    const RoadMap& map() const { return *map_; }
    const Route& route() const { return route_; }
    double route_length() const { return ref_cum_.back(); }

    VehicleState ego;
    std::vector<VehicleState> npcs;

    double clock() const { return static_cast<double>(ticks_) * dt_; }
    long ticks() const { return ticks_; }
    double dt() const { return dt_; }
    void set_dt(double dt) { dt_ = dt; }
    double stationary_seconds() const { return stationary_ticks_ * dt_; }

    // Routing suggestion for the ego's current longitudinal position.
    int navigation_lane() const;
    int final_lane() const { return route_.lane_ids.back(); }

    // Reference chain geometry.
    const Lane& ref_lane_at(double s) const;
    double ref_lane_start(double s) const;
    Vec2 route_point(double s, double offset) const;
    Vec2 route_tangent(double s) const;
    // Arc length (along the reference chain) where the intersection begins,
    // or +inf when the ego is already past it.
    double intersection_entry_s() const;
    bool in_intersection(double s) const;

    // Lateral offset of `lane_id`'s center in the reference frame at s, via
    // neighbor-link walking. Returns false when the lane is not part of the
    // local cross-section.
    bool lane_center_offset(double s, int lane_id, double* out) const;
    // Lane band containing a lateral offset (clamped to the outermost lane).
    std::pair<int, double> locate_lane(double s, double ref_offset) const;

    // Longitudinal arc length of a world position along a given lane.
    double s_on_lane(int lane_id, const Vec2& position) const;

    // Events latched by step_world during the current agent step.
    bool entered_on_red = false;
    bool entered_unpermitted = false;
    void clear_step_events();

    friend WorldState sample_episode(const RoadMap& map, std::uint64_t seed, int n_npcs,
                                     const WorldParams& params);
    friend void step_world(WorldState& state, double ego_accel, double ego_lateral_rate,
                           double dt, std::span<const double> npc_accels,
                           const WorldParams& params);

  private:
    void refresh_ego_pose();
    void refresh_npc_pose(VehicleState& npc) const;

    const RoadMap* map_ = nullptr;
    Route route_;
    std::vector<int> ref_chain_;    // successor chain from route start
    std::vector<double> ref_cum_;   // chain lane start offsets; back() = total length
    double dt_ = 0.1;
    long ticks_ = 0;
    long stationary_ticks_ = 0;
};

WorldState sample_episode(const RoadMap& map, std::uint64_t seed, int n_npcs,
                          const WorldParams& params = {});

// Advances the world one tick of explicit-Euler kinematics. Control inputs
// are clamped to physical limits; npc_accels may be empty (NPCs coast).
void step_world(WorldState& state, double ego_accel, double ego_lateral_rate, double dt,
                std::span<const double> npc_accels = {}, const WorldParams& params = {});

std::optional<TerminationCause> check_termination(const WorldState& state, double current_risk,
                                                  const WorldParams& params = {});

}  // namespace tact
