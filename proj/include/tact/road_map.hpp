#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tact/geom.hpp"

namespace tact {

enum class LaneClass { normal, biking, opposite, dead_end };

const char* to_string(LaneClass c);
LaneClass lane_class_from_string(const std::string& s);

constexpr int kNoLane = -1;

struct Lane {
    int id = kNoLane;
    Polyline centerline;
    double width = 3.5;          // meters
    LaneClass lane_class = LaneClass::normal;
    double speed_limit = 8.0;    // m/s
    int left_neighbor = kNoLane;
    int right_neighbor = kNoLane;
    int successor = kNoLane;
    bool intersection = false;   // true for connector lanes inside the box

    double length() const { return centerline.length(); }
};

enum class LightPhase { green, yellow, red };

struct TrafficLight {
    int from_lane = kNoLane;  // controlled connection: from_lane -> to_lane
    int to_lane = kNoLane;
    double green_s = 0.0;
    double yellow_s = 0.0;
    double red_s = 0.0;
    double phase_offset = 0.0;

    double cycle_length() const { return green_s + yellow_s + red_s; }
    LightPhase phase_at(double clock) const;
    // Seconds until the current phase ends.
    double time_to_change(double clock) const;
};

struct Route {
    std::vector<int> lane_ids;  // ordered, two segments joined by one intersection
};

class RoadMap {
  public:
    std::vector<Lane> lanes;
    std::vector<Route> routes;
    std::vector<TrafficLight> lights;

    const Lane& lane(int id) const;
    bool has_lane(int id) const;
    const TrafficLight* light_for(int from_lane, int to_lane) const;

    // Throws std::runtime_error describing the first violated invariant.
    void validate() const;
};

// Plain-text map format (see README for the grammar).
RoadMap load_map(const std::string& path);
RoadMap parse_map(const std::string& text);
std::string serialize_map(const RoadMap& map);
void save_map(const RoadMap& map, const std::string& path);

// Canonical maps.
// Desk scale: two straight 4-lane segments (biking | normal x2 | opposite)
// joined by one signaled 4-way intersection; 4 routes.
RoadMap make_desk_map();
// Overtake scenario: one normal lane plus the oncoming lane, always-green
// signal; used by the scripted slow-leader suite.
RoadMap make_slow_leader_map();
// Full-scale preset: four approach arms, 20 routes.
RoadMap make_full_map();

}  // namespace tact
