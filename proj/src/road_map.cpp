#include "tact/road_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tact {

const char* to_string(LaneClass c) {
    switch (c) {
        case LaneClass::normal: return "normal";
        case LaneClass::biking: return "biking";
        case LaneClass::opposite: return "opposite";
        case LaneClass::dead_end: return "dead_end";
    }
    return "?";
}

LaneClass lane_class_from_string(const std::string& s) {
    if (s == "normal") return LaneClass::normal;
    if (s == "biking") return LaneClass::biking;
    if (s == "opposite") return LaneClass::opposite;
    if (s == "dead_end") return LaneClass::dead_end;
    throw std::runtime_error("unknown lane class: " + s);
}

LightPhase TrafficLight::phase_at(double clock) const {
    double cycle = cycle_length();
    double t = std::fmod(clock + phase_offset, cycle);
    if (t < 0) t += cycle;
    if (t < green_s) return LightPhase::green;
    if (t < green_s + yellow_s) return LightPhase::yellow;
    return LightPhase::red;
}

double TrafficLight::time_to_change(double clock) const {
    double cycle = cycle_length();
    double t = std::fmod(clock + phase_offset, cycle);
    if (t < 0) t += cycle;
    if (t < green_s) return green_s - t;
    if (t < green_s + yellow_s) return green_s + yellow_s - t;
    return cycle - t;
}

const Lane& RoadMap::lane(int id) const {
    for (const auto& l : lanes) {
        if (l.id == id) return l;
    }
    throw std::runtime_error("no lane with id " + std::to_string(id));
}

bool RoadMap::has_lane(int id) const {
    return std::any_of(lanes.begin(), lanes.end(), [&](const Lane& l) { return l.id == id; });
}

const TrafficLight* RoadMap::light_for(int from_lane, int to_lane) const {
    for (const auto& tl : lights) {
        if (tl.from_lane == from_lane && tl.to_lane == to_lane) return &tl;
    }
    return nullptr;
}

void RoadMap::validate() const {
    auto fail = [](const std::string& msg) { throw std::runtime_error("invalid map: " + msg); };

    std::set<int> ids;
    for (const auto& l : lanes) {
        if (!ids.insert(l.id).second) fail("duplicate lane id " + std::to_string(l.id));
        if (l.length() <= 0.0) fail("lane " + std::to_string(l.id) + " has zero length");
        if (l.width <= 0.0) fail("lane " + std::to_string(l.id) + " has non-positive width");
        if (l.speed_limit <= 0.0) fail("lane " + std::to_string(l.id) + " has non-positive speed limit");
    }
    auto check_ref = [&](int id, const char* what) {
        if (id != kNoLane && !ids.count(id)) {
            fail(std::string(what) + " references missing lane " + std::to_string(id));
        }
    };
    for (const auto& l : lanes) {
        check_ref(l.left_neighbor, "left neighbor");
        check_ref(l.right_neighbor, "right neighbor");
        check_ref(l.successor, "successor");
        if (l.left_neighbor != kNoLane && lane(l.left_neighbor).right_neighbor != l.id) {
            fail("asymmetric neighbor pair " + std::to_string(l.id) + "/" +
                 std::to_string(l.left_neighbor));
        }
        if (l.right_neighbor != kNoLane && lane(l.right_neighbor).left_neighbor != l.id) {
            fail("asymmetric neighbor pair " + std::to_string(l.id) + "/" +
                 std::to_string(l.right_neighbor));
        }
    }
    for (const auto& tl : lights) {
        check_ref(tl.from_lane, "light");
        check_ref(tl.to_lane, "light");
        if (tl.green_s < 0 || tl.yellow_s < 0 || tl.red_s < 0 || tl.cycle_length() <= 0) {
            fail("light has invalid cycle");
        }
    }
    if (routes.empty()) fail("no routes");
    for (std::size_t r = 0; r < routes.size(); ++r) {
        const auto& ids_r = routes[r].lane_ids;
        if (ids_r.size() != 3) fail("route " + std::to_string(r) + " must have 3 lanes");
        for (int id : ids_r) check_ref(id, "route");
        // exactly one intersection crossing
        int runs = 0;
        bool in_run = false;
        for (int id : ids_r) {
            bool inter = lane(id).intersection;
            if (inter && !in_run) ++runs;
            in_run = inter;
        }
        if (runs != 1 || !lane(ids_r[1]).intersection || lane(ids_r[0]).intersection ||
            lane(ids_r[2]).intersection) {
            fail("route " + std::to_string(r) + " must cross exactly one intersection");
        }
        if (lane(ids_r[0]).successor == kNoLane) {
            fail("route " + std::to_string(r) + " start lane has no successor");
        }
    }
}

namespace {

std::map<std::string, std::string> parse_attrs(std::istringstream& in, const std::string& line) {
    std::map<std::string, std::string> attrs;
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("bad map attribute in: " + line);
        attrs[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return attrs;
}

int parse_lane_ref(const std::string& s) {
    return s == "-" ? kNoLane : std::stoi(s);
}

std::string lane_ref(int id) {
    return id == kNoLane ? "-" : std::to_string(id);
}

std::string fmt_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

RoadMap parse_map(const std::string& text) {
    RoadMap map;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream in(line);
        std::string kind;
        if (!(in >> kind)) continue;
        if (kind == "lane") {
            auto attrs = parse_attrs(in, line);
            Lane l;
            l.id = std::stoi(attrs.at("id"));
            l.lane_class = lane_class_from_string(attrs.at("class"));
            l.width = std::stod(attrs.at("width"));
            l.speed_limit = std::stod(attrs.at("limit"));
            l.left_neighbor = parse_lane_ref(attrs.at("left"));
            l.right_neighbor = parse_lane_ref(attrs.at("right"));
            l.successor = parse_lane_ref(attrs.at("succ"));
            l.intersection = attrs.count("inter") ? attrs.at("inter") == "1" : false;
            std::vector<Vec2> pts;
            std::istringstream poly(attrs.at("poly"));
            std::string pt;
            while (std::getline(poly, pt, ';')) {
                auto comma = pt.find(',');
                if (comma == std::string::npos) throw std::runtime_error("bad polyline: " + pt);
                pts.push_back({std::stod(pt.substr(0, comma)), std::stod(pt.substr(comma + 1))});
            }
            if (pts.size() < 2) throw std::runtime_error("polyline needs two points");
            l.centerline = Polyline(std::move(pts));
            map.lanes.push_back(std::move(l));
        } else if (kind == "light") {
            auto attrs = parse_attrs(in, line);
            TrafficLight tl;
            tl.from_lane = std::stoi(attrs.at("from"));
            tl.to_lane = std::stoi(attrs.at("to"));
            std::istringstream cyc(attrs.at("cycle"));
            char sep;
            cyc >> tl.green_s >> sep >> tl.yellow_s >> sep >> tl.red_s;
            tl.phase_offset = attrs.count("offset") ? std::stod(attrs.at("offset")) : 0.0;
            map.lights.push_back(tl);
        } else if (kind == "route") {
            Route r;
            std::string ids;
            in >> ids;
            std::istringstream list(ids);
            std::string id;
            while (std::getline(list, id, ',')) r.lane_ids.push_back(std::stoi(id));
            map.routes.push_back(std::move(r));
        } else {
            throw std::runtime_error("unknown map directive: " + kind);
        }
    }
    map.validate();
    return map;
}

RoadMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_map(buf.str());
}

std::string serialize_map(const RoadMap& map) {
    std::ostringstream out;
    for (const auto& l : map.lanes) {
        out << "lane id=" << l.id << " class=" << to_string(l.lane_class)
            << " width=" << fmt_num(l.width) << " limit=" << fmt_num(l.speed_limit)
            << " left=" << lane_ref(l.left_neighbor) << " right=" << lane_ref(l.right_neighbor)
            << " succ=" << lane_ref(l.successor) << " inter=" << (l.intersection ? 1 : 0)
            << " poly=";
        const auto& pts = l.centerline.points();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) out << ';';
            out << fmt_num(pts[i].x) << ',' << fmt_num(pts[i].y);
        }
        out << '\n';
    }
    for (const auto& tl : map.lights) {
        out << "light from=" << tl.from_lane << " to=" << tl.to_lane << " cycle="
            << fmt_num(tl.green_s) << ',' << fmt_num(tl.yellow_s) << ',' << fmt_num(tl.red_s)
            << " offset=" << fmt_num(tl.phase_offset) << '\n';
    }
    for (const auto& r : map.routes) {
        out << "route ";
        for (std::size_t i = 0; i < r.lane_ids.size(); ++i) {
            if (i) out << ',';
            out << r.lane_ids[i];
        }
        out << '\n';
    }
    return out.str();
}

void save_map(const RoadMap& map, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write map file: " + path);
    out << serialize_map(map);
}

namespace {

// One straight west-east corridor: two 4-lane segments (biking | normal x2 |
// opposite) joined by a signaled intersection, plus the oncoming flow.
// Lane ids are offset by `base`; geometry is shifted by (x0, y0).
void add_corridor(RoadMap& map, int base, double x0, double y0) {
    const double w = 3.5;
    const double limit = 8.0;
    const double seg = 150.0;
    const double box = 12.0;
    auto straight = [&](double xa, double xb, double y) {
        return Polyline({{x0 + xa, y0 + y}, {x0 + xb, y0 + y}});
    };
    auto mk = [&](int id, LaneClass cls, Polyline poly, int left, int right, int succ,
                  bool inter) {
        Lane l;
        l.id = base + id;
        l.lane_class = cls;
        l.centerline = std::move(poly);
        l.width = w;
        l.speed_limit = limit;
        l.left_neighbor = left == kNoLane ? kNoLane : base + left;
        l.right_neighbor = right == kNoLane ? kNoLane : base + right;
        l.successor = succ == kNoLane ? kNoLane : base + succ;
        l.intersection = inter;
        map.lanes.push_back(std::move(l));
    };
    // segment A (x in [0, 150])
    mk(0, LaneClass::biking, straight(0, seg, 0), 1, kNoLane, kNoLane, false);
    mk(1, LaneClass::normal, straight(0, seg, w), 2, 0, 4, false);
    mk(2, LaneClass::normal, straight(0, seg, 2 * w), 3, 1, 5, false);
    mk(3, LaneClass::opposite, straight(seg, 0, 3 * w), kNoLane, 2, kNoLane, false);
    // intersection connectors (x in [150, 162])
    mk(4, LaneClass::normal, straight(seg, seg + box, w), 5, kNoLane, 8, true);
    mk(5, LaneClass::normal, straight(seg, seg + box, 2 * w), 6, 4, 9, true);
    mk(6, LaneClass::opposite, straight(seg + box, seg, 3 * w), kNoLane, 5, 3, true);
    // segment B (x in [162, 312])
    mk(7, LaneClass::biking, straight(seg + box, 2 * seg + box, 0), 8, kNoLane, kNoLane, false);
    mk(8, LaneClass::normal, straight(seg + box, 2 * seg + box, w), 9, 7, kNoLane, false);
    mk(9, LaneClass::normal, straight(seg + box, 2 * seg + box, 2 * w), 10, 8, kNoLane, false);
    mk(10, LaneClass::opposite, straight(2 * seg + box, seg + box, 3 * w), kNoLane, 9, 6, false);

    const double g = 20.0, y = 2.0, r = 12.0;
    map.lights.push_back({base + 1, base + 4, g, y, r, 0.0});
    map.lights.push_back({base + 2, base + 5, g, y, r, 0.0});
    map.lights.push_back({base + 10, base + 6, g, y, r, 0.0});

    map.routes.push_back({{base + 1, base + 4, base + 8}});
    map.routes.push_back({{base + 2, base + 5, base + 9}});
    map.routes.push_back({{base + 1, base + 4, base + 9}});
    map.routes.push_back({{base + 2, base + 5, base + 8}});
}

}  // namespace

RoadMap make_desk_map() {
    RoadMap map;
    add_corridor(map, 0, 0.0, 0.0);
    map.validate();
    return map;
}

RoadMap make_full_map() {
    RoadMap map;
    for (int c = 0; c < 5; ++c) {
        add_corridor(map, 100 * c, 0.0, 60.0 * c);
    }
    map.validate();
    return map;
}

RoadMap make_slow_leader_map() {
    RoadMap map;
    const double w = 3.5;
    const double limit = 8.0;
    const double seg = 150.0;
    const double box = 12.0;
    auto straight = [&](double xa, double xb, double y) {
        return Polyline({{xa, y}, {xb, y}});
    };
    auto mk = [&](int id, LaneClass cls, Polyline poly, int left, int right, int succ,
                  bool inter) {
        Lane l;
        l.id = id;
        l.lane_class = cls;
        l.centerline = std::move(poly);
        l.width = w;
        l.speed_limit = limit;
        l.left_neighbor = left;
        l.right_neighbor = right;
        l.successor = succ;
        l.intersection = inter;
        map.lanes.push_back(std::move(l));
    };
    mk(0, LaneClass::normal, straight(0, seg, 0), 1, kNoLane, 2, false);
    mk(1, LaneClass::opposite, straight(seg, 0, w), kNoLane, 0, kNoLane, false);
    mk(2, LaneClass::normal, straight(seg, seg + box, 0), 3, kNoLane, 4, true);
    mk(3, LaneClass::opposite, straight(seg + box, seg, w), kNoLane, 2, 1, true);
    mk(4, LaneClass::normal, straight(seg + box, 2 * seg + box, 0), 5, kNoLane, kNoLane, false);
    mk(5, LaneClass::opposite, straight(2 * seg + box, seg + box, w), kNoLane, 4, 3, false);
    // always green
    map.lights.push_back({0, 2, 1.0, 0.0, 0.0, 0.0});
    map.lights.push_back({5, 3, 1.0, 0.0, 0.0, 0.0});
    map.routes.push_back({{0, 2, 4}});
    map.validate();
    return map;
}

}  // namespace tact
