// Copyright 2026 The scengen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scengen/routes.hpp"

#include <cmath>
#include <map>

namespace scengen {

double Route::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    total += (waypoints[i] - waypoints[i - 1]).norm();
  }
  return total;
}

void Route::validate() const {
  if (waypoints.size() < 2) {
    throw ConfigError("route '" + name + "' needs at least 2 waypoints");
  }
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    if ((waypoints[i] - waypoints[i - 1]).norm() == 0.0) {
      throw ConfigError("route '" + name + "' has duplicate consecutive waypoints at index " +
                        std::to_string(i));
    }
  }
}

Vec2 RouteFrame::to_world(const Vec2& local) const {
  const double c = std::cos(angle), s = std::sin(angle);
  return origin + Vec2(c * local.x() - s * local.y(), s * local.x() + c * local.y());
}

Vec2 RouteFrame::to_local(const Vec2& world) const {
  const double c = std::cos(angle), s = std::sin(angle);
  const Vec2 d = world - origin;
  return Vec2(c * d.x() + s * d.y(), -s * d.x() + c * d.y());
}

RouteFrame route_frame(const Route& route) {
  route.validate();
  const Vec2 first_segment = route.waypoints[1] - route.waypoints[0];
  return RouteFrame{route.waypoints[0], std::atan2(first_segment.y(), first_segment.x())};
}

Vec2 point_at_arclength(const Route& route, double s) {
  if (s <= 0.0) return route.waypoints.front();
  double walked = 0.0;
  for (std::size_t i = 1; i < route.waypoints.size(); ++i) {
    const Vec2 seg = route.waypoints[i] - route.waypoints[i - 1];
    const double len = seg.norm();
    if (walked + len >= s) {
      return route.waypoints[i - 1] + seg * ((s - walked) / len);
    }
    walked += len;
  }
  return route.waypoints.back();
}

std::vector<Vec2> resample_by_arclength(const Route& route, int count) {
  route.validate();
  if (count < 2) throw ConfigError("resample count must be at least 2");
  const double total = route.length();
  std::vector<Vec2> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(point_at_arclength(route, total * i / (count - 1)));
  }
  return out;
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSpacing = 2.0;  // target waypoint spacing, meters

struct Builder {
  std::vector<Vec2> points{Vec2::Zero()};
  double heading = 0.0;

  void straight(double len) {
    const Vec2 dir(std::cos(heading), std::sin(heading));
    const int n = std::max(1, static_cast<int>(std::round(len / kSpacing)));
    const Vec2 start = points.back();
    for (int i = 1; i <= n; ++i) points.push_back(start + dir * (len * i / n));
  }

  /// Positive angle turns left, negative right. Radius in meters.
  void arc(double radius, double angle_deg) {
    const double angle = angle_deg * kPi / 180.0;
    const double side = angle >= 0 ? 1.0 : -1.0;
    const Vec2 center = points.back() + radius * Vec2(std::cos(heading + side * kPi / 2),
                                                      std::sin(heading + side * kPi / 2));
    const double arc_len = radius * std::abs(angle);
    const int n = std::max(2, static_cast<int>(std::round(arc_len / kSpacing)));
    const double start_angle = heading - side * kPi / 2;
    for (int i = 1; i <= n; ++i) {
      const double a = start_angle + angle * i / n;
      points.push_back(center + radius * Vec2(std::cos(a), std::sin(a)));
    }
    heading += angle;
  }

  Route done(std::string name) && { return Route{std::move(name), std::move(points)}; }
};

Route make_turn(const std::string& name, double approach, double radius, double angle_deg,
                double exit) {
  Builder b;
  b.straight(approach);
  b.arc(radius, angle_deg);
  b.straight(exit);
  return std::move(b).done(name);
}

Route make_straight(const std::string& name, double len) {
  Builder b;
  b.straight(len);
  return std::move(b).done(name);
}

const std::map<std::string, Route>& preset_table() {
  static const std::map<std::string, Route> table = [] {
    std::map<std::string, Route> t;
    auto add = [&t](Route r) { t.emplace(r.name, std::move(r)); };
    // training set
    add(make_straight("straight_80", 80));
    add(make_straight("straight_120", 120));
    add(make_turn("left_r8", 30, 8, 90, 30));
    add(make_turn("left_r12", 40, 12, 90, 30));
    add(make_turn("left_r16", 25, 16, 90, 35));
    add(make_turn("right_r8", 30, 8, -90, 30));
    add(make_turn("right_r12", 40, 12, -90, 30));
    add(make_turn("right_r16", 25, 16, -90, 35));
    add(make_turn("sweep_left_r20", 35, 20, 45, 40));
    add(make_turn("sweep_right_r20", 35, 20, -45, 40));
    // held-out set
    add(make_straight("straight_100", 100));
    add(make_turn("left_r10", 30, 10, 90, 40));
    add(make_turn("right_r10", 30, 10, -90, 40));
    add(make_turn("left_r14_short", 20, 14, 90, 25));
    return t;
  }();
  return table;
}

const std::vector<std::string> kTrainingNames = {
    "straight_80", "straight_120", "left_r8",  "left_r12",       "left_r16",
    "right_r8",    "right_r12",    "right_r16", "sweep_left_r20", "sweep_right_r20"};

const std::vector<std::string> kHoldoutNames = {"straight_100", "left_r10", "right_r10",
                                                "left_r14_short"};

}  // namespace

Route route_preset(const std::string& name) {
  const auto& table = preset_table();
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown route preset '" + name + "'");
  return it->second;
}

const std::vector<std::string>& route_preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, route] : preset_table()) n.push_back(name);
    return n;
  }();
  return names;
}

std::vector<Route> training_routes() {
  std::vector<Route> out;
  for (const auto& n : kTrainingNames) out.push_back(route_preset(n));
  return out;
}

std::vector<Route> holdout_routes() {
  std::vector<Route> out;
  for (const auto& n : kHoldoutNames) out.push_back(route_preset(n));
  return out;
}

}  // namespace scengen
