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

#ifndef SCENGEN_ROUTES_HPP
#define SCENGEN_ROUTES_HPP

#include <string>
#include <vector>

#include "scengen/types.hpp"

namespace scengen {

/// A reference route: ordered 2D waypoints in meters. Consecutive waypoints
/// must be distinct and there must be at least two of them.
struct Route {
  std::string name;
  std::vector<Vec2> waypoints;

  double length() const;
  void validate() const;
};

/// Rigid transform from route-start frame to the route's native frame:
/// origin at the first waypoint, +x along the first segment.
struct RouteFrame {
  Vec2 origin = Vec2::Zero();
  double angle = 0.0;  // radians

  Vec2 to_world(const Vec2& local) const;
  Vec2 to_local(const Vec2& world) const;
};

RouteFrame route_frame(const Route& route);

/// Point at the given arc length along the polyline (clamped to the ends).
Vec2 point_at_arclength(const Route& route, double s);

/// Route resampled to `count` waypoints equally spaced by arc length.
std::vector<Vec2> resample_by_arclength(const Route& route, int count);

/// Named route presets built from straight and 90/45 degree arc segments,
/// sampled at roughly 2 m spacing.
Route route_preset(const std::string& name);
const std::vector<std::string>& route_preset_names();

/// The ten routes used for training draws and the four held-out test routes.
std::vector<Route> training_routes();
std::vector<Route> holdout_routes();

}  // namespace scengen

#endif  // SCENGEN_ROUTES_HPP
