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

#include "scengen/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace scengen {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double wrap_angle(double radians) {
  double a = std::fmod(radians + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

namespace {

struct RouteProjection {
  double cross_track = 0.0;  // signed, positive left of the route
  double arc_length = 0.0;   // along the polyline
  int segment = 0;
};

/// Nearest point on the polyline, searched monotonically from `hint`.
RouteProjection project_onto_route(const Route& route, const Vec2& p, int hint) {
  const auto& wp = route.waypoints;
  const int segments = static_cast<int>(wp.size()) - 1;
  const int first = std::clamp(hint, 0, segments - 1);

  RouteProjection best;
  double best_dist = std::numeric_limits<double>::infinity();
  double arc_prefix = 0.0;
  for (int s = 0; s < first; ++s) arc_prefix += (wp[s + 1] - wp[s]).norm();

  double arc = arc_prefix;
  for (int s = first; s < segments; ++s) {
    const Vec2 a = wp[s], b = wp[s + 1];
    const Vec2 ab = b - a;
    const double len = ab.norm();
    const double t = std::clamp((p - a).dot(ab) / (len * len), 0.0, 1.0);
    const Vec2 closest = a + t * ab;
    const double dist = (p - closest).norm();
    if (dist < best_dist) {
      best_dist = dist;
      const Vec2 tangent = ab / len;
      // left-positive: cross product of tangent with the offset
      const Vec2 offset = p - closest;
      best.cross_track = tangent.x() * offset.y() - tangent.y() * offset.x();
      best.arc_length = arc + t * len;
      best.segment = s;
    }
    arc += len;
  }
  return best;
}

}  // namespace

VehicleState step_ego(const VehicleState& state, const Route& route, double target_speed_ms,
                      PidState& pid, const SimConfig& cfg) {
  const RouteProjection proj = project_onto_route(route, state.position, pid.progress_hint);
  pid.progress_hint = proj.segment;

  const Vec2 lookahead = point_at_arclength(route, proj.arc_length + cfg.lookahead);
  const Vec2 to_target = lookahead - state.position;
  double heading_error = 0.0;
  if (to_target.norm() > 1e-9) {
    heading_error = wrap_angle(std::atan2(to_target.y(), to_target.x()) - state.heading);
  }
  // being left of the route (positive cross-track) steers right
  const double error = heading_error - cfg.cross_track_gain * proj.cross_track;

  pid.integral += error * cfg.dt;
  const double derivative = pid.has_prev ? (error - pid.prev_error) / cfg.dt : 0.0;
  pid.prev_error = error;
  pid.has_prev = true;

  const double max_steer = cfg.max_steer_deg * kPi / 180.0;
  const double steer = std::clamp(
      cfg.lateral.kp * error + cfg.lateral.ki * pid.integral + cfg.lateral.kd * derivative,
      -max_steer, max_steer);
  const double accel =
      std::clamp(cfg.longitudinal_kp * (target_speed_ms - state.speed), -cfg.max_accel,
                 cfg.max_accel);

  VehicleState next;
  next.position = state.position + cfg.dt * state.speed * Vec2(std::cos(state.heading),
                                                               std::sin(state.heading));
  next.heading =
      wrap_angle(state.heading + state.speed / cfg.wheelbase * std::tan(steer) * cfg.dt);
  next.speed = std::max(0.0, state.speed + accel * cfg.dt);
  return next;
}

VehicleState step_obstacle(const VehicleState& state, bool activated, double dt) {
  if (!activated) return state;
  VehicleState next = state;
  next.position += dt * state.speed * Vec2(std::cos(state.heading), std::sin(state.heading));
  return next;
}

namespace {

std::array<Vec2, 2> box_axes(double heading) {
  const double c = std::cos(heading), s = std::sin(heading);
  return {Vec2(c, s), Vec2(-s, c)};
}

}  // namespace

double collision_margin(const VehicleState& a, const BoxDims& dims_a, const VehicleState& b,
                        const BoxDims& dims_b) {
  const auto axes_a = box_axes(a.heading);
  const auto axes_b = box_axes(b.heading);
  const Vec2 delta = b.position - a.position;
  const double half_a[2] = {0.5 * dims_a.length, 0.5 * dims_a.width};
  const double half_b[2] = {0.5 * dims_b.length, 0.5 * dims_b.width};

  // Max over the 4 candidate axes of (center gap - projected extents).
  // Negative everywhere means overlap; the margin is then the least
  // penetrated axis.
  double margin = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const Vec2 axis = i < 2 ? axes_a[i] : axes_b[i - 2];
    const double ra = half_a[0] * std::abs(axis.dot(axes_a[0])) +
                      half_a[1] * std::abs(axis.dot(axes_a[1]));
    const double rb = half_b[0] * std::abs(axis.dot(axes_b[0])) +
                      half_b[1] * std::abs(axis.dot(axes_b[1]));
    margin = std::max(margin, std::abs(axis.dot(delta)) - (ra + rb));
  }
  return margin;
}

bool check_collision(const VehicleState& a, const BoxDims& dims_a, const VehicleState& b,
                     const BoxDims& dims_b) {
  return collision_margin(a, dims_a, b, dims_b) <= 0.0;
}

namespace {

struct ObstacleSetup {
  VehicleState initial;
  BoxDims dims;
  double trigger_distance = -1.0;  // < 0 means immediate activation
};

ObstacleSetup obstacle_from_spec(const ScenarioSpec& spec, const ScenarioGraph& graph,
                                 const RouteFrame& frame, const SimConfig& cfg) {
  const int ix = graph.index_of("X");
  const int iy = graph.index_of("Y");
  if (ix < 0 || iy < 0) {
    throw ConfigError("graph '" + graph.name + "' is missing spawn blocks X/Y");
  }
  if (spec.physical_values.size() != graph.block_count()) {
    throw ConfigError("scenario spec does not match graph '" + graph.name + "'");
  }
  const Vec2 spawn_local(spec.physical_values[ix], spec.physical_values[iy]);

  ObstacleSetup setup;
  setup.initial.position = frame.to_world(spawn_local);

  const int itheta = graph.index_of("Theta");
  const int ispeed = graph.index_of("V");
  if (itheta >= 0) {
    // cyclist family: sampled orientation, fixed speed, trigger distance D
    const int id = graph.index_of("D");
    if (id < 0) throw ConfigError("graph '" + graph.name + "' has Theta but no trigger D");
    setup.initial.heading =
        wrap_angle(frame.angle + spec.physical_values[itheta] * kPi / 180.0);
    setup.initial.speed = cfg.cyclist_speed;
    setup.trigger_distance = spec.physical_values[id];
    setup.dims = cfg.cyclist;
  } else if (ispeed >= 0) {
    // three-block family: preset heading, sampled speed, moves immediately
    setup.initial.heading = wrap_angle(frame.angle + graph.fixed_heading_deg * kPi / 180.0);
    setup.initial.speed = spec.physical_values[ispeed];
    setup.trigger_distance = -1.0;
    setup.dims = cfg.vehicle;
  } else {
    throw ConfigError("graph '" + graph.name + "' has neither Theta nor V block");
  }
  return setup;
}

}  // namespace

RolloutResult simulate(const ScenarioSpec& spec, const EnvState& state,
                       const ScenarioGraph& graph, const SimConfig& cfg,
                       const RewardConfig& reward) {
  state.route.validate();
  const RouteFrame frame = route_frame(state.route);
  const ObstacleSetup setup = obstacle_from_spec(spec, graph, frame, cfg);

  VehicleState ego;
  ego.position = state.route.waypoints.front();
  ego.heading = frame.angle;
  ego.speed = 0.0;
  VehicleState obstacle = setup.initial;

  RolloutResult result;
  for (const auto& wp : state.route.waypoints) {
    if ((wp - obstacle.position).norm() < reward.occupancy_threshold) {
      result.route_occupied = true;
      break;
    }
  }

  const double target_speed_ms = state.target_speed_kmh / 3.6;
  PidState pid;
  bool activated = setup.trigger_distance < 0.0;
  result.min_separation = std::numeric_limits<double>::infinity();

  for (int step = 0; step < cfg.max_steps; ++step) {
    if (!activated &&
        (ego.position - obstacle.position).norm() <= setup.trigger_distance) {
      activated = true;
    }
    const double separation = (ego.position - obstacle.position).norm();
    result.min_separation = std::min(result.min_separation, separation);
    result.trace.push_back({step, ego, obstacle, activated, separation});

    if (check_collision(ego, cfg.ego, obstacle, setup.dims)) {
      result.collision = true;
      break;
    }
    if ((ego.position - state.route.waypoints.back()).norm() <= cfg.goal_tolerance) {
      break;
    }

    ego = step_ego(ego, state.route, target_speed_ms, pid, cfg);
    obstacle = step_obstacle(obstacle, activated, cfg.dt);
    result.steps_executed = step + 1;
  }
  return result;
}

double compute_reward(const RolloutResult& rollout, const RewardConfig& cfg) {
  double reward = -rollout.min_separation;
  if (rollout.collision) reward += cfg.collision_bonus;
  if (rollout.route_occupied) reward -= cfg.occupancy_penalty;
  return reward;
}

std::string trace_to_text(const RolloutResult& rollout) {
  std::ostringstream out;
  out.precision(17);
  out << "# scengen-trace v1\n";
  out << "# min_separation=" << rollout.min_separation << " collision=" << rollout.collision
      << " route_occupied=" << rollout.route_occupied
      << " steps_executed=" << rollout.steps_executed << "\n";
  out << "step,ego_x,ego_y,ego_heading,ego_speed,obs_x,obs_y,obs_heading,obs_speed,"
         "activated,separation\n";
  for (const auto& t : rollout.trace) {
    out << t.step << ',' << t.ego.position.x() << ',' << t.ego.position.y() << ','
        << t.ego.heading << ',' << t.ego.speed << ',' << t.obstacle.position.x() << ','
        << t.obstacle.position.y() << ',' << t.obstacle.heading << ',' << t.obstacle.speed
        << ',' << (t.activated ? 1 : 0) << ',' << t.separation << '\n';
  }
  return out.str();
}

RolloutResult trace_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  RolloutResult result;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "min_separation") result.min_separation = std::stod(value);
        if (key == "collision") result.collision = value == "1";
        if (key == "route_occupied") result.route_occupied = value == "1";
        if (key == "steps_executed") result.steps_executed = std::stoi(value);
      }
      continue;
    }
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    TraceStep t;
    char comma;
    int activated = 0;
    row >> t.step >> comma >> t.ego.position.x() >> comma >> t.ego.position.y() >> comma >>
        t.ego.heading >> comma >> t.ego.speed >> comma >> t.obstacle.position.x() >> comma >>
        t.obstacle.position.y() >> comma >> t.obstacle.heading >> comma >> t.obstacle.speed >>
        comma >> activated >> comma >> t.separation;
    if (row.fail()) throw ConfigError("malformed trace row: " + line);
    t.activated = activated != 0;
    result.trace.push_back(t);
  }
  if (!header_seen) throw ConfigError("trace file has no header row");
  return result;
}

}  // namespace scengen
