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

#ifndef SCENGEN_SIM_HPP
#define SCENGEN_SIM_HPP

#include <string>
#include <vector>

#include "scengen/scenario_graph.hpp"
#include "scengen/types.hpp"

namespace scengen {

struct VehicleState {
  Vec2 position = Vec2::Zero();  // meters
  double heading = 0.0;          // radians, wrapped to (-pi, pi]
  double speed = 0.0;            // m/s, >= 0
};

struct BoxDims {
  double length = 4.5;
  double width = 2.0;
};

struct PidGains {
  double kp = 1.2;
  double ki = 0.01;
  double kd = 0.3;
};

struct SimConfig {
  double dt = 0.05;
  int max_steps = 400;
  BoxDims ego{4.5, 2.0};
  BoxDims cyclist{1.8, 0.6};
  BoxDims vehicle{4.5, 2.0};
  double wheelbase = 2.7;
  PidGains lateral;              // acts on heading error to the lookahead point
  double cross_track_gain = 0.2; // rad per meter mixed into the lateral error
  double longitudinal_kp = 1.0;
  double lookahead = 4.0;        // meters ahead of the route projection
  double max_steer_deg = 35.0;
  double max_accel = 3.0;        // m/s^2
  double cyclist_speed = 4.0;    // m/s, obstacle speed in the cyclist family
  double goal_tolerance = 2.0;   // meters to the final waypoint
};

struct RewardConfig {
  double collision_bonus = 10.0;      // R_b
  double occupancy_penalty = 20.0;    // R_p
  double occupancy_threshold = 3.0;   // gamma, meters
};

struct TraceStep {
  int step = 0;
  VehicleState ego;
  VehicleState obstacle;
  bool activated = false;
  double separation = 0.0;  // center-to-center, meters
};

struct RolloutResult {
  std::vector<TraceStep> trace;
  double min_separation = 0.0;
  bool collision = false;
  bool route_occupied = false;
  int steps_executed = 0;
};

/// Mutable controller state carried across steps.
struct PidState {
  double integral = 0.0;
  double prev_error = 0.0;
  bool has_prev = false;
  int progress_hint = 0;  // monotone nearest-segment search start
};

double wrap_angle(double radians);  // to (-pi, pi]

/// One kinematic-bicycle step of the route-following ego. Steering comes from
/// a PID on the heading error to a lookahead point plus a cross-track term;
/// acceleration is proportional control toward the target speed. Steering and
/// acceleration are clamped, so there are no error cases.
VehicleState step_ego(const VehicleState& state, const Route& route,
                      double target_speed_ms, PidState& pid, const SimConfig& cfg);

/// Obstacle update: frozen until activated, then straight-line constant speed.
VehicleState step_obstacle(const VehicleState& state, bool activated, double dt);

/// Oriented-rectangle intersection (separating axis test, closed: touching
/// counts as collision).
bool check_collision(const VehicleState& a, const BoxDims& dims_a,
                     const VehicleState& b, const BoxDims& dims_b);

/// Signed margin of the same test: negative means overlap (penetration
/// depth), positive means the largest axis gap. Used by test oracles.
double collision_margin(const VehicleState& a, const BoxDims& dims_a,
                        const VehicleState& b, const BoxDims& dims_b);

/// Runs the scenario described by `spec` against the route in `state`.
/// Cyclist-family obstacles activate when the ego is within the trigger
/// distance D; the three-block families start moving immediately at their
/// sampled speed V with the preset's fixed heading. route_occupied is set
/// when the spawn lands within reward.occupancy_threshold (gamma) of any
/// route waypoint.
RolloutResult simulate(const ScenarioSpec& spec, const EnvState& state,
                       const ScenarioGraph& graph, const SimConfig& cfg,
                       const RewardConfig& reward = {});

/// R = -min_separation + R_b*[collision] - R_p*[route_occupied].
double compute_reward(const RolloutResult& rollout, const RewardConfig& cfg);

/// Structured-text trace round trip (one record per step) for replay.
std::string trace_to_text(const RolloutResult& rollout);
RolloutResult trace_from_text(const std::string& text);

}  // namespace scengen

#endif  // SCENGEN_SIM_HPP
