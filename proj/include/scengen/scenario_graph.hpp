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

#ifndef SCENGEN_SCENARIO_GRAPH_HPP
#define SCENGEN_SCENARIO_GRAPH_HPP

#include <string>
#include <vector>

#include "scengen/routes.hpp"
#include "scengen/types.hpp"

namespace scengen {

enum class BlockKind { kContinuous, kDiscrete };

/// One scenario parameter node. `scale` is the width of the physical range
/// and `shift` its midpoint, so values live in [shift - scale/2, shift + scale/2].
struct BlockDef {
  std::string name;
  BlockKind kind = BlockKind::kContinuous;
  std::vector<std::string> parents;  // must appear earlier in the graph
  double scale = 1.0;                // > 0, physical units
  double shift = 0.0;                // same units

  double lo() const { return shift - 0.5 * scale; }
  double hi() const { return shift + 0.5 * scale; }
};

/// A DAG of building blocks; list order is the topological order.
/// For presets that fix the obstacle orientation, `fixed_heading_deg`
/// carries that constant (route-frame degrees) instead of a Theta block.
struct ScenarioGraph {
  std::string name;
  std::vector<BlockDef> blocks;
  double fixed_heading_deg = 180.0;  // used only when no "Theta" block exists

  int block_count() const { return static_cast<int>(blocks.size()); }
  /// Index of a block by name, -1 if absent.
  int index_of(const std::string& block_name) const;
  /// Parent indices of block k, in the order listed in its parent list.
  std::vector<int> parent_indices(int k) const;
  /// Throws ConfigError if names collide, a parent is missing, or a parent
  /// does not precede its child. Also checks scale > 0.
  void validate() const;
};

/// One concrete sampled scenario.
struct ScenarioSpec {
  Vec raw_actions;      // dimensionless, one per block
  Vec physical_values;  // block units, truncated to each block's range
  double log_prob = 0.0;  // nats
  double entropy = 0.0;   // nats
};

/// Environment state fed to the policy: route, target speed, and the
/// fixed-length encoding of both.
struct EnvState {
  Route route;
  double target_speed_kmh = 30.0;
  Vec encoded;  // length 2*W + 1
};

struct EncodeConfig {
  int waypoints = 10;           // W, resampled count
  double length_scale = 100.0;  // divisor for coordinates (matches l_X)
  double speed_lo_kmh = 20.0;
  double speed_hi_kmh = 50.0;
};

/// Builds one of the named scenario families.
/// Valid names: cyclist_crossing, red_light_runner, unprotected_left,
/// signalized_right.
ScenarioGraph build_preset(const std::string& name);

const std::vector<std::string>& preset_names();

/// Maps a raw action to block units: clamp(a*scale + shift, lo, hi).
/// Throws NumericError on non-finite input.
double rescale(double raw_action, const BlockDef& block);

/// Inverse of rescale on the interior of the range.
double to_raw(double physical, const BlockDef& block);

/// Resamples the route to cfg.waypoints points by arc length, expresses them
/// in the route-start frame, divides by cfg.length_scale and appends the
/// normalized target speed. Output length 2*W + 1.
EnvState encode_state(const Route& route, double target_speed_kmh,
                      const EncodeConfig& cfg = {});

/// Structured-text (JSON) round trip so users can define new families
/// without code changes.
std::string graph_to_json(const ScenarioGraph& graph);
ScenarioGraph graph_from_json(const std::string& text);

/// Copy of the graph with every parent list cleared (independent-policy
/// baseline).
ScenarioGraph strip_parents(const ScenarioGraph& graph);

}  // namespace scengen

#endif  // SCENGEN_SCENARIO_GRAPH_HPP
