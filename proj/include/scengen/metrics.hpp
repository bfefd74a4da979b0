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

#ifndef SCENGEN_METRICS_HPP
#define SCENGEN_METRICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "scengen/policy.hpp"
#include "scengen/trainer.hpp"

namespace scengen {

/// Mean collision rate over the final `window` epochs.
double collision_rate(const std::vector<EpochRecord>& records, int window);

/// First epoch t such that the 10-epoch moving average of the collision rate
/// changes by less than 0.05 between consecutive epochs for all of
/// [t, t + 9]. Needs at least 20 epochs; nullopt if never stable.
std::optional<int> iterations_to_stability(const std::vector<EpochRecord>& records);

/// Discretized density of one block over its physical range. Cells hold the
/// Gaussian pdf at cell centers, normalized to sum to 1.
struct HeatmapField {
  std::string block;
  double lo = 0.0, hi = 0.0;  // physical range
  Vec cells;

  int argmax() const;
  /// Physical center of cell j.
  double cell_center(int j) const;
};

/// Conditional density of `block` given explicit raw parent actions.
/// `raw_actions` only needs valid entries at the block's ancestors.
HeatmapField conditional_field(const PolicyParams& params, const EnvState& state,
                               const ScenarioGraph& graph, const std::string& block,
                               const Vec& raw_actions, int resolution);

/// Density of `block` with every ancestor conditioned on its chain of means
/// (parent-free blocks need no conditioning). Default resolution: 256 bins.
HeatmapField policy_heatmap(const PolicyParams& params, const EnvState& state,
                            const ScenarioGraph& graph, const std::string& block,
                            int resolution = 256);

/// Joint field over two parent-free blocks (outer product of the marginals),
/// default 64x64. Row index runs over `block_x` cells.
struct HeatmapField2D {
  std::string block_x, block_y;
  double x_lo = 0, x_hi = 0, y_lo = 0, y_hi = 0;
  Mat cells;
};
HeatmapField2D policy_heatmap_xy(const PolicyParams& params, const EnvState& state,
                                 const ScenarioGraph& graph, const std::string& block_x,
                                 const std::string& block_y, int resolution = 64);

/// Comma-separated export of the grids for external plotting.
std::string heatmap_to_csv(const HeatmapField& field);
std::string heatmap_to_csv(const HeatmapField2D& field);

}  // namespace scengen

#endif  // SCENGEN_METRICS_HPP
