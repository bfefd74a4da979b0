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

#ifndef SCENGEN_SVG_HPP
#define SCENGEN_SVG_HPP

#include <string>

#include "scengen/metrics.hpp"
#include "scengen/sim.hpp"

namespace scengen {

/// Color-mapped density strip with axis ticks in physical units.
std::string heatmap_to_svg(const HeatmapField& field, const std::string& unit);

/// Color-mapped 2D grid (x right, y up) with axis ticks in physical units.
std::string heatmap_to_svg(const HeatmapField2D& field, const std::string& unit);

/// Ego and obstacle trajectories of a recorded rollout, with the final
/// bounding boxes drawn; used by the replay subcommand.
std::string trace_to_svg(const RolloutResult& rollout, const BoxDims& ego,
                         const BoxDims& obstacle, const Route* route = nullptr);

}  // namespace scengen

#endif  // SCENGEN_SVG_HPP
