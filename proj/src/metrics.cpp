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

#include "scengen/metrics.hpp"

#include <cmath>
#include <sstream>

#include "scengen/nn.hpp"

namespace scengen {

double collision_rate(const std::vector<EpochRecord>& records, int window) {
  if (records.empty()) throw ConfigError("collision_rate needs at least one record");
  if (window < 1 || window > static_cast<int>(records.size())) {
    throw ConfigError("collision_rate window must be in [1, record count]");
  }
  double sum = 0.0;
  for (std::size_t i = records.size() - window; i < records.size(); ++i) {
    sum += records[i].collision_rate();
  }
  return sum / window;
}

std::optional<int> iterations_to_stability(const std::vector<EpochRecord>& records) {
  constexpr int kWindow = 10;      // moving-average width
  constexpr int kPersist = 10;     // epochs the average must stay put
  constexpr double kTol = 0.05;
  const int n = static_cast<int>(records.size());
  if (n < kWindow + kPersist) return std::nullopt;

  // moving average of the collision rate, defined from epoch kWindow on
  std::vector<double> ma(n + 1, 0.0);
  double acc = 0.0;
  for (int e = 1; e <= n; ++e) {
    acc += records[e - 1].collision_rate();
    if (e > kWindow) acc -= records[e - kWindow - 1].collision_rate();
    if (e >= kWindow) ma[e] = acc / kWindow;
  }

  // delta_e = |ma_e - ma_{e-1}| exists from epoch kWindow+1 on; stability is
  // the first epoch t with delta < tol for all of [t, t+kPersist-1]
  for (int t = kWindow + 1; t + kPersist - 1 <= n; ++t) {
    bool stable = true;
    for (int e = t; e < t + kPersist; ++e) {
      if (std::abs(ma[e] - ma[e - 1]) >= kTol) {
        stable = false;
        break;
      }
    }
    if (stable) return t;
  }
  return std::nullopt;
}

int HeatmapField::argmax() const {
  int best = 0;
  for (int j = 1; j < cells.size(); ++j) {
    if (cells[j] > cells[best]) best = j;
  }
  return best;
}

double HeatmapField::cell_center(int j) const {
  const double width = (hi - lo) / static_cast<double>(cells.size());
  return lo + (j + 0.5) * width;
}

HeatmapField conditional_field(const PolicyParams& params, const EnvState& state,
                               const ScenarioGraph& graph, const std::string& block,
                               const Vec& raw_actions, int resolution) {
  const int k = graph.index_of(block);
  if (k < 0) throw ConfigError("unknown block '" + block + "'");
  if (resolution < 1) throw ConfigError("heatmap resolution must be >= 1");

  const PolicyForward fwd = evaluate_actions(params, state.encoded, graph, raw_actions);
  const BlockDef& def = graph.blocks[k];

  HeatmapField field;
  field.block = block;
  field.lo = def.lo();
  field.hi = def.hi();
  field.cells.resize(resolution);
  for (int j = 0; j < resolution; ++j) {
    const double physical = field.cell_center(j);
    const double raw = to_raw(physical, def);
    field.cells[j] = std::exp(gaussian_log_pdf(raw, fwd.mu[k], fwd.sigma[k]));
  }
  const double total = field.cells.sum();
  if (!(total > 0.0)) throw NumericError("heatmap for '" + block + "' has zero mass");
  field.cells /= total;
  return field;
}

namespace {

/// Raw actions with every ancestor of `k` fixed to its conditional mean,
/// walked in topological order.
Vec mean_chain_actions(const PolicyParams& params, const EnvState& state,
                       const ScenarioGraph& graph) {
  Vec actions = Vec::Zero(graph.block_count());
  // Repeated evaluation is cheap here and keeps the conditioning exact:
  // block k's mean depends only on earlier entries of `actions`.
  for (int k = 0; k < graph.block_count(); ++k) {
    const PolicyForward fwd = evaluate_actions(params, state.encoded, graph, actions);
    actions[k] = fwd.mu[k];
  }
  return actions;
}

}  // namespace

HeatmapField policy_heatmap(const PolicyParams& params, const EnvState& state,
                            const ScenarioGraph& graph, const std::string& block,
                            int resolution) {
  const int k = graph.index_of(block);
  if (k < 0) throw ConfigError("unknown block '" + block + "'");
  return conditional_field(params, state, graph, block,
                           mean_chain_actions(params, state, graph), resolution);
}

HeatmapField2D policy_heatmap_xy(const PolicyParams& params, const EnvState& state,
                                 const ScenarioGraph& graph, const std::string& block_x,
                                 const std::string& block_y, int resolution) {
  const int kx = graph.index_of(block_x);
  const int ky = graph.index_of(block_y);
  if (kx < 0 || ky < 0) throw ConfigError("unknown block in 2D heatmap request");
  if (!graph.blocks[kx].parents.empty() || !graph.blocks[ky].parents.empty()) {
    throw ConfigError("2D heatmap expects parent-free blocks");
  }
  const HeatmapField fx = policy_heatmap(params, state, graph, block_x, resolution);
  const HeatmapField fy = policy_heatmap(params, state, graph, block_y, resolution);

  HeatmapField2D field;
  field.block_x = block_x;
  field.block_y = block_y;
  field.x_lo = fx.lo;
  field.x_hi = fx.hi;
  field.y_lo = fy.lo;
  field.y_hi = fy.hi;
  field.cells = fx.cells * fy.cells.transpose();  // independent blocks
  return field;
}

std::string heatmap_to_csv(const HeatmapField& field) {
  std::ostringstream out;
  out.precision(12);
  out << "center,density\n";
  for (int j = 0; j < field.cells.size(); ++j) {
    out << field.cell_center(j) << ',' << field.cells[j] << '\n';
  }
  return out.str();
}

std::string heatmap_to_csv(const HeatmapField2D& field) {
  std::ostringstream out;
  out.precision(12);
  for (Eigen::Index i = 0; i < field.cells.rows(); ++i) {
    for (Eigen::Index j = 0; j < field.cells.cols(); ++j) {
      if (j) out << ',';
      out << field.cells(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace scengen
