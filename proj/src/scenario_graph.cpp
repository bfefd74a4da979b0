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

#include "scengen/scenario_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace scengen {

using json = nlohmann::ordered_json;

int ScenarioGraph::index_of(const std::string& block_name) const {
  for (int i = 0; i < block_count(); ++i) {
    if (blocks[i].name == block_name) return i;
  }
  return -1;
}

std::vector<int> ScenarioGraph::parent_indices(int k) const {
  std::vector<int> out;
  out.reserve(blocks[k].parents.size());
  for (const auto& p : blocks[k].parents) out.push_back(index_of(p));
  return out;
}

void ScenarioGraph::validate() const {
  std::set<std::string> seen;
  for (int i = 0; i < block_count(); ++i) {
    const BlockDef& b = blocks[i];
    if (!seen.insert(b.name).second) {
      throw ConfigError("graph '" + name + "': duplicate block name '" + b.name + "'");
    }
    if (!(b.scale > 0.0)) {
      throw ConfigError("graph '" + name + "': block '" + b.name + "' needs scale > 0");
    }
    for (const auto& p : b.parents) {
      const int pi = index_of(p);
      if (pi < 0) {
        throw ConfigError("graph '" + name + "': block '" + b.name + "' references unknown parent '" +
                          p + "'");
      }
      if (pi >= i) {
        throw ConfigError("graph '" + name + "': parent '" + p + "' of '" + b.name +
                          "' must precede it");
      }
    }
  }
}

namespace {

BlockDef block(std::string name, std::vector<std::string> parents, double shift, double scale) {
  BlockDef b;
  b.name = std::move(name);
  b.parents = std::move(parents);
  b.shift = shift;
  b.scale = scale;
  return b;
}

const std::vector<std::string> kPresetNames = {"cyclist_crossing", "red_light_runner",
                                               "unprotected_left", "signalized_right"};

/// Spawn X/Y share the stock ranges; speed V covers 1..15 m/s.
ScenarioGraph three_block_preset(const std::string& name, double fixed_heading_deg) {
  ScenarioGraph g;
  g.name = name;
  g.blocks = {block("X", {}, 0.0, 100.0), block("Y", {}, 0.0, 18.0),
              block("V", {"X", "Y"}, 8.0, 14.0)};
  g.fixed_heading_deg = fixed_heading_deg;
  return g;
}

}  // namespace

ScenarioGraph build_preset(const std::string& name) {
  if (name == "cyclist_crossing") {
    ScenarioGraph g;
    g.name = name;
    g.blocks = {block("X", {}, 0.0, 100.0), block("Y", {}, 0.0, 18.0),
                block("Theta", {"X", "Y"}, 180.0, 360.0),
                block("D", {"X", "Y", "Theta"}, 20.0, 40.0)};
    return g;
  }
  // Fixed obstacle headings (route-frame degrees): the red-light runner and
  // the right-turn adversary cross from the left (270 = toward -y), the
  // unprotected-left adversary comes head-on (180 = toward -x).
  if (name == "red_light_runner") return three_block_preset(name, 270.0);
  if (name == "unprotected_left") return three_block_preset(name, 180.0);
  if (name == "signalized_right") return three_block_preset(name, 270.0);
  throw ConfigError("unknown scenario preset '" + name + "'");
}

const std::vector<std::string>& preset_names() { return kPresetNames; }

double rescale(double raw_action, const BlockDef& block) {
  if (!std::isfinite(raw_action)) {
    throw NumericError("non-finite raw action for block '" + block.name + "'");
  }
  return std::clamp(raw_action * block.scale + block.shift, block.lo(), block.hi());
}

double to_raw(double physical, const BlockDef& block) {
  return (physical - block.shift) / block.scale;
}

EnvState encode_state(const Route& route, double target_speed_kmh, const EncodeConfig& cfg) {
  const std::vector<Vec2> pts = resample_by_arclength(route, cfg.waypoints);
  const RouteFrame frame = route_frame(route);

  EnvState state;
  state.route = route;
  state.target_speed_kmh = target_speed_kmh;
  state.encoded.resize(2 * cfg.waypoints + 1);
  for (int i = 0; i < cfg.waypoints; ++i) {
    const Vec2 local = frame.to_local(pts[i]) / cfg.length_scale;
    state.encoded[2 * i] = local.x();
    state.encoded[2 * i + 1] = local.y();
  }
  state.encoded[2 * cfg.waypoints] =
      (target_speed_kmh - cfg.speed_lo_kmh) / (cfg.speed_hi_kmh - cfg.speed_lo_kmh);
  return state;
}

ScenarioGraph strip_parents(const ScenarioGraph& graph) {
  ScenarioGraph out = graph;
  out.name = graph.name + "_independent";
  for (auto& b : out.blocks) b.parents.clear();
  return out;
}

std::string graph_to_json(const ScenarioGraph& graph) {
  json doc;
  doc["name"] = graph.name;
  doc["fixed_heading_deg"] = graph.fixed_heading_deg;
  doc["blocks"] = json::array();
  for (const auto& b : graph.blocks) {
    json jb;
    jb["name"] = b.name;
    jb["kind"] = b.kind == BlockKind::kContinuous ? "continuous" : "discrete";
    jb["parents"] = b.parents;
    jb["scale"] = b.scale;
    jb["shift"] = b.shift;
    doc["blocks"].push_back(jb);
  }
  return doc.dump(2);
}

ScenarioGraph graph_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("graph document is not valid JSON: ") + e.what());
  }
  ScenarioGraph g;
  try {
    g.name = doc.at("name").get<std::string>();
    g.fixed_heading_deg = doc.value("fixed_heading_deg", 180.0);
    for (const auto& jb : doc.at("blocks")) {
      BlockDef b;
      b.name = jb.at("name").get<std::string>();
      const auto kind = jb.at("kind").get<std::string>();
      if (kind == "continuous") {
        b.kind = BlockKind::kContinuous;
      } else if (kind == "discrete") {
        b.kind = BlockKind::kDiscrete;
      } else {
        throw ConfigError("block '" + b.name + "': unknown kind '" + kind + "'");
      }
      b.parents = jb.at("parents").get<std::vector<std::string>>();
      b.scale = jb.at("scale").get<double>();
      b.shift = jb.at("shift").get<double>();
      g.blocks.push_back(std::move(b));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed graph document: ") + e.what());
  }
  g.validate();
  return g;
}

}  // namespace scengen
