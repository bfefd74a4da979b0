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

#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "scengen/scenario_graph.hpp"

using namespace scengen;

TEST_CASE("cyclist preset matches the four-block factorization") {
  const ScenarioGraph g = build_preset("cyclist_crossing");
  REQUIRE(g.block_count() == 4);
  CHECK(g.blocks[0].name == "X");
  CHECK(g.blocks[1].name == "Y");
  CHECK(g.blocks[2].name == "Theta");
  CHECK(g.blocks[3].name == "D");
  CHECK(g.blocks[0].parents.empty());
  CHECK(g.blocks[1].parents.empty());
  CHECK(g.blocks[2].parents == std::vector<std::string>{"X", "Y"});
  CHECK(g.blocks[3].parents == std::vector<std::string>{"X", "Y", "Theta"});
}

TEST_CASE("cyclist preset carries the stock scale/shift constants") {
  const ScenarioGraph g = build_preset("cyclist_crossing");
  CHECK(g.blocks[g.index_of("X")].scale == 100.0);
  CHECK(g.blocks[g.index_of("X")].shift == 0.0);
  CHECK(g.blocks[g.index_of("Y")].scale == 18.0);
  CHECK(g.blocks[g.index_of("Theta")].shift == 180.0);
  CHECK(g.blocks[g.index_of("Theta")].scale == 360.0);
  CHECK(g.blocks[g.index_of("D")].shift == 20.0);
  CHECK(g.blocks[g.index_of("D")].scale == 40.0);
}

TEST_CASE("three-block presets have no Theta block") {
  for (const auto& name : {"red_light_runner", "unprotected_left", "signalized_right"}) {
    const ScenarioGraph g = build_preset(name);
    CHECK(g.block_count() == 3);
    CHECK(g.index_of("Theta") == -1);
    CHECK(g.index_of("V") >= 0);
  }
  CHECK_THROWS_AS(build_preset("no_such_preset"), ConfigError);
}

TEST_CASE("rescale maps fractions of the range and truncates") {
  const ScenarioGraph g = build_preset("cyclist_crossing");
  const BlockDef& theta = g.blocks[g.index_of("Theta")];
  const BlockDef& d = g.blocks[g.index_of("D")];
  CHECK(rescale(0.0, theta) == doctest::Approx(180.0));
  CHECK(rescale(0.5, d) == doctest::Approx(40.0));
  CHECK(rescale(2.0, d) == doctest::Approx(40.0));  // clamped at the boundary
  CHECK(rescale(-2.0, d) == doctest::Approx(0.0));
  CHECK_THROWS_AS(rescale(std::numeric_limits<double>::quiet_NaN(), d), NumericError);
  CHECK_THROWS_AS(rescale(std::numeric_limits<double>::infinity(), d), NumericError);
}

TEST_CASE("rescale is monotone and idempotent on clamped values") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> actions(-3.0, 3.0);
  std::uniform_real_distribution<double> scales(0.1, 100.0);
  std::uniform_real_distribution<double> shifts(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    BlockDef b;
    b.name = "B";
    b.scale = scales(rng);
    b.shift = shifts(rng);
    double a1 = actions(rng), a2 = actions(rng);
    if (a1 > a2) std::swap(a1, a2);
    const double r1 = rescale(a1, b);
    const double r2 = rescale(a2, b);
    CHECK(r1 <= r2);
    // feeding a clamped physical value back through as a fraction stays put
    CHECK(rescale(to_raw(r1, b), b) == doctest::Approx(r1).epsilon(1e-12));
  }
}

TEST_CASE("graph validation rejects broken parent structure") {
  ScenarioGraph g;
  g.name = "broken";
  BlockDef a;
  a.name = "A";
  BlockDef b;
  b.name = "B";
  b.parents = {"C"};
  g.blocks = {a, b};
  CHECK_THROWS_AS(g.validate(), ConfigError);

  g.blocks[1].parents = {"B"};  // self-reference fails the ordering rule
  CHECK_THROWS_AS(g.validate(), ConfigError);

  g.blocks[1].parents = {"A"};
  CHECK_NOTHROW(g.validate());

  g.blocks[1].name = "A";  // duplicate
  CHECK_THROWS_AS(g.validate(), ConfigError);

  g.blocks[1].name = "B";
  g.blocks[1].scale = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("random valid graphs always list parents before children") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    ScenarioGraph g;
    g.name = "fuzz";
    std::uniform_int_distribution<int> count_dist(1, 8);
    const int n = count_dist(rng);
    for (int i = 0; i < n; ++i) {
      BlockDef b;
      b.name = "B" + std::to_string(i);
      b.scale = 1.0;
      if (i > 0) {
        std::uniform_int_distribution<int> parent_count(0, i);
        const int parents = parent_count(rng);
        for (int p = 0; p < parents; ++p) {
          b.parents.push_back("B" + std::to_string(p));
        }
      }
      g.blocks.push_back(b);
    }
    REQUIRE_NOTHROW(g.validate());
    for (int k = 0; k < g.block_count(); ++k) {
      for (int pi : g.parent_indices(k)) CHECK(pi < k);
    }
  }
}

TEST_CASE("graph JSON round trip preserves structure") {
  const ScenarioGraph g = build_preset("cyclist_crossing");
  const ScenarioGraph back = graph_from_json(graph_to_json(g));
  REQUIRE(back.block_count() == g.block_count());
  for (int k = 0; k < g.block_count(); ++k) {
    CHECK(back.blocks[k].name == g.blocks[k].name);
    CHECK(back.blocks[k].parents == g.blocks[k].parents);
    CHECK(back.blocks[k].scale == g.blocks[k].scale);
    CHECK(back.blocks[k].shift == g.blocks[k].shift);
  }
  CHECK_THROWS_AS(graph_from_json("{not json"), ConfigError);
  CHECK_THROWS_AS(graph_from_json(R"({"name":"g","blocks":[{"name":"A"}]})"), ConfigError);
}

namespace {

Route straight_route(double length, double step = 2.0) {
  Route r;
  r.name = "straight";
  for (double x = 0.0; x <= length + 1e-9; x += step) r.waypoints.push_back(Vec2(x, 0.0));
  return r;
}

}  // namespace

TEST_CASE("encode_state aligns the route and normalizes speed") {
  const Route route = straight_route(100.0);

  const EnvState lo = encode_state(route, 20.0);
  REQUIRE(lo.encoded.size() == 21);
  for (int i = 0; i < 10; ++i) {
    CHECK(lo.encoded[2 * i + 1] == doctest::Approx(0.0).epsilon(1e-12));  // y stays 0
  }
  CHECK(lo.encoded[20] == doctest::Approx(0.0));
  CHECK(lo.encoded[18] == doctest::Approx(1.0));  // 100 m / length scale

  const EnvState hi = encode_state(route, 50.0);
  CHECK(hi.encoded[20] == doctest::Approx(1.0));
}

TEST_CASE("encode_state matches the reference resampler on a turn route") {
  const Route route = route_preset("left_r10");
  const EnvState state = encode_state(route, 30.0);
  const auto reference = oracles::resample_reference(route.waypoints, 10);
  const RouteFrame frame = route_frame(route);
  for (int i = 0; i < 10; ++i) {
    const Vec2 expected = frame.to_local(reference[i]) / 100.0;
    CHECK(state.encoded[2 * i] == doctest::Approx(expected.x()).epsilon(1e-9));
    CHECK(state.encoded[2 * i + 1] == doctest::Approx(expected.y()).epsilon(1e-9));
  }
  // left turn: y components never dip negative and grow after the apex
  double prev_y = 0.0;
  bool growing_tail = true;
  for (int i = 5; i < 10; ++i) {
    if (state.encoded[2 * i + 1] < prev_y) growing_tail = false;
    prev_y = state.encoded[2 * i + 1];
  }
  for (int i = 0; i < 10; ++i) CHECK(state.encoded[2 * i + 1] >= -1e-12);
  CHECK(growing_tail);
}

TEST_CASE("encode_state is invariant under rigid transforms of the route") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> angle_dist(-3.1, 3.1);
  std::uniform_real_distribution<double> shift_dist(-200.0, 200.0);
  const Route base = route_preset("right_r10");
  const EnvState reference = encode_state(base, 33.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double angle = angle_dist(rng);
    const Vec2 shift(shift_dist(rng), shift_dist(rng));
    Route moved = base;
    const double c = std::cos(angle), s = std::sin(angle);
    for (auto& wp : moved.waypoints) {
      wp = Vec2(c * wp.x() - s * wp.y(), s * wp.x() + c * wp.y()) + shift;
    }
    const EnvState transformed = encode_state(moved, 33.0);
    for (int i = 0; i < reference.encoded.size(); ++i) {
      CHECK(transformed.encoded[i] == doctest::Approx(reference.encoded[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("encode_state rejects invalid routes") {
  Route r;
  r.name = "bad";
  r.waypoints = {Vec2(0, 0)};
  CHECK_THROWS_AS(encode_state(r, 30.0), ConfigError);
  r.waypoints = {Vec2(0, 0), Vec2(0, 0), Vec2(1, 0)};
  CHECK_THROWS_AS(encode_state(r, 30.0), ConfigError);
}

TEST_CASE("strip_parents keeps blocks and ranges") {
  const ScenarioGraph g = build_preset("cyclist_crossing");
  const ScenarioGraph stripped = strip_parents(g);
  REQUIRE(stripped.block_count() == g.block_count());
  for (int k = 0; k < g.block_count(); ++k) {
    CHECK(stripped.blocks[k].parents.empty());
    CHECK(stripped.blocks[k].scale == g.blocks[k].scale);
  }
}
