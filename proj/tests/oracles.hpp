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

// Test-only reference implementations, kept independent of the library code
// paths they check.

#ifndef SCENGEN_TESTS_ORACLES_HPP
#define SCENGEN_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "scengen/policy.hpp"
#include "scengen/sim.hpp"
#include "scengen/types.hpp"

namespace scengen::oracles {

/// Central finite differences of a scalar function of the parameter vector.
inline Vec finite_difference(const std::function<double(const Vec&)>& f, const Vec& theta,
                             double h = 1e-5) {
  Vec grad(theta.size());
  Vec probe = theta;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    probe[i] = theta[i] + h;
    const double plus = f(probe);
    probe[i] = theta[i] - h;
    const double minus = f(probe);
    probe[i] = theta[i];
    grad[i] = (plus - minus) / (2.0 * h);
  }
  return grad;
}

/// Largest guarded relative error between two gradient vectors.
inline double max_relative_error(const Vec& a, const Vec& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a[i]), std::abs(b[i]), 1e-6});
    worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
  }
  return worst;
}

/// Reference arc-length resampler: walks the polyline with explicit cumulative
/// lengths (implemented separately from the library's resampler).
inline std::vector<Vec2> resample_reference(const std::vector<Vec2>& polyline, int count) {
  std::vector<double> cumulative{0.0};
  for (std::size_t i = 1; i < polyline.size(); ++i) {
    cumulative.push_back(cumulative.back() + (polyline[i] - polyline[i - 1]).norm());
  }
  const double total = cumulative.back();
  std::vector<Vec2> out;
  for (int i = 0; i < count; ++i) {
    const double target = total * i / (count - 1);
    std::size_t seg = 1;
    while (seg + 1 < cumulative.size() && cumulative[seg] < target) ++seg;
    const double span = cumulative[seg] - cumulative[seg - 1];
    const double t = span > 0.0 ? (target - cumulative[seg - 1]) / span : 0.0;
    out.push_back(polyline[seg - 1] + t * (polyline[seg] - polyline[seg - 1]));
  }
  return out;
}

/// Dense point-sampling collision oracle: lays a `resolution`-spaced lattice
/// over each rectangle and asks whether any point falls inside the other.
/// A bounding-circle pretest resolves the clearly separated pairs.
inline bool rectangles_overlap_sampled(const VehicleState& a, const BoxDims& da,
                                       const VehicleState& b, const BoxDims& db,
                                       double resolution = 0.01) {
  const double ra = 0.5 * std::hypot(da.length, da.width);
  const double rb = 0.5 * std::hypot(db.length, db.width);
  if ((a.position - b.position).norm() > ra + rb) return false;

  const auto inside = [](const VehicleState& v, const BoxDims& d, const Vec2& p) {
    const double c = std::cos(v.heading), s = std::sin(v.heading);
    const Vec2 rel = p - v.position;
    const double lx = c * rel.x() + s * rel.y();
    const double ly = -s * rel.x() + c * rel.y();
    return std::abs(lx) <= 0.5 * d.length && std::abs(ly) <= 0.5 * d.width;
  };
  const auto sweep = [&](const VehicleState& src, const BoxDims& dims,
                         const VehicleState& dst, const BoxDims& dst_dims) {
    const double c = std::cos(src.heading), s = std::sin(src.heading);
    const int nx = static_cast<int>(std::ceil(dims.length / resolution));
    const int ny = static_cast<int>(std::ceil(dims.width / resolution));
    for (int ix = 0; ix <= nx; ++ix) {
      const double lx = -0.5 * dims.length + dims.length * ix / nx;
      for (int iy = 0; iy <= ny; ++iy) {
        const double ly = -0.5 * dims.width + dims.width * iy / ny;
        const Vec2 p = src.position + Vec2(c * lx - s * ly, s * lx + c * ly);
        if (inside(dst, dst_dims, p)) return true;
      }
    }
    return false;
  };
  return sweep(a, da, b, db) || sweep(b, db, a, da);
}

}  // namespace scengen::oracles

#endif  // SCENGEN_TESTS_ORACLES_HPP
