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

#include "scengen/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace scengen {

namespace {

/// Blue (low) through white to pink (high), like the reference plots.
std::string colormap(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double stops[3][3] = {{33, 102, 172}, {247, 247, 247}, {231, 84, 128}};
  const double pos = t * 2.0;
  const int lo = pos < 1.0 ? 0 : 1;
  const double f = pos - lo;
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::round(stops[lo][0] + f * (stops[lo + 1][0] - stops[lo][0]))),
                static_cast<int>(std::round(stops[lo][1] + f * (stops[lo + 1][1] - stops[lo][1]))),
                static_cast<int>(std::round(stops[lo][2] + f * (stops[lo + 1][2] - stops[lo][2]))));
  return buf;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

void open_svg(std::ostringstream& out, int w, int h) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
}

}  // namespace

std::string heatmap_to_svg(const HeatmapField& field, const std::string& unit) {
  const int cells = static_cast<int>(field.cells.size());
  const int plot_w = 640, plot_h = 80, margin = 40;
  std::ostringstream out;
  open_svg(out, plot_w + 2 * margin, plot_h + 2 * margin);
  const double peak = field.cells.maxCoeff();
  const double cw = static_cast<double>(plot_w) / cells;
  for (int j = 0; j < cells; ++j) {
    out << "<rect x=\"" << fmt(margin + j * cw) << "\" y=\"" << margin << "\" width=\""
        << fmt(cw + 0.5) << "\" height=\"" << plot_h << "\" fill=\""
        << colormap(peak > 0 ? field.cells[j] / peak : 0.0) << "\"/>\n";
  }
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double x = margin + plot_w * tick / 4.0;
    const double value = field.lo + (field.hi - field.lo) * tick / 4.0;
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << margin + plot_h << "\" x2=\"" << fmt(x)
        << "\" y2=\"" << margin + plot_h + 6 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << margin + plot_h + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(value) << "</text>\n";
  }
  out << "<text x=\"" << margin << "\" y=\"" << margin - 10 << "\" font-size=\"13\">"
      << field.block << " [" << unit << "]</text>\n";
  out << "</svg>\n";
  return out.str();
}

std::string heatmap_to_svg(const HeatmapField2D& field, const std::string& unit) {
  const int rows = static_cast<int>(field.cells.rows());
  const int cols = static_cast<int>(field.cells.cols());
  const int plot = 480, margin = 50;
  std::ostringstream out;
  open_svg(out, plot + 2 * margin, plot + 2 * margin);
  const double peak = field.cells.maxCoeff();
  const double cw = static_cast<double>(plot) / rows;
  const double ch = static_cast<double>(plot) / cols;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      // x cells run right, y cells run up
      out << "<rect x=\"" << fmt(margin + i * cw) << "\" y=\""
          << fmt(margin + plot - (j + 1) * ch) << "\" width=\"" << fmt(cw + 0.5)
          << "\" height=\"" << fmt(ch + 0.5) << "\" fill=\""
          << colormap(peak > 0 ? field.cells(i, j) / peak : 0.0) << "\"/>\n";
    }
  }
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot
      << "\" height=\"" << plot << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double fx = margin + plot * tick / 4.0;
    out << "<text x=\"" << fmt(fx) << "\" y=\"" << margin + plot + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << fmt(field.x_lo + (field.x_hi - field.x_lo) * tick / 4.0) << "</text>\n";
    out << "<text x=\"" << margin - 8 << "\" y=\"" << fmt(margin + plot - plot * tick / 4.0)
        << "\" font-size=\"11\" text-anchor=\"end\">"
        << fmt(field.y_lo + (field.y_hi - field.y_lo) * tick / 4.0) << "</text>\n";
  }
  out << "<text x=\"" << margin << "\" y=\"" << margin - 12 << "\" font-size=\"13\">"
      << field.block_x << " vs " << field.block_y << " [" << unit << "]</text>\n";
  out << "</svg>\n";
  return out.str();
}

namespace {

void draw_box(std::ostringstream& out, const VehicleState& v, const BoxDims& dims,
              const std::string& color, double scale, const Vec2& offset) {
  const double x = (v.position.x() - offset.x()) * scale;
  const double y = (offset.y() - v.position.y()) * scale;  // svg y is down
  out << "<g transform=\"translate(" << fmt(x) << ',' << fmt(y) << ") rotate("
      << fmt(-v.heading * 180.0 / 3.14159265358979323846) << ")\">";
  out << "<rect x=\"" << fmt(-dims.length / 2 * scale) << "\" y=\""
      << fmt(-dims.width / 2 * scale) << "\" width=\"" << fmt(dims.length * scale)
      << "\" height=\"" << fmt(dims.width * scale) << "\" fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\"/></g>\n";
}

}  // namespace

std::string trace_to_svg(const RolloutResult& rollout, const BoxDims& ego,
                         const BoxDims& obstacle, const Route* route) {
  double min_x = 1e18, max_x = -1e18, min_y = 1e18, max_y = -1e18;
  auto grow = [&](const Vec2& p) {
    min_x = std::min(min_x, p.x());
    max_x = std::max(max_x, p.x());
    min_y = std::min(min_y, p.y());
    max_y = std::max(max_y, p.y());
  };
  for (const auto& t : rollout.trace) {
    grow(t.ego.position);
    grow(t.obstacle.position);
  }
  if (route != nullptr) {
    for (const auto& wp : route->waypoints) grow(wp);
  }
  if (rollout.trace.empty()) throw ConfigError("cannot render an empty trace");
  const double pad = 8.0;
  min_x -= pad; min_y -= pad; max_x += pad; max_y += pad;
  const int width = 720;
  const double scale = width / (max_x - min_x);
  const int height = static_cast<int>(std::ceil((max_y - min_y) * scale));
  const Vec2 offset(min_x, max_y);

  std::ostringstream out;
  open_svg(out, width, height);
  auto polyline = [&](auto&& points, const std::string& color, double w) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << w
        << "\" points=\"";
    for (const auto& p : points) {
      out << fmt((p.x() - offset.x()) * scale) << ',' << fmt((offset.y() - p.y()) * scale)
          << ' ';
    }
    out << "\"/>\n";
  };
  if (route != nullptr) polyline(route->waypoints, "#bbbbbb", 4.0);
  std::vector<Vec2> ego_path, obstacle_path;
  for (const auto& t : rollout.trace) {
    ego_path.push_back(t.ego.position);
    obstacle_path.push_back(t.obstacle.position);
  }
  polyline(ego_path, "#2166ac", 1.5);
  polyline(obstacle_path, "#e75480", 1.5);
  draw_box(out, rollout.trace.back().ego, ego, "#2166ac", scale, offset);
  draw_box(out, rollout.trace.back().obstacle, obstacle, "#e75480", scale, offset);
  out << "<text x=\"10\" y=\"16\" font-size=\"12\">min separation "
      << fmt(rollout.min_separation) << " m, collision " << (rollout.collision ? "yes" : "no")
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace scengen
