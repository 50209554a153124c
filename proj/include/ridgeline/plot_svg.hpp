// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ridgeline/model.hpp"

namespace ridgeline {

// Data-space interval of one axis.
struct AxisRange {
  double min = 0.0;
  double max = 0.0;
};

struct PlotColors {
  std::string background = "#ffffff";
  std::string axis = "#000000";
  std::string grid = "#dddddd";
  std::string curve = "#1f4e9a";
  std::string knee = "#555555";
  std::string boundary = "#333333";
  std::string quadrant_x = "#d62728";  // x = x_star
  std::string quadrant_y = "#1f77b4";  // y = y_star
  std::string compute_fill = "#fbe3d6";
  std::string memory_fill = "#dbe9f6";
  std::string network_fill = "#e0f1d8";
  std::string compute_marker = "#b2182b";
  std::string memory_marker = "#2166ac";
  std::string network_marker = "#1b7837";
  std::string kernel_marker = "#d62728";
  std::string marker_outline = "#ffffff";
  std::string co_limited_outline = "#000000";
};

struct PlotStyle {
  int width = 720;
  int height = 540;
  int margin_left = 90;
  int margin_right = 30;
  int margin_top = 40;
  int margin_bottom = 60;
  // Unset ranges are derived from the plotted data.
  std::optional<AxisRange> x_range;
  std::optional<AxisRange> y_range;
  std::string title;
  // Ridgeline only: dashed x * y = t guides for each listed network
  // intensity t.
  std::vector<double> network_intensity_guides;
  PlotColors colors;
};

// Throws std::invalid_argument for non-positive sizes, margins that leave no
// plot area, or axis ranges that are not 0 < min < max.
void validate(const PlotStyle& style);

// Maps a positive data value to pixels on a log10 scale:
//   px = px_from + (log10(v) - log10(min)) / (log10(max) - log10(min))
//                  * (px_to - px_from)
class LogAxis {
 public:
  LogAxis(AxisRange domain, double px_from, double px_to);

  double to_pixel(double value) const;
  double to_pixel_log10(double log_value) const;
  // Pulls non-positive or out-of-range values onto the nearest end.
  double clamp(double value) const;

  const AxisRange& domain() const { return domain_; }
  double px_from() const { return px_from_; }
  double px_to() const { return px_to_; }
  double log_min() const { return log_min_; }
  double log_max() const { return log_max_; }

 private:
  AxisRange domain_;
  double px_from_;
  double px_to_;
  double log_min_;
  double log_max_;
};

struct PlotPoint {
  double x = 0.0;
  double y = 0.0;
  std::string label;
};

// Log-log roofline with the knee annotated and one marker per point.
std::string render_roofline(const Curve& curve, std::span<const PlotPoint> points,
                            const PlotStyle& style = {});

struct RidgelinePoint {
  double i_m = 0.0;
  double i_a = 0.0;
  std::string label;
  Region region = Region::Compute;
  bool co_limited = false;  // drawn with a distinct outline
};

// Ridgeline plane (x = memory intensity, y = arithmetic intensity) with the
// three bottleneck regions shaded. Points must have finite coordinates.
std::string render_ridgeline(const RidgelineGeometry& geometry,
                             std::span<const RidgelinePoint> points,
                             const PlotStyle& style = {});

enum class SurfaceFormat { GridText, Csv };

// "grid-text" or "csv".
SurfaceFormat parse_surface_format(std::string_view text);

// csv: header "i_a,i_n,flops", one row per cell, i_n-major ascending.
// grid-text: gnuplot "nonuniform matrix" layout, first row holds the i_a
// axis, every following row starts with its i_n value.
std::string export_surface(const SurfaceGrid& surface, SurfaceFormat format);

}  // namespace ridgeline
