// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#include "ridgeline/plot_svg.hpp"

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ridgeline/mlp.hpp"
#include "support/oracles.hpp"
#include "support/xml_dom.hpp"

namespace ridgeline {
namespace {

using testing::XmlElement;
using testing::XmlReader;

const MachineSpec kClx{"clx", 4.2e12, 105e9, 12e9};

double num(const std::string& s) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::runtime_error("bad number " + s);
  return v;
}

std::pair<double, double> pair_attr(const XmlElement& e, const std::string& key) {
  std::istringstream ss(e.attr(key));
  std::string a, b;
  ss >> a >> b;
  return {num(a), num(b)};
}

// Axis transform declared in the document, re-implemented here.
struct DeclaredAxes {
  std::pair<double, double> x_domain, x_range, y_domain, y_range;

  static DeclaredAxes from(const XmlElement& root) {
    const auto areas = root.find_all("g");
    for (const XmlElement* g : areas)
      if (g->attrs.count("id") && g->attr("id") == "plot-area")
        return {pair_attr(*g, "data-x-domain"), pair_attr(*g, "data-x-range"),
                pair_attr(*g, "data-y-domain"), pair_attr(*g, "data-y-range")};
    throw std::runtime_error("no plot-area");
  }

  static std::string map(double v, std::pair<double, double> dom,
                         std::pair<double, double> rng) {
    const double lo = std::log10(dom.first);
    const double hi = std::log10(dom.second);
    const double p = rng.first + (std::log10(v) - lo) / (hi - lo) * (rng.second - rng.first);
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p, std::chars_format::fixed, 3);
    return std::string(buf, end);
  }
  std::string x(double v) const { return map(v, x_domain, x_range); }
  std::string y(double v) const { return map(v, y_domain, y_range); }
};

std::vector<std::pair<double, double>> polygon_points(const XmlElement& e) {
  std::vector<std::pair<double, double>> out;
  std::istringstream ss(e.attr("points"));
  std::string token;
  while (ss >> token) {
    const auto comma = token.find(',');
    out.push_back({num(token.substr(0, comma)), num(token.substr(comma + 1))});
  }
  return out;
}

bool inside(const std::vector<std::pair<double, double>>& poly, double x, double y,
            double margin) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto [xi, yi] = poly[i];
    const auto [xj, yj] = poly[j];
    // Distance to the edge; points too close are treated as outside.
    const double dx = xj - xi, dy = yj - yi;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((x - xi) * dx + (y - yi) * dy) / len2 : 0;
    t = std::clamp(t, 0.0, 1.0);
    if (std::hypot(x - (xi + t * dx), y - (yi + t * dy)) < margin) return false;
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) in = !in;
  }
  return in;
}

Curve clx_compute_memory() {
  return roofline_curve(kClx, CurveKind::ComputeMemory, {0.4, 4000}, 65);
}

TEST(Style, Validation) {
  PlotStyle s;
  EXPECT_NO_THROW(validate(s));
  s.width = 0;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = {};
  s.margin_left = 700;
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = {};
  s.x_range = AxisRange{10, 1};
  EXPECT_THROW(validate(s), std::invalid_argument);
  s = {};
  s.y_range = AxisRange{0, 1};
  EXPECT_THROW(validate(s), std::invalid_argument);
}

TEST(LogAxis, MapsDecadesLinearly) {
  const LogAxis a({1, 1000}, 0, 300);
  EXPECT_DOUBLE_EQ(a.to_pixel(1), 0);
  EXPECT_DOUBLE_EQ(a.to_pixel(10), 100);
  EXPECT_DOUBLE_EQ(a.to_pixel(1000), 300);
  EXPECT_EQ(a.clamp(0), 1);
  EXPECT_EQ(a.clamp(1e9), 1000);
  EXPECT_THROW(LogAxis({0, 1}, 0, 1), std::invalid_argument);
}

TEST(Roofline, SingleCurveAndKnee) {
  const std::string svg = render_roofline(clx_compute_memory(), {});
  const auto root = XmlReader::parse(svg);
  EXPECT_EQ(root->name, "svg");
  EXPECT_EQ(root->attr("width"), "720");
  EXPECT_EQ(root->attr("height"), "540");
  EXPECT_EQ(root->find_all("polyline", "curve").size(), 1u);
  const auto knees = root->find_all("circle", "knee");
  ASSERT_EQ(knees.size(), 1u);
  const DeclaredAxes axes = DeclaredAxes::from(*root);
  EXPECT_EQ(knees[0]->attr("cx"), axes.x(40));
  EXPECT_EQ(knees[0]->attr("cy"), axes.y(4.2e12));
  const auto labels = root->find_all("text", "knee-label");
  ASSERT_EQ(labels.size(), 1u);
  EXPECT_NE(labels[0]->text.find("40"), std::string::npos);
}

TEST(Roofline, PointAtKneeSharesKneePixel) {
  const std::vector<PlotPoint> points = {{40, 4.2e12, "balance"}};
  const auto root = XmlReader::parse(render_roofline(clx_compute_memory(), points));
  const auto knee = root->find_all("circle", "knee").at(0);
  const auto marker = root->find_all("circle", "kernel").at(0);
  EXPECT_EQ(marker->attr("cx"), knee->attr("cx"));
  EXPECT_EQ(marker->attr("cy"), knee->attr("cy"));
}

TEST(Roofline, Errors) {
  PlotStyle s;
  s.width = 0;
  EXPECT_THROW(render_roofline(clx_compute_memory(), {}, s), std::invalid_argument);
  EXPECT_THROW(render_roofline(Curve{}, {}), std::invalid_argument);
}

TEST(Roofline, EscapesLabels) {
  const std::vector<PlotPoint> points = {{1, 1e11, "a<b & \"c\""}};
  const auto root = XmlReader::parse(render_roofline(clx_compute_memory(), points));
  EXPECT_EQ(root->find_all("text", "kernel-label").at(0)->text, "a<b & \"c\"");
}

TEST(Roofline, MarkersMatchDeclaredTransform) {
  std::mt19937_64 rng(31);
  std::vector<PlotPoint> points;
  for (int i = 0; i < 50; ++i)
    points.push_back({testing::log_uniform(rng, 0, 3), testing::log_uniform(rng, 11, 12), ""});
  const auto root = XmlReader::parse(render_roofline(clx_compute_memory(), points));
  const DeclaredAxes axes = DeclaredAxes::from(*root);
  const auto markers = root->find_all("circle", "kernel");
  ASSERT_EQ(markers.size(), points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    EXPECT_EQ(markers[i]->attr("cx"), axes.x(points[i].x));
    EXPECT_EQ(markers[i]->attr("cy"), axes.y(points[i].y));
  }
}

TEST(Ridgeline, EmptyPlotRegionsAndDiagonal) {
  const RidgelineGeometry g = ridgeline_geometry(kClx);
  const auto root = XmlReader::parse(render_ridgeline(g, {}));
  EXPECT_EQ(root->find_all("polygon", "region").size(), 3u);
  for (const char* r : {"region-compute", "region-memory", "region-network"}) {
    EXPECT_EQ(root->find_all("polygon", r).size(), 1u) << r;
    EXPECT_EQ(root->find_all("text", r).size(), 1u) << r;
  }
  const DeclaredAxes axes = DeclaredAxes::from(*root);
  const auto diag = root->find_all("line", "diagonal");
  ASSERT_EQ(diag.size(), 1u);
  EXPECT_EQ(diag[0]->attr("x1"), axes.x(8.75));
  EXPECT_EQ(diag[0]->attr("y1"), axes.y(40));
  // Top-left corner of the default axes.
  EXPECT_EQ(diag[0]->attr("x2"), axes.x(axes.x_domain.first));
  EXPECT_EQ(diag[0]->attr("y2"), axes.y(axes.y_domain.second));

  const auto center = root->find_all("circle", "center").at(0);
  EXPECT_EQ(center->attr("cx"), axes.x(8.75));
  EXPECT_EQ(center->attr("cy"), axes.y(40));
  const auto qx = root->find_all("line", "quadrant-x").at(0);
  const auto qy = root->find_all("line", "quadrant-y").at(0);
  EXPECT_EQ(qx->attr("x1"), axes.x(8.75));
  EXPECT_EQ(qy->attr("y1"), axes.y(40));
}

TEST(Ridgeline, PointAtCenterSitsOnBothLines) {
  const RidgelineGeometry g = ridgeline_geometry(kClx);
  const std::vector<RidgelinePoint> pts = {{8.75, 40, "center", Region::Compute, true}};
  const auto root = XmlReader::parse(render_ridgeline(g, pts));
  const auto marker = root->find_all("circle", "kernel").at(0);
  EXPECT_TRUE(marker->has_class("on-ridgeline"));
  EXPECT_EQ(marker->attr("cx"), root->find_all("line", "quadrant-x").at(0)->attr("x1"));
  EXPECT_EQ(marker->attr("cy"), root->find_all("line", "quadrant-y").at(0)->attr("y1"));
}

TEST(Ridgeline, SweepPointsLandInTheirRegions) {
  const std::vector<std::uint64_t> batches = {256, 512, 1024, 2048, 4096};
  const SweepTable t = batch_sweep(case_study_mlp(), batches, kClx, AllReduceModel::ideal());
  std::vector<RidgelinePoint> pts;
  for (const SweepRow& r : t.rows)
    pts.push_back({r.intensities.i_m.value(), r.intensities.i_a.value(),
                   "b=" + std::to_string(r.batch), r.report.region,
                   r.report.is_co_limited()});
  const auto root = XmlReader::parse(render_ridgeline(ridgeline_geometry(kClx), pts));
  const auto markers = root->find_all("circle", "kernel");
  ASSERT_EQ(markers.size(), 5u);
  EXPECT_TRUE(markers[0]->has_class("kernel-network"));
  for (std::size_t i = 1; i < markers.size(); ++i)
    EXPECT_TRUE(markers[i]->has_class("kernel-compute"));
  // Batch 512 sits within 10% of the diagonal in network intensity.
  EXPECT_LT(std::abs(pts[1].i_m * pts[1].i_a / 350.0 - 1.0), 0.10);
}

TEST(Ridgeline, RejectsUnboundedPoints) {
  const std::vector<RidgelinePoint> pts = {{INFINITY, 1, "local", Region::Memory, false}};
  EXPECT_THROW(render_ridgeline(ridgeline_geometry(kClx), pts), std::invalid_argument);
}

TEST(Ridgeline, ShadingAgreesWithGeometricClassification) {
  std::mt19937_64 rng(32);
  for (const MachineSpec& m :
       {kClx, MachineSpec{"a", 1e15, 2e12, 1e9}, MachineSpec{"b", 1e9, 1e9, 1e9}}) {
    PlotStyle style;
    style.network_intensity_guides = {10, 100, 1000};
    const auto root = XmlReader::parse(render_ridgeline(ridgeline_geometry(m), {}, style));
    const DeclaredAxes axes = DeclaredAxes::from(*root);
    std::map<Region, std::vector<std::pair<double, double>>> polys;
    for (Region r : kAllRegions)
      polys[r] = polygon_points(
          *root->find_all("polygon", "region-" + std::string(to_string(r))).at(0));

    int checked = 0;
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 4000; ++i) {
      const double lx = std::log10(axes.x_domain.first) +
                        u(rng) * std::log10(axes.x_domain.second / axes.x_domain.first);
      const double ly = std::log10(axes.y_domain.first) +
                        u(rng) * std::log10(axes.y_domain.second / axes.y_domain.first);
      const double x = std::pow(10, lx), y = std::pow(10, ly);
      const double px = num(axes.x(x)), py = num(axes.y(y));
      const IntensityPoint p{Intensity(y), Intensity(x), Intensity(x * y)};
      for (Region r : kAllRegions) {
        if (!inside(polys[r], px, py, 0.01)) continue;
        EXPECT_EQ(classify_geometric(m, p), r) << x << " " << y;
        ++checked;
      }
    }
    EXPECT_GT(checked, 3900);
  }
}

TEST(Ridgeline, OffCenterAxesStillPartitionPlot) {
  PlotStyle style;
  style.x_range = AxisRange{20, 2000};  // entirely right of x_star
  style.y_range = AxisRange{1, 1000};
  const auto root = XmlReader::parse(render_ridgeline(ridgeline_geometry(kClx), {}, style));
  EXPECT_TRUE(root->find_all("polygon", "region-network").empty());
  EXPECT_TRUE(root->find_all("line", "diagonal").empty());
  EXPECT_EQ(root->find_all("polygon", "region-memory").size(), 1u);
  EXPECT_EQ(root->find_all("polygon", "region-compute").size(), 1u);
}

TEST(Render, Deterministic) {
  const RidgelineGeometry g = ridgeline_geometry(kClx);
  const std::vector<RidgelinePoint> pts = {{1.875, 204.8, "b=512", Region::Compute, false}};
  EXPECT_EQ(render_ridgeline(g, pts), render_ridgeline(g, pts));
  EXPECT_EQ(render_roofline(clx_compute_memory(), {}), render_roofline(clx_compute_memory(), {}));
}

TEST(ExportSurface, CsvCellsRecomputed) {
  const SurfaceGrid s = surface_grid(kClx, {1e-3, 1e6}, {1e-3, 1e6}, 2);
  const std::string csv = export_surface(s, SurfaceFormat::Csv);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i_a,i_n,flops");
  int rows = 0;
  double prev_n = 0, prev_a = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    const double a = num(line.substr(0, c1));
    const double n = num(line.substr(c1 + 1, c2 - c1 - 1));
    const double f = num(line.substr(c2 + 1));
    EXPECT_EQ(f, std::min({4.2e12, a * 105e9, n * 12e9}));
    EXPECT_TRUE(n > prev_n || (n == prev_n && a > prev_a));
    prev_n = n;
    prev_a = a;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST(ExportSurface, SingleRowIsComputeNetworkSlice) {
  SurfaceGrid s;
  s.i_a_values = {1e6};
  s.i_n_values = {1, 10, 100, 1000};
  for (double n : s.i_n_values) s.flops.push_back({std::min({4.2e12, 1e6 * 105e9, n * 12e9})});
  const Curve cn = roofline_curve(kClx, CurveKind::ComputeNetwork, {1, 1000}, 4);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(s.column(0)[i], cn.samples[i].throughput);
  const std::string csv = export_surface(s, SurfaceFormat::Csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(ExportSurface, GridText) {
  const SurfaceGrid s = surface_grid(kClx, {1, 100}, {10, 1000}, 3, 2);
  const std::string text = export_surface(s, SurfaceFormat::GridText);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> data;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') data.push_back(line);
  ASSERT_EQ(data.size(), 3u);
  EXPECT_EQ(data[0], "3 1 10 100");
  EXPECT_EQ(data[1].substr(0, 3), "10 ");
}

TEST(ExportSurface, Errors) {
  EXPECT_THROW(export_surface(SurfaceGrid{}, SurfaceFormat::Csv), std::invalid_argument);
  SurfaceGrid ragged;
  ragged.i_a_values = {1, 2};
  ragged.i_n_values = {1};
  ragged.flops = {{1}};
  EXPECT_THROW(export_surface(ragged, SurfaceFormat::Csv), std::invalid_argument);
  EXPECT_THROW(parse_surface_format("xlsx"), std::invalid_argument);
  EXPECT_EQ(parse_surface_format("grid-text"), SurfaceFormat::GridText);
}

}  // namespace
}  // namespace ridgeline
