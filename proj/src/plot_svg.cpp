// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#include "ridgeline/plot_svg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ridgeline/format.hpp"

namespace ridgeline {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

bool valid_range(const AxisRange& r) {
  return std::isfinite(r.min) && std::isfinite(r.max) && r.min > 0.0 &&
         r.min < r.max;
}

std::string px(double v) { return format_fixed(v, 3); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

using Polygon = std::vector<Vec2>;

// Keeps the part of a convex polygon where a*x + b*y <= c.
Polygon clip_half_plane(const Polygon& poly, double a, double b, double c) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = poly[i];
    const Vec2& prev = poly[(i + n - 1) % n];
    const double fc = a * cur.x + b * cur.y - c;
    const double fp = a * prev.x + b * prev.y - c;
    const bool cur_in = fc <= 0.0;
    const bool prev_in = fp <= 0.0;
    if (cur_in != prev_in) {
      const double t = fp / (fp - fc);
      out.push_back({prev.x + t * (cur.x - prev.x), prev.y + t * (cur.y - prev.y)});
    }
    if (cur_in) out.push_back(cur);
  }
  return out;
}

// Drops repeated vertices left behind when a clip edge passes through a
// corner.
Polygon without_repeats(Polygon poly) {
  auto same = [](const Vec2& a, const Vec2& b) {
    return std::abs(a.x - b.x) <= 1e-12 && std::abs(a.y - b.y) <= 1e-12;
  };
  Polygon out;
  for (const Vec2& v : poly)
    if (out.empty() || !same(out.back(), v)) out.push_back(v);
  while (out.size() > 1 && same(out.front(), out.back())) out.pop_back();
  return out;
}

double polygon_area(const Polygon& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

// Liang-Barsky clip of segment p0-p1 to the rectangle [lo, hi].
std::optional<std::pair<Vec2, Vec2>> clip_segment(Vec2 p0, Vec2 p1, Vec2 lo,
                                                  Vec2 hi) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double dx = p1.x - p0.x;
  const double dy = p1.y - p0.y;
  const double p[] = {-dx, dx, -dy, dy};
  const double q[] = {p0.x - lo.x, hi.x - p0.x, p0.y - lo.y, hi.y - p0.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return std::nullopt;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return std::nullopt;
  }
  if (t0 == t1) return std::nullopt;
  return std::pair{Vec2{p0.x + t0 * dx, p0.y + t0 * dy},
                   Vec2{p0.x + t1 * dx, p0.y + t1 * dy}};
}

// Decade exponents inside [log_min, log_max], thinned to at most ~12 ticks.
std::vector<int> decade_ticks(double log_min, double log_max) {
  const int first = static_cast<int>(std::ceil(log_min - 1e-9));
  const int last = static_cast<int>(std::floor(log_max + 1e-9));
  std::vector<int> out;
  if (last < first) return out;
  const int step = std::max(1, (last - first) / 12 + 1);
  for (int d = first; d <= last; d += step) out.push_back(d);
  return out;
}

class SvgCanvas {
 public:
  SvgCanvas(const PlotStyle& style, LogAxis x, LogAxis y)
      : style_(style), x_(std::move(x)), y_(std::move(y)) {}

  const LogAxis& x() const { return x_; }
  const LogAxis& y() const { return y_; }

  double left() const { return style_.margin_left; }
  double right() const { return style_.width - style_.margin_right; }
  double top() const { return style_.margin_top; }
  double bottom() const { return style_.height - style_.margin_bottom; }

  std::string& body() { return body_; }

  void line(std::string_view cls, double x1, double y1, double x2, double y2,
            std::string_view stroke, std::string_view extra = {}) {
    body_ += "<line class=\"" + std::string(cls) + "\" x1=\"" + px(x1) +
             "\" y1=\"" + px(y1) + "\" x2=\"" + px(x2) + "\" y2=\"" + px(y2) +
             "\" stroke=\"" + std::string(stroke) + "\"";
    if (!extra.empty()) body_ += " " + std::string(extra);
    body_ += "/>\n";
  }

  void circle(std::string_view cls, double cx, double cy, double r,
              std::string_view fill, std::string_view stroke,
              double stroke_width) {
    body_ += "<circle class=\"" + std::string(cls) + "\" cx=\"" + px(cx) +
             "\" cy=\"" + px(cy) + "\" r=\"" + px(r) + "\" fill=\"" +
             std::string(fill) + "\" stroke=\"" + std::string(stroke) +
             "\" stroke-width=\"" + px(stroke_width) + "\"/>\n";
  }

  void text(std::string_view cls, double x, double y, std::string_view content,
            std::string_view anchor = "start", std::string_view extra = {}) {
    body_ += "<text class=\"" + std::string(cls) + "\" x=\"" + px(x) +
             "\" y=\"" + px(y) + "\" text-anchor=\"" + std::string(anchor) +
             "\"";
    if (!extra.empty()) body_ += " " + std::string(extra);
    body_ += ">" + xml_escape(content) + "</text>\n";
  }

  void axes(std::string_view x_label, std::string_view y_label) {
    const PlotColors& c = style_.colors;
    for (int d : decade_ticks(x_.log_min(), x_.log_max())) {
      const double p = x_.to_pixel_log10(d);
      line("grid", p, top(), p, bottom(), c.grid);
      text("tick-label", p, bottom() + 18, "1e" + std::to_string(d), "middle");
    }
    for (int d : decade_ticks(y_.log_min(), y_.log_max())) {
      const double p = y_.to_pixel_log10(d);
      line("grid", left(), p, right(), p, c.grid);
      text("tick-label", left() - 8, p + 4, "1e" + std::to_string(d), "end");
    }
    body_ += "<rect class=\"frame\" x=\"" + px(left()) + "\" y=\"" +
             px(top()) + "\" width=\"" + px(right() - left()) +
             "\" height=\"" + px(bottom() - top()) +
             "\" fill=\"none\" stroke=\"" + c.axis + "\"/>\n";
    text("axis-label", (left() + right()) / 2, style_.height - 15, x_label,
         "middle");
    const double ly = (top() + bottom()) / 2;
    text("axis-label", 20, ly, y_label, "middle",
         "transform=\"rotate(-90 20.000 " + px(ly) + ")\"");
  }

  std::string finish(std::string_view title) const {
    const std::string w = std::to_string(style_.width);
    const std::string h = std::to_string(style_.height);
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<title>" + xml_escape(title) + "</title>\n";
    out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + w +
           "\" height=\"" + h + "\" fill=\"" + style_.colors.background +
           "\"/>\n";
    out += "<g id=\"plot-area\" data-x-scale=\"log10\" data-x-domain=\"" +
           format_shortest(x_.domain().min) + " " +
           format_shortest(x_.domain().max) + "\" data-x-range=\"" +
           format_shortest(x_.px_from()) + " " + format_shortest(x_.px_to()) +
           "\" data-y-scale=\"log10\" data-y-domain=\"" +
           format_shortest(y_.domain().min) + " " +
           format_shortest(y_.domain().max) + "\" data-y-range=\"" +
           format_shortest(y_.px_from()) + " " + format_shortest(y_.px_to()) +
           "\">\n";
    out += body_;
    out += "</g>\n";
    out += "<text class=\"title\" x=\"" + px(style_.width / 2.0) + "\" y=\"" +
           px(style_.margin_top / 2.0 + 5) +
           "\" text-anchor=\"middle\" font-size=\"14\">" + xml_escape(title) +
           "</text>\n";
    out += "</svg>\n";
    return out;
  }

 private:
  const PlotStyle& style_;
  LogAxis x_;
  LogAxis y_;
  std::string body_;
};

SvgCanvas make_canvas(const PlotStyle& style, AxisRange x, AxisRange y) {
  return SvgCanvas(style,
                   LogAxis(x, style.margin_left,
                           static_cast<double>(style.width - style.margin_right)),
                   LogAxis(y, static_cast<double>(style.height - style.margin_bottom),
                           style.margin_top));
}

// Decade-aligned range covering [lo, hi] with headroom above hi.
AxisRange decade_cover(double lo, double hi) {
  const double a = std::floor(std::log10(lo));
  const double b = std::floor(std::log10(hi)) + 1.0;
  return {std::pow(10.0, a), std::pow(10.0, b)};
}

struct AxisText {
  std::string_view title;
  std::string_view x_label;
  std::string_view y_label;
};

AxisText roofline_text(CurveKind kind) {
  switch (kind) {
    case CurveKind::ComputeMemory:
      return {"Compute-memory roofline", "Arithmetic intensity (FLOP/byte)",
              "Attainable FLOP/s"};
    case CurveKind::MemoryNetwork:
      return {"Memory-network roofline",
              "Memory intensity (memory byte/network byte)",
              "Attainable memory bandwidth (byte/s)"};
    case CurveKind::ComputeNetwork:
      return {"Compute-network roofline",
              "Network intensity (FLOP/network byte)", "Attainable FLOP/s"};
  }
  return {};
}

}  // namespace

void validate(const PlotStyle& style) {
  if (style.width <= 0 || style.height <= 0)
    fail("plot width and height must be positive");
  if (style.margin_left < 0 || style.margin_right < 0 || style.margin_top < 0 ||
      style.margin_bottom < 0)
    fail("plot margins must be non-negative");
  if (style.margin_left + style.margin_right >= style.width ||
      style.margin_top + style.margin_bottom >= style.height)
    fail("plot margins leave no drawing area");
  if (style.x_range && !valid_range(*style.x_range))
    fail("x axis range requires 0 < min < max");
  if (style.y_range && !valid_range(*style.y_range))
    fail("y axis range requires 0 < min < max");
  for (double t : style.network_intensity_guides)
    if (!(std::isfinite(t) && t > 0.0))
      fail("network intensity guides must be finite and > 0");
}

LogAxis::LogAxis(AxisRange domain, double px_from, double px_to)
    : domain_(domain), px_from_(px_from), px_to_(px_to) {
  if (!valid_range(domain)) fail("log axis requires 0 < min < max");
  log_min_ = std::log10(domain.min);
  log_max_ = std::log10(domain.max);
}

double LogAxis::to_pixel(double value) const {
  return to_pixel_log10(std::log10(value));
}

double LogAxis::to_pixel_log10(double log_value) const {
  return px_from_ + (log_value - log_min_) / (log_max_ - log_min_) * (px_to_ - px_from_);
}

double LogAxis::clamp(double value) const {
  if (!(value > domain_.min)) return domain_.min;
  if (value > domain_.max) return domain_.max;
  return value;
}

std::string render_roofline(const Curve& curve, std::span<const PlotPoint> points,
                            const PlotStyle& style) {
  validate(style);
  if (curve.samples.empty()) fail("cannot render an empty curve");

  AxisRange xr;
  if (style.x_range) {
    xr = *style.x_range;
  } else {
    xr = {curve.samples.front().intensity, curve.samples.back().intensity};
    if (!(xr.min < xr.max)) xr = {xr.min / 10.0, xr.max * 10.0};
  }
  AxisRange yr;
  if (style.y_range) {
    yr = *style.y_range;
  } else {
    double lo = curve.ceiling;
    double hi = curve.ceiling;
    for (const CurveSample& s : curve.samples)
      if (s.throughput > 0.0) {
        lo = std::min(lo, s.throughput);
        hi = std::max(hi, s.throughput);
      }
    for (const PlotPoint& p : points)
      if (p.y > 0.0 && std::isfinite(p.y)) {
        lo = std::min(lo, p.y);
        hi = std::max(hi, p.y);
      }
    yr = decade_cover(lo, hi);
  }

  SvgCanvas canvas = make_canvas(style, xr, yr);
  const LogAxis& xa = canvas.x();
  const LogAxis& ya = canvas.y();
  const PlotColors& c = style.colors;
  const AxisText labels = roofline_text(curve.kind);
  canvas.axes(labels.x_label, labels.y_label);

  std::string& body = canvas.body();
  body += "<polyline class=\"curve\" data-kind=\"" +
          std::string(to_string(curve.kind)) + "\" fill=\"none\" stroke=\"" +
          c.curve + "\" stroke-width=\"2.000\" points=\"";
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const CurveSample& s = curve.samples[i];
    if (i != 0) body += ' ';
    body += px(xa.to_pixel(xa.clamp(s.intensity))) + "," +
            px(ya.to_pixel(ya.clamp(s.throughput)));
  }
  body += "\"/>\n";

  if (curve.knee >= xr.min && curve.knee <= xr.max) {
    const double kx = xa.to_pixel(curve.knee);
    const double ky = ya.to_pixel(ya.clamp(curve.ceiling));
    canvas.line("knee-line", kx, canvas.bottom(), kx, ky, c.knee,
                "stroke-dasharray=\"4,3\"");
    canvas.circle("knee", kx, ky, 4.0, c.knee, c.knee, 1.0);
    canvas.text("knee-label", kx + 6, ky - 8,
                "knee " + format_shortest(curve.knee));
  }

  for (const PlotPoint& p : points) {
    const double cx = xa.to_pixel(xa.clamp(p.x));
    const double cy = ya.to_pixel(ya.clamp(p.y));
    canvas.circle("kernel", cx, cy, 5.0, c.kernel_marker, c.marker_outline, 1.0);
    if (!p.label.empty()) canvas.text("kernel-label", cx + 7, cy + 14, p.label);
  }

  return canvas.finish(style.title.empty() ? labels.title : style.title);
}

std::string render_ridgeline(const RidgelineGeometry& geometry,
                             std::span<const RidgelinePoint> points,
                             const PlotStyle& style) {
  validate(style);
  for (double v : {geometry.x_star, geometry.y_star, geometry.k})
    if (!(std::isfinite(v) && v > 0.0))
      fail("ridgeline geometry must be finite and positive");
  for (const RidgelinePoint& p : points)
    if (!std::isfinite(p.i_m) || !std::isfinite(p.i_a))
      fail("kernel '" + p.label +
           "' has an unbounded intensity; only kernels with network traffic "
           "can be placed on a ridgeline plot");

  const AxisRange xr = style.x_range.value_or(
      AxisRange{geometry.x_star / 100.0, geometry.x_star * 100.0});
  const AxisRange yr = style.y_range.value_or(
      AxisRange{geometry.y_star / 100.0, geometry.y_star * 100.0});
  SvgCanvas canvas = make_canvas(style, xr, yr);
  const LogAxis& xa = canvas.x();
  const LogAxis& ya = canvas.y();
  const PlotColors& c = style.colors;

  // Region geometry is built in log10 space, where every region is convex.
  const double lx0 = xa.log_min();
  const double lx1 = xa.log_max();
  const double ly0 = ya.log_min();
  const double ly1 = ya.log_max();
  const double xs = std::log10(geometry.x_star);
  const double ys = std::log10(geometry.y_star);
  const double lk = std::log10(geometry.k);
  const Polygon frame = {{lx0, ly0}, {lx1, ly0}, {lx1, ly1}, {lx0, ly1}};

  struct Shaded {
    Region region;
    Polygon poly;
    const std::string* fill;
  };
  Shaded shaded[] = {
      {Region::Network,
       without_repeats(
           clip_half_plane(clip_half_plane(frame, 1, 0, xs), 1, 1, lk)),
       &c.network_fill},
      {Region::Memory,
       without_repeats(
           clip_half_plane(clip_half_plane(frame, 0, 1, ys), -1, 0, -xs)),
       &c.memory_fill},
      {Region::Compute,
       without_repeats(
           clip_half_plane(clip_half_plane(frame, 0, -1, -ys), -1, -1, -lk)),
       &c.compute_fill},
  };

  std::string& body = canvas.body();
  const double plot_area = (lx1 - lx0) * (ly1 - ly0);
  for (const Shaded& s : shaded) {
    if (s.poly.size() < 3 || polygon_area(s.poly) <= 1e-12 * plot_area)
      continue;
    body += "<polygon class=\"region region-" +
            std::string(to_string(s.region)) + "\" fill=\"" + *s.fill +
            "\" stroke=\"none\" points=\"";
    for (std::size_t i = 0; i < s.poly.size(); ++i) {
      if (i != 0) body += ' ';
      body += px(xa.to_pixel_log10(s.poly[i].x)) + "," +
              px(ya.to_pixel_log10(s.poly[i].y));
    }
    body += "\"/>\n";
  }

  canvas.axes("Memory intensity (memory byte/network byte)",
              "Arithmetic intensity (FLOP/memory byte)");

  for (double t : style.network_intensity_guides) {
    const double lt = std::log10(t);
    auto seg = clip_segment({lx0, lt - lx0}, {lx1, lt - lx1}, {lx0, ly0},
                            {lx1, ly1});
    if (!seg) continue;
    const double x1 = xa.to_pixel_log10(seg->first.x);
    const double y1 = ya.to_pixel_log10(seg->first.y);
    canvas.line("network-intensity-guide", x1, y1,
                xa.to_pixel_log10(seg->second.x),
                ya.to_pixel_log10(seg->second.y), c.grid,
                "stroke-dasharray=\"2,3\"");
    canvas.text("guide-label", x1 + 4, y1 - 4, "I_N=" + format_shortest(t));
  }

  if (xs >= lx0 && xs <= lx1)
    canvas.line("quadrant-x", xa.to_pixel_log10(xs), canvas.bottom(),
                xa.to_pixel_log10(xs), canvas.top(), c.quadrant_x,
                "stroke-dasharray=\"6,4\"");
  if (ys >= ly0 && ys <= ly1)
    canvas.line("quadrant-y", canvas.left(), ya.to_pixel_log10(ys),
                canvas.right(), ya.to_pixel_log10(ys), c.quadrant_y,
                "stroke-dasharray=\"6,4\"");

  // Compute/network separation x * y = k, upper-left of the central point.
  auto diagonal = lx0 < xs ? clip_segment({xs, lk - xs}, {lx0, lk - lx0},
                                          {lx0, ly0}, {lx1, ly1})
                           : std::nullopt;
  if (auto seg = diagonal) {
    canvas.line("diagonal", xa.to_pixel_log10(seg->first.x),
                ya.to_pixel_log10(seg->first.y),
                xa.to_pixel_log10(seg->second.x),
                ya.to_pixel_log10(seg->second.y), c.boundary,
                "stroke-width=\"2.000\"");
  }

  for (const Shaded& s : shaded) {
    if (s.poly.size() < 3 || polygon_area(s.poly) <= 1e-12 * plot_area)
      continue;
    Vec2 mean;
    for (const Vec2& v : s.poly) {
      mean.x += v.x;
      mean.y += v.y;
    }
    mean.x /= static_cast<double>(s.poly.size());
    mean.y /= static_cast<double>(s.poly.size());
    std::string name(to_string(s.region));
    name.front() = static_cast<char>(name.front() - 'a' + 'A');
    canvas.text("region-label region-" + std::string(to_string(s.region)),
                xa.to_pixel_log10(mean.x), ya.to_pixel_log10(mean.y), name,
                "middle", "font-size=\"16\" font-weight=\"bold\"");
  }

  if (xs >= lx0 && xs <= lx1 && ys >= ly0 && ys <= ly1)
    canvas.circle("center", xa.to_pixel_log10(xs), ya.to_pixel_log10(ys), 4.0,
                  c.boundary, c.boundary, 1.0);

  for (const RidgelinePoint& p : points) {
    const double cx = xa.to_pixel(xa.clamp(p.i_m));
    const double cy = ya.to_pixel(ya.clamp(p.i_a));
    const std::string* fill = &c.compute_marker;
    if (p.region == Region::Memory) fill = &c.memory_marker;
    if (p.region == Region::Network) fill = &c.network_marker;
    std::string cls = "kernel kernel-" + std::string(to_string(p.region));
    if (p.co_limited) cls += " on-ridgeline";
    canvas.circle(cls, cx, cy, 5.0, *fill,
                  p.co_limited ? c.co_limited_outline : c.marker_outline,
                  p.co_limited ? 2.5 : 1.0);
    if (!p.label.empty()) canvas.text("kernel-label", cx + 7, cy - 7, p.label);
  }

  return canvas.finish(style.title.empty() ? "Ridgeline" : style.title);
}

SurfaceFormat parse_surface_format(std::string_view text) {
  if (text == "csv") return SurfaceFormat::Csv;
  if (text == "grid-text") return SurfaceFormat::GridText;
  fail("unknown surface format '" + std::string(text) +
       "' (expected csv or grid-text)");
}

std::string export_surface(const SurfaceGrid& surface, SurfaceFormat format) {
  if (surface.i_a_values.empty() || surface.i_n_values.empty())
    fail("surface has an empty axis");
  if (surface.flops.size() != surface.i_n_values.size())
    fail("surface row count does not match the i_n axis");
  for (const auto& row : surface.flops)
    if (row.size() != surface.i_a_values.size())
      fail("surface column count does not match the i_a axis");

  auto ascending = [](const std::vector<double>& axis) {
    std::vector<std::size_t> idx(axis.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return axis[a] < axis[b]; });
    return idx;
  };
  const std::vector<std::size_t> cols = ascending(surface.i_a_values);
  const std::vector<std::size_t> rows = ascending(surface.i_n_values);

  std::string out;
  switch (format) {
    case SurfaceFormat::Csv:
      out += "i_a,i_n,flops\n";
      for (std::size_t r : rows)
        for (std::size_t col : cols)
          out += format_shortest(surface.i_a_values[col]) + "," +
                 format_shortest(surface.i_n_values[r]) + "," +
                 format_shortest(surface.flops[r][col]) + "\n";
      break;
    case SurfaceFormat::GridText:
      out += "# attainable FLOP/s; rows: i_n (FLOP/network byte), columns: i_a "
             "(FLOP/memory byte)\n";
      out += "# gnuplot: splot 'file' nonuniform matrix\n";
      out += std::to_string(cols.size());
      for (std::size_t col : cols) out += " " + format_shortest(surface.i_a_values[col]);
      out += "\n";
      for (std::size_t r : rows) {
        out += format_shortest(surface.i_n_values[r]);
        for (std::size_t col : cols) out += " " + format_shortest(surface.flops[r][col]);
        out += "\n";
      }
      break;
  }
  return out;
}

}  // namespace ridgeline
