// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#include "ridgeline/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ridgeline {
namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
bool non_negative_finite(double v) { return std::isfinite(v) && v >= 0.0; }

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

void validate(const MachineSpec& machine) {
  if (!positive_finite(machine.peak_flops))
    fail("machine peak_flops must be finite and > 0");
  if (!positive_finite(machine.mem_bw))
    fail("machine mem_bw must be finite and > 0");
  if (!positive_finite(machine.net_bw))
    fail("machine net_bw must be finite and > 0");
}

void validate(const KernelProfile& profile) {
  if (!non_negative_finite(profile.flops))
    fail("kernel flops must be finite and >= 0");
  if (!positive_finite(profile.mem_bytes))
    fail("kernel mem_bytes must be finite and > 0");
  if (!non_negative_finite(profile.net_bytes))
    fail("kernel net_bytes must be finite and >= 0");
}

KernelProfile& KernelProfile::operator+=(const KernelProfile& other) {
  flops += other.flops;
  mem_bytes += other.mem_bytes;
  net_bytes += other.net_bytes;
  return *this;
}

KernelProfile KernelProfile::scaled(double factor) const {
  return {name, flops * factor, mem_bytes * factor, net_bytes * factor};
}

Intensity::Intensity(double value) : value_(value) {
  if (!non_negative_finite(value))
    fail("intensity must be finite and >= 0; use Intensity::unbounded()");
}

double Intensity::value() const {
  if (unbounded_) throw std::logic_error("intensity is unbounded");
  return value_;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::Compute:
      return "compute";
    case Region::Memory:
      return "memory";
    case Region::Network:
      return "network";
  }
  return "unknown";
}

Region parse_region(std::string_view text) {
  for (Region r : kAllRegions)
    if (to_string(r) == text) return r;
  fail("unknown region '" + std::string(text) + "'");
}

double TimeBounds::of(Region region) const {
  switch (region) {
    case Region::Compute:
      return t_compute;
    case Region::Memory:
      return t_memory;
    case Region::Network:
      return t_network;
  }
  return 0.0;
}

double TimeBounds::max() const {
  return std::max({t_compute, t_memory, t_network});
}

bool BottleneckReport::limited_by(Region r) const {
  return std::find(co_limiting.begin(), co_limiting.end(), r) !=
         co_limiting.end();
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::ComputeMemory:
      return "compute-memory";
    case CurveKind::MemoryNetwork:
      return "memory-network";
    case CurveKind::ComputeNetwork:
      return "compute-network";
  }
  return "unknown";
}

double Curve::evaluate(double intensity) const {
  return std::min(ceiling, slope * intensity);
}

void validate(const LogRange& range) {
  if (!positive_finite(range.min) || !positive_finite(range.max) ||
      !(range.min < range.max))
    fail("log range requires 0 < min < max");
}

std::vector<double> log_space(const LogRange& range, std::size_t count) {
  validate(range);
  if (count < 2) fail("log_space needs at least 2 samples");
  const double lo = std::log10(range.min);
  const double hi = std::log10(range.max);
  const double step = (hi - lo) / static_cast<double>(count - 1);

  std::vector<double> out(count);
  out.front() = range.min;
  out.back() = range.max;
  for (std::size_t i = 1; i + 1 < count; ++i)
    out[i] = std::pow(10.0, lo + step * static_cast<double>(i));
  for (std::size_t i = 1; i < count; ++i)
    if (!(out[i - 1] < out[i]))
      fail("log range too narrow for the requested sample count");
  return out;
}

std::vector<double> SurfaceGrid::row(std::size_t i_n_index) const {
  return flops.at(i_n_index);
}

std::vector<double> SurfaceGrid::column(std::size_t i_a_index) const {
  std::vector<double> out;
  out.reserve(flops.size());
  for (const auto& r : flops) out.push_back(r.at(i_a_index));
  return out;
}

IntensityPoint intensities(const KernelProfile& profile) {
  validate(profile);
  IntensityPoint p;
  p.i_a = Intensity(profile.flops / profile.mem_bytes);
  if (profile.net_bytes == 0.0) {
    p.i_m = Intensity::unbounded();
    p.i_n = Intensity::unbounded();
  } else {
    p.i_m = Intensity(profile.mem_bytes / profile.net_bytes);
    p.i_n = Intensity(profile.flops / profile.net_bytes);
  }
  return p;
}

double attainable_flops(const MachineSpec& machine,
                        const IntensityPoint& point) {
  validate(machine);
  double out = machine.peak_flops;
  if (point.i_a.is_finite())
    out = std::min(out, point.i_a.value() * machine.mem_bw);
  if (point.i_n.is_finite())
    out = std::min(out, point.i_n.value() * machine.net_bw);
  return out;
}

TimeBounds time_bounds(const MachineSpec& machine,
                       const KernelProfile& profile) {
  validate(machine);
  validate(profile);
  return {profile.flops / machine.peak_flops,
          profile.mem_bytes / machine.mem_bw,
          profile.net_bytes / machine.net_bw};
}

Classification classify_time(const TimeBounds& bounds, double tolerance) {
  if (!(tolerance >= 0.0 && tolerance < 1.0))
    fail("tolerance must lie in [0, 1)");
  for (Region r : kAllRegions)
    if (!non_negative_finite(bounds.of(r)))
      fail("time bounds must be finite and >= 0");

  const double worst = bounds.max();
  if (worst == 0.0) fail("all time bounds are zero: empty kernel");

  Classification out;
  bool found = false;
  for (Region r : kAllRegions) {
    const double t = bounds.of(r);
    if (!found && t == worst) {
      out.region = r;
      found = true;
    }
    if (t >= (1.0 - tolerance) * worst) out.co_limiting.push_back(r);
  }
  return out;
}

RidgelineGeometry ridgeline_geometry(const MachineSpec& machine) {
  validate(machine);
  return {machine.mem_bw / machine.net_bw, machine.peak_flops / machine.mem_bw,
          machine.peak_flops / machine.net_bw};
}

Region classify_geometric(const MachineSpec& machine,
                          const IntensityPoint& point) {
  if (!point.i_a.is_finite() || !point.i_m.is_finite())
    fail(
        "geometric classification needs finite coordinates; "
        "use classify_time for kernels without network traffic");
  const RidgelineGeometry g = ridgeline_geometry(machine);
  const double x = point.i_m.value();
  const double y = point.i_a.value();

  if (y < g.y_star) return x < g.x_star ? Region::Network : Region::Memory;
  if (x >= g.x_star) return Region::Compute;
  // Upper-left quadrant: compute versus network along x * y = k.
  return x * y < g.k ? Region::Network : Region::Compute;
}

BottleneckReport project(const MachineSpec& machine,
                         const KernelProfile& profile, double tolerance) {
  BottleneckReport report;
  report.bounds = time_bounds(machine, profile);
  Classification c = classify_time(report.bounds, tolerance);
  report.region = c.region;
  report.co_limiting = std::move(c.co_limiting);
  report.runtime = report.bounds.max();
  report.attained_flops =
      profile.flops == 0.0 ? 0.0 : profile.flops / report.runtime;
  report.tolerance = tolerance;
  return report;
}

Curve roofline_curve(const MachineSpec& machine, CurveKind kind,
                     const LogRange& range, std::size_t samples) {
  validate(machine);
  Curve curve;
  curve.kind = kind;
  switch (kind) {
    case CurveKind::ComputeMemory:
      curve.ceiling = machine.peak_flops;
      curve.slope = machine.mem_bw;
      break;
    case CurveKind::MemoryNetwork:
      curve.ceiling = machine.mem_bw;
      curve.slope = machine.net_bw;
      break;
    case CurveKind::ComputeNetwork:
      curve.ceiling = machine.peak_flops;
      curve.slope = machine.net_bw;
      break;
  }
  curve.knee = curve.ceiling / curve.slope;

  const std::vector<double> xs = log_space(range, samples);
  curve.samples.reserve(xs.size());
  for (double x : xs) curve.samples.push_back({x, curve.evaluate(x)});
  return curve;
}

SurfaceGrid surface_grid(const MachineSpec& machine, const LogRange& i_a_range,
                         const LogRange& i_n_range, std::size_t i_a_resolution,
                         std::size_t i_n_resolution) {
  validate(machine);
  SurfaceGrid grid;
  grid.i_a_values = log_space(i_a_range, i_a_resolution);
  grid.i_n_values = log_space(i_n_range, i_n_resolution);
  grid.flops.reserve(grid.i_n_values.size());
  for (double i_n : grid.i_n_values) {
    std::vector<double> row;
    row.reserve(grid.i_a_values.size());
    for (double i_a : grid.i_a_values)
      row.push_back(std::min(
          {machine.peak_flops, i_a * machine.mem_bw, i_n * machine.net_bw}));
    grid.flops.push_back(std::move(row));
  }
  return grid;
}

}  // namespace ridgeline
