// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ridgeline {

// Relative epsilon used to decide which resources share the bottleneck.
inline constexpr double kDefaultTolerance = 1e-9;

// ---------------------------------------------------------------------------
// Machine and kernel descriptions. All quantities are in base units:
// FLOP, FLOP/s, bytes, bytes/s.
// ---------------------------------------------------------------------------
struct MachineSpec {
  std::string name;
  double peak_flops = 0.0;  // P
  double mem_bw = 0.0;      // BW_m
  double net_bw = 0.0;      // BW_n
};

// Throws std::invalid_argument unless all three rates are finite and > 0.
void validate(const MachineSpec& machine);

// Work done by one kernel. Profiles are additive, so the number of work
// units is folded into the totals.
struct KernelProfile {
  std::string name;
  double flops = 0.0;      // F
  double mem_bytes = 0.0;  // B_M
  double net_bytes = 0.0;  // B_N; zero for a purely local kernel

  KernelProfile& operator+=(const KernelProfile& other);
  KernelProfile scaled(double factor) const;
};

// Throws std::invalid_argument for negative, non-finite or B_M == 0 profiles.
void validate(const KernelProfile& profile);

// A non-negative intensity that may also be unbounded (the ratio had a zero
// denominator). Unbounded values never leak into arithmetic: value() throws.
class Intensity {
 public:
  constexpr Intensity() = default;
  explicit Intensity(double value);

  static constexpr Intensity unbounded() {
    Intensity out;
    out.unbounded_ = true;
    return out;
  }

  bool is_unbounded() const { return unbounded_; }
  bool is_finite() const { return !unbounded_; }
  double value() const;

  friend bool operator==(const Intensity&, const Intensity&) = default;

 private:
  double value_ = 0.0;
  bool unbounded_ = false;
};

struct IntensityPoint {
  Intensity i_a;  // FLOP per memory byte
  Intensity i_m;  // memory bytes per network byte
  Intensity i_n;  // FLOP per network byte

  friend bool operator==(const IntensityPoint&, const IntensityPoint&) = default;
};

// Listed in tie-break priority order.
enum class Region { Compute, Memory, Network };

inline constexpr Region kAllRegions[] = {Region::Compute, Region::Memory,
                                         Region::Network};

std::string_view to_string(Region region);
// Accepts the lower-case names produced by to_string().
Region parse_region(std::string_view text);

struct TimeBounds {
  double t_compute = 0.0;  // F / P
  double t_memory = 0.0;   // B_M / BW_m
  double t_network = 0.0;  // B_N / BW_n

  double of(Region region) const;
  double max() const;

  friend bool operator==(const TimeBounds&, const TimeBounds&) = default;
};

struct Classification {
  Region region = Region::Compute;
  // Every resource within tolerance of the largest bound, in priority order.
  std::vector<Region> co_limiting;
};

struct BottleneckReport {
  Region region = Region::Compute;
  TimeBounds bounds;
  double runtime = 0.0;
  double attained_flops = 0.0;
  std::vector<Region> co_limiting;
  double tolerance = kDefaultTolerance;

  bool is_co_limited() const { return co_limiting.size() > 1; }
  bool limited_by(Region r) const;

  friend bool operator==(const BottleneckReport&,
                         const BottleneckReport&) = default;
};

// Balance points of a machine: the central point of the ridgeline plane and
// the diagonal x * y = k separating network- from compute-bound kernels.
struct RidgelineGeometry {
  double x_star = 0.0;  // BW_m / BW_n
  double y_star = 0.0;  // P / BW_m
  double k = 0.0;       // P / BW_n
};

enum class CurveKind { ComputeMemory, MemoryNetwork, ComputeNetwork };

std::string_view to_string(CurveKind kind);

struct CurveSample {
  double intensity = 0.0;
  double throughput = 0.0;
};

// A two-segment roofline: throughput = min(ceiling, slope * intensity).
struct Curve {
  CurveKind kind = CurveKind::ComputeMemory;
  std::vector<CurveSample> samples;
  double knee = 0.0;
  double ceiling = 0.0;
  double slope = 0.0;

  double evaluate(double intensity) const;
};

// Closed interval on a logarithmic axis.
struct LogRange {
  double min = 0.0;
  double max = 0.0;
};

// Throws std::invalid_argument unless 0 < min < max, both finite.
void validate(const LogRange& range);

// count >= 2 logarithmically spaced values; the endpoints are exact.
std::vector<double> log_space(const LogRange& range, std::size_t count);

// Attainable FLOP/s sampled over (i_a, i_n). Row per i_n, column per i_a.
struct SurfaceGrid {
  std::vector<double> i_a_values;
  std::vector<double> i_n_values;
  std::vector<std::vector<double>> flops;

  std::vector<double> row(std::size_t i_n_index) const;
  std::vector<double> column(std::size_t i_a_index) const;
};

// ---------------------------------------------------------------------------
// Operations. All are pure; invalid inputs throw std::invalid_argument.
// ---------------------------------------------------------------------------

IntensityPoint intensities(const KernelProfile& profile);

// min(P, i_a * BW_m, i_n * BW_n); an unbounded intensity drops its term.
double attainable_flops(const MachineSpec& machine, const IntensityPoint& point);

TimeBounds time_bounds(const MachineSpec& machine, const KernelProfile& profile);

// The primary region is the largest bound, ties broken Compute > Memory >
// Network. Rejects all-zero bounds and tolerances outside [0, 1).
Classification classify_time(const TimeBounds& bounds,
                             double tolerance = kDefaultTolerance);

RidgelineGeometry ridgeline_geometry(const MachineSpec& machine);

// Region of a point in the (x = i_m, y = i_a) plane from the quadrant lines
// x = x_star, y = y_star and the diagonal x * y = k. Requires finite
// coordinates; kernels without network traffic go through classify_time.
Region classify_geometric(const MachineSpec& machine,
                          const IntensityPoint& point);

BottleneckReport project(const MachineSpec& machine,
                         const KernelProfile& profile,
                         double tolerance = kDefaultTolerance);

Curve roofline_curve(const MachineSpec& machine, CurveKind kind,
                     const LogRange& range, std::size_t samples);

SurfaceGrid surface_grid(const MachineSpec& machine, const LogRange& i_a_range,
                         const LogRange& i_n_range, std::size_t i_a_resolution,
                         std::size_t i_n_resolution);

inline SurfaceGrid surface_grid(const MachineSpec& machine,
                                const LogRange& i_a_range,
                                const LogRange& i_n_range,
                                std::size_t resolution) {
  return surface_grid(machine, i_a_range, i_n_range, resolution, resolution);
}

}  // namespace ridgeline
