// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#include "ridgeline/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "ridgeline/config.hpp"
#include "ridgeline/format.hpp"
#include "ridgeline/mlp.hpp"
#include "ridgeline/model.hpp"
#include "ridgeline/plot_svg.hpp"

namespace ridgeline::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path + "'");
  return ss.str();
}

// Writes next to the destination and renames, so a failed run never leaves
// a truncated file behind.
void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw IoError("failed writing '" + path + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::remove(tmp.c_str());
    throw IoError("cannot move output into place at '" + path + "': " +
                  ec.message());
  }
}

// Prefixes config errors with the file they came from.
template <typename Parse>
auto load(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ":" + e.path(), e.message());
  }
}

MachineSpec load_machine(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_machine_config(t); });
}

KernelConfig load_kernel(const std::string& path) {
  return load(path, [](const std::string& t) { return parse_kernel_config(t); });
}

std::string intensity_text(const Intensity& i) {
  return i.is_unbounded() ? "inf" : format_shortest(i.value());
}

std::string region_list(const std::vector<Region>& regions) {
  std::string out;
  for (Region r : regions) {
    if (!out.empty()) out += ',';
    out += to_string(r);
  }
  return out;
}

const MlpWorkload& require_mlp(const KernelConfig& config, const char* what) {
  const auto* w = std::get_if<MlpWorkload>(&config);
  if (w == nullptr)
    throw std::invalid_argument(std::string(what) +
                                " needs a kernel of kind \"mlp\"");
  return *w;
}

SweepTable sweep_for(const MlpWorkload& w, const MachineSpec& machine,
                     const std::vector<std::uint64_t>& batches, double tolerance) {
  return batch_sweep(w.mlp, batches, machine, w.allreduce.with_nodes(w.nodes),
                     tolerance);
}

struct Options {
  std::string machine;
  std::string kernel;
  std::string out_path;
  std::string kind = "ridgeline";
  std::string format = "csv";
  std::vector<std::uint64_t> batches;
  std::size_t resolution = 33;
  std::size_t samples = 129;
  double tolerance = kDefaultTolerance;
  bool json = false;
};

void validate_tolerance(double tolerance) {
  if (!(tolerance >= 0.0 && tolerance < 1.0))
    throw std::invalid_argument("--tolerance must lie in [0, 1)");
}

int cmd_analyze(const Options& o, std::ostream& out) {
  validate_tolerance(o.tolerance);
  const MachineSpec machine = load_machine(o.machine);
  const KernelProfile profile = resolve_profile(load_kernel(o.kernel));
  const auto doc = analysis_report(machine, profile, o.tolerance);

  if (o.json) {
    out << doc.dump(2) << "\n";
    return kOk;
  }
  const IntensityPoint p = intensities(profile);
  const BottleneckReport r = project(machine, profile, o.tolerance);
  std::ostringstream s;
  s << "machine         " << machine.name << "\n"
    << "kernel          " << profile.name << "\n"
    << "flops           " << format_shortest(profile.flops) << "\n"
    << "mem_bytes       " << format_shortest(profile.mem_bytes) << "\n"
    << "net_bytes       " << format_shortest(profile.net_bytes) << "\n"
    << "i_a             " << intensity_text(p.i_a) << " FLOP/byte\n"
    << "i_m             " << intensity_text(p.i_m) << " byte/net byte\n"
    << "i_n             " << intensity_text(p.i_n) << " FLOP/net byte\n"
    << "t_compute       " << format_shortest(r.bounds.t_compute) << " s\n"
    << "t_memory        " << format_shortest(r.bounds.t_memory) << " s\n"
    << "t_network       " << format_shortest(r.bounds.t_network) << " s\n"
    << "region          " << to_string(r.region) << "\n"
    << "co_limiting     " << region_list(r.co_limiting) << "\n"
    << "runtime_s       " << format_shortest(r.runtime) << "\n"
    << "attained_flops  " << format_shortest(r.attained_flops) << "\n";
  out << s.str();
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  validate_tolerance(o.tolerance);
  const MachineSpec machine = load_machine(o.machine);
  const KernelConfig kernel = load_kernel(o.kernel);
  const MlpWorkload& w = require_mlp(kernel, "sweep");
  const SweepTable table = sweep_for(w, machine, o.batches, o.tolerance);

  std::string csv = std::string(kSweepCsvHeader) + "\n";
  for (const SweepRow& row : table.rows) {
    csv += std::to_string(row.batch) + "," + format_shortest(row.profile.flops) +
           "," + format_shortest(row.profile.mem_bytes) + "," +
           format_shortest(row.profile.net_bytes) + "," +
           intensity_text(row.intensities.i_a) + "," +
           intensity_text(row.intensities.i_m) + "," +
           intensity_text(row.intensities.i_n) + "," +
           std::string(to_string(row.report.region)) + "," +
           format_shortest(row.report.runtime) + "," +
           format_shortest(row.report.attained_flops) + "," +
           format_shortest(row.allreduce_compute_ratio) + "\n";
  }

  if (o.out_path.empty())
    out << csv;
  else
    write_file(o.out_path, csv);

  if (auto crossover = allreduce_crossover_batch(table))
    err << "note: all-reduce/compute time ratio crosses 1 at batch "
        << format_shortest(*crossover) << "\n";
  return kOk;
}

std::vector<KernelProfile> plotted_profiles(const Options& o,
                                            const MachineSpec& machine,
                                            std::vector<std::string>& labels) {
  std::vector<KernelProfile> profiles;
  if (o.kernel.empty()) return profiles;
  const KernelConfig kernel = load_kernel(o.kernel);
  if (!o.batches.empty()) {
    const MlpWorkload& w = require_mlp(kernel, "--batches");
    for (const SweepRow& row : sweep_for(w, machine, o.batches, o.tolerance).rows) {
      profiles.push_back(row.profile);
      labels.push_back("b=" + std::to_string(row.batch));
    }
  } else {
    profiles.push_back(resolve_profile(kernel));
    labels.push_back(profiles.back().name);
  }
  return profiles;
}

int cmd_plot(const Options& o) {
  validate_tolerance(o.tolerance);
  const MachineSpec machine = load_machine(o.machine);
  std::vector<std::string> labels;
  const std::vector<KernelProfile> profiles = plotted_profiles(o, machine, labels);

  std::string svg;
  if (o.kind == "ridgeline") {
    std::vector<RidgelinePoint> points;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const IntensityPoint p = intensities(profiles[i]);
      if (p.i_m.is_unbounded())
        throw std::invalid_argument(
            "kernel '" + labels[i] +
            "' has no network traffic; a ridgeline plot needs net_bytes > 0 "
            "(use a roofline-cm plot for local kernels)");
      const BottleneckReport r = project(machine, profiles[i], o.tolerance);
      points.push_back({p.i_m.value(), p.i_a.value(), labels[i], r.region,
                        r.is_co_limited()});
    }
    PlotStyle style;
    style.title = "Ridgeline: " + machine.name;
    svg = render_ridgeline(ridgeline_geometry(machine), points, style);
  } else {
    CurveKind kind;
    if (o.kind == "roofline-cm")
      kind = CurveKind::ComputeMemory;
    else if (o.kind == "roofline-mn")
      kind = CurveKind::MemoryNetwork;
    else if (o.kind == "roofline-cn")
      kind = CurveKind::ComputeNetwork;
    else
      throw std::invalid_argument("unknown plot kind '" + o.kind + "'");

    const Curve probe = roofline_curve(machine, kind, {1.0, 10.0}, 2);
    const Curve curve = roofline_curve(
        machine, kind, {probe.knee / 100.0, probe.knee * 100.0}, o.samples);

    std::vector<PlotPoint> points;
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      const IntensityPoint p = intensities(profiles[i]);
      const BottleneckReport r = project(machine, profiles[i], o.tolerance);
      double x = 0.0;
      double y = r.attained_flops;
      switch (kind) {
        case CurveKind::ComputeMemory:
          x = p.i_a.value();
          break;
        case CurveKind::MemoryNetwork:
          if (p.i_m.is_unbounded())
            throw std::invalid_argument("kernel '" + labels[i] +
                                        "' has no network traffic");
          x = p.i_m.value();
          y = profiles[i].mem_bytes / r.runtime;
          break;
        case CurveKind::ComputeNetwork:
          if (p.i_n.is_unbounded())
            throw std::invalid_argument("kernel '" + labels[i] +
                                        "' has no network traffic");
          x = p.i_n.value();
          break;
      }
      points.push_back({x, y, labels[i]});
    }
    PlotStyle style;
    style.title = std::string(to_string(kind)) + " roofline: " + machine.name;
    svg = render_roofline(curve, points, style);
  }
  write_file(o.out_path, svg);
  return kOk;
}

int cmd_surface(const Options& o) {
  const SurfaceFormat format = parse_surface_format(o.format);
  const MachineSpec machine = load_machine(o.machine);
  const RidgelineGeometry g = ridgeline_geometry(machine);
  const SurfaceGrid grid =
      surface_grid(machine, {g.y_star / 100.0, g.y_star * 100.0},
                   {g.k / 100.0, g.k * 100.0}, o.resolution);
  write_file(o.out_path, export_surface(grid, format));
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Bottleneck analysis for distributed kernels (ridgeline model)",
               "ridgeline"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Classify one kernel on a machine");
  analyze->add_option("--machine", o.machine, "Machine config (JSON)")->required();
  analyze->add_option("--kernel", o.kernel, "Kernel config (JSON)")->required();
  analyze->add_flag("--json", o.json, "Emit a machine-readable report");
  analyze->add_option("--tolerance", o.tolerance, "Co-limiting relative tolerance");

  auto* sweep = app.add_subcommand("sweep", "Batch sweep of an MLP kernel");
  sweep->add_option("--machine", o.machine, "Machine config (JSON)")->required();
  sweep->add_option("--kernel", o.kernel, "Kernel config of kind mlp")->required();
  sweep->add_option("--batches", o.batches, "Comma-separated global batch sizes")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", o.out_path, "CSV destination (default: stdout)");
  sweep->add_option("--tolerance", o.tolerance, "Co-limiting relative tolerance");

  auto* plot = app.add_subcommand("plot", "Render a roofline or ridgeline SVG");
  plot->add_option("--machine", o.machine, "Machine config (JSON)")->required();
  plot->add_option("--kernel", o.kernel, "Kernel config to overlay");
  plot->add_option("--batches", o.batches, "Overlay an MLP batch sweep")
      ->delimiter(',');
  plot->add_option("--kind", o.kind, "Plot kind")
      ->check(CLI::IsMember({"ridgeline", "roofline-cm", "roofline-mn",
                             "roofline-cn"}));
  plot->add_option("--out", o.out_path, "SVG destination")->required();
  plot->add_option("--samples", o.samples, "Roofline curve samples")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  plot->add_option("--tolerance", o.tolerance, "Co-limiting relative tolerance");

  auto* surface = app.add_subcommand("surface", "Export the attainable-FLOP/s surface");
  surface->add_option("--machine", o.machine, "Machine config (JSON)")->required();
  surface->add_option("--out", o.out_path, "Destination file")->required();
  surface->add_option("--resolution", o.resolution, "Samples per axis")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000}));
  surface->add_option("--format", o.format, "csv or grid-text");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("ridgeline");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (plot->parsed()) return cmd_plot(o);
    if (surface->parsed()) return cmd_surface(o);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace ridgeline::cli
