// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#include "ridgeline/config.hpp"

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

namespace ridgeline {
namespace {

using json = nlohmann::json;

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("$", std::string("malformed JSON: ") + e.what());
  }
}

// Strict view over one JSON object: unknown keys are rejected up front and
// each accessor reports the full path of the offending field.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path,
               std::initializer_list<std::string_view> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
    for (const auto& item : node_.items()) {
      bool known = false;
      for (std::string_view key : allowed) known = known || item.key() == key;
      if (!known) throw ConfigError(field(item.key()), "unknown key");
    }
  }

  std::string field(std::string_view key) const {
    return path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const {
    return node_.contains(std::string(key));
  }

  const json& get(std::string_view key) const {
    auto it = node_.find(std::string(key));
    if (it == node_.end()) throw ConfigError(field(key), "missing required key");
    return *it;
  }

  std::string text(std::string_view key) const {
    const json& v = get(key);
    if (!v.is_string()) throw ConfigError(field(key), "expected a string");
    return v.get<std::string>();
  }

  double number(std::string_view key, bool allow_zero) const {
    const json& v = get(key);
    if (!v.is_number()) throw ConfigError(field(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field(key), "must be finite");
    if (allow_zero ? d < 0.0 : d <= 0.0)
      throw ConfigError(field(key), allow_zero ? "must be >= 0" : "must be > 0");
    return d;
  }

  std::uint64_t count(std::string_view key) const {
    return to_count(get(key), field(key));
  }

  static std::uint64_t to_count(const json& v, const std::string& where) {
    if (v.is_number_unsigned()) {
      const auto n = v.get<std::uint64_t>();
      if (n == 0) throw ConfigError(where, "must be >= 1");
      return n;
    }
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::isfinite(d) && d >= 1.0 && d <= 9007199254740992.0 &&
          std::floor(d) == d)
        return static_cast<std::uint64_t>(d);
    }
    if (v.is_number()) throw ConfigError(where, "must be an integer >= 1");
    throw ConfigError(where, "expected an integer");
  }

 private:
  const json& node_;
  std::string path_;
};

KernelProfile parse_raw_kernel(const ObjectReader& r) {
  KernelProfile p;
  p.name = r.has("name") ? r.text("name") : "kernel";
  p.flops = r.number("flops", true);
  p.mem_bytes = r.number("mem_bytes", false);
  p.net_bytes = r.number("net_bytes", true);
  return p;
}

AllReduceModel parse_allreduce(const json& node, const std::string& path) {
  ObjectReader r(node, path, {"algorithm", "factor"});
  AllReduceModel model;
  try {
    model.algorithm = parse_allreduce_algorithm(r.text("algorithm"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(r.field("algorithm"), e.what());
  }
  if (model.algorithm == AllReduceModel::Algorithm::Factor) {
    model.factor = r.number("factor", true);
  } else if (r.has("factor")) {
    throw ConfigError(r.field("factor"),
                      "only allowed with algorithm \"factor\"");
  }
  return model;
}

MlpWorkload parse_mlp_kernel(const ObjectReader& r) {
  MlpWorkload w;
  w.name = r.has("name") ? r.text("name") : "mlp";

  const json& layers = r.get("layers");
  if (!layers.is_array() || layers.empty())
    throw ConfigError(r.field("layers"), "expected a non-empty array");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const std::string path = r.field("layers") + "[" + std::to_string(i) + "]";
    ObjectReader lr(layers[i], path, {"in", "out"});
    w.mlp.layers.push_back({lr.count("in"), lr.count("out")});
  }

  const std::uint64_t dtype = r.count("dtype_bytes");
  if (dtype != 1 && dtype != 2 && dtype != 4 && dtype != 8)
    throw ConfigError(r.field("dtype_bytes"), "must be one of 1, 2, 4, 8");
  w.mlp.dtype_bytes = static_cast<unsigned>(dtype);

  try {
    validate(w.mlp);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(r.field("layers"), e.what());
  }

  w.batch = r.count("batch");
  w.nodes = r.count("nodes");
  if (w.batch % w.nodes != 0)
    throw ConfigError(r.field("batch"), "batch " + std::to_string(w.batch) +
                                            " is not divisible by " +
                                            std::to_string(w.nodes) + " nodes");
  w.allreduce = parse_allreduce(r.get("allreduce"), r.field("allreduce"));
  w.allreduce.nodes = w.nodes;
  return w;
}

nlohmann::ordered_json intensity_json(const Intensity& i) {
  if (i.is_unbounded()) return nullptr;
  return i.value();
}

}  // namespace

MachineSpec parse_machine_config(std::string_view text) {
  const json doc = parse_document(text);
  ObjectReader r(doc, "$", {"name", "peak_flops", "mem_bw", "net_bw"});
  MachineSpec m;
  m.name = r.text("name");
  m.peak_flops = r.number("peak_flops", false);
  m.mem_bw = r.number("mem_bw", false);
  m.net_bw = r.number("net_bw", false);
  return m;
}

KernelConfig parse_kernel_config(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ConfigError("$", "expected an object");
  auto kind_it = doc.find("kind");
  if (kind_it == doc.end()) throw ConfigError("$.kind", "missing required key");
  if (!kind_it->is_string()) throw ConfigError("$.kind", "expected a string");
  const std::string kind = kind_it->get<std::string>();

  if (kind == "raw") {
    ObjectReader r(doc, "$", {"kind", "name", "flops", "mem_bytes", "net_bytes"});
    return parse_raw_kernel(r);
  }
  if (kind == "mlp") {
    ObjectReader r(doc, "$",
                   {"kind", "name", "layers", "dtype_bytes", "batch", "nodes",
                    "allreduce"});
    return parse_mlp_kernel(r);
  }
  throw ConfigError("$.kind", "unknown kind '" + kind + "' (expected raw or mlp)");
}

KernelProfile resolve_profile(const KernelConfig& config) {
  if (const auto* raw = std::get_if<KernelProfile>(&config)) return *raw;
  const auto& w = std::get<MlpWorkload>(config);
  KernelProfile p = data_parallel_profile(w.mlp, w.batch, w.nodes, w.allreduce);
  p.name = w.name;
  return p;
}

nlohmann::ordered_json analysis_report(const MachineSpec& machine,
                                       const KernelProfile& profile,
                                       double tolerance) {
  const IntensityPoint point = intensities(profile);
  const BottleneckReport report = project(machine, profile, tolerance);

  nlohmann::ordered_json out;
  out["machine"] = {{"name", machine.name},
                    {"peak_flops", machine.peak_flops},
                    {"mem_bw", machine.mem_bw},
                    {"net_bw", machine.net_bw}};
  out["kernel"] = {{"kind", "raw"},
                   {"name", profile.name},
                   {"flops", profile.flops},
                   {"mem_bytes", profile.mem_bytes},
                   {"net_bytes", profile.net_bytes}};
  out["intensities"] = {{"i_a", intensity_json(point.i_a)},
                        {"i_m", intensity_json(point.i_m)},
                        {"i_n", intensity_json(point.i_n)}};
  out["bounds"] = {{"t_compute", report.bounds.t_compute},
                   {"t_memory", report.bounds.t_memory},
                   {"t_network", report.bounds.t_network}};
  out["region"] = std::string(to_string(report.region));
  auto co = nlohmann::ordered_json::array();
  for (Region r : report.co_limiting) co.push_back(std::string(to_string(r)));
  out["co_limiting"] = co;
  out["runtime_s"] = report.runtime;
  out["attained_flops"] = report.attained_flops;
  out["tolerance"] = tolerance;
  return out;
}

}  // namespace ridgeline
