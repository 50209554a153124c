// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "ridgeline/mlp.hpp"
#include "ridgeline/model.hpp"

namespace ridgeline {

// Validation failure in a configuration document. path() is a JSON-path
// style locator such as "$.layers[1].in".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message),
        path_(std::move(path)),
        message_(message) {}

  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

// {"name", "peak_flops", "mem_bw", "net_bw"}; all keys required, no others.
MachineSpec parse_machine_config(std::string_view text);

// Data-parallel MLP training step described by a kernel file of kind "mlp".
struct MlpWorkload {
  std::string name;
  MlpSpec mlp;
  std::uint64_t batch = 1;  // global batch, split evenly over nodes
  std::uint64_t nodes = 1;
  AllReduceModel allreduce;
};

using KernelConfig = std::variant<KernelProfile, MlpWorkload>;

// kind "raw": {flops, mem_bytes, net_bytes}
// kind "mlp": {layers: [{in, out}...], dtype_bytes, batch, nodes,
//              allreduce: {algorithm: ring|ideal|factor, factor?}}
// Both accept an optional "name".
KernelConfig parse_kernel_config(std::string_view text);

KernelProfile resolve_profile(const KernelConfig& config);

// Machine-readable analysis. The "machine" and "kernel" members are valid
// machine and raw-kernel configs, so a report can be fed back in.
nlohmann::ordered_json analysis_report(const MachineSpec& machine,
                                       const KernelProfile& profile,
                                       double tolerance = kDefaultTolerance);

}  // namespace ridgeline
