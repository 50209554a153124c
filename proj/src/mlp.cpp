// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#include "ridgeline/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ridgeline {
namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Forward:
      return "forward";
    case Phase::ActivationGrad:
      return "activation_grad";
    case Phase::WeightGrad:
      return "weight_grad";
  }
  return "unknown";
}

bool MlpSpec::has_phase(Phase phase) const {
  return std::find(phases.begin(), phases.end(), phase) != phases.end();
}

void validate(const MlpSpec& mlp) {
  if (mlp.layers.empty()) fail("mlp needs at least one layer");
  if (mlp.dtype_bytes != 1 && mlp.dtype_bytes != 2 && mlp.dtype_bytes != 4 &&
      mlp.dtype_bytes != 8)
    fail("dtype_bytes must be one of 1, 2, 4, 8");
  for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
    const LayerSpec& layer = mlp.layers[l];
    if (layer.in_features == 0 || layer.out_features == 0)
      fail("layer " + std::to_string(l) + " has a zero feature count");
    if (l + 1 < mlp.layers.size() &&
        layer.out_features != mlp.layers[l + 1].in_features)
      fail("layer " + std::to_string(l) + " outputs " +
           std::to_string(layer.out_features) + " features but layer " +
           std::to_string(l + 1) + " expects " +
           std::to_string(mlp.layers[l + 1].in_features));
  }
}

MlpSpec case_study_mlp() {
  MlpSpec mlp;
  mlp.layers = {{4096, 4096}};
  mlp.dtype_bytes = 4;
  return mlp;
}

std::string_view to_string(AllReduceModel::Algorithm algorithm) {
  switch (algorithm) {
    case AllReduceModel::Algorithm::Ring:
      return "ring";
    case AllReduceModel::Algorithm::Ideal:
      return "ideal";
    case AllReduceModel::Algorithm::Factor:
      return "factor";
  }
  return "unknown";
}

AllReduceModel::Algorithm parse_allreduce_algorithm(std::string_view text) {
  for (auto a : {AllReduceModel::Algorithm::Ring,
                 AllReduceModel::Algorithm::Ideal,
                 AllReduceModel::Algorithm::Factor})
    if (to_string(a) == text) return a;
  fail("unknown all-reduce algorithm '" + std::string(text) + "'");
}

KernelProfile gemm_profile(std::uint64_t m, std::uint64_t n, std::uint64_t k,
                           unsigned dtype_bytes) {
  if (m == 0 || n == 0 || k == 0) fail("GEMM dimensions must be >= 1");
  if (dtype_bytes == 0) fail("dtype_bytes must be >= 1");
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  KernelProfile p;
  p.name = "gemm";
  p.flops = 2.0 * dm * dn * dk;
  p.mem_bytes = static_cast<double>(dtype_bytes) * (dm * dk + dk * dn + dm * dn);
  return p;
}

KernelProfile mlp_phase_profile(const MlpSpec& mlp, std::uint64_t batch,
                                Phase phase) {
  validate(mlp);
  if (batch == 0) fail("batch must be >= 1");
  if (!mlp.has_phase(phase))
    fail("phase " + std::string(to_string(phase)) + " is not enabled");

  KernelProfile total;
  total.name = std::string(to_string(phase));
  for (const LayerSpec& layer : mlp.layers)
    total += gemm_profile(batch, layer.out_features, layer.in_features,
                          mlp.dtype_bytes);
  return total;
}

double parameter_bytes(const MlpSpec& mlp) {
  validate(mlp);
  double elements = 0.0;
  for (const LayerSpec& layer : mlp.layers)
    elements += static_cast<double>(layer.in_features) *
                static_cast<double>(layer.out_features);
  return elements * static_cast<double>(mlp.dtype_bytes);
}

double allreduce_volume(double param_bytes, const AllReduceModel& model) {
  if (!(std::isfinite(param_bytes) && param_bytes >= 0.0))
    fail("param_bytes must be finite and >= 0");
  if (model.nodes == 0) fail("all-reduce needs at least one node");
  switch (model.algorithm) {
    case AllReduceModel::Algorithm::Ring: {
      const double p = static_cast<double>(model.nodes);
      return 2.0 * param_bytes * (p - 1.0) / p;
    }
    case AllReduceModel::Algorithm::Ideal:
      return 2.0 * param_bytes;
    case AllReduceModel::Algorithm::Factor:
      if (!(std::isfinite(model.factor) && model.factor >= 0.0))
        fail("all-reduce factor must be finite and >= 0");
      return model.factor * param_bytes;
  }
  return 0.0;
}

KernelProfile training_step_profile(const MlpSpec& mlp,
                                    std::uint64_t local_batch,
                                    const AllReduceModel& allreduce) {
  validate(mlp);
  for (Phase phase : kAllPhases)
    if (!mlp.has_phase(phase))
      fail("training step needs phase " + std::string(to_string(phase)));

  KernelProfile total;
  total.name = "training_step";
  for (Phase phase : kAllPhases)
    total += mlp_phase_profile(mlp, local_batch, phase);
  total.net_bytes = allreduce_volume(parameter_bytes(mlp), allreduce);
  return total;
}

KernelProfile data_parallel_profile(const MlpSpec& mlp,
                                    std::uint64_t global_batch,
                                    std::uint64_t nodes,
                                    const AllReduceModel& allreduce) {
  if (nodes == 0) fail("nodes must be >= 1");
  if (global_batch == 0 || global_batch % nodes != 0)
    fail("global batch " + std::to_string(global_batch) +
         " is not divisible by " + std::to_string(nodes) + " nodes");
  return training_step_profile(mlp, global_batch / nodes,
                               allreduce.with_nodes(nodes));
}

SweepTable batch_sweep(const MlpSpec& mlp,
                       std::span<const std::uint64_t> batches,
                       const MachineSpec& machine,
                       const AllReduceModel& allreduce, double tolerance) {
  if (batches.empty()) fail("batch sweep needs at least one batch size");
  std::vector<std::uint64_t> sorted(batches.begin(), batches.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  SweepTable table;
  table.rows.reserve(sorted.size());
  for (std::uint64_t batch : sorted) {
    SweepRow row;
    row.batch = batch;
    row.profile = data_parallel_profile(mlp, batch, allreduce.nodes, allreduce);
    row.profile.name = "batch_" + std::to_string(batch);
    row.intensities = intensities(row.profile);
    row.report = project(machine, row.profile, tolerance);
    row.allreduce_compute_ratio =
        row.report.bounds.t_network / row.report.bounds.t_compute;
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::optional<double> allreduce_crossover_batch(const SweepTable& table) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const SweepRow& hi = table.rows[i];
    if (hi.allreduce_compute_ratio == 1.0) return static_cast<double>(hi.batch);
    if (i == 0) continue;
    const SweepRow& lo = table.rows[i - 1];
    const bool crosses = (lo.allreduce_compute_ratio - 1.0) *
                             (hi.allreduce_compute_ratio - 1.0) <
                         0.0;
    if (!crosses) continue;
    const double lb0 = std::log(static_cast<double>(lo.batch));
    const double lb1 = std::log(static_cast<double>(hi.batch));
    const double lr0 = std::log(lo.allreduce_compute_ratio);
    const double lr1 = std::log(hi.allreduce_compute_ratio);
    return std::exp(lb0 + (0.0 - lr0) * (lb1 - lb0) / (lr1 - lr0));
  }
  return std::nullopt;
}

}  // namespace ridgeline
