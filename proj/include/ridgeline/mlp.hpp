// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ridgeline/model.hpp"

namespace ridgeline {

// One fully connected layer; the weight matrix is in_features x out_features.
struct LayerSpec {
  std::uint64_t in_features = 1;
  std::uint64_t out_features = 1;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Training phases of a fully connected layer. Each one is a single GEMM.
enum class Phase { Forward, ActivationGrad, WeightGrad };

inline constexpr Phase kAllPhases[] = {Phase::Forward, Phase::ActivationGrad,
                                       Phase::WeightGrad};

std::string_view to_string(Phase phase);

struct MlpSpec {
  std::vector<LayerSpec> layers;
  unsigned dtype_bytes = 4;
  std::vector<Phase> phases{std::begin(kAllPhases), std::end(kAllPhases)};

  bool has_phase(Phase phase) const;
};

// Throws std::invalid_argument for empty stacks, zero-width layers, chains
// where out_features(l) != in_features(l + 1), or dtype_bytes not in
// {1, 2, 4, 8}.
void validate(const MlpSpec& mlp);

// Single 4096 x 4096 fp32 layer with all three phases enabled.
MlpSpec case_study_mlp();

// Per-node traffic model for the gradient all-reduce.
struct AllReduceModel {
  enum class Algorithm { Ring, Ideal, Factor };

  Algorithm algorithm = Algorithm::Ideal;
  double factor = 0.0;  // only read by Algorithm::Factor
  std::uint64_t nodes = 1;

  static AllReduceModel ring(std::uint64_t nodes) {
    return {Algorithm::Ring, 0.0, nodes};
  }
  static AllReduceModel ideal(std::uint64_t nodes = 1) {
    return {Algorithm::Ideal, 0.0, nodes};
  }
  static AllReduceModel scaled(double factor, std::uint64_t nodes = 1) {
    return {Algorithm::Factor, factor, nodes};
  }

  AllReduceModel with_nodes(std::uint64_t p) const {
    AllReduceModel out = *this;
    out.nodes = p;
    return out;
  }
};

std::string_view to_string(AllReduceModel::Algorithm algorithm);
AllReduceModel::Algorithm parse_allreduce_algorithm(std::string_view text);

// C[m x n] = A[m x k] * B[k x n]: 2mnk FLOPs, every operand read once and
// the result written once. No network traffic.
KernelProfile gemm_profile(std::uint64_t m, std::uint64_t n, std::uint64_t k,
                           unsigned dtype_bytes);

// Sum over layers of the (batch x in) * (in x out) GEMM. Activation and
// weight gradients cost the same FLOPs on same-sized operands as the
// forward pass; bias, activation function and transposes are ignored.
KernelProfile mlp_phase_profile(const MlpSpec& mlp, std::uint64_t batch,
                                Phase phase);

// Bytes of all weight matrices. Biases are not counted.
double parameter_bytes(const MlpSpec& mlp);

// Network bytes sent per node to all-reduce param_bytes:
//   Ring       2 * bytes * (p - 1) / p
//   Ideal      2 * bytes
//   Factor(c)  c * bytes
double allreduce_volume(double param_bytes, const AllReduceModel& model);

// Forward + activation grad + weight grad at local_batch, plus one
// all-reduce of the weights.
KernelProfile training_step_profile(const MlpSpec& mlp,
                                    std::uint64_t local_batch,
                                    const AllReduceModel& allreduce);

// Splits global_batch evenly over nodes and synchronizes across them.
KernelProfile data_parallel_profile(const MlpSpec& mlp,
                                    std::uint64_t global_batch,
                                    std::uint64_t nodes,
                                    const AllReduceModel& allreduce);

struct SweepRow {
  std::uint64_t batch = 0;
  KernelProfile profile;
  IntensityPoint intensities;
  BottleneckReport report;
  double allreduce_compute_ratio = 0.0;  // t_network / t_compute
};

struct SweepTable {
  std::vector<SweepRow> rows;  // ascending batch
};

// Evaluates data_parallel_profile(mlp, b, allreduce.nodes, allreduce) for
// every batch b on the machine.
SweepTable batch_sweep(const MlpSpec& mlp,
                       std::span<const std::uint64_t> batches,
                       const MachineSpec& machine,
                       const AllReduceModel& allreduce,
                       double tolerance = kDefaultTolerance);

// Batch at which the all-reduce/compute ratio crosses 1, interpolated
// log-log between the two bracketing rows. Empty when the sweep never
// crosses.
std::optional<double> allreduce_crossover_batch(const SweepTable& table);

}  // namespace ridgeline
