// Copyright 2026 The Ridgeline Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>

namespace ridgeline::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kIoError = 2,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kSweepCsvHeader =
    "batch,flops,mem_bytes,net_bytes,i_a,i_m,i_n,region,runtime_s,"
    "attained_flops,allreduce_compute_ratio";

// Runs one subcommand (analyze, sweep, plot, surface). `args` excludes the
// program name. Data goes to `out`, diagnostics to `err`. Output files are
// only created once the whole document has been produced.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ridgeline::cli
