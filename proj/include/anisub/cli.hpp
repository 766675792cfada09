// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Batch runner behind the `anisub` executable.
//
// Each run writes one directory holding config.echo (the effective
// configuration in canonical form), meta.json and the command's data files.
// The seed comes from --seed, else ANISUB_SEED, else the config file.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace anisub::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kConfigError = 2,
  kBudgetExhausted = 3,
  kInternalError = 4,
};

struct RunOptions {
  std::string config_path;  // empty runs on built-in defaults
  std::string out_dir = "anisub-out";
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::string> format;
};

/// simulate, invert, subdiffuse, poisson, ctmc, ctrw-sweep, verify.
const std::vector<std::string>& commands();

const char* version();

/// Runs one command and returns its exit code. Diagnostics go to `diag`.
int run(const std::string& command, const RunOptions& options, std::ostream& diag);

}  // namespace anisub::cli
