// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Run configuration: a UTF-8 key/value file with [sections].
//
//   # comment
//   seed = 42
//   threads = 1
//   format = csv            # csv | ndjson
//
//   [model]
//   kind = spectral-stable  # spectral-stable | independent-stable | common-factor
//   alpha = 0.5
//   atom_angles = [0, 0.7853981633974483]
//   atom_weights = [0.5, 1.0]
//
// Arrays are bracketed and comma separated; matrices are arrays of arrays
// (`a = [[0.9, 0.1], [0.5, 0.5]]`); strings may be bare or double-quoted.
// Every key is optional and has the default of the corresponding field
// below. Unknown sections or keys are errors.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "anisub/ctrw.hpp"
#include "anisub/inverse.hpp"
#include "anisub/model.hpp"
#include "anisub/timechange.hpp"

namespace anisub::cli {

struct SimulateParams {
  double x_max = 10.0;
  double dx = 0.01;
  std::uint64_t n_paths = 1;
};

struct InvertParams {
  double t1 = 1.0;
  double t2 = 1.0;
  double dx = 0.002;
  std::uint64_t n_reps = 10000;
  std::uint64_t max_cells = inverse::kDefaultMaxCells;
};

struct SubdiffuseParams {
  std::vector<double> t_grid{1.0, 2.0, 4.0, 8.0};
  double dx = 0.002;
  std::uint64_t n_paths = 1;     // trajectories written out
  std::uint64_t n_reps = 10000;  // replicates behind the MSD summary
  std::uint64_t max_cells = inverse::kDefaultMaxCells;
};

struct PoissonParams {
  double xi1 = 1.0;
  double xi2 = 1.0;
  double t1 = 1.0;
  double t2 = 1.0;
  std::uint64_t n_reps = 10000;
};

struct CtmcParams {
  timechange::CtmcSpec spec{{"0", "1"}, {"0", "1"}, {{0.0, 1.0}, {1.0, 0.0}},
                            {{0.0, 1.0}, {1.0, 0.0}}, 1.0, 1.0};
  double t1 = 1.0;
  double t2 = 1.0;
  double dx = 0.002;  // inverse route only
  timechange::CtmcRoute route = timechange::CtmcRoute::interarrival;
  std::uint64_t n_reps = 10000;
};

struct VerifyParams {
  std::vector<std::string> identities;  // empty: whole catalog
  std::uint64_t budget = 100000;
  double z_max = 4.0;
  double dx = 0.002;
};

/// Spectral-stable, alpha = 1/2, atoms 0.5 at 0 and 1.0 at pi/4.
BivariateModel default_model();

struct RunConfig {
  std::uint64_t seed = 42;
  unsigned threads = 1;
  std::string format = "csv";
  BivariateModel model = default_model();
  SimulateParams simulate;
  InvertParams invert;
  SubdiffuseParams subdiffuse;
  PoissonParams poisson;
  CtmcParams ctmc;
  ctrw::SweepExperiment ctrw{{10.0, 100.0, 1000.0, 10000.0}};
  VerifyParams verify;

  /// Line of each key seen while parsing, as "section.key" (top-level keys
  /// have no prefix). Used to place diagnostics.
  std::map<std::string, int> key_lines;
};

/// Throws ConfigError with a qualified field name ("model.alpha") and the
/// offending line.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file. Throws ConfigError when it cannot be read.
RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& config);

const char* route_name(timechange::CtmcRoute route);

}  // namespace anisub::cli
