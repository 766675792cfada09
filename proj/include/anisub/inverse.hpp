// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// First-passage inversion L_i(t) = inf{x : H_i(x) > t} on the operational
// grid x_k = k dx.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "anisub/estimate.hpp"
#include "anisub/model.hpp"
#include "anisub/rng.hpp"
#include "anisub/simulate.hpp"

namespace anisub::inverse {

/// Cap on the number of grid cells a single replicate may generate.
inline constexpr std::uint64_t kDefaultMaxCells = std::uint64_t{1} << 26;

struct Crossing {
  double value = std::numeric_limits<double>::quiet_NaN();  // index * dx
  std::uint64_t index = 0;
  bool truncated = true;
};

/// Smallest k with h_k > t on a stored path.
Crossing invert_path(const simulate::SubordinatorPath& path, Component k, double t);

struct InverseSample {
  double l1 = std::numeric_limits<double>::quiet_NaN();
  double l2 = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t index1 = 0;
  std::uint64_t index2 = 0;
  bool on_diagonal = false;
  bool truncated = false;
};

/// First-passage grid indices of both components for sorted level lists.
/// The path is generated cell by cell until every level is crossed or
/// max_cells is reached; uncrossed levels report index 0 and set truncated.
struct PassageIndices {
  std::vector<std::uint64_t> first;
  std::vector<std::uint64_t> second;
  bool truncated = false;
};

PassageIndices first_passages(const simulate::CellStepper& stepper,
                              const std::vector<double>& levels1,
                              const std::vector<double>& levels2, Rng& rng,
                              std::uint64_t max_cells = kDefaultMaxCells);

/// (L_1(t1), L_2(t2)) from one grid path.
InverseSample sample_inverse(const simulate::CellStepper& stepper, double t1, double t2, Rng& rng,
                             std::uint64_t max_cells = kDefaultMaxCells);

InverseSample sample_inverse(const BivariateModel& model, double t1, double t2, double dx,
                             RngSpec spec, std::uint64_t max_cells = kDefaultMaxCells);

struct MomentEstimates {
  MCEstimate mean1;
  MCEstimate mean2;
  MCEstimate mixed;       // E L1 L2
  double covariance = 0;  // unbiased product-moment estimate
  double covariance_se = 0;
  std::uint64_t diagonal = 0;
  std::uint64_t truncated = 0;
  double dx = 0;
};

/// Moments of (L_1(t1), L_2(t2)) over n_reps replicates drawn from streams
/// stream_id(tag, r). Truncated replicates are excluded and counted.
MomentEstimates estimate_moments(const BivariateModel& model, double t1, double t2, double dx,
                                 std::uint64_t n_reps, std::uint64_t seed, std::uint32_t tag,
                                 const ParallelOptions& opts = {},
                                 std::uint64_t max_cells = kDefaultMaxCells);

/// One NDJSON object per sample: {"l1","l2","on_diagonal","truncated"}.
void write_inverse_ndjson(std::ostream& os, const std::vector<InverseSample>& samples);

}  // namespace anisub::inverse
