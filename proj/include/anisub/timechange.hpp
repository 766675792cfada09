// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Markov processes run componentwise on the clocks (L_1, L_2): anisotropic
// subdiffusion B_i(L_i(t)), bivariate fractional Poisson counts N_i(L_i(t))
// and general finite chains with exponential holding times.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "anisub/estimate.hpp"
#include "anisub/inverse.hpp"
#include "anisub/model.hpp"
#include "anisub/rng.hpp"
#include "anisub/simulate.hpp"

namespace anisub::timechange {

enum class Phase { rest_x_moves_y, rest_y_moves_x, rest_both, moves_both };

/// "rest-x-moves-y", "rest-y-moves-x", "rest-both", "moves-both".
const char* phase_name(Phase p);

struct TrajectoryPoint {
  double t = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  Phase phase = Phase::rest_both;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  std::vector<double> l1;  // L_1(t_k)
  std::vector<double> l2;
  bool truncated = false;
};

/// (B_1(L_1(t)), B_2(L_2(t))) on an increasing time grid. Brownian increments
/// have variance equal to the increment of L. The phase of point k records
/// which inverse grid index changed over (t_{k-1}, t_k], with t_{-1} = 0.
Trajectory sample_subdiffusion(const simulate::CellStepper& stepper,
                               const std::vector<double>& t_grid, RngSpec spec,
                               std::uint64_t max_cells = inverse::kDefaultMaxCells);

Trajectory sample_subdiffusion(Alpha alpha, const SpectralMeasure& m,
                               const std::vector<double>& t_grid, double dx, RngSpec spec,
                               std::uint64_t max_cells = inverse::kDefaultMaxCells);

/// CSV with header `t,x1,x2,phase`.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Mean-square displacement per grid time over n_reps trajectories.
struct MsdSummary {
  std::vector<double> t;
  std::vector<MCEstimate> mean1;
  std::vector<MCEstimate> msd1;
  std::vector<MCEstimate> msd2;
  double slope1 = 0.0;  // least-squares slope of log msd1 against log t
  double slope1_se = 0.0;
  double slope2 = 0.0;
  double slope2_se = 0.0;
  std::array<std::uint64_t, 4> phase_counts{};  // indexed by Phase
  std::uint64_t truncated = 0;
};

MsdSummary estimate_msd(const BivariateModel& model, const std::vector<double>& t_grid, double dx,
                        std::uint64_t n_reps, std::uint64_t seed, std::uint32_t tag,
                        const ParallelOptions& opts = {},
                        std::uint64_t max_cells = inverse::kDefaultMaxCells);

/// Renewal counts of Poisson(xi_i) clocks read on L_i(t_i):
/// counts_i[j] = N_i(L_i(levels_i[j])).
///
/// The exact route merges the exponential event times of both components in
/// operational time, draws the subordinator increment between consecutive
/// events, and counts events k with H_i(T_k) <= t. No grid is involved.
struct Counts {
  std::vector<std::uint64_t> first;
  std::vector<std::uint64_t> second;
};

Counts sample_counts_exact(const simulate::IncrementSampler& sampler, double xi1, double xi2,
                           const std::vector<double>& levels1, const std::vector<double>& levels2,
                           Rng& rng, std::uint64_t max_events = std::uint64_t{1} << 32);

/// Grid route: L_i(t_i) from a grid path, then Poisson counts with mean
/// xi_i L_i. Only approximately equal in law (L is resolved to dx).
Counts sample_counts_grid(const simulate::CellStepper& stepper, double xi1, double xi2,
                          const std::vector<double>& levels1, const std::vector<double>& levels2,
                          Rng& rng, std::uint64_t max_cells = inverse::kDefaultMaxCells);

/// (N_1(L_1(t1)), N_2(L_2(t2))) for the standard spectral model (alpha, m).
std::pair<std::uint64_t, std::uint64_t> sample_bifrac_poisson(double xi1, double xi2, Alpha alpha,
                                                              const SpectralMeasure& m, double t1,
                                                              double t2, RngSpec spec);

/// First interarrival pair (H_1(W_1), H_2(W_2)) with independent W_i ~ Exp(xi_i).
std::pair<double, double> sample_first_interarrivals(const simulate::IncrementSampler& sampler,
                                                     double xi1, double xi2, Rng& rng);

struct CtmcSpec {
  std::vector<std::string> states1;
  std::vector<std::string> states2;
  std::vector<std::vector<double>> a;  // row-stochastic
  std::vector<std::vector<double>> b;
  double xi1 = 1.0;
  double xi2 = 1.0;

  /// Throws ConfigError on a malformed spec.
  void validate() const;
};

enum class CtmcRoute { interarrival, inverse };

struct CtmcState {
  std::size_t s1 = 0;  // index into states1
  std::size_t s2 = 0;
  std::uint64_t jumps1 = 0;
  std::uint64_t jumps2 = 0;
};

/// State pair at physical times (t1, t2); both chains start in their first
/// listed state. The interarrival route is exact; the inverse route reads
/// rate-xi chains at grid values of (L_1(t1), L_2(t2)).
CtmcState sample_ctmc_timechanged(const CtmcSpec& spec, const BivariateModel& model, double t1,
                                  double t2, double dx, RngSpec rng_spec,
                                  CtmcRoute route = CtmcRoute::interarrival);

/// One embedded-chain step from state i.
std::size_t ctmc_step(const std::vector<std::vector<double>>& p, std::size_t i, Rng& rng);

}  // namespace anisub::timechange
