// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Coupled continuous-time random walks with Pareto-radial interarrival
// vectors, and a Kolmogorov-Smirnov sweep against the time-changed Brownian
// limit.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "anisub/estimate.hpp"
#include "anisub/model.hpp"
#include "anisub/rng.hpp"

namespace anisub::ctrw {

/// Interarrival vectors R (cos Theta, sin Theta) with P(R > r) = r^-alpha for
/// r >= 1 and Theta ~ m / m.total_mass(); jumps are independent standard
/// normal pairs.
class CtrwSpec {
 public:
  CtrwSpec(Alpha alpha, const SpectralMeasure& m);

  Alpha alpha() const noexcept { return alpha_; }
  const SpectralMeasure& measure() const noexcept { return m_; }

  /// Draws one interarrival vector.
  void interarrival(Rng& rng, double& j1, double& j2) const;

  /// The limit subordinator: Levy intensity C = 1 with the normalized measure.
  BivariateModel limit_model() const;

 private:
  Alpha alpha_;
  SpectralMeasure m_;  // normalized
  std::vector<double> cumulative_;
  std::vector<Direction> directions_;
};

struct CtrwDraw {
  double s1 = 0.0;  // c^(-alpha/2) S^1_{N^1(ct)}
  double s2 = 0.0;
  std::uint64_t n1 = 0;  // raw counts N^i(ct)
  std::uint64_t n2 = 0;
};

/// One walk read at physical time c t.
CtrwDraw sample_ctrw(const CtrwSpec& spec, double c, double t, Rng& rng);

/// Two-sample Kolmogorov-Smirnov distance. Sorts copies of its inputs.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// c(level) sqrt((n + m) / (n m)) with c(level) = sqrt(-log(level / 2) / 2).
double ks_critical(std::size_t n, std::size_t m, double level = 0.01);

struct SweepRow {
  double c = 0.0;
  double ks_pos1 = 0.0;
  double ks_pos2 = 0.0;
  double ks_cnt1 = 0.0;
  double ks_cnt2 = 0.0;
  double noise_floor = 0.0;  // KS between the two reference position samples
};

struct SweepExperiment {
  std::vector<double> c_values;
  double t = 1.0;
  std::uint64_t n_reps = 10000;
  std::uint64_t n_ref = 10000;
  double dx = 0.002;  // grid step of the reference simulation
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double critical = 0.0;   // 1% two-sample KS critical value for (n_reps, n_ref)
  int inversions = 0;      // increases of ks_pos1 along c
  double noise_cnt1 = 0.0; // KS between the two reference count samples
};

/// Runs the walk for every c and compares its rescaled marginals with a
/// reference sample of (B_i(L_i(t)), L_i(t)) from the limit model. Throws
/// ConfigError when n_reps or n_ref is below 1000.
SweepReport convergence_sweep(const CtrwSpec& spec, const SweepExperiment& experiment,
                              std::uint64_t seed, const ParallelOptions& opts = {});

/// CSV with header `c,ks_pos1,ks_pos2,ks_cnt1,ks_cnt2,noise_floor`.
void write_sweep_csv(std::ostream& os, const SweepReport& report);

}  // namespace anisub::ctrw
