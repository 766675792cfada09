// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Exact-in-distribution sampling of bivariate subordinator increments and
// grid paths.
//
// Every supported law is a finite superposition of independent one-sided
// stable subordinators pushed along fixed directions:
//
//   H(x) = sum_j v_j Z_j(x),   E exp(-lambda Z_j(x)) = exp(-x s_j lambda^a_j)
//
// with v_j = (cos theta_j, sin theta_j) and s_j = kappa w_j for a discrete
// spectral measure, the two axes for the independent model, and
// {(1,0), (0,1), (c1,c2)} for the common-factor model. A continuous spectral
// density is discretized with its own quadrature rule, so the sampled law is
// the quadrature approximation of the model.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "anisub/model.hpp"
#include "anisub/rng.hpp"

namespace anisub::simulate {

/// One-sided stable variate with Laplace transform exp(-dt scale lambda^alpha)
/// (Kanter's representation). alpha = 1 returns the drift dt * scale.
double sample_stable(double alpha, double scale, double dt, Rng& rng);

/// A single stable factor of the superposition.
struct StableFactor {
  double alpha;
  double scale;  // Laplace exponent per unit operational time
  double v1;
  double v2;
};

/// Decomposition of a model into independent stable factors.
std::vector<StableFactor> stable_factors(const BivariateModel& model);

/// Draws bivariate increments (H_1, H_2)(x + dt) - (H_1, H_2)(x).
class IncrementSampler {
 public:
  explicit IncrementSampler(const BivariateModel& model);

  /// Increment over an arbitrary operational-time step dt > 0.
  std::pair<double, double> operator()(double dt, Rng& rng) const;

  const std::vector<StableFactor>& factors() const noexcept { return factors_; }

 private:
  std::vector<StableFactor> factors_;
};

/// Increment sampler with the step fixed, so the per-factor scaling
/// (s dt)^(1/alpha) is computed once.
class CellStepper {
 public:
  CellStepper(const BivariateModel& model, double dx);

  void advance(Rng& rng, double& h1, double& h2) const;
  double dx() const noexcept { return dx_; }

 private:
  struct Scaled {
    double alpha;
    double factor;  // (s dx)^(1/alpha)
    double v1;
    double v2;
  };
  double dx_;
  std::vector<Scaled> factors_;
};

/// Draw from the unit Kanter variable Z with E exp(-lambda Z) = exp(-lambda^alpha).
double sample_unit_stable(double alpha, Rng& rng);

/// (H_1, H_2) sampled on the grid x_k = k dx, k = 0..cells.
struct SubordinatorPath {
  double dx = 0.0;
  std::vector<double> h1;  // size cells + 1, h1[0] = 0
  std::vector<double> h2;
  std::string model_tag;

  std::size_t cells() const noexcept { return h1.empty() ? 0 : h1.size() - 1; }
};

/// Path with ceil(x_max / dx) cells.
SubordinatorPath sample_path(const BivariateModel& model, double x_max, double dx, RngSpec spec);

/// CSV with header `x,h1,h2`, one row per grid node.
void write_path_csv(std::ostream& os, const SubordinatorPath& path);

}  // namespace anisub::simulate
