// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Descriptors of bivariate subordinator laws.
//
// Three families are supported:
//   * SpectralStable: bivariate alpha-stable subordinator whose Levy measure
//     in polar coordinates is C * alpha * r^(-1-alpha) dr M(dtheta) on the
//     closed quarter circle.
//   * IndependentStable: two independent stable subordinators.
//   * CommonFactor: H_k = Y_k + c_k Z with independent stable Y_1, Y_2, Z.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace anisub {

/// Stability index. Valid range is (0, 1]; 1 is the pure-drift limit and is
/// only meaningful for reduction checks (the Levy measure vanishes there).
class Alpha {
 public:
  explicit Alpha(double value);

  double value() const noexcept { return value_; }
  bool is_drift_limit() const noexcept { return value_ == 1.0; }

 private:
  double value_;
};

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(std::size_t n, double a, double b);

/// 64-node Gauss-Legendre on [0, pi/2].
const QuadratureRule& default_angular_rule();

struct SpectralAtom {
  double angle;   // radians in [0, pi/2]
  double weight;  // >= 0
};

/// Unit direction (cos theta, sin theta). The axis angles snap to exact
/// (1, 0) and (0, 1), and pi/4 to equal components.
struct Direction {
  double c;
  double s;
  bool on_first_axis() const noexcept { return s == 0.0; }
  bool on_second_axis() const noexcept { return c == 0.0; }
  bool interior() const noexcept { return c > 0.0 && s > 0.0; }
};

Direction direction_of(double angle);

/// Spectral density tabulated on the nodes of a quadrature rule.
struct TabulatedDensity {
  QuadratureRule rule;
  std::vector<double> values;
};

/// Finite measure on [0, pi/2]: weighted atoms plus an optional tabulated
/// density.
class SpectralMeasure {
 public:
  SpectralMeasure() = default;

  static SpectralMeasure point(double angle, double weight = 1.0);

  SpectralMeasure& add_atom(double angle, double weight);
  SpectralMeasure& set_density(TabulatedDensity density);
  SpectralMeasure& set_density(const std::function<double(double)>& f,
                               const QuadratureRule& rule = default_angular_rule());

  const std::vector<SpectralAtom>& atoms() const noexcept { return atoms_; }
  const std::optional<TabulatedDensity>& density() const noexcept { return density_; }

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  double total_mass() const;

  /// Atoms followed by the density's quadrature nodes, each weighted by
  /// value * quadrature weight. Zero-weight entries are dropped.
  std::vector<SpectralAtom> discretized() const;

  /// theta -> pi/2 - theta.
  SpectralMeasure swapped() const;

  /// Same shape with total mass 1.
  SpectralMeasure normalized() const;

 private:
  std::vector<SpectralAtom> atoms_;
  std::optional<TabulatedDensity> density_;
};

/// Univariate stable Bernstein function eta -> scale * eta^alpha.
struct StableBernstein {
  double alpha = 0.5;
  double scale = 1.0;

  double operator()(double eta) const;
  /// nu-bar(t) = scale * t^(-alpha) / Gamma(1 - alpha); 0 at the drift limit.
  double levy_tail(double t) const;
};

/// Laplace exponent kappa * integral (eta1 cos + eta2 sin)^alpha M(dtheta).
/// kappa = C * Gamma(1 - alpha); the standard normalization is kappa = 1.
struct SpectralStable {
  Alpha alpha;
  double kappa;
  SpectralMeasure m;

  static SpectralStable standard(Alpha alpha, SpectralMeasure m);
  /// From the Levy intensity C of the polar Levy measure. Requires alpha < 1.
  static SpectralStable with_intensity(Alpha alpha, double c, SpectralMeasure m);

  /// Levy intensity C = kappa / Gamma(1 - alpha); 0 at the drift limit.
  double intensity() const;
};

struct IndependentStable {
  Alpha alpha;
  double scale1 = 1.0;
  double scale2 = 1.0;
};

struct CommonFactor {
  StableBernstein t1;
  StableBernstein t2;
  StableBernstein g;
  double c1 = 1.0;
  double c2 = 1.0;
};

using BivariateModel = std::variant<SpectralStable, IndependentStable, CommonFactor>;

/// Throws ConfigError when a parameter is out of range.
void validate(const BivariateModel& model);

/// Short identifier: "spectral-stable", "independent-stable", "common-factor".
std::string model_kind(const BivariateModel& model);

enum class Component { first = 1, second = 2 };

}  // namespace anisub
