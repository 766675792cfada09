// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/model.hpp"

#include <cmath>
#include <numbers>

#include "anisub/error.hpp"

namespace anisub {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kAxisSnap = 1e-12;

bool finite_nonnegative(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw DomainError("alpha must lie in (0, 1], got " + std::to_string(value));
  }
}

QuadratureRule gauss_legendre(std::size_t n, double a, double b) {
  if (n == 0) throw DomainError("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) {
    // Newton iteration on P_n from the Tricomi initial guess.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        const auto jd = static_cast<double>(j);
        p0 = ((2.0 * jd - 1.0) * z * p1 - (jd - 1.0) * p2) / jd;
      }
      dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = mid - half * z;
    rule.nodes[n - 1 - i] = mid + half * z;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

const QuadratureRule& default_angular_rule() {
  static const QuadratureRule rule = gauss_legendre(64, 0.0, kHalfPi);
  return rule;
}

Direction direction_of(double angle) {
  if (std::abs(angle) <= kAxisSnap) return {1.0, 0.0};
  if (std::abs(angle - kHalfPi) <= kAxisSnap) return {0.0, 1.0};
  // The bisector is snapped too, so that cos and sin agree bit for bit there.
  if (std::abs(angle - kHalfPi / 2.0) <= kAxisSnap) {
    return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
  }
  return {std::cos(angle), std::sin(angle)};
}

SpectralMeasure SpectralMeasure::point(double angle, double weight) {
  SpectralMeasure m;
  m.add_atom(angle, weight);
  return m;
}

SpectralMeasure& SpectralMeasure::add_atom(double angle, double weight) {
  atoms_.push_back({angle, weight});
  return *this;
}

SpectralMeasure& SpectralMeasure::set_density(TabulatedDensity density) {
  density_ = std::move(density);
  return *this;
}

SpectralMeasure& SpectralMeasure::set_density(const std::function<double(double)>& f,
                                              const QuadratureRule& rule) {
  TabulatedDensity d{rule, {}};
  d.values.reserve(rule.nodes.size());
  for (double node : rule.nodes) d.values.push_back(f(node));
  density_ = std::move(d);
  return *this;
}

void SpectralMeasure::validate() const {
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.angle) || a.angle < -kAxisSnap || a.angle > kHalfPi + kAxisSnap) {
      throw ConfigError("atom_angles", "spectral atom angle outside [0, pi/2]: " +
                                           std::to_string(a.angle));
    }
    if (!finite_nonnegative(a.weight)) {
      throw ConfigError("atom_weights", "spectral atom weight must be finite and >= 0");
    }
  }
  if (density_) {
    const auto& d = *density_;
    if (d.rule.nodes.empty() || d.rule.nodes.size() != d.rule.weights.size()) {
      throw ConfigError("density_nodes",
                        "spectral density needs a quadrature rule (matching nodes and weights)");
    }
    if (d.values.size() != d.rule.nodes.size()) {
      throw ConfigError("density_values", "spectral density values do not match its nodes");
    }
    for (std::size_t i = 0; i < d.values.size(); ++i) {
      const double node = d.rule.nodes[i];
      if (!std::isfinite(node) || node < -kAxisSnap || node > kHalfPi + kAxisSnap) {
        throw ConfigError("density_nodes", "density node outside [0, pi/2]");
      }
      if (!finite_nonnegative(d.values[i]) || !finite_nonnegative(d.rule.weights[i])) {
        throw ConfigError("density_values", "density values and weights must be >= 0");
      }
    }
  }
  const double mass = total_mass();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw ConfigError("atom_weights", "spectral measure must have finite positive mass");
  }
}

double SpectralMeasure::total_mass() const {
  double mass = 0.0;
  for (const auto& a : atoms_) mass += a.weight;
  if (density_) {
    for (std::size_t i = 0; i < density_->values.size(); ++i) {
      mass += density_->values[i] * density_->rule.weights[i];
    }
  }
  return mass;
}

std::vector<SpectralAtom> SpectralMeasure::discretized() const {
  std::vector<SpectralAtom> out;
  for (const auto& a : atoms_) {
    if (a.weight > 0.0) out.push_back(a);
  }
  if (density_) {
    for (std::size_t i = 0; i < density_->values.size(); ++i) {
      const double w = density_->values[i] * density_->rule.weights[i];
      if (w > 0.0) out.push_back({density_->rule.nodes[i], w});
    }
  }
  return out;
}

SpectralMeasure SpectralMeasure::swapped() const {
  SpectralMeasure out;
  for (const auto& a : atoms_) out.add_atom(kHalfPi - a.angle, a.weight);
  if (density_) {
    TabulatedDensity d;
    const std::size_t n = density_->values.size();
    for (std::size_t i = n; i-- > 0;) {
      d.rule.nodes.push_back(kHalfPi - density_->rule.nodes[i]);
      d.rule.weights.push_back(density_->rule.weights[i]);
      d.values.push_back(density_->values[i]);
    }
    out.set_density(std::move(d));
  }
  return out;
}

SpectralMeasure SpectralMeasure::normalized() const {
  const double mass = total_mass();
  if (!(mass > 0.0)) throw ConfigError("atom_weights", "cannot normalize a zero measure");
  SpectralMeasure out = *this;
  for (auto& a : out.atoms_) a.weight /= mass;
  if (out.density_) {
    for (auto& v : out.density_->values) v /= mass;
  }
  return out;
}

double StableBernstein::operator()(double eta) const {
  if (!(eta >= 0.0)) throw DomainError("Bernstein function argument must be >= 0");
  if (eta == 0.0 || scale == 0.0) return 0.0;
  return scale * std::pow(eta, alpha);
}

double StableBernstein::levy_tail(double t) const {
  if (!(t > 0.0)) throw DomainError("Levy tail argument must be > 0");
  if (alpha >= 1.0 || scale == 0.0) return 0.0;
  return scale * std::pow(t, -alpha) / std::tgamma(1.0 - alpha);
}

SpectralStable SpectralStable::standard(Alpha alpha, SpectralMeasure m) {
  return SpectralStable{alpha, 1.0, std::move(m)};
}

SpectralStable SpectralStable::with_intensity(Alpha alpha, double c, SpectralMeasure m) {
  if (alpha.is_drift_limit()) {
    throw DomainError("Levy intensity is undefined at alpha = 1; use the standard form");
  }
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("intensity C must be > 0");
  return SpectralStable{alpha, c * std::tgamma(1.0 - alpha.value()), std::move(m)};
}

double SpectralStable::intensity() const {
  if (alpha.is_drift_limit()) return 0.0;
  return kappa / std::tgamma(1.0 - alpha.value());
}

namespace {

void validate_bernstein(const StableBernstein& b, const std::string& field) {
  if (!(b.alpha > 0.0 && b.alpha <= 1.0)) {
    throw ConfigError(field + "_alpha", field + " alpha must lie in (0, 1]");
  }
  if (!finite_nonnegative(b.scale)) {
    throw ConfigError(field + "_scale", field + " scale must be finite and >= 0");
  }
}

}  // namespace

void validate(const BivariateModel& model) {
  std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SpectralStable>) {
          if (!(m.kappa > 0.0) || !std::isfinite(m.kappa)) {
            throw ConfigError("c", "spectral-stable intensity must be finite and > 0");
          }
          m.m.validate();
          double first = 0.0;
          double second = 0.0;
          for (const auto& a : m.m.discretized()) {
            const Direction d = direction_of(a.angle);
            first += a.weight * d.c;
            second += a.weight * d.s;
          }
          if (!(first > 0.0) || !(second > 0.0)) {
            throw ConfigError("atom_angles",
                              "spectral measure must charge both components (a degenerate "
                              "marginal has no inverse)");
          }
        } else if constexpr (std::is_same_v<T, IndependentStable>) {
          if (!(m.scale1 > 0.0) || !std::isfinite(m.scale1)) {
            throw ConfigError("scale1", "scale1 must be finite and > 0");
          }
          if (!(m.scale2 > 0.0) || !std::isfinite(m.scale2)) {
            throw ConfigError("scale2", "scale2 must be finite and > 0");
          }
        } else {
          validate_bernstein(m.t1, "t1");
          validate_bernstein(m.t2, "t2");
          validate_bernstein(m.g, "g");
          if (!finite_nonnegative(m.c1)) throw ConfigError("c1", "c1 must be finite and >= 0");
          if (!finite_nonnegative(m.c2)) throw ConfigError("c2", "c2 must be finite and >= 0");
          const bool g_live = m.g.scale > 0.0;
          if (!(m.t1.scale > 0.0 || (g_live && m.c1 > 0.0))) {
            throw ConfigError("t1_scale", "component 1 of the common-factor model is identically 0");
          }
          if (!(m.t2.scale > 0.0 || (g_live && m.c2 > 0.0))) {
            throw ConfigError("t2_scale", "component 2 of the common-factor model is identically 0");
          }
        }
      },
      model);
}

std::string model_kind(const BivariateModel& model) {
  switch (model.index()) {
    case 0:
      return "spectral-stable";
    case 1:
      return "independent-stable";
    default:
      return "common-factor";
  }
}

}  // namespace anisub
