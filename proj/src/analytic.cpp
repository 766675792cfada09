// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anisub/error.hpp"

namespace anisub::analytic {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw DomainError(std::string(what) + " must be >= 0");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw DomainError(std::string(what) + " must be > 0");
}

// T_1(eta1) + T_2(eta2) - S(eta1, eta2), accumulated term by term so that
// axis atoms and independent models give exactly zero.
double dependence_gap(const BivariateModel& model, double eta1, double eta2) {
  const double gap = std::visit(
      Overloaded{
          [&](const SpectralStable& m) {
            const double a = m.alpha.value();
            double sum = 0.0;
            for (const auto& atom : m.m.discretized()) {
              const Direction d = direction_of(atom.angle);
              if (!d.interior()) continue;
              const double u = eta1 * d.c;
              const double v = eta2 * d.s;
              sum += atom.weight * (std::pow(u, a) + std::pow(v, a) - std::pow(u + v, a));
            }
            return m.kappa * sum;
          },
          [](const IndependentStable&) { return 0.0; },
          [&](const CommonFactor& m) {
            return m.g(m.c1 * eta1) + m.g(m.c2 * eta2) - m.g(m.c1 * eta1 + m.c2 * eta2);
          }},
      model);
  return std::max(gap, 0.0);
}

}  // namespace

double marginal_exponent(const BivariateModel& model, Component k, double eta) {
  require_nonnegative(eta, "eta");
  return std::visit(
      Overloaded{[&](const SpectralStable& m) {
                   if (eta == 0.0) return 0.0;
                   const double a = m.alpha.value();
                   double sum = 0.0;
                   for (const auto& atom : m.m.discretized()) {
                     const Direction d = direction_of(atom.angle);
                     const double proj = k == Component::first ? d.c : d.s;
                     if (proj > 0.0) sum += atom.weight * std::pow(proj, a);
                   }
                   return m.kappa * std::pow(eta, a) * sum;
                 },
                 [&](const IndependentStable& m) {
                   const StableBernstein b{m.alpha.value(),
                                           k == Component::first ? m.scale1 : m.scale2};
                   return b(eta);
                 },
                 [&](const CommonFactor& m) {
                   return k == Component::first ? m.t1(eta) + m.g(m.c1 * eta)
                                                : m.t2(eta) + m.g(m.c2 * eta);
                 }},
      model);
}

double joint_exponent(const BivariateModel& model, double eta1, double eta2) {
  require_nonnegative(eta1, "eta1");
  require_nonnegative(eta2, "eta2");
  return std::visit(
      Overloaded{[&](const SpectralStable& m) {
                   const double a = m.alpha.value();
                   double sum = 0.0;
                   for (const auto& atom : m.m.discretized()) {
                     const Direction d = direction_of(atom.angle);
                     const double proj = eta1 * d.c + eta2 * d.s;
                     if (proj > 0.0) sum += atom.weight * std::pow(proj, a);
                   }
                   return m.kappa * sum;
                 },
                 [&](const IndependentStable&) {
                   return marginal_exponent(model, Component::first, eta1) +
                          marginal_exponent(model, Component::second, eta2);
                 },
                 [&](const CommonFactor& m) {
                   return m.t1(eta1) + m.t2(eta2) + m.g(m.c1 * eta1 + m.c2 * eta2);
                 }},
      model);
}

double levy_tail(const BivariateModel& model, double t1, double t2) {
  require_positive(t1, "t1");
  require_positive(t2, "t2");
  return std::visit(
      Overloaded{[&](const SpectralStable& m) {
                   const double c = m.intensity();
                   if (c == 0.0) return 0.0;
                   const double a = m.alpha.value();
                   double sum = 0.0;
                   for (const auto& atom : m.m.discretized()) {
                     const Direction d = direction_of(atom.angle);
                     if (!d.interior()) continue;
                     sum += atom.weight * std::pow(std::max(t1 / d.c, t2 / d.s), -a);
                   }
                   return c * sum;
                 },
                 [](const IndependentStable&) { return 0.0; },
                 [&](const CommonFactor& m) {
                   if (!(m.c1 > 0.0 && m.c2 > 0.0)) return 0.0;
                   return m.g.levy_tail(std::max(t1 / m.c1, t2 / m.c2));
                 }},
      model);
}

double tail_transform(const BivariateModel& model, double eta1, double eta2) {
  require_positive(eta1, "eta1");
  require_positive(eta2, "eta2");
  return dependence_gap(model, eta1, eta2) / (eta1 * eta2);
}

double biparameter_laplace(const BivariateModel& model, double t1, double t2, double eta1,
                           double eta2) {
  require_nonnegative(t1, "t1");
  require_nonnegative(t2, "t2");
  const double s = joint_exponent(model, eta1, eta2);
  if (t2 >= t1) {
    return std::exp(-t1 * s - (t2 - t1) * marginal_exponent(model, Component::second, eta2));
  }
  return std::exp(-t2 * s - (t1 - t2) * marginal_exponent(model, Component::first, eta1));
}

double inverse_density_laplace(const BivariateModel& model, Region region, double x1, double x2,
                               double eta1, double eta2) {
  require_nonnegative(x1, "x1");
  require_nonnegative(x2, "x2");
  require_positive(eta1, "eta1");
  require_positive(eta2, "eta2");
  const double gap = dependence_gap(model, eta1, eta2);
  const double scale = 1.0 / (eta1 * eta2);
  switch (region) {
    case Region::x1_below_x2: {
      if (!(x1 < x2)) throw DomainError("region x1 < x2 requires x1 < x2");
      const double t1 = marginal_exponent(model, Component::first, eta1);
      const double t2 = marginal_exponent(model, Component::second, eta2);
      const double s_minus_t2 = t1 - gap;
      return scale * t2 * s_minus_t2 * std::exp(-x1 * s_minus_t2 - x2 * t2);
    }
    case Region::x1_above_x2: {
      if (!(x1 > x2)) throw DomainError("region x1 > x2 requires x1 > x2");
      const double t1 = marginal_exponent(model, Component::first, eta1);
      const double t2 = marginal_exponent(model, Component::second, eta2);
      const double s_minus_t1 = t2 - gap;
      return scale * t1 * s_minus_t1 * std::exp(-x2 * s_minus_t1 - x1 * t1);
    }
    case Region::diagonal:
      if (x1 != x2) throw DomainError("diagonal region requires x1 == x2");
      return scale * gap * std::exp(-x1 * joint_exponent(model, eta1, eta2));
  }
  throw DomainError("unknown region");
}

namespace {

struct Exponents {
  double t1;
  double t2;
  double s;
  double gap;
};

Exponents nonsingular_exponents(const BivariateModel& model, double eta1, double eta2) {
  require_positive(eta1, "eta1");
  require_positive(eta2, "eta2");
  Exponents e{marginal_exponent(model, Component::first, eta1),
              marginal_exponent(model, Component::second, eta2),
              joint_exponent(model, eta1, eta2), dependence_gap(model, eta1, eta2)};
  if (!(e.t1 > 0.0) || !(e.t2 > 0.0) || !(e.s > 0.0)) {
    throw SingularInputError("Laplace exponent vanishes at the requested argument");
  }
  return e;
}

}  // namespace

double covariance_laplace(const BivariateModel& model, double eta1, double eta2) {
  const Exponents e = nonsingular_exponents(model, eta1, eta2);
  return e.gap / (eta1 * eta2 * e.t1 * e.t2 * e.s);
}

double mixed_moment_laplace(const BivariateModel& model, double eta1, double eta2) {
  const Exponents e = nonsingular_exponents(model, eta1, eta2);
  return (e.t1 + e.t2) / (eta1 * eta2 * e.t1 * e.t2 * e.s);
}

double diagonal_mass_laplace(const BivariateModel& model, double eta1, double eta2) {
  const Exponents e = nonsingular_exponents(model, eta1, eta2);
  return e.gap / (eta1 * eta2 * e.s);
}

double inverse_joint_laplace(const BivariateModel& model, double xi1, double xi2, double eta1,
                             double eta2) {
  require_nonnegative(xi1, "xi1");
  require_nonnegative(xi2, "xi2");
  const Exponents e = nonsingular_exponents(model, eta1, eta2);
  const double d1 = xi1 + e.t1;
  const double d2 = xi2 + e.t2;
  const double base = eta1 * eta2 * d1 * d2;
  return e.t1 * e.t2 / base + xi1 * xi2 * e.gap / (base * (xi1 + xi2 + e.s));
}

double subdiffusion_char_laplace(const BivariateModel& model, double xi1, double xi2,
                                 double eta1, double eta2) {
  return inverse_joint_laplace(model, 0.5 * xi1 * xi1, 0.5 * xi2 * xi2, eta1, eta2);
}

double subdiffusion_char_laplace(Alpha alpha, const SpectralMeasure& m, double xi1, double xi2,
                                 double eta1, double eta2) {
  return subdiffusion_char_laplace(BivariateModel{SpectralStable::standard(alpha, m)}, xi1, xi2,
                                   eta1, eta2);
}

double survival_bound(const BivariateModel& model, double x1, double x2, double t1, double t2,
                      double eta1, double eta2) {
  require_nonnegative(x1, "x1");
  require_nonnegative(x2, "x2");
  require_nonnegative(t1, "t1");
  require_nonnegative(t2, "t2");
  const double s = joint_exponent(model, eta1, eta2);
  const double growth = eta1 * t1 + eta2 * t2;
  if (x2 >= x1) {
    return std::exp(-x1 * s - (x2 - x1) * marginal_exponent(model, Component::second, eta2) +
                    growth);
  }
  return std::exp(-x2 * s - (x1 - x2) * marginal_exponent(model, Component::first, eta1) +
                  growth);
}

std::optional<StableBernstein> stable_marginal(const BivariateModel& model, Component k) {
  return std::visit(
      Overloaded{
          [&](const SpectralStable& m) -> std::optional<StableBernstein> {
            return StableBernstein{m.alpha.value(), marginal_exponent(model, k, 1.0)};
          },
          [&](const IndependentStable& m) -> std::optional<StableBernstein> {
            return StableBernstein{m.alpha.value(), k == Component::first ? m.scale1 : m.scale2};
          },
          [&](const CommonFactor& m) -> std::optional<StableBernstein> {
            const StableBernstein& own = k == Component::first ? m.t1 : m.t2;
            const double c = k == Component::first ? m.c1 : m.c2;
            const bool common_live = m.g.scale > 0.0 && c > 0.0;
            if (!common_live) return own;
            const StableBernstein common{m.g.alpha, m.g.scale * std::pow(c, m.g.alpha)};
            if (own.scale == 0.0) return common;
            if (own.alpha != m.g.alpha) return std::nullopt;
            return StableBernstein{own.alpha, own.scale + common.scale};
          }},
      model);
}

}  // namespace anisub::analytic
