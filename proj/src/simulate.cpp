// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/simulate.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "anisub/error.hpp"
#include "anisub/io.hpp"

namespace anisub {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace anisub

namespace anisub::simulate {

double sample_unit_stable(double alpha, Rng& rng) {
  if (alpha == 1.0) return 1.0;
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  if (alpha == 0.5) {
    // sin^2(u/2) / (sin^2(u) e) simplified.
    const double c = std::cos(0.5 * u);
    return 1.0 / (4.0 * e * c * c);
  }
  const double inv = 1.0 / alpha;
  return std::sin(alpha * u) / std::pow(std::sin(u), inv) *
         std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) * inv);
}

double sample_stable(double alpha, double scale, double dt, Rng& rng) {
  if (!(dt > 0.0)) throw DomainError("stable increment requires dt > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("stable index must lie in (0, 1]");
  if (!(scale >= 0.0)) throw DomainError("stable scale must be >= 0");
  if (scale == 0.0) return 0.0;
  if (alpha == 1.0) return scale * dt;
  return std::pow(scale * dt, 1.0 / alpha) * sample_unit_stable(alpha, rng);
}

std::vector<StableFactor> stable_factors(const BivariateModel& model) {
  validate(model);
  std::vector<StableFactor> out;
  if (const auto* m = std::get_if<SpectralStable>(&model)) {
    for (const auto& atom : m->m.discretized()) {
      const Direction d = direction_of(atom.angle);
      out.push_back({m->alpha.value(), m->kappa * atom.weight, d.c, d.s});
    }
  } else if (const auto* m = std::get_if<IndependentStable>(&model)) {
    out.push_back({m->alpha.value(), m->scale1, 1.0, 0.0});
    out.push_back({m->alpha.value(), m->scale2, 0.0, 1.0});
  } else {
    const auto& cf = std::get<CommonFactor>(model);
    if (cf.t1.scale > 0.0) out.push_back({cf.t1.alpha, cf.t1.scale, 1.0, 0.0});
    if (cf.t2.scale > 0.0) out.push_back({cf.t2.alpha, cf.t2.scale, 0.0, 1.0});
    if (cf.g.scale > 0.0 && (cf.c1 > 0.0 || cf.c2 > 0.0)) {
      out.push_back({cf.g.alpha, cf.g.scale, cf.c1, cf.c2});
    }
  }
  return out;
}

IncrementSampler::IncrementSampler(const BivariateModel& model) : factors_(stable_factors(model)) {}

std::pair<double, double> IncrementSampler::operator()(double dt, Rng& rng) const {
  double d1 = 0.0;
  double d2 = 0.0;
  for (const auto& f : factors_) {
    const double z = sample_stable(f.alpha, f.scale, dt, rng);
    d1 += f.v1 * z;
    d2 += f.v2 * z;
  }
  return {d1, d2};
}

CellStepper::CellStepper(const BivariateModel& model, double dx) : dx_(dx) {
  if (!(dx > 0.0) || !std::isfinite(dx)) throw DomainError("grid step dx must be > 0");
  for (const auto& f : stable_factors(model)) {
    const double factor = f.alpha == 1.0 ? f.scale * dx : std::pow(f.scale * dx, 1.0 / f.alpha);
    factors_.push_back({f.alpha, factor, f.v1, f.v2});
  }
}

void CellStepper::advance(Rng& rng, double& h1, double& h2) const {
  for (const auto& f : factors_) {
    const double z = f.factor * sample_unit_stable(f.alpha, rng);
    h1 += f.v1 * z;
    h2 += f.v2 * z;
  }
}

SubordinatorPath sample_path(const BivariateModel& model, double x_max, double dx,
                             RngSpec spec) {
  if (!(dx > 0.0)) throw DomainError("grid step dx must be > 0");
  if (!(x_max >= dx)) throw DomainError("x_max must be >= dx");
  const CellStepper stepper(model, dx);
  const auto cells = static_cast<std::size_t>(std::ceil(x_max / dx - 1e-9));
  SubordinatorPath path;
  path.dx = dx;
  path.model_tag = model_kind(model);
  path.h1.reserve(cells + 1);
  path.h2.reserve(cells + 1);
  path.h1.push_back(0.0);
  path.h2.push_back(0.0);
  Rng rng(spec);
  double h1 = 0.0;
  double h2 = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    stepper.advance(rng, h1, h2);
    path.h1.push_back(h1);
    path.h2.push_back(h2);
  }
  return path;
}

void write_path_csv(std::ostream& os, const SubordinatorPath& path) {
  os << "x,h1,h2\n";
  for (std::size_t k = 0; k < path.h1.size(); ++k) {
    os << format_number(static_cast<double>(k) * path.dx) << ',' << format_number(path.h1[k])
       << ',' << format_number(path.h2[k]) << '\n';
  }
}

}  // namespace anisub::simulate
