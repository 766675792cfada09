// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anisub/error.hpp"
#include "anisub/model.hpp"

using namespace anisub;
using std::numbers::pi;

TEST_CASE("alpha range") {
  CHECK_NOTHROW(Alpha(0.5));
  CHECK_NOTHROW(Alpha(1.0));
  CHECK_THROWS_AS(Alpha(0.0), DomainError);
  CHECK_THROWS_AS(Alpha(1.5), DomainError);
  CHECK_THROWS_AS(Alpha(std::nan("")), DomainError);
  CHECK(Alpha(1.0).is_drift_limit());
}

TEST_CASE("directions snap at the axes and the diagonal") {
  CHECK(direction_of(0.0).s == 0.0);
  CHECK(direction_of(0.0).c == 1.0);
  CHECK(direction_of(pi / 2).c == 0.0);
  CHECK(direction_of(pi / 2).s == 1.0);
  const Direction d = direction_of(pi / 4);
  CHECK(d.c == d.s);
  CHECK(d.interior());
  CHECK(direction_of(0.3).c == doctest::Approx(std::cos(0.3)));
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const auto rule = gauss_legendre(8, 0.0, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 15);
  CHECK(s == doctest::Approx(std::pow(2.0, 16) / 16).epsilon(1e-12));
  const auto& def = default_angular_rule();
  double w = 0.0;
  for (double x : def.weights) w += x;
  CHECK(w == doctest::Approx(pi / 2).epsilon(1e-14));
}

TEST_CASE("spectral measure invariants") {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(pi / 4, 1.0);
  CHECK(m.total_mass() == doctest::Approx(1.5));
  CHECK(m.normalized().total_mass() == doctest::Approx(1.0));
  const auto s = m.swapped();
  CHECK(s.atoms()[0].angle == doctest::Approx(pi / 2));
  CHECK_NOTHROW(m.validate());

  SpectralMeasure bad;
  bad.add_atom(2.0, 1.0);
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  SpectralMeasure negative;
  negative.add_atom(0.1, -1.0);
  CHECK_THROWS_AS(negative.validate(), ConfigError);
  CHECK_THROWS_AS(SpectralMeasure().validate(), ConfigError);
}

TEST_CASE("density measures discretize on their quadrature rule") {
  SpectralMeasure m;
  m.set_density([](double) { return 2.0 / pi; });
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m.discretized().size() == default_angular_rule().nodes.size());

  TabulatedDensity mismatched;
  mismatched.rule = gauss_legendre(4, 0.0, pi / 2);
  mismatched.values = {1.0, 1.0};
  SpectralMeasure d;
  d.set_density(mismatched);
  try {
    d.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "density_values");
  }
}

TEST_CASE("intensity and kappa parameterizations") {
  const auto s = SpectralStable::with_intensity(Alpha(0.5), 1.0, SpectralMeasure::point(pi / 4));
  CHECK(s.kappa == doctest::Approx(std::tgamma(0.5)));
  CHECK(s.intensity() == doctest::Approx(1.0));
  CHECK(SpectralStable::standard(Alpha(0.3), SpectralMeasure::point(0.2)).kappa == 1.0);
  CHECK_THROWS_AS(SpectralStable::with_intensity(Alpha(1.0), 1.0, SpectralMeasure::point(0.0)),
                  DomainError);
}

TEST_CASE("model validation names the field") {
  auto field_of = [](const BivariateModel& m) {
    try {
      validate(m);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string();
  };
  CHECK(field_of(IndependentStable{Alpha(0.5), 0.0, 1.0}) == "scale1");
  CHECK(field_of(IndependentStable{Alpha(0.5), 1.0, -1.0}) == "scale2");
  CommonFactor cf;
  cf.c1 = -1.0;
  CHECK(field_of(cf) == "c1");
  CommonFactor dead;
  dead.t1.scale = 0.0;
  dead.c1 = 0.0;
  CHECK(field_of(dead) == "t1_scale");
  CHECK(field_of(CommonFactor{}).empty());
  CHECK(model_kind(CommonFactor{}) == "common-factor");
  CHECK(model_kind(IndependentStable{Alpha(0.5)}) == "independent-stable");
}

TEST_CASE("stable Bernstein function and its tail") {
  StableBernstein b{0.5, 2.0};
  CHECK(b(4.0) == doctest::Approx(4.0));
  CHECK(b(0.0) == 0.0);
  CHECK(b.levy_tail(1.0) == doctest::Approx(2.0 / std::tgamma(0.5)));
  CHECK_THROWS_AS(b(-1.0), DomainError);
}
