// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "anisub/inverse.hpp"

using namespace anisub;
using std::numbers::pi;

namespace {

BivariateModel atom_model() { return SpectralStable::standard(Alpha(0.5), SpectralMeasure::point(pi / 4)); }

BivariateModel mixed_model() {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(pi / 4, 1.0);
  return SpectralStable::standard(Alpha(0.5), m);
}

simulate::SubordinatorPath staircase(double dx, std::size_t cells) {
  simulate::SubordinatorPath p;
  p.dx = dx;
  for (std::size_t k = 0; k <= cells; ++k) {
    p.h1.push_back(static_cast<double>(k) * dx);
    p.h2.push_back(2.0 * static_cast<double>(k) * dx);
  }
  return p;
}

}  // namespace

TEST_CASE("right-continuous inverse of a staircase path") {
  const auto p = staircase(0.1, 20);
  const auto c = inverse::invert_path(p, Component::first, 0.5);
  CHECK_FALSE(c.truncated);
  CHECK(c.index == 6);
  CHECK(c.value == doctest::Approx(0.6));
  const auto zero = inverse::invert_path(p, Component::first, 0.0);
  CHECK(zero.index == 1);
  CHECK(zero.value == doctest::Approx(0.1));
  const auto second = inverse::invert_path(p, Component::second, 0.5);
  CHECK(second.index == 3);
  const auto beyond = inverse::invert_path(p, Component::first, 5.0);
  CHECK(beyond.truncated);
  CHECK(std::isnan(beyond.value));
}

TEST_CASE("grid duality holds exactly on every path") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto p = simulate::sample_path(mixed_model(), 20.0, 0.05, RngSpec{2, s});
    for (double t : {0.3, 1.0, 2.5}) {
      const auto c = inverse::invert_path(p, Component::first, t);
      if (c.truncated) continue;
      for (std::size_t k = 0; k <= p.cells(); ++k) {
        // L(t) > x_k  iff  H(x_k) <= t
        REQUIRE((c.index > k) == (p.h1[k] <= t));
      }
    }
  }
}

TEST_CASE("inverse is nondecreasing in t") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto p = simulate::sample_path(mixed_model(), 30.0, 0.01, RngSpec{3, s});
    std::uint64_t prev = 0;
    for (double t = 0.0; t < 2.0; t += 0.05) {
      const auto c = inverse::invert_path(p, Component::second, t);
      if (c.truncated) break;
      REQUIRE(c.index >= prev);
      prev = c.index;
    }
  }
}

TEST_CASE("streaming first passages agree with the stored path") {
  const simulate::CellStepper stepper(mixed_model(), 0.01);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng a(RngSpec{4, s});
    const auto idx = inverse::first_passages(stepper, {0.2, 0.9}, {0.5}, a);
    REQUIRE_FALSE(idx.truncated);
    const auto path = simulate::sample_path(mixed_model(), 0.01 * static_cast<double>(idx.first[1] + idx.second[0] + 5), 0.01, RngSpec{4, s});
    CHECK(inverse::invert_path(path, Component::first, 0.2).index == idx.first[0]);
    CHECK(inverse::invert_path(path, Component::first, 0.9).index == idx.first[1]);
    CHECK(inverse::invert_path(path, Component::second, 0.5).index == idx.second[0]);
  }
}

TEST_CASE("identical components always pass together") {
  for (std::uint64_t r = 0; r < 2000; ++r) {
    const auto s = inverse::sample_inverse(atom_model(), 1.0, 1.0, 0.01, RngSpec{5, r});
    REQUIRE(s.on_diagonal);
    REQUIRE(s.l1 == s.l2);
  }
}

TEST_CASE("grid values are multiples of dx") {
  for (std::uint64_t r = 0; r < 200; ++r) {
    const auto s = inverse::sample_inverse(mixed_model(), 0.7, 1.3, 0.004, RngSpec{6, r});
    REQUIRE(s.index1 >= 1);
    CHECK(s.l1 == doctest::Approx(static_cast<double>(s.index1) * 0.004));
    CHECK(s.l2 == doctest::Approx(static_cast<double>(s.index2) * 0.004));
    CHECK(s.on_diagonal == (s.index1 == s.index2));
  }
}

TEST_CASE("cell budget marks truncation") {
  const auto s = inverse::sample_inverse(mixed_model(), 100.0, 100.0, 0.01, RngSpec{7, 1}, 10);
  CHECK(s.truncated);
  CHECK(std::isnan(s.l1));
}

TEST_CASE("moments: marginal mean and independent covariance") {
  // E L(t) = t^alpha / Gamma(1 + alpha) for T(eta) = eta^alpha.
  const BivariateModel ind = IndependentStable{Alpha(0.5), 1.0, 1.0};
  const auto est = inverse::estimate_moments(ind, 1.0, 2.0, 0.002, 20000, 11, 1);
  CHECK(est.truncated == 0);
  const double target1 = 1.0 / std::tgamma(1.5);
  const double target2 = std::sqrt(2.0) / std::tgamma(1.5);
  // grid values overshoot by dx/2 on average
  CHECK(std::abs(est.mean1.mean - 0.001 - target1) < 3 * est.mean1.se());
  CHECK(std::abs(est.mean2.mean - 0.001 - target2) < 3 * est.mean2.se());
  CHECK(std::abs(est.covariance) < 3 * est.covariance_se);
  CHECK(target1 == doctest::Approx(1.128379).epsilon(1e-6));
}

TEST_CASE("moment estimates do not depend on the thread count") {
  const auto one = inverse::estimate_moments(mixed_model(), 1.0, 1.0, 0.01, 9000, 3, 2, {1, 4096});
  const auto four = inverse::estimate_moments(mixed_model(), 1.0, 1.0, 0.01, 9000, 3, 2, {4, 4096});
  CHECK(one.mean1.mean == four.mean1.mean);
  CHECK(one.mixed.mean == four.mixed.mean);
  CHECK(one.covariance == four.covariance);
  CHECK(one.diagonal == four.diagonal);
  CHECK(one.diagonal > 0);
  CHECK(one.diagonal < 9000);
}

TEST_CASE("inverse NDJSON uses null for missing values") {
  inverse::InverseSample s;
  s.truncated = true;
  std::ostringstream os;
  inverse::write_inverse_ndjson(os, {s});
  CHECK(os.str().find("null") != std::string::npos);
  CHECK(os.str().find("\"truncated\":true") != std::string::npos);
}
