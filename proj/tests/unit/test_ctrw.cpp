// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "anisub/analytic.hpp"
#include "anisub/ctrw.hpp"
#include "anisub/error.hpp"

using namespace anisub;
using namespace anisub::ctrw;
using std::numbers::pi;

namespace {

SpectralMeasure mixed() {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(pi / 4, 1.0);
  return m;
}

}  // namespace

TEST_CASE("KS distance examples") {
  CHECK(ks_distance({1, 2, 3}, {3, 2, 1}) == 0.0);
  CHECK(ks_distance({1, 2}, {3, 4}) == 1.0);
  CHECK(ks_distance({1, 2, 3, 4}, {3, 4, 5, 6}) == doctest::Approx(0.5));
  CHECK(ks_distance({0.0}, {0.0, 1.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ks_distance({}, {1.0}), DomainError);
}

TEST_CASE("KS distance is symmetric and bounded") {
  Rng rng(RngSpec{1, 1});
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> a(50);
    std::vector<double> b(70);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal() + 0.3;
    const double d = ks_distance(a, b);
    CHECK(d == ks_distance(b, a));
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("KS critical value") {
  const double c = std::sqrt(-std::log(0.005) / 2.0);
  CHECK(ks_critical(100, 100) == doctest::Approx(c * std::sqrt(0.02)));
  CHECK(ks_critical(10000, 10000) == doctest::Approx(0.0230184).epsilon(1e-5));
  CHECK(ks_critical(100, 100, 0.05) < ks_critical(100, 100, 0.01));
  CHECK_THROWS_AS(ks_critical(0, 10), DomainError);
  CHECK_THROWS_AS(ks_critical(10, 10, 1.5), DomainError);
}

TEST_CASE("walk needs a proper stable index") {
  CHECK_THROWS_AS(CtrwSpec(Alpha(1.0), mixed()), DomainError);
}

TEST_CASE("interarrival radii have a Pareto tail") {
  const CtrwSpec spec(Alpha(0.5), mixed());
  Rng rng(RngSpec{2, 1});
  const double n = 50000;
  double above = 0;
  for (int i = 0; i < n; ++i) {
    double j1 = 0;
    double j2 = 0;
    spec.interarrival(rng, j1, j2);
    REQUIRE(j1 >= 0.0);
    REQUIRE(j2 >= 0.0);
    const double r = std::hypot(j1, j2);
    REQUIRE(r >= 1.0 - 1e-12);
    above += r > 4.0;
  }
  const double p = 0.5;  // 4^(-1/2)
  CHECK(std::abs(above / n - p) < 3 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("single atom interarrivals lie on its ray") {
  const CtrwSpec spec(Alpha(0.6), SpectralMeasure::point(pi / 4));
  Rng rng(RngSpec{3, 1});
  for (int i = 0; i < 100; ++i) {
    double j1 = 0;
    double j2 = 0;
    spec.interarrival(rng, j1, j2);
    CHECK(j1 == doctest::Approx(j2).epsilon(1e-14));
  }
}

TEST_CASE("limit model has unit intensity and a probability measure") {
  const CtrwSpec spec(Alpha(0.5), SpectralMeasure::point(0.0).add_atom(pi / 2, 3.0));
  CHECK(spec.measure().total_mass() == doctest::Approx(1.0));
  const auto limit = spec.limit_model();
  const auto& s = std::get<SpectralStable>(limit);
  CHECK(s.intensity() == doctest::Approx(1.0));
  // first axis carries a quarter of the mass
  CHECK(analytic::marginal_exponent(limit, Component::first, 1.0) ==
        doctest::Approx(0.25 * std::tgamma(0.5)));
}

TEST_CASE("walk draws scale and count") {
  const CtrwSpec spec(Alpha(0.5), mixed());
  Rng rng(RngSpec{4, 1});
  CHECK_THROWS_AS(sample_ctrw(spec, 0.5, 1.0, rng), DomainError);
  CHECK_THROWS_AS(sample_ctrw(spec, 10.0, 0.0, rng), DomainError);
  MCEstimate small;
  MCEstimate large;
  for (std::uint64_t r = 0; r < 2000; ++r) {
    Rng a(RngSpec{5, r});
    small.add(static_cast<double>(sample_ctrw(spec, 10.0, 1.0, a).n1));
    Rng b(RngSpec{6, r});
    large.add(static_cast<double>(sample_ctrw(spec, 1000.0, 1.0, b).n1));
  }
  CHECK(large.mean > small.mean);
}

TEST_CASE("sweep validation and shape") {
  const CtrwSpec spec(Alpha(0.5), mixed());
  SweepExperiment e;
  e.c_values = {10.0, 100.0};
  e.n_reps = 500;
  CHECK_THROWS_AS(convergence_sweep(spec, e, 1), ConfigError);
  e.n_reps = 1000;
  e.n_ref = 1000;
  e.dx = 0.01;
  e.c_values = {100.0, 10.0};
  CHECK_THROWS_AS(convergence_sweep(spec, e, 1), ConfigError);
  e.c_values = {10.0, 100.0};
  const auto report = convergence_sweep(spec, e, 1);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.critical == doctest::Approx(ks_critical(1000, 1000)));
  for (const auto& row : report.rows) {
    CHECK(row.ks_pos1 >= 0.0);
    CHECK(row.ks_pos1 <= 1.0);
    CHECK(row.ks_cnt2 <= 1.0);
  }
  CHECK(report.inversions >= 0);
  CHECK(report.inversions <= 1);
  std::ostringstream os;
  write_sweep_csv(os, report);
  CHECK(os.str().rfind("c,ks_pos1,ks_pos2,ks_cnt1,ks_cnt2,noise_floor\n", 0) == 0);
}

TEST_CASE("no renewal before the shortest interarrival") {
  const CtrwSpec spec(Alpha(0.5), SpectralMeasure::point(pi / 4));
  Rng rng(RngSpec{7, 1});
  for (int i = 0; i < 100; ++i) {
    const auto d = sample_ctrw(spec, 1.0, 0.5, rng);
    CHECK(d.n1 == 0);
    CHECK(d.n2 == 0);
    CHECK(d.s1 == 0.0);
    CHECK(d.s2 == 0.0);
  }
}

TEST_CASE("the pi/4 atom renews both components together") {
  const CtrwSpec spec(Alpha(0.5), SpectralMeasure::point(pi / 4));
  for (std::uint64_t r = 0; r < 500; ++r) {
    Rng rng(RngSpec{8, r});
    const auto d = sample_ctrw(spec, 100.0, 1.0, rng);
    CHECK(d.n1 == d.n2);
  }
}
