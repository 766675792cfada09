// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "anisub/analytic.hpp"
#include "anisub/error.hpp"
#include "anisub/timechange.hpp"

using namespace anisub;
using namespace anisub::timechange;
using std::numbers::pi;

namespace {

BivariateModel atom_model() { return SpectralStable::standard(Alpha(0.5), SpectralMeasure::point(pi / 4)); }

BivariateModel mixed_model() {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(pi / 4, 1.0);
  return SpectralStable::standard(Alpha(0.5), m);
}

const BivariateModel kIndependent = IndependentStable{Alpha(0.5), 1.0, 1.0};

double binomial_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

CtmcSpec flip_chain() {
  CtmcSpec s;
  s.states1 = {"0", "1"};
  s.states2 = {"0", "1"};
  s.a = {{0.0, 1.0}, {1.0, 0.0}};
  s.b = {{0.0, 1.0}, {1.0, 0.0}};
  return s;
}

}  // namespace

TEST_CASE("phase names") {
  CHECK(std::string(phase_name(Phase::rest_x_moves_y)) == "rest-x-moves-y");
  CHECK(std::string(phase_name(Phase::rest_y_moves_x)) == "rest-y-moves-x");
  CHECK(std::string(phase_name(Phase::rest_both)) == "rest-both");
  CHECK(std::string(phase_name(Phase::moves_both)) == "moves-both");
}

TEST_CASE("trajectory phases match the inverse increments") {
  const simulate::CellStepper stepper(mixed_model(), 0.01);
  const std::vector<double> grid{0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 3.0};
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto traj = sample_subdiffusion(stepper, grid, RngSpec{9, s});
    REQUIRE_FALSE(traj.truncated);
    REQUIRE(traj.points.size() == grid.size());
    double p1 = 0.0;
    double p2 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto& pt = traj.points[k];
      CHECK(pt.t == grid[k]);
      REQUIRE(traj.l1[k] >= p1);
      REQUIRE(traj.l2[k] >= p2);
      const bool moved1 = traj.l1[k] != p1;
      const bool moved2 = traj.l2[k] != p2;
      const Phase expected = moved1 ? (moved2 ? Phase::moves_both : Phase::rest_y_moves_x)
                                    : (moved2 ? Phase::rest_x_moves_y : Phase::rest_both);
      CHECK(pt.phase == expected);
      if (!moved1) CHECK(pt.x1 == x1);
      if (!moved2) CHECK(pt.x2 == x2);
      p1 = traj.l1[k];
      p2 = traj.l2[k];
      x1 = pt.x1;
      x2 = pt.x2;
    }
  }
}

TEST_CASE("time grid validation") {
  const simulate::CellStepper stepper(mixed_model(), 0.01);
  CHECK_THROWS_AS(sample_subdiffusion(stepper, {}, RngSpec{1, 1}), DomainError);
  CHECK_THROWS_AS(sample_subdiffusion(stepper, {1.0, 0.5}, RngSpec{1, 1}), DomainError);
  CHECK_THROWS_AS(sample_subdiffusion(stepper, {-1.0}, RngSpec{1, 1}), DomainError);
}

TEST_CASE("trajectory CSV header") {
  const simulate::CellStepper stepper(mixed_model(), 0.01);
  std::ostringstream os;
  write_trajectory_csv(os, sample_subdiffusion(stepper, {1.0}, RngSpec{1, 1}));
  CHECK(os.str().rfind("t,x1,x2,phase\n", 0) == 0);
}

TEST_CASE("the pi/4 atom synchronizes rests and moves") {
  const auto msd = estimate_msd(atom_model(), {0.5, 1.0, 2.0}, 0.01, 2000, 3, 7);
  CHECK(msd.phase_counts[static_cast<int>(Phase::rest_x_moves_y)] == 0);
  CHECK(msd.phase_counts[static_cast<int>(Phase::rest_y_moves_x)] == 0);
  std::uint64_t total = 0;
  for (auto c : msd.phase_counts) total += c;
  CHECK(total == 2000 * 3);
}

TEST_CASE("mean-square displacement equals the mean inverse") {
  const std::vector<double> grid{0.5, 1.0, 2.0, 4.0};
  const auto msd = estimate_msd(kIndependent, grid, 0.002, 20000, 5, 8);
  CHECK(msd.truncated == 0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double target = std::sqrt(grid[k]) / std::tgamma(1.5);
    INFO("t=" << grid[k]);
    CHECK(std::abs(msd.mean1[k].mean) < 3 * msd.mean1[k].se());
    CHECK(std::abs(msd.msd1[k].mean - target) < 3 * msd.msd1[k].se() + 0.002);
    CHECK(std::abs(msd.msd2[k].mean - target) < 3 * msd.msd2[k].se() + 0.002);
  }
  CHECK(std::abs(msd.slope1 - 0.5) < 0.05);
  CHECK(std::abs(msd.slope2 - 0.5) < 0.05);
  // independent components rarely move in the same window
  CHECK(msd.phase_counts[static_cast<int>(Phase::rest_x_moves_y)] > 0);
}

TEST_CASE("msd estimate does not depend on the thread count") {
  const auto a = estimate_msd(mixed_model(), {1.0, 2.0}, 0.01, 5000, 5, 9, {1, 4096});
  const auto b = estimate_msd(mixed_model(), {1.0, 2.0}, 0.01, 5000, 5, 9, {3, 4096});
  CHECK(a.msd1[1].mean == b.msd1[1].mean);
  CHECK(a.slope2 == b.slope2);
  CHECK(a.phase_counts == b.phase_counts);
}

TEST_CASE("zero count probability is a Mittag-Leffler value") {
  const simulate::IncrementSampler sampler(kIndependent);
  const double n = 40000;
  double zeros1 = 0;
  double zeros2 = 0;
  for (std::uint64_t r = 0; r < n; ++r) {
    Rng rng(RngSpec{10, r});
    const auto c = sample_counts_exact(sampler, 1.0, 2.0, {1.0}, {1.0}, rng);
    zeros1 += c.first[0] == 0;
    zeros2 += c.second[0] == 0;
  }
  const double p1 = analytic::mittag_leffler(0.5, -1.0);
  const double p2 = analytic::mittag_leffler(0.5, -2.0);
  CHECK(p1 == doctest::Approx(0.4275836).epsilon(1e-6));
  CHECK(std::abs(zeros1 / n - p1) < 3 * binomial_se(p1, n));
  CHECK(std::abs(zeros2 / n - p2) < 3 * binomial_se(p2, n));
}

TEST_CASE("drift limit reduces counts to a Poisson process") {
  const simulate::IncrementSampler sampler(IndependentStable{Alpha(1.0), 1.0, 1.0});
  MCEstimate mean;
  double zeros = 0;
  const double n = 40000;
  for (std::uint64_t r = 0; r < n; ++r) {
    Rng rng(RngSpec{11, r});
    const auto c = sample_counts_exact(sampler, 1.5, 1.0, {2.0}, {1.0}, rng);
    mean.add(static_cast<double>(c.first[0]));
    zeros += c.second[0] == 0;
  }
  CHECK(std::abs(mean.mean - 3.0) < 3 * mean.se());
  CHECK(std::abs(zeros / n - std::exp(-1.0)) < 3 * binomial_se(std::exp(-1.0), n));
}

TEST_CASE("counts are nondecreasing in the level") {
  const simulate::IncrementSampler sampler(mixed_model());
  for (std::uint64_t r = 0; r < 500; ++r) {
    Rng rng(RngSpec{12, r});
    const auto c = sample_counts_exact(sampler, 2.0, 1.0, {0.0, 0.5, 1.0, 3.0}, {0.2, 4.0}, rng);
    REQUIRE(c.first.size() == 4);
    REQUIRE(c.second.size() == 2);
    CHECK(c.first[0] == 0);
    for (std::size_t j = 1; j < c.first.size(); ++j) CHECK(c.first[j] >= c.first[j - 1]);
    CHECK(c.second[1] >= c.second[0]);
  }
  Rng rng(RngSpec{12, 0});
  CHECK_THROWS_AS(sample_counts_exact(sampler, 1.0, 1.0, {1.0, 0.5}, {1.0}, rng), DomainError);
}

TEST_CASE("grid and exact count routes agree in mean") {
  const BivariateModel m = mixed_model();
  const simulate::IncrementSampler sampler(m);
  const simulate::CellStepper stepper(m, 0.002);
  MCEstimate exact;
  MCEstimate grid;
  for (std::uint64_t r = 0; r < 20000; ++r) {
    Rng a(RngSpec{13, r});
    exact.add(static_cast<double>(sample_counts_exact(sampler, 1.0, 1.0, {1.0}, {1.0}, a).first[0]));
    Rng b(RngSpec{14, r});
    grid.add(static_cast<double>(sample_counts_grid(stepper, 1.0, 1.0, {1.0}, {1.0}, b).first[0]));
  }
  const double se = std::hypot(exact.se(), grid.se());
  CHECK(std::abs(exact.mean - grid.mean) < 3 * se + 0.002);
}

TEST_CASE("first interarrival survival") {
  // P(H(W) > t) = E exp(-xi L(t)) = E_alpha(-xi t^alpha)
  const simulate::IncrementSampler sampler(kIndependent);
  const double n = 40000;
  double above = 0;
  for (std::uint64_t r = 0; r < n; ++r) {
    Rng rng(RngSpec{15, r});
    const auto [j1, j2] = sample_first_interarrivals(sampler, 1.0, 1.0, rng);
    REQUIRE(j1 >= 0.0);
    REQUIRE(j2 >= 0.0);
    above += j1 > 1.0;
  }
  const double p = analytic::mittag_leffler(0.5, -1.0);
  CHECK(std::abs(above / n - p) < 3 * binomial_se(p, n));
}

TEST_CASE("bifractional Poisson draws replay") {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(pi / 4, 1.0);
  const auto a = sample_bifrac_poisson(1.0, 2.0, Alpha(0.5), m, 1.0, 2.0, RngSpec{3, 4});
  const auto b = sample_bifrac_poisson(1.0, 2.0, Alpha(0.5), m, 1.0, 2.0, RngSpec{3, 4});
  CHECK(a == b);
}

TEST_CASE("CTMC spec validation names the field") {
  auto expect_field = [](CtmcSpec s, const std::string& field) {
    try {
      s.validate();
      FAIL("expected ConfigError for " << field);
    } catch (const ConfigError& e) {
      CHECK(e.field() == field);
    }
  };
  CHECK_NOTHROW(flip_chain().validate());
  auto s = flip_chain();
  s.a = {{0.5, 0.4}, {0.0, 1.0}};
  expect_field(s, "a");
  s = flip_chain();
  s.b = {{1.0}};
  expect_field(s, "b");
  s = flip_chain();
  s.a = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
  expect_field(s, "a");
  s = flip_chain();
  s.a = {{1.5, -0.5}, {0.0, 1.0}};
  expect_field(s, "a");
  s = flip_chain();
  s.states1.clear();
  expect_field(s, "states1");
  s = flip_chain();
  s.xi2 = 0.0;
  expect_field(s, "xi2");
}

TEST_CASE("embedded chain step frequencies") {
  const std::vector<std::vector<double>> p{{0.2, 0.8}, {0.0, 1.0}};
  Rng rng(RngSpec{16, 0});
  const double n = 50000;
  double zeros = 0;
  for (int i = 0; i < n; ++i) {
    zeros += ctmc_step(p, 0, rng) == 0;
    REQUIRE(ctmc_step(p, 1, rng) == 1);
  }
  CHECK(std::abs(zeros / n - 0.2) < 3 * binomial_se(0.2, n));
}

TEST_CASE("chains at time zero sit in their first state") {
  for (auto route : {CtmcRoute::interarrival, CtmcRoute::inverse}) {
    const auto s = sample_ctmc_timechanged(flip_chain(), mixed_model(), 0.0, 0.0, 0.01, RngSpec{1, 2}, route);
    CHECK(s.s1 == 0);
    CHECK(s.s2 == 0);
    CHECK(s.jumps1 == 0);
    CHECK(s.jumps2 == 0);
  }
  CHECK_THROWS_AS(sample_ctmc_timechanged(flip_chain(), mixed_model(), -1.0, 0.0, 0.01, RngSpec{1, 2}),
                  DomainError);
}

TEST_CASE("absorbing chain leaves its start with Mittag-Leffler probability") {
  CtmcSpec s = flip_chain();
  s.a = {{0.0, 1.0}, {0.0, 1.0}};
  s.b = {{1.0, 0.0}, {0.0, 1.0}};
  const double n = 20000;
  const double p = 1.0 - analytic::mittag_leffler(0.5, -1.0);
  for (auto route : {CtmcRoute::interarrival, CtmcRoute::inverse}) {
    double left = 0;
    for (std::uint64_t r = 0; r < n; ++r) {
      const auto st = sample_ctmc_timechanged(s, kIndependent, 1.0, 5.0, 0.002, RngSpec{17, r}, route);
      left += st.s1 == 1;
      REQUIRE(st.s2 == 0);
    }
    CHECK(std::abs(left / n - p) < 3 * binomial_se(p, n) + 0.002);
  }
}
