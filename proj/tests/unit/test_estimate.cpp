// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "anisub/estimate.hpp"
#include "anisub/rng.hpp"

using anisub::MCEstimate;
using anisub::ParallelOptions;
using anisub::VectorMoments;

namespace {

std::vector<double> draws(std::size_t n) {
  anisub::Rng rng(anisub::RngSpec{9, 1});
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.exponential() * 3.0 + 1.0;
  return xs;
}

}  // namespace

TEST_CASE("MCEstimate matches two-pass formulas") {
  const auto xs = draws(1000);
  MCEstimate m;
  double sum = 0.0;
  for (double x : xs) {
    m.add(x);
    sum += x;
  }
  const double mean = sum / 1000.0;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  CHECK(m.n == 1000);
  CHECK(m.mean == doctest::Approx(mean).epsilon(1e-13));
  CHECK(m.variance() == doctest::Approx(ss / 999.0).epsilon(1e-12));
  CHECK(m.se() == doctest::Approx(std::sqrt(ss / 999.0 / 1000.0)).epsilon(1e-12));
}

TEST_CASE("merging any split reproduces the pooled estimate") {
  const auto xs = draws(5000);
  MCEstimate pooled;
  for (double x : xs) pooled.add(x);
  for (std::size_t parts : {2u, 3u, 7u, 64u}) {
    std::vector<MCEstimate> pieces(parts);
    for (std::size_t i = 0; i < xs.size(); ++i) pieces[i * parts / xs.size()].add(xs[i]);
    MCEstimate merged;
    for (const auto& p : pieces) merged.merge(p);
    CHECK(merged.n == pooled.n);
    CHECK(std::abs(merged.mean - pooled.mean) <= 1e-12 * std::abs(pooled.mean));
    CHECK(std::abs(merged.m2 - pooled.m2) <= 1e-10 * pooled.m2);
  }
  MCEstimate empty;
  MCEstimate copy = pooled;
  copy.merge(empty);
  CHECK(copy.mean == pooled.mean);
  empty.merge(pooled);
  CHECK(empty.mean == pooled.mean);
}

TEST_CASE("VectorMoments covariance and merge") {
  anisub::Rng rng(anisub::RngSpec{5, 5});
  VectorMoments all(2);
  VectorMoments a(2);
  VectorMoments b(2);
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < 4000; ++i) {
    const double z = rng.normal();
    const double w = 0.5 * z + rng.normal();
    pts.push_back({z, w});
    all.add({z, w});
    (i < 1300 ? a : b).add({z, w});
  }
  double mz = 0, mw = 0;
  for (auto& p : pts) {
    mz += p[0];
    mw += p[1];
  }
  mz /= 4000;
  mw /= 4000;
  double c = 0;
  for (auto& p : pts) c += (p[0] - mz) * (p[1] - mw);
  CHECK(all.covariance(0, 1) == doctest::Approx(c / 3999).epsilon(1e-12));
  a.merge(b);
  CHECK(a.n() == all.n());
  CHECK(a.mean(1) == doctest::Approx(all.mean(1)).epsilon(1e-12));
  CHECK(a.covariance(0, 1) == doctest::Approx(all.covariance(0, 1)).epsilon(1e-12));
  // se of a single mean through the delta-method helper
  MCEstimate z;
  for (auto& p : pts) z.add(p[0]);
  CHECK(all.linear_se({1.0, 0.0}) == doctest::Approx(z.se()).epsilon(1e-10));
}

TEST_CASE("reduce_blocks is independent of the thread count") {
  auto fn = [](std::uint64_t begin, std::uint64_t end) {
    MCEstimate e;
    for (std::uint64_t r = begin; r < end; ++r) {
      anisub::Rng rng(anisub::RngSpec{11, r});
      e.add(rng.exponential());
    }
    return e;
  };
  const auto one = anisub::reduce_blocks<MCEstimate>(50000, ParallelOptions{1, 4096}, fn);
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = anisub::reduce_blocks<MCEstimate>(50000, ParallelOptions{threads, 4096}, fn);
    CHECK(many.n == one.n);
    CHECK(many.mean == one.mean);  // bitwise: fixed block order
    CHECK(many.m2 == one.m2);
  }
  // different block sizes only reassociate the sum
  const auto other = anisub::reduce_blocks<MCEstimate>(50000, ParallelOptions{4, 1000}, fn);
  CHECK(std::abs(other.mean - one.mean) <= 1e-12 * one.mean);
}

TEST_CASE("reduce_blocks rethrows worker errors") {
  auto fn = [](std::uint64_t begin, std::uint64_t) -> MCEstimate {
    if (begin >= 8192) throw std::runtime_error("boom");
    return {};
  };
  CHECK_THROWS_AS(anisub::reduce_blocks<MCEstimate>(20000, ParallelOptions{3, 4096}, fn),
                  std::runtime_error);
  const auto empty = anisub::reduce_blocks<MCEstimate>(0, ParallelOptions{4, 4096}, fn);
  CHECK(empty.n == 0);
}
