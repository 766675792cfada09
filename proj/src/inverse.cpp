// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <ostream>

#include "anisub/error.hpp"

namespace anisub::inverse {

namespace {

void require_level(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("inversion level must be >= 0");
}

void require_sorted_levels(const std::vector<double>& levels) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    require_level(levels[i]);
    if (i > 0 && levels[i] < levels[i - 1]) {
      throw DomainError("inversion levels must be nondecreasing");
    }
  }
}

}  // namespace

Crossing invert_path(const simulate::SubordinatorPath& path, Component k, double t) {
  require_level(t);
  const auto& h = k == Component::first ? path.h1 : path.h2;
  const auto it = std::upper_bound(h.begin(), h.end(), t);
  Crossing out;
  if (it == h.end()) return out;
  out.index = static_cast<std::uint64_t>(it - h.begin());
  out.value = static_cast<double>(out.index) * path.dx;
  out.truncated = false;
  return out;
}

PassageIndices first_passages(const simulate::CellStepper& stepper,
                              const std::vector<double>& levels1,
                              const std::vector<double>& levels2, Rng& rng,
                              std::uint64_t max_cells) {
  require_sorted_levels(levels1);
  require_sorted_levels(levels2);
  PassageIndices out;
  out.first.assign(levels1.size(), 0);
  out.second.assign(levels2.size(), 0);
  std::size_t next1 = 0;
  std::size_t next2 = 0;
  double h1 = 0.0;
  double h2 = 0.0;
  for (std::uint64_t k = 1; next1 < levels1.size() || next2 < levels2.size(); ++k) {
    if (k > max_cells) {
      out.truncated = true;
      break;
    }
    stepper.advance(rng, h1, h2);
    while (next1 < levels1.size() && h1 > levels1[next1]) out.first[next1++] = k;
    while (next2 < levels2.size() && h2 > levels2[next2]) out.second[next2++] = k;
  }
  return out;
}

InverseSample sample_inverse(const simulate::CellStepper& stepper, double t1, double t2, Rng& rng,
                             std::uint64_t max_cells) {
  require_level(t1);
  require_level(t2);
  const double dx = stepper.dx();
  InverseSample s;
  std::uint64_t i1 = 0;
  std::uint64_t i2 = 0;
  double h1 = 0.0;
  double h2 = 0.0;
  for (std::uint64_t k = 1; i1 == 0 || i2 == 0; ++k) {
    if (k > max_cells) {
      s.truncated = true;
      break;
    }
    stepper.advance(rng, h1, h2);
    if (i1 == 0 && h1 > t1) i1 = k;
    if (i2 == 0 && h2 > t2) i2 = k;
  }
  s.index1 = i1;
  s.index2 = i2;
  if (i1 != 0) s.l1 = static_cast<double>(i1) * dx;
  if (i2 != 0) s.l2 = static_cast<double>(i2) * dx;
  s.on_diagonal = !s.truncated && i1 == i2;
  return s;
}

InverseSample sample_inverse(const BivariateModel& model, double t1, double t2, double dx,
                             RngSpec spec, std::uint64_t max_cells) {
  const simulate::CellStepper stepper(model, dx);
  Rng rng(spec);
  return sample_inverse(stepper, t1, t2, rng, max_cells);
}

namespace {

struct MomentAcc {
  VectorMoments moments{3};  // L1, L2, L1 L2
  std::uint64_t diagonal = 0;
  std::uint64_t truncated = 0;

  void merge(const MomentAcc& o) {
    moments.merge(o.moments);
    diagonal += o.diagonal;
    truncated += o.truncated;
  }
};

}  // namespace

MomentEstimates estimate_moments(const BivariateModel& model, double t1, double t2, double dx,
                                 std::uint64_t n_reps, std::uint64_t seed, std::uint32_t tag,
                                 const ParallelOptions& opts, std::uint64_t max_cells) {
  if (n_reps < 2) throw DomainError("estimate_moments needs n_reps >= 2");
  const simulate::CellStepper stepper(model, dx);
  const auto acc = reduce_blocks<MomentAcc>(n_reps, opts, [&](std::uint64_t b, std::uint64_t e) {
    MomentAcc a;
    for (std::uint64_t r = b; r < e; ++r) {
      Rng rng(seed, stream_id(tag, r));
      const InverseSample s = sample_inverse(stepper, t1, t2, rng, max_cells);
      if (s.truncated) {
        ++a.truncated;
        continue;
      }
      if (s.on_diagonal) ++a.diagonal;
      a.moments.add({s.l1, s.l2, s.l1 * s.l2});
    }
    return a;
  });
  MomentEstimates out;
  out.dx = dx;
  out.diagonal = acc.diagonal;
  out.truncated = acc.truncated;
  const auto& m = acc.moments;
  const auto n = m.n();
  auto marginal = [&](std::size_t i) {
    MCEstimate e;
    e.n = n;
    e.mean = m.mean(i);
    e.m2 = n > 1 ? m.covariance(i, i) * static_cast<double>(n - 1) : 0.0;
    return e;
  };
  out.mean1 = marginal(0);
  out.mean2 = marginal(1);
  out.mixed = marginal(2);
  if (n > 1) {
    out.covariance = m.covariance(0, 1);
    // Delta method on E[XY] - E[X] E[Y].
    out.covariance_se = m.linear_se({-m.mean(1), -m.mean(0), 1.0});
  }
  return out;
}

void write_inverse_ndjson(std::ostream& os, const std::vector<InverseSample>& samples) {
  for (const auto& s : samples) {
    nlohmann::json j;
    j["l1"] = std::isfinite(s.l1) ? nlohmann::json(s.l1) : nlohmann::json(nullptr);
    j["l2"] = std::isfinite(s.l2) ? nlohmann::json(s.l2) : nlohmann::json(nullptr);
    j["on_diagonal"] = s.on_diagonal;
    j["truncated"] = s.truncated;
    os << j.dump() << '\n';
  }
}

}  // namespace anisub::inverse
