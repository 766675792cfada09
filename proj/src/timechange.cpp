// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/timechange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "anisub/error.hpp"
#include "anisub/io.hpp"

namespace anisub::timechange {

namespace {

constexpr std::uint64_t kBrownianStreamBit = std::uint64_t{1} << 63;

void require_time_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw DomainError("time grid must be nonempty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) {
      throw DomainError("time grid entries must be finite and >= 0");
    }
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw DomainError("time grid must be strictly increasing");
    }
  }
}

void require_rate(double xi, const char* name) {
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw DomainError(std::string(name) + " must be finite and > 0");
  }
}

Phase classify(bool moved1, bool moved2) {
  if (moved1 && moved2) return Phase::moves_both;
  if (moved1) return Phase::rest_y_moves_x;
  if (moved2) return Phase::rest_x_moves_y;
  return Phase::rest_both;
}

// Number of exponential(xi) arrivals in [0, length].
std::uint64_t poisson_arrivals(double xi, double length, Rng& rng) {
  std::uint64_t n = 0;
  double clock = rng.exponential() / xi;
  while (clock <= length) {
    ++n;
    clock += rng.exponential() / xi;
  }
  return n;
}

// Adds one to every counter whose level is >= h.
void count_event(double h, const std::vector<double>& levels, std::vector<std::uint64_t>& counts) {
  const auto first = std::lower_bound(levels.begin(), levels.end(), h);
  for (auto it = first; it != levels.end(); ++it) ++counts[static_cast<std::size_t>(it - levels.begin())];
}

}  // namespace

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::rest_x_moves_y:
      return "rest-x-moves-y";
    case Phase::rest_y_moves_x:
      return "rest-y-moves-x";
    case Phase::rest_both:
      return "rest-both";
    case Phase::moves_both:
      return "moves-both";
  }
  return "rest-both";
}

Trajectory sample_subdiffusion(const simulate::CellStepper& stepper,
                               const std::vector<double>& t_grid, RngSpec spec,
                               std::uint64_t max_cells) {
  require_time_grid(t_grid);
  std::vector<double> levels;
  levels.reserve(t_grid.size() + 1);
  levels.push_back(0.0);
  levels.insert(levels.end(), t_grid.begin(), t_grid.end());

  Rng path_rng(spec);
  const auto passage = inverse::first_passages(stepper, levels, levels, path_rng, max_cells);
  Trajectory traj;
  traj.truncated = passage.truncated;
  if (passage.truncated) return traj;

  Rng bm_rng(spec.seed, spec.stream ^ kBrownianStreamBit);
  const double dx = stepper.dx();
  double x1 = 0.0;
  double x2 = 0.0;
  double prev_l1 = 0.0;
  double prev_l2 = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double l1 = static_cast<double>(passage.first[k + 1]) * dx;
    const double l2 = static_cast<double>(passage.second[k + 1]) * dx;
    x1 += std::sqrt(l1 - prev_l1) * bm_rng.normal();
    x2 += std::sqrt(l2 - prev_l2) * bm_rng.normal();
    prev_l1 = l1;
    prev_l2 = l2;
    const bool moved1 = passage.first[k + 1] != passage.first[k];
    const bool moved2 = passage.second[k + 1] != passage.second[k];
    traj.points.push_back({t_grid[k], x1, x2, classify(moved1, moved2)});
    traj.l1.push_back(l1);
    traj.l2.push_back(l2);
  }
  return traj;
}

Trajectory sample_subdiffusion(Alpha alpha, const SpectralMeasure& m,
                               const std::vector<double>& t_grid, double dx, RngSpec spec,
                               std::uint64_t max_cells) {
  const simulate::CellStepper stepper(BivariateModel{SpectralStable::standard(alpha, m)}, dx);
  return sample_subdiffusion(stepper, t_grid, spec, max_cells);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,x1,x2,phase\n";
  for (const auto& p : traj.points) {
    os << format_number(p.t) << ',' << format_number(p.x1) << ',' << format_number(p.x2) << ','
       << phase_name(p.phase) << '\n';
  }
}

namespace {

struct MsdAcc {
  VectorMoments moments;
  std::array<std::uint64_t, 4> phases{};
  std::uint64_t truncated = 0;

  void merge(const MsdAcc& o) {
    moments.merge(o.moments);
    for (std::size_t i = 0; i < phases.size(); ++i) phases[i] += o.phases[i];
    truncated += o.truncated;
  }
};

// Least-squares slope of y on u with weights w_k = (u_k - mean u) / Sxx.
std::vector<double> slope_weights(const std::vector<double>& u) {
  double mean = 0.0;
  for (double v : u) mean += v;
  mean /= static_cast<double>(u.size());
  double sxx = 0.0;
  for (double v : u) sxx += (v - mean) * (v - mean);
  std::vector<double> w;
  for (double v : u) w.push_back(sxx > 0.0 ? (v - mean) / sxx : 0.0);
  return w;
}

}  // namespace

MsdSummary estimate_msd(const BivariateModel& model, const std::vector<double>& t_grid, double dx,
                        std::uint64_t n_reps, std::uint64_t seed, std::uint32_t tag,
                        const ParallelOptions& opts, std::uint64_t max_cells) {
  require_time_grid(t_grid);
  if (n_reps < 2) throw DomainError("estimate_msd needs n_reps >= 2");
  const simulate::CellStepper stepper(model, dx);
  const std::size_t k = t_grid.size();
  // Layout: x1 (k), x1^2 (k), x2^2 (k).
  const auto acc = reduce_blocks<MsdAcc>(n_reps, opts, [&](std::uint64_t b, std::uint64_t e) {
    MsdAcc a;
    a.moments = VectorMoments(3 * k);
    std::vector<double> row(3 * k);
    for (std::uint64_t r = b; r < e; ++r) {
      const auto traj = sample_subdiffusion(stepper, t_grid, {seed, stream_id(tag, r)}, max_cells);
      if (traj.truncated) {
        ++a.truncated;
        continue;
      }
      for (std::size_t j = 0; j < k; ++j) {
        row[j] = traj.points[j].x1;
        row[k + j] = traj.points[j].x1 * traj.points[j].x1;
        row[2 * k + j] = traj.points[j].x2 * traj.points[j].x2;
        ++a.phases[static_cast<std::size_t>(traj.points[j].phase)];
      }
      a.moments.add(row.data());
    }
    return a;
  });
  MsdSummary out;
  out.t = t_grid;
  out.truncated = acc.truncated;
  out.phase_counts = acc.phases;
  const auto& m = acc.moments;
  const std::uint64_t n = m.n();
  auto estimate = [&](std::size_t i) {
    MCEstimate e;
    e.n = n;
    e.mean = m.mean(i);
    e.m2 = n > 1 ? m.covariance(i, i) * static_cast<double>(n - 1) : 0.0;
    return e;
  };
  for (std::size_t j = 0; j < k; ++j) {
    out.mean1.push_back(estimate(j));
    out.msd1.push_back(estimate(k + j));
    out.msd2.push_back(estimate(2 * k + j));
  }
  if (k >= 2 && n >= 2) {
    std::vector<double> u;
    for (double t : t_grid) u.push_back(std::log(t));
    const auto w = slope_weights(u);
    auto slope = [&](std::size_t offset, double& value, double& se) {
      std::vector<double> grad(3 * k, 0.0);
      value = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const double msd = m.mean(offset + j);
        value += w[j] * std::log(msd);
        grad[offset + j] = w[j] / msd;
      }
      se = m.linear_se(grad);
    };
    slope(k, out.slope1, out.slope1_se);
    slope(2 * k, out.slope2, out.slope2_se);
  }
  return out;
}

Counts sample_counts_exact(const simulate::IncrementSampler& sampler, double xi1, double xi2,
                           const std::vector<double>& levels1, const std::vector<double>& levels2,
                           Rng& rng, std::uint64_t max_events) {
  require_rate(xi1, "xi1");
  require_rate(xi2, "xi2");
  for (const auto* levels : {&levels1, &levels2}) {
    for (std::size_t i = 0; i < levels->size(); ++i) {
      if (!((*levels)[i] >= 0.0) || (i > 0 && (*levels)[i] < (*levels)[i - 1])) {
        throw DomainError("count levels must be >= 0 and nondecreasing");
      }
    }
  }
  constexpr double kNever = std::numeric_limits<double>::infinity();
  Counts out{std::vector<std::uint64_t>(levels1.size(), 0),
             std::vector<std::uint64_t>(levels2.size(), 0)};
  const double top1 = levels1.empty() ? -1.0 : levels1.back();
  const double top2 = levels2.empty() ? -1.0 : levels2.back();
  double x = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double next1 = levels1.empty() ? kNever : rng.exponential() / xi1;
  double next2 = levels2.empty() ? kNever : rng.exponential() / xi2;
  for (std::uint64_t events = 0; next1 < kNever || next2 < kNever; ++events) {
    if (events >= max_events) throw TruncationError("event budget exhausted before both levels");
    const bool first = next1 <= next2;
    const double tau = first ? next1 : next2;
    if (tau > x) {
      const auto [d1, d2] = sampler(tau - x, rng);
      h1 += d1;
      h2 += d2;
      x = tau;
    }
    if (first) {
      count_event(h1, levels1, out.first);
      next1 = h1 > top1 ? kNever : x + rng.exponential() / xi1;
    } else {
      count_event(h2, levels2, out.second);
      next2 = h2 > top2 ? kNever : x + rng.exponential() / xi2;
    }
  }
  return out;
}

Counts sample_counts_grid(const simulate::CellStepper& stepper, double xi1, double xi2,
                          const std::vector<double>& levels1, const std::vector<double>& levels2,
                          Rng& rng, std::uint64_t max_cells) {
  require_rate(xi1, "xi1");
  require_rate(xi2, "xi2");
  const auto passage = inverse::first_passages(stepper, levels1, levels2, rng, max_cells);
  if (passage.truncated) throw TruncationError("cell budget exhausted before both levels");
  const double dx = stepper.dx();
  auto counts = [&](const std::vector<std::uint64_t>& idx, double xi) {
    std::vector<std::uint64_t> out;
    std::uint64_t n = 0;
    double prev = 0.0;
    for (auto i : idx) {
      const double l = static_cast<double>(i) * dx;
      n += poisson_arrivals(xi, l - prev, rng);
      prev = l;
      out.push_back(n);
    }
    return out;
  };
  Counts out;
  out.first = counts(passage.first, xi1);
  out.second = counts(passage.second, xi2);
  return out;
}

std::pair<std::uint64_t, std::uint64_t> sample_bifrac_poisson(double xi1, double xi2, Alpha alpha,
                                                              const SpectralMeasure& m, double t1,
                                                              double t2, RngSpec spec) {
  const simulate::IncrementSampler sampler(BivariateModel{SpectralStable::standard(alpha, m)});
  Rng rng(spec);
  const auto c = sample_counts_exact(sampler, xi1, xi2, {t1}, {t2}, rng);
  return {c.first[0], c.second[0]};
}

std::pair<double, double> sample_first_interarrivals(const simulate::IncrementSampler& sampler,
                                                     double xi1, double xi2, Rng& rng) {
  require_rate(xi1, "xi1");
  require_rate(xi2, "xi2");
  const double w1 = rng.exponential() / xi1;
  const double w2 = rng.exponential() / xi2;
  const double lo = std::min(w1, w2);
  const auto [a1, a2] = sampler(lo, rng);
  if (w1 == w2) return {a1, a2};
  const auto [b1, b2] = sampler(std::max(w1, w2) - lo, rng);
  return w1 < w2 ? std::pair{a1, a2 + b2} : std::pair{a1 + b1, a2};
}

void CtmcSpec::validate() const {
  auto check = [](const std::vector<std::string>& states, const std::vector<std::vector<double>>& p,
                  const char* states_field, const char* matrix_field) {
    if (states.empty()) throw ConfigError(states_field, std::string(states_field) + " is empty");
    if (p.size() != states.size()) {
      throw ConfigError(matrix_field,
                        std::string(matrix_field) + " must be square with one row per state");
    }
    for (const auto& row : p) {
      if (row.size() != states.size()) {
        throw ConfigError(matrix_field,
                          std::string(matrix_field) + " must be square with one row per state");
      }
      double sum = 0.0;
      for (double v : row) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw ConfigError(matrix_field, std::string(matrix_field) + " entries must be >= 0");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw ConfigError(matrix_field, std::string(matrix_field) + " rows must sum to 1");
      }
    }
  };
  check(states1, a, "states1", "a");
  check(states2, b, "states2", "b");
  if (!(xi1 > 0.0) || !std::isfinite(xi1)) throw ConfigError("xi1", "xi1 must be > 0");
  if (!(xi2 > 0.0) || !std::isfinite(xi2)) throw ConfigError("xi2", "xi2 must be > 0");
}

std::size_t ctmc_step(const std::vector<std::vector<double>>& p, std::size_t i, Rng& rng) {
  const auto& row = p.at(i);
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last_positive = i;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= 0.0) continue;
    cum += row[j];
    last_positive = j;
    if (u < cum) return j;
  }
  return last_positive;
}

CtmcState sample_ctmc_timechanged(const CtmcSpec& spec, const BivariateModel& model, double t1,
                                  double t2, double dx, RngSpec rng_spec, CtmcRoute route) {
  spec.validate();
  if (!(t1 >= 0.0) || !(t2 >= 0.0)) throw DomainError("physical times must be >= 0");
  Rng rng(rng_spec);
  Counts counts;
  if (route == CtmcRoute::interarrival) {
    const simulate::IncrementSampler sampler(model);
    counts = sample_counts_exact(sampler, spec.xi1, spec.xi2, {t1}, {t2}, rng);
  } else {
    const simulate::CellStepper stepper(model, dx);
    counts = sample_counts_grid(stepper, spec.xi1, spec.xi2, {t1}, {t2}, rng);
  }
  CtmcState state;
  state.jumps1 = counts.first[0];
  state.jumps2 = counts.second[0];
  for (std::uint64_t i = 0; i < state.jumps1; ++i) state.s1 = ctmc_step(spec.a, state.s1, rng);
  for (std::uint64_t i = 0; i < state.jumps2; ++i) state.s2 = ctmc_step(spec.b, state.s2, rng);
  return state;
}

}  // namespace anisub::timechange
