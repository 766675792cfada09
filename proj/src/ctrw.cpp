// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/ctrw.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "anisub/error.hpp"
#include "anisub/io.hpp"
#include "anisub/simulate.hpp"
#include "anisub/timechange.hpp"

namespace anisub::ctrw {

namespace {

constexpr std::uint32_t kWalkTag = 0x100;
constexpr std::uint32_t kReferenceTagA = 0x200;
constexpr std::uint32_t kReferenceTagB = 0x201;
constexpr std::uint64_t kMinReplicates = 1000;

}  // namespace

CtrwSpec::CtrwSpec(Alpha alpha, const SpectralMeasure& m) : alpha_(alpha) {
  if (alpha.is_drift_limit()) throw DomainError("the walk needs alpha < 1");
  m.validate();
  m_ = m.normalized();
  double cum = 0.0;
  for (const auto& atom : m_.discretized()) {
    cum += atom.weight;
    cumulative_.push_back(cum);
    directions_.push_back(direction_of(atom.angle));
  }
}

void CtrwSpec::interarrival(Rng& rng, double& j1, double& j2) const {
  const double r = std::pow(rng.uniform(), -1.0 / alpha_.value());
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const Direction& d = directions_[static_cast<std::size_t>(it - cumulative_.begin())];
  j1 = r * d.c;
  j2 = r * d.s;
}

BivariateModel CtrwSpec::limit_model() const {
  return SpectralStable::with_intensity(alpha_, 1.0, m_);
}

CtrwDraw sample_ctrw(const CtrwSpec& spec, double c, double t, Rng& rng) {
  if (!(c >= 1.0) || !std::isfinite(c)) throw DomainError("scale factor c must be >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time t must be > 0");
  const double horizon = c * t;
  CtrwDraw out;
  double t1 = 0.0;
  double t2 = 0.0;
  for (std::uint64_t n = 1; t1 <= horizon || t2 <= horizon; ++n) {
    double j1 = 0.0;
    double j2 = 0.0;
    spec.interarrival(rng, j1, j2);
    t1 += j1;
    t2 += j2;
    if (t1 <= horizon) out.n1 = n;
    if (t2 <= horizon) out.n2 = n;
  }
  // Given the counts, the partial sums of independent standard normal jumps
  // are independent N(0, n_i) variables.
  const double scale = std::pow(c, -0.5 * spec.alpha().value());
  out.s1 = scale * std::sqrt(static_cast<double>(out.n1)) * rng.normal();
  out.s2 = scale * std::sqrt(static_cast<double>(out.n2)) * rng.normal();
  return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("KS distance needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical(std::size_t n, std::size_t m, double level) {
  if (n == 0 || m == 0) throw DomainError("KS critical value needs nonempty samples");
  if (!(level > 0.0 && level < 1.0)) throw DomainError("KS level must lie in (0, 1)");
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return std::sqrt(-std::log(level / 2.0) / 2.0) * std::sqrt((nd + md) / (nd * md));
}

namespace {

struct Columns {
  std::vector<double> pos1;
  std::vector<double> pos2;
  std::vector<double> cnt1;
  std::vector<double> cnt2;

  void merge(const Columns& o) {
    pos1.insert(pos1.end(), o.pos1.begin(), o.pos1.end());
    pos2.insert(pos2.end(), o.pos2.begin(), o.pos2.end());
    cnt1.insert(cnt1.end(), o.cnt1.begin(), o.cnt1.end());
    cnt2.insert(cnt2.end(), o.cnt2.begin(), o.cnt2.end());
  }
};

Columns reference_sample(const BivariateModel& model, double t, double dx, std::uint64_t n,
                         std::uint64_t seed, std::uint32_t tag, const ParallelOptions& opts) {
  const simulate::CellStepper stepper(model, dx);
  return reduce_blocks<Columns>(n, opts, [&](std::uint64_t b, std::uint64_t e) {
    Columns c;
    for (std::uint64_t r = b; r < e; ++r) {
      const auto traj = timechange::sample_subdiffusion(stepper, {t}, {seed, stream_id(tag, r)});
      if (traj.truncated) throw TruncationError("reference path exhausted its cell budget");
      c.pos1.push_back(traj.points[0].x1);
      c.pos2.push_back(traj.points[0].x2);
      c.cnt1.push_back(traj.l1[0]);
      c.cnt2.push_back(traj.l2[0]);
    }
    return c;
  });
}

}  // namespace

SweepReport convergence_sweep(const CtrwSpec& spec, const SweepExperiment& experiment,
                              std::uint64_t seed, const ParallelOptions& opts) {
  if (experiment.n_reps < kMinReplicates) {
    throw ConfigError("n_reps", "the sweep needs at least 1000 replicates per scale factor");
  }
  if (experiment.n_ref < kMinReplicates) {
    throw ConfigError("n_ref", "the sweep needs at least 1000 reference draws");
  }
  if (experiment.c_values.empty()) throw ConfigError("c_values", "c_values is empty");
  for (std::size_t i = 0; i < experiment.c_values.size(); ++i) {
    const double c = experiment.c_values[i];
    if (!(c >= 1.0) || (i > 0 && !(c > experiment.c_values[i - 1]))) {
      throw ConfigError("c_values", "c_values must be >= 1 and strictly increasing");
    }
  }
  if (!(experiment.t > 0.0)) throw ConfigError("t", "t must be > 0");

  const BivariateModel limit = spec.limit_model();
  const Columns ref_a =
      reference_sample(limit, experiment.t, experiment.dx, experiment.n_ref, seed, kReferenceTagA, opts);
  const Columns ref_b =
      reference_sample(limit, experiment.t, experiment.dx, experiment.n_ref, seed, kReferenceTagB, opts);

  SweepReport report;
  report.critical = ks_critical(experiment.n_reps, experiment.n_ref);
  const double floor = ks_distance(ref_a.pos1, ref_b.pos1);
  report.noise_cnt1 = ks_distance(ref_a.cnt1, ref_b.cnt1);
  const double alpha = spec.alpha().value();
  for (std::size_t ci = 0; ci < experiment.c_values.size(); ++ci) {
    const double c = experiment.c_values[ci];
    const double count_scale = std::pow(c, -alpha);
    const std::uint32_t tag = kWalkTag + 1 + static_cast<std::uint32_t>(ci);
    const Columns walk =
        reduce_blocks<Columns>(experiment.n_reps, opts, [&](std::uint64_t b, std::uint64_t e) {
          Columns col;
          for (std::uint64_t r = b; r < e; ++r) {
            Rng rng(seed, stream_id(tag, r));
            const CtrwDraw d = sample_ctrw(spec, c, experiment.t, rng);
            col.pos1.push_back(d.s1);
            col.pos2.push_back(d.s2);
            col.cnt1.push_back(count_scale * static_cast<double>(d.n1));
            col.cnt2.push_back(count_scale * static_cast<double>(d.n2));
          }
          return col;
        });
    report.rows.push_back({c, ks_distance(walk.pos1, ref_a.pos1), ks_distance(walk.pos2, ref_a.pos2),
                           ks_distance(walk.cnt1, ref_a.cnt1), ks_distance(walk.cnt2, ref_a.cnt2),
                           floor});
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    if (report.rows[i].ks_pos1 > report.rows[i - 1].ks_pos1) ++report.inversions;
  }
  return report;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report) {
  os << "c,ks_pos1,ks_pos2,ks_cnt1,ks_cnt2,noise_floor\n";
  for (const auto& r : report.rows) {
    os << format_number(r.c) << ',' << format_number(r.ks_pos1) << ',' << format_number(r.ks_pos2)
       << ',' << format_number(r.ks_cnt1) << ',' << format_number(r.ks_cnt2) << ','
       << format_number(r.noise_floor) << '\n';
  }
}

}  // namespace anisub::ctrw
