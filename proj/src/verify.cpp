// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/verify.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>

#include "anisub/analytic.hpp"
#include "anisub/error.hpp"
#include "anisub/inverse.hpp"
#include "anisub/io.hpp"
#include "anisub/simulate.hpp"
#include "anisub/timechange.hpp"

namespace anisub::verify {

Verdict compare(std::string name, double lhs, double rhs, double se, double z_max, Check check,
                double tol) {
  Verdict v;
  v.name = std::move(name);
  v.lhs = lhs;
  v.rhs = rhs;
  v.se = se;
  v.check = check;
  v.tol = tol;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto ratio = [&](double diff) {
    if (se > 0.0) return diff / se;
    if (diff == 0.0) return 0.0;
    return diff > 0.0 ? kInf : -kInf;
  };
  switch (check) {
    case Check::two_sided:
      v.z = std::abs(ratio(lhs - rhs));
      v.pass = v.z <= z_max;
      break;
    case Check::at_most:
      v.z = std::max(0.0, ratio(lhs - rhs));
      v.pass = v.z <= z_max;
      break;
    case Check::at_least:
      v.z = ratio(lhs - rhs);
      v.pass = lhs >= rhs;
      break;
    case Check::greater:
      v.z = ratio(lhs - rhs);
      v.pass = v.z > z_max;
      break;
    case Check::tolerance:
      v.z = std::abs(ratio(lhs - rhs));
      v.pass = std::abs(lhs - rhs) <= tol;
      break;
  }
  return v;
}

MCEstimate randomized_laplace(const TimeFunction& g, double eta1, double eta2,
                              std::uint64_t n_reps, std::uint64_t seed, std::uint32_t tag,
                              const ParallelOptions& opts) {
  if (n_reps < 2) throw DomainError("randomized_laplace needs n_reps >= 2");
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) throw DomainError("Laplace arguments must be > 0");
  const double norm = 1.0 / (eta1 * eta2);
  return reduce_blocks<MCEstimate>(n_reps, opts, [&](std::uint64_t b, std::uint64_t e) {
    MCEstimate acc;
    for (std::uint64_t r = b; r < e; ++r) {
      Rng rng(seed, stream_id(tag, r));
      const double t1 = rng.exponential() / eta1;
      const double t2 = rng.exponential() / eta2;
      acc.add(norm * g(t1, t2, rng));
    }
    return acc;
  });
}

const std::vector<std::string>& identity_catalog() {
  static const std::vector<std::string> catalog{
      "subordinator-law",      "biparameter-laplace",     "tail-transform",
      "inversion-duality",     "normalization",           "diagonal-atom",
      "diagonal-artifact",     "grid-consistency",        "marginal-mean",
      "survival-bound",        "covariance-laplace",      "independent-covariance",
      "mixed-moment-laplace",  "diagonal-mass-laplace",   "inverse-joint-laplace",
      "subdiffusion-char-laplace", "subdiffusion-msd",    "subdiffusion-mean",
      "phase-sync",            "ml-interarrival",         "interarrival-duality",
      "joint-interarrival",    "joint-interarrival-laplace", "poisson-zero",
      "poisson-reduction",     "poisson-routes",          "count-dependence",
      "randomized-laplace-self"};
  return catalog;
}

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Every batch reads its own stream family, so a verdict depends only on the
// seed, the budget and the batch it is computed from.
std::uint32_t batch_tag(const std::string& key) {
  std::uint32_t h = 2166136261u;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 16777619u;
  }
  // 23 bits keep the stream top bit free for derived substreams.
  return (h & ((1u << 23) - 1)) | 1u;
}

double suite_alpha(const BivariateModel& model) {
  if (const auto* m = std::get_if<SpectralStable>(&model)) return m->alpha.value();
  if (const auto* m = std::get_if<IndependentStable>(&model)) return m->alpha.value();
  return std::get<CommonFactor>(model).g.alpha;
}

MCEstimate column(const VectorMoments& vm, std::size_t i) {
  MCEstimate e;
  e.n = vm.n();
  e.mean = vm.mean(i);
  e.m2 = vm.n() > 1 ? vm.covariance(i, i) * static_cast<double>(vm.n() - 1) : 0.0;
  return e;
}

double combined_se(const MCEstimate& a, const MCEstimate& b) {
  return std::hypot(a.se(), b.se());
}

std::string tagged(const std::string& identity, const std::string& label,
                   const std::string& detail = "") {
  return identity + "[" + label + (detail.empty() ? "" : ";" + detail) + "]";
}

std::string pair_text(const char* key, double a, double b) {
  return std::string(key) + "=" + format_number(a) + "," + format_number(b);
}

struct Point {
  double x1;
  double x2;
};

// Operational-time points for the duality and survival checks at t = (1, 1).
const std::vector<Point> kDualityPoints{{0.5, 0.5}, {0.5, 1.0}, {1.0, 0.5}, {1.0, 1.5}};
const std::vector<Point> kSurvivalPoints{{1.0, 1.0}, {0.5, 1.5}};
const std::vector<double> kEtaGrid{0.5, 1.0, 2.0};
const std::vector<double> kBoundEtas{0.25, 0.5, 1.0, 2.0, 4.0};
const std::vector<double> kMsdTimes{1.0, 2.0, 4.0, 8.0};

class Suite {
 public:
  Suite(const BivariateModel& config, const SuiteOptions& opts)
      : opts_(opts), alpha_(suite_alpha(config)) {
    models_.emplace("config", config);
    models_.emplace("atom", SpectralStable::standard(Alpha(alpha_), SpectralMeasure::point(kQuarterPi)));
    models_.emplace("independent", IndependentStable{Alpha(alpha_), 1.0, 1.0});
    models_.emplace("common-factor",
                    CommonFactor{{alpha_, 0.5}, {alpha_, 0.5}, {alpha_, 1.0}, 1.0, 0.5});
    models_.emplace("drift", IndependentStable{Alpha(1.0), 1.0, 1.0});
  }

  void run(const std::string& identity, std::vector<Verdict>& out);

 private:
  using Fill = std::function<void(Rng&, double*)>;

  const BivariateModel& model(const std::string& label) const { return models_.at(label); }

  const VectorMoments& batch(const std::string& key, std::size_t dim, const Fill& fill) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const std::uint32_t tag = batch_tag(key);
    const std::uint64_t seed = opts_.seed;
    auto vm = reduce_blocks<VectorMoments>(
        opts_.budget, opts_.parallel, [&](std::uint64_t b, std::uint64_t e) {
          VectorMoments acc(dim);
          std::vector<double> row(dim);
          for (std::uint64_t r = b; r < e; ++r) {
            Rng rng(seed, stream_id(tag, r));
            fill(rng, row.data());
            acc.add(row.data());
          }
          return acc;
        });
    return cache_.emplace(key, std::move(vm)).first->second;
  }

  Verdict verdict(std::string name, double lhs, double rhs, double se,
                  Check check = Check::two_sided, double tol = 0.0) const {
    return compare(std::move(name), lhs, rhs, se, opts_.z_max, check, tol);
  }

  double ml_survival(const std::string& label, Component k, double xi, double t, bool& ok) const {
    const auto marginal = analytic::stable_marginal(model(label), k);
    ok = marginal.has_value();
    if (!ok) return 0.0;
    return analytic::mittag_leffler(marginal->alpha,
                                    -xi * std::pow(t, marginal->alpha) / marginal->scale);
  }

  // e^{-eta.H(1)} on the 3 x 3 eta grid.
  const VectorMoments& law_batch(const std::string& label) {
    const simulate::CellStepper stepper(model(label), 1.0 / 16.0);
    return batch("law:" + label, 9, [&](Rng& rng, double* row) {
      double h1 = 0.0;
      double h2 = 0.0;
      for (int k = 0; k < 16; ++k) stepper.advance(rng, h1, h2);
      std::size_t i = 0;
      for (double e1 : kEtaGrid) {
        for (double e2 : kEtaGrid) row[i++] = std::exp(-e1 * h1 - e2 * h2);
      }
    });
  }

  // e^{-H1(1) - H2(2)}, e^{-H1(2) - H2(1)}.
  const VectorMoments& biparameter_batch(const std::string& label) {
    const simulate::CellStepper stepper(model(label), 1.0 / 16.0);
    return batch("biparameter:" + label, 2, [&](Rng& rng, double* row) {
      double h1 = 0.0;
      double h2 = 0.0;
      for (int k = 0; k < 16; ++k) stepper.advance(rng, h1, h2);
      const double a1 = h1;
      const double a2 = h2;
      for (int k = 0; k < 16; ++k) stepper.advance(rng, h1, h2);
      row[0] = std::exp(-a1 - h2);
      row[1] = std::exp(-h1 - a2);
    });
  }

  // Grid inverse at t = (1, 1). Layout: duality indicators (4), survival
  // indicators (2), diagonal, off-diagonal, L1, L2, e^{-L1}, e^{-L1-L2}. The
  // L values are cell midpoints: the grid inverse equals
  // dx (floor(L / dx) + 1) exactly, so the midpoint carries O(dx^2) bias.
  static constexpr std::size_t kGridDim = 12;
  const VectorMoments& inverse_grid_batch(const std::string& label) {
    const double dx = opts_.dx;
    const simulate::CellStepper stepper(model(label), dx);
    auto cells = [dx](double x) { return static_cast<std::uint64_t>(std::llround(x / dx)); };
    return batch("inverse-grid:" + label, kGridDim, [&, cells](Rng& rng, double* row) {
      const auto s = inverse::sample_inverse(stepper, 1.0, 1.0, rng);
      if (s.truncated) throw TruncationError("inverse sample exhausted its cell budget");
      std::size_t i = 0;
      for (const auto& p : kDualityPoints) {
        row[i++] = (s.index1 > cells(p.x1) && s.index2 > cells(p.x2)) ? 1.0 : 0.0;
      }
      for (const auto& p : kSurvivalPoints) {
        row[i++] = (s.index1 >= cells(p.x1) && s.index2 >= cells(p.x2)) ? 1.0 : 0.0;
      }
      const double l1 = (static_cast<double>(s.index1) - 0.5) * dx;
      const double l2 = (static_cast<double>(s.index2) - 0.5) * dx;
      row[i++] = s.on_diagonal ? 1.0 : 0.0;
      row[i++] = s.on_diagonal ? 0.0 : 1.0;
      row[i++] = l1;
      row[i++] = l2;
      row[i++] = std::exp(-l1);
      row[i++] = std::exp(-l1 - l2);
    });
  }

  // Indicators H1(x1) <= 1, H2(x2) <= 1 at the duality points, from exact
  // increments.
  const VectorMoments& direct_batch(const std::string& label) {
    const simulate::IncrementSampler sampler(model(label));
    return batch("direct:" + label, kDualityPoints.size(), [&](Rng& rng, double* row) {
      // H at x = 0.5, 1.0, 1.5 along one path.
      double h1[3];
      double h2[3];
      double a1 = 0.0;
      double a2 = 0.0;
      for (int k = 0; k < 3; ++k) {
        const auto [d1, d2] = sampler(0.5, rng);
        a1 += d1;
        a2 += d2;
        h1[k] = a1;
        h2[k] = a2;
      }
      auto at = [](const double* h, double x) { return h[static_cast<int>(std::lround(x / 0.5)) - 1]; };
      for (std::size_t i = 0; i < kDualityPoints.size(); ++i) {
        const auto& p = kDualityPoints[i];
        row[i] = (at(h1, p.x1) <= 1.0 && at(h2, p.x2) <= 1.0) ? 1.0 : 0.0;
      }
    });
  }

  // Independent model on the fine grid dx with the coupled coarse grid 2 dx.
  // Layout: fine diagonal, coarse diagonal, fine L1, coarse L1 (midpoints).
  const VectorMoments& artifact_batch() {
    const double dx = opts_.dx;
    const simulate::CellStepper stepper(model("independent"), dx);
    return batch("artifact:independent", 4, [&](Rng& rng, double* row) {
      const auto s = inverse::sample_inverse(stepper, 1.0, 1.0, rng);
      if (s.truncated) throw TruncationError("inverse sample exhausted its cell budget");
      const std::uint64_t c1 = (s.index1 + 1) / 2;
      const std::uint64_t c2 = (s.index2 + 1) / 2;
      row[0] = s.index1 == s.index2 ? 1.0 : 0.0;
      row[1] = c1 == c2 ? 1.0 : 0.0;
      row[2] = (static_cast<double>(s.index1) - 0.5) * dx;
      row[3] = (static_cast<double>(c1) - 0.5) * 2.0 * dx;
    });
  }

  // Randomized Laplace transform at eta = (1, 1) of functionals of two
  // independent copies A, B of (L1(t1), L2(t2)). Layout: covariance kernel,
  // mixed moment, diagonal, e^{-(L1 + L2) / 2}, cos(B1(L1) + B2(L2)).
  const VectorMoments& laplace_inverse_batch(const std::string& label) {
    const double dx = opts_.dx;
    const simulate::CellStepper stepper(model(label), dx);
    return batch("laplace-inverse:" + label, 5, [&](Rng& rng, double* row) {
      const double t1 = rng.exponential();
      const double t2 = rng.exponential();
      const auto a = inverse::sample_inverse(stepper, t1, t2, rng);
      const auto b = inverse::sample_inverse(stepper, t1, t2, rng);
      if (a.truncated || b.truncated) {
        throw TruncationError("inverse sample exhausted its cell budget");
      }
      auto mid = [dx](std::uint64_t i) { return (static_cast<double>(i) - 0.5) * dx; };
      const double a1 = mid(a.index1);
      const double a2 = mid(a.index2);
      const double b1 = mid(b.index1);
      const double b2 = mid(b.index2);
      const double z1 = rng.normal();
      const double z2 = rng.normal();
      row[0] = 0.5 * (a1 * a2 + b1 * b2) - 0.5 * (a1 * b2 + b1 * a2);
      row[1] = 0.5 * (a1 * a2 + b1 * b2);
      row[2] = 0.5 * ((a.on_diagonal ? 1.0 : 0.0) + (b.on_diagonal ? 1.0 : 0.0));
      row[3] = 0.5 * (std::exp(-0.5 * (a1 + a2)) + std::exp(-0.5 * (b1 + b2)));
      row[4] = std::cos(std::sqrt(a1) * z1 + std::sqrt(a2) * z2);
    });
  }

  // First interarrivals with xi = (1, 1). Layout: H1(W1) > 1, H2(W2) > 1,
  // both, and both exceeding independent Exp(1) levels.
  const VectorMoments& interarrival_batch(const std::string& label) {
    const simulate::IncrementSampler sampler(model(label));
    return batch("interarrival:" + label, 4, [&](Rng& rng, double* row) {
      const auto [w1, w2] = timechange::sample_first_interarrivals(sampler, 1.0, 1.0, rng);
      const double e1 = rng.exponential();
      const double e2 = rng.exponential();
      row[0] = w1 > 1.0 ? 1.0 : 0.0;
      row[1] = w2 > 1.0 ? 1.0 : 0.0;
      row[2] = (w1 > 1.0 && w2 > 1.0) ? 1.0 : 0.0;
      row[3] = (w1 > e1 && w2 > e2) ? 1.0 : 0.0;
    });
  }

  // Exact fractional Poisson counts at t = (1, 1), xi = (1, 1). Layout:
  // n1 = 0, n2 = 0, n1, n2, n1 n2.
  const VectorMoments& poisson_batch(const std::string& label) {
    const simulate::IncrementSampler sampler(model(label));
    return batch("poisson:" + label, 5, [&](Rng& rng, double* row) {
      const auto c = timechange::sample_counts_exact(sampler, 1.0, 1.0, {1.0}, {1.0}, rng);
      const auto n1 = static_cast<double>(c.first[0]);
      const auto n2 = static_cast<double>(c.second[0]);
      row[0] = n1 == 0.0 ? 1.0 : 0.0;
      row[1] = n2 == 0.0 ? 1.0 : 0.0;
      row[2] = n1;
      row[3] = n2;
      row[4] = n1 * n2;
    });
  }

  // Grid-route counts n1, n2 at t = (1, 1), xi = (1, 1).
  const VectorMoments& poisson_grid_batch(const std::string& label) {
    const simulate::CellStepper stepper(model(label), opts_.dx);
    return batch("poisson-grid:" + label, 2, [&](Rng& rng, double* row) {
      const auto c = timechange::sample_counts_grid(stepper, 1.0, 1.0, {1.0}, {1.0}, rng);
      row[0] = static_cast<double>(c.first[0]);
      row[1] = static_cast<double>(c.second[0]);
    });
  }

  const timechange::MsdSummary& msd(const std::string& label) {
    auto it = msd_.find(label);
    if (it != msd_.end()) return it->second;
    auto summary = timechange::estimate_msd(model(label), kMsdTimes, opts_.dx, opts_.budget,
                                            opts_.seed, batch_tag("msd:" + label),
                                            opts_.parallel);
    if (summary.truncated > 0) throw TruncationError("trajectory exhausted its cell budget");
    return msd_.emplace(label, std::move(summary)).first->second;
  }

  SuiteOptions opts_;
  double alpha_;
  std::map<std::string, BivariateModel> models_;
  std::map<std::string, VectorMoments> cache_;
  std::map<std::string, timechange::MsdSummary> msd_;
};

void Suite::run(const std::string& identity, std::vector<Verdict>& out) {
  if (identity == "subordinator-law") {
    for (const char* label : {"config", "atom", "independent", "common-factor"}) {
      const auto& vm = law_batch(label);
      std::size_t i = 0;
      for (double e1 : kEtaGrid) {
        for (double e2 : kEtaGrid) {
          const auto est = column(vm, i++);
          out.push_back(verdict(tagged(identity, label, pair_text("eta", e1, e2)), est.mean,
                                std::exp(-analytic::joint_exponent(model(label), e1, e2)),
                                est.se()));
        }
      }
    }
  } else if (identity == "biparameter-laplace") {
    for (const char* label : {"config", "atom", "common-factor"}) {
      const auto& vm = biparameter_batch(label);
      const auto a = column(vm, 0);
      const auto b = column(vm, 1);
      out.push_back(verdict(tagged(identity, label, "t=1,2"), a.mean,
                            analytic::biparameter_laplace(model(label), 1.0, 2.0, 1.0, 1.0),
                            a.se()));
      out.push_back(verdict(tagged(identity, label, "t=2,1"), b.mean,
                            analytic::biparameter_laplace(model(label), 2.0, 1.0, 1.0, 1.0),
                            b.se()));
    }
  } else if (identity == "tail-transform") {
    for (const char* label : {"config", "atom", "independent", "common-factor"}) {
      const BivariateModel& m = model(label);
      const auto est = randomized_laplace(
          [&m](double t1, double t2, Rng&) { return analytic::levy_tail(m, t1, t2); }, 1.0, 1.0,
          opts_.budget, opts_.seed, batch_tag(std::string("tail:") + label), opts_.parallel);
      out.push_back(verdict(tagged(identity, label, "eta=1,1"), est.mean,
                            analytic::tail_transform(m, 1.0, 1.0), est.se()));
    }
  } else if (identity == "inversion-duality") {
    for (const char* label : {"config", "atom"}) {
      const auto& inv = inverse_grid_batch(label);
      const auto& dir = direct_batch(label);
      for (std::size_t i = 0; i < kDualityPoints.size(); ++i) {
        const auto lhs = column(inv, i);
        const auto rhs = column(dir, i);
        out.push_back(verdict(
            tagged(identity, label, pair_text("x", kDualityPoints[i].x1, kDualityPoints[i].x2)),
            lhs.mean, rhs.mean, combined_se(lhs, rhs)));
      }
    }
  } else if (identity == "normalization") {
    for (const char* label : {"config", "atom"}) {
      const auto& inv = inverse_grid_batch(label);
      // Both frequencies are counts over the same n, so the sum is exact.
      const double diag = std::round(inv.mean(6) * static_cast<double>(inv.n()));
      const double off = std::round(inv.mean(7) * static_cast<double>(inv.n()));
      out.push_back(verdict(tagged(identity, label), (diag + off) / static_cast<double>(inv.n()),
                            1.0, 0.0));
    }
  } else if (identity == "diagonal-atom") {
    const auto& inv = inverse_grid_batch("atom");
    out.push_back(verdict(tagged(identity, "atom", "t=1,1"), inv.mean(6), 1.0, 0.0));
  } else if (identity == "diagonal-artifact") {
    const auto& vm = artifact_batch();
    const auto fine = column(vm, 0);
    const auto coarse = column(vm, 1);
    if (alpha_ <= 0.5) {
      // For alpha <= 1/2 the density of L_i(t) is largest at 0, where it
      // equals the Levy tail; a common grid cell has probability at most
      // dx times that density.
      const double bound =
          opts_.dx * std::min(analytic::stable_marginal(model("independent"), Component::first)
                                  ->levy_tail(1.0),
                              analytic::stable_marginal(model("independent"), Component::second)
                                  ->levy_tail(1.0));
      out.push_back(verdict(tagged("diagonal-artifact-bound", "independent", "dx=" + format_number(opts_.dx)),
                            fine.mean, bound, fine.se(), Check::at_most));
    }
    const double ratio = fine.mean > 0.0 ? coarse.mean / fine.mean : 0.0;
    // Delta method for the ratio of two correlated means.
    double se = 0.0;
    if (fine.mean > 0.0) {
      se = vm.linear_se({-coarse.mean / (fine.mean * fine.mean), 1.0 / fine.mean, 0.0, 0.0});
    }
    out.push_back(verdict(tagged("diagonal-artifact-halving", "independent"), ratio, 1.5, se,
                          Check::at_least));
  } else if (identity == "grid-consistency") {
    const auto& vm = artifact_batch();
    const auto fine = column(vm, 2);
    const auto coarse = column(vm, 3);
    out.push_back(verdict(tagged(identity, "independent", "t=1"), fine.mean, coarse.mean,
                          fine.se(), Check::tolerance, fine.se()));
  } else if (identity == "marginal-mean") {
    auto closed = [&](const std::string& label, Component k) {
      const auto m = analytic::stable_marginal(model(label), k);
      return 1.0 / (m->scale * std::tgamma(1.0 + m->alpha));
    };
    const auto ind = column(artifact_batch(), 2);
    out.push_back(verdict(tagged(identity, "independent", "t=1"), ind.mean,
                          closed("independent", Component::first), ind.se()));
    for (const char* label : {"config", "atom"}) {
      const auto& inv = inverse_grid_batch(label);
      for (std::size_t c = 0; c < 2; ++c) {
        const Component k = c == 0 ? Component::first : Component::second;
        if (!analytic::stable_marginal(model(label), k)) continue;
        const auto est = column(inv, 8 + c);
        out.push_back(verdict(tagged(identity, label, c == 0 ? "L1;t=1" : "L2;t=1"), est.mean,
                              closed(label, k), est.se()));
      }
    }
  } else if (identity == "survival-bound") {
    for (const char* label : {"config", "atom"}) {
      const auto& inv = inverse_grid_batch(label);
      for (std::size_t i = 0; i < kSurvivalPoints.size(); ++i) {
        const auto& p = kSurvivalPoints[i];
        double bound = 1.0;
        for (double e1 : kBoundEtas) {
          for (double e2 : kBoundEtas) {
            bound = std::min(bound,
                             analytic::survival_bound(model(label), p.x1, p.x2, 1.0, 1.0, e1, e2));
          }
        }
        const auto est = column(inv, kDualityPoints.size() + i);
        out.push_back(verdict(tagged(identity, label, pair_text("x", p.x1, p.x2)), est.mean,
                              bound, est.se(), Check::at_most));
      }
    }
  } else if (identity == "covariance-laplace") {
    for (const char* label : {"config", "atom"}) {
      const auto est = column(laplace_inverse_batch(label), 0);
      out.push_back(verdict(tagged(identity, label, "eta=1,1"), est.mean,
                            analytic::covariance_laplace(model(label), 1.0, 1.0), est.se()));
    }
  } else if (identity == "independent-covariance") {
    const auto est = column(laplace_inverse_batch("independent"), 0);
    out.push_back(verdict(tagged(identity, "independent", "eta=1,1"), est.mean,
                          analytic::covariance_laplace(model("independent"), 1.0, 1.0),
                          est.se()));
  } else if (identity == "mixed-moment-laplace") {
    for (const char* label : {"config", "atom", "independent"}) {
      const auto est = column(laplace_inverse_batch(label), 1);
      out.push_back(verdict(tagged(identity, label, "eta=1,1"), est.mean,
                            analytic::mixed_moment_laplace(model(label), 1.0, 1.0), est.se()));
    }
  } else if (identity == "diagonal-mass-laplace") {
    for (const char* label : {"config", "atom"}) {
      const auto est = column(laplace_inverse_batch(label), 2);
      out.push_back(verdict(tagged(identity, label, "eta=1,1"), est.mean,
                            analytic::diagonal_mass_laplace(model(label), 1.0, 1.0), est.se()));
    }
  } else if (identity == "inverse-joint-laplace") {
    for (const char* label : {"config", "atom", "independent"}) {
      const auto est = column(laplace_inverse_batch(label), 3);
      out.push_back(verdict(tagged(identity, label, "xi=0.5,0.5;eta=1,1"), est.mean,
                            analytic::inverse_joint_laplace(model(label), 0.5, 0.5, 1.0, 1.0),
                            est.se()));
    }
  } else if (identity == "subdiffusion-char-laplace") {
    for (const char* label : {"config", "atom", "independent"}) {
      const auto est = column(laplace_inverse_batch(label), 4);
      out.push_back(verdict(tagged(identity, label, "xi=1,1;eta=1,1"), est.mean,
                            analytic::subdiffusion_char_laplace(model(label), 1.0, 1.0, 1.0, 1.0),
                            est.se()));
    }
  } else if (identity == "subdiffusion-msd") {
    for (const char* label : {"config", "atom"}) {
      const auto& s = msd(label);
      const auto marginal = analytic::stable_marginal(model(label), Component::first);
      out.push_back(verdict(tagged(identity, label, "slope"), s.slope1, marginal->alpha,
                            s.slope1_se, Check::tolerance, 0.05));
      for (std::size_t j = 0; j < s.t.size(); ++j) {
        const double closed =
            std::pow(s.t[j], marginal->alpha) / (marginal->scale * std::tgamma(1.0 + marginal->alpha));
        out.push_back(verdict(tagged(identity, label, "t=" + format_number(s.t[j])),
                              s.msd1[j].mean, closed, s.msd1[j].se()));
      }
    }
  } else if (identity == "subdiffusion-mean") {
    for (const char* label : {"config", "atom"}) {
      const auto& s = msd(label);
      for (std::size_t j = 0; j < s.t.size(); ++j) {
        out.push_back(verdict(tagged(identity, label, "t=" + format_number(s.t[j])),
                              s.mean1[j].mean, 0.0, s.mean1[j].se()));
      }
    }
  } else if (identity == "phase-sync") {
    const auto& s = msd("atom");
    const auto asym = s.phase_counts[static_cast<std::size_t>(timechange::Phase::rest_x_moves_y)] +
                      s.phase_counts[static_cast<std::size_t>(timechange::Phase::rest_y_moves_x)];
    out.push_back(verdict(tagged(identity, "atom"), static_cast<double>(asym), 0.0, 0.0));
  } else if (identity == "ml-interarrival") {
    for (const char* label : {"config", "atom", "independent"}) {
      const auto& vm = interarrival_batch(label);
      for (std::size_t c = 0; c < 2; ++c) {
        bool ok = false;
        const double closed =
            ml_survival(label, c == 0 ? Component::first : Component::second, 1.0, 1.0, ok);
        if (!ok) continue;
        const auto est = column(vm, c);
        out.push_back(verdict(tagged(identity, label, c == 0 ? "H1;xi=1;t=1" : "H2;xi=1;t=1"),
                              est.mean, closed, est.se()));
      }
    }
  } else if (identity == "interarrival-duality") {
    for (const char* label : {"config", "atom"}) {
      const auto lhs = column(interarrival_batch(label), 0);
      const auto rhs = column(inverse_grid_batch(label), 10);
      out.push_back(verdict(tagged(identity, label, "xi=1;t=1"), lhs.mean, rhs.mean,
                            combined_se(lhs, rhs)));
    }
  } else if (identity == "joint-interarrival") {
    for (const char* label : {"config", "atom"}) {
      const auto lhs = column(interarrival_batch(label), 2);
      const auto rhs = column(inverse_grid_batch(label), 11);
      out.push_back(verdict(tagged(identity, label, "xi=1,1;t=1,1"), lhs.mean, rhs.mean,
                            combined_se(lhs, rhs)));
    }
  } else if (identity == "joint-interarrival-laplace") {
    for (const char* label : {"config", "atom", "independent"}) {
      const auto est = column(interarrival_batch(label), 3);
      out.push_back(verdict(tagged(identity, label, "xi=1,1;eta=1,1"), est.mean,
                            analytic::inverse_joint_laplace(model(label), 1.0, 1.0, 1.0, 1.0),
                            est.se()));
    }
  } else if (identity == "poisson-zero") {
    for (const char* label : {"config", "atom", "independent"}) {
      const auto& vm = poisson_batch(label);
      for (std::size_t c = 0; c < 2; ++c) {
        bool ok = false;
        const double closed =
            ml_survival(label, c == 0 ? Component::first : Component::second, 1.0, 1.0, ok);
        if (!ok) continue;
        const auto est = column(vm, c);
        out.push_back(verdict(tagged(identity, label, c == 0 ? "N1;xi=1;t=1" : "N2;xi=1;t=1"),
                              est.mean, closed, est.se()));
      }
    }
  } else if (identity == "poisson-reduction") {
    const auto est = column(poisson_batch("drift"), 0);
    out.push_back(verdict(tagged(identity, "drift", "N1;xi=1;t=1"), est.mean, std::exp(-1.0),
                          est.se()));
  } else if (identity == "poisson-routes") {
    const auto& exact = poisson_batch("config");
    const auto& grid = poisson_grid_batch("config");
    for (std::size_t c = 0; c < 2; ++c) {
      const auto a = column(exact, 2 + c);
      const auto b = column(grid, c);
      out.push_back(verdict(tagged(identity, "config", c == 0 ? "E N1" : "E N2"), a.mean, b.mean,
                            combined_se(a, b)));
    }
  } else if (identity == "count-dependence") {
    for (const char* label : {"independent", "atom"}) {
      const auto& vm = poisson_batch(label);
      const double cov = vm.mean(4) - vm.mean(2) * vm.mean(3);
      const double se = vm.linear_se({0.0, 0.0, -vm.mean(3), -vm.mean(2), 1.0});
      const bool independent = std::string(label) == "independent";
      out.push_back(verdict(tagged(identity, label, "cov;t=1,1"), cov, 0.0, se,
                            independent ? Check::two_sided : Check::greater));
    }
  } else if (identity == "randomized-laplace-self") {
    const auto one = randomized_laplace([](double, double, Rng&) { return 1.0; }, 1.0, 1.0,
                                        opts_.budget, opts_.seed, batch_tag("self:one"),
                                        opts_.parallel);
    out.push_back(verdict(tagged(identity, "none", "g=1"), one.mean, 1.0, one.se()));
    const auto expo = randomized_laplace(
        [](double t1, double t2, Rng&) { return std::exp(-t1 - t2); }, 1.0, 1.0, opts_.budget,
        opts_.seed, batch_tag("self:exp"), opts_.parallel);
    out.push_back(verdict(tagged(identity, "none", "g=exp(-t1-t2)"), expo.mean, 0.25, expo.se()));
  } else {
    throw ConfigError("identities", "unknown identity '" + identity + "'");
  }
}

}  // namespace

std::vector<Verdict> run_identity_suite(const BivariateModel& model, const SuiteOptions& opts) {
  validate(model);
  if (opts.budget < 2) throw ConfigError("budget", "budget must be >= 2");
  if (!(opts.z_max > 0.0)) throw ConfigError("z_max", "z_max must be > 0");
  if (!(opts.dx > 0.0) || !(opts.dx <= 0.5)) throw ConfigError("dx", "dx must lie in (0, 0.5]");
  // The duality points sit on the grid only if dx divides 0.5.
  const double cells = 0.5 / opts.dx;
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
    throw ConfigError("dx", "dx must divide 0.5");
  }
  const auto& catalog = identity_catalog();
  const std::vector<std::string>& selected = opts.identities.empty() ? catalog : opts.identities;
  for (const auto& name : selected) {
    if (std::find(catalog.begin(), catalog.end(), name) == catalog.end()) {
      throw ConfigError("identities", "unknown identity '" + name + "'");
    }
  }
  Suite suite(model, opts);
  std::vector<Verdict> out;
  for (const auto& name : selected) suite.run(name, out);
  return out;
}

void write_verdicts_ndjson(std::ostream& os, const std::vector<Verdict>& verdicts) {
  for (const auto& v : verdicts) {
    nlohmann::ordered_json j;
    j["name"] = v.name;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["se"] = v.se;
    j["z"] = std::isfinite(v.z) ? nlohmann::ordered_json(v.z) : nlohmann::ordered_json(nullptr);
    j["pass"] = v.pass;
    os << j.dump() << '\n';
  }
}

}  // namespace anisub::verify
