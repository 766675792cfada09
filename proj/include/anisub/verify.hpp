// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Monte Carlo checks of closed-form identities, reported as z-score verdicts.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "anisub/estimate.hpp"
#include "anisub/model.hpp"
#include "anisub/rng.hpp"

namespace anisub::verify {

enum class Check {
  two_sided,  // |lhs - rhs| <= z_max se
  at_most,    // lhs <= rhs + z_max se
  at_least,   // lhs >= rhs, no slack
  greater,    // lhs - rhs > z_max se
  tolerance,  // |lhs - rhs| <= tol
};

struct Verdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;
  Check check = Check::two_sided;
  double tol = 0.0;
};

/// Builds a verdict; z and pass are pure functions of the arguments. With
/// se = 0, z is 0 when lhs == rhs and infinite otherwise.
Verdict compare(std::string name, double lhs, double rhs, double se, double z_max,
                Check check = Check::two_sided, double tol = 0.0);

/// g(t1, t2, rng) evaluated at independent exponential times.
using TimeFunction = std::function<double(double, double, Rng&)>;

/// Estimates int int exp(-eta1 t1 - eta2 t2) E g(t1, t2) dt1 dt2 as the mean
/// of g(E1, E2) / (eta1 eta2) with E_i ~ Exp(eta_i), replicate r drawing
/// from stream_id(tag, r). Throws DomainError when n_reps < 2.
MCEstimate randomized_laplace(const TimeFunction& g, double eta1, double eta2,
                              std::uint64_t n_reps, std::uint64_t seed, std::uint32_t tag,
                              const ParallelOptions& opts = {});

struct SuiteOptions {
  std::vector<std::string> identities;  // empty selects the whole catalog
  std::uint64_t budget = 100000;        // replicates per sample batch
  double z_max = 4.0;
  double dx = 0.002;
  std::uint64_t seed = 42;
  ParallelOptions parallel;
};

/// Names accepted in SuiteOptions::identities.
const std::vector<std::string>& identity_catalog();

/// Runs the selected identities. Besides `model` the suite uses three
/// companion models sharing its stability index: "atom" (standard spectral
/// model with a single atom at pi/4), "independent" (unit scales) and
/// "common-factor". Throws ConfigError for an unknown identity name.
std::vector<Verdict> run_identity_suite(const BivariateModel& model, const SuiteOptions& opts);

/// One NDJSON object per verdict: {"name","lhs","rhs","se","z","pass"}.
void write_verdicts_ndjson(std::ostream& os, const std::vector<Verdict>& verdicts);

}  // namespace anisub::verify
