// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "anisub/error.hpp"
#include "anisub/verify.hpp"

using namespace anisub;
using namespace anisub::verify;
using std::numbers::pi;

namespace {

BivariateModel mixed_model() {
  SpectralMeasure m;
  m.add_atom(0.0, 0.5).add_atom(pi / 4, 1.0);
  return SpectralStable::standard(Alpha(0.5), m);
}

}  // namespace

TEST_CASE("two-sided comparison") {
  const auto ok = compare("a", 1.0, 1.1, 0.05, 4.0);
  CHECK(ok.pass);
  CHECK(ok.z == doctest::Approx(2.0));
  CHECK_FALSE(compare("a", 1.0, 1.1, 0.01, 4.0).pass);
  CHECK(compare("a", 1.0, 1.039, 0.01, 4.0).pass);
}

TEST_CASE("zero standard error") {
  const auto same = compare("a", 2.0, 2.0, 0.0, 4.0);
  CHECK(same.pass);
  CHECK(same.z == 0.0);
  const auto diff = compare("a", 2.0, 2.0 + 1e-15, 0.0, 4.0);
  CHECK_FALSE(diff.pass);
  CHECK(std::isinf(diff.z));
}

TEST_CASE("one-sided and tolerance comparisons") {
  CHECK(compare("m", 1.2, 1.0, 0.1, 4.0, Check::at_most).pass);
  CHECK_FALSE(compare("m", 1.5, 1.0, 0.1, 4.0, Check::at_most).pass);
  CHECK(compare("m", 0.0, 1.0, 0.1, 4.0, Check::at_most).pass);
  CHECK(compare("l", 1.0, 1.0, 0.1, 4.0, Check::at_least).pass);
  CHECK_FALSE(compare("l", 0.999, 1.0, 0.1, 4.0, Check::at_least).pass);
  CHECK(compare("g", 2.0, 1.0, 0.2, 4.0, Check::greater).pass);
  CHECK_FALSE(compare("g", 1.7, 1.0, 0.2, 4.0, Check::greater).pass);
  CHECK(compare("t", 1.0, 1.0 + 5e-13, 0.0, 4.0, Check::tolerance, 1e-12).pass);
  CHECK_FALSE(compare("t", 1.0, 1.0 + 5e-12, 0.0, 4.0, Check::tolerance, 1e-12).pass);
  CHECK_FALSE(compare("t", std::numeric_limits<double>::quiet_NaN(), 1.0, 0.0, 4.0, Check::tolerance, 1.0).pass);
}

TEST_CASE("randomized Laplace estimator") {
  const auto one = randomized_laplace([](double, double, Rng&) { return 1.0; }, 2.0, 0.5, 100, 1, 1);
  CHECK(one.mean == doctest::Approx(1.0));
  CHECK(one.se() == doctest::Approx(0.0));
  const auto decay = randomized_laplace([](double t1, double t2, Rng&) { return std::exp(-t1 - 2 * t2); }, 1.0,
                                        1.5, 50000, 2, 2);
  CHECK(std::abs(decay.mean - 1.0 / (2.0 * 3.5)) < 3 * decay.se());
  CHECK_THROWS_AS(randomized_laplace([](double, double, Rng&) { return 1.0; }, 1.0, 1.0, 1, 1, 1), DomainError);
  CHECK_THROWS_AS(randomized_laplace([](double, double, Rng&) { return 1.0; }, 0.0, 1.0, 10, 1, 1), DomainError);
}

TEST_CASE("catalog names are unique") {
  const auto& cat = identity_catalog();
  CHECK(cat.size() == 28);
  std::set<std::string> names(cat.begin(), cat.end());
  CHECK(names.size() == cat.size());
  CHECK(names.count("subordinator-law") == 1);
  CHECK(names.count("poisson-zero") == 1);
}

TEST_CASE("suite options are validated") {
  SuiteOptions o;
  o.identities = {"no-such-identity"};
  try {
    run_identity_suite(mixed_model(), o);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "identities");
  }
  o.identities = {"tail-transform"};
  o.budget = 1;
  CHECK_THROWS_AS(run_identity_suite(mixed_model(), o), ConfigError);
  o.budget = 100;
  o.dx = 0.3;
  CHECK_THROWS_AS(run_identity_suite(mixed_model(), o), ConfigError);
  o.dx = 0.002;
  o.z_max = 0.0;
  CHECK_THROWS_AS(run_identity_suite(mixed_model(), o), ConfigError);
}

TEST_CASE("suite verdicts do not depend on the thread count") {
  SuiteOptions o;
  o.identities = {"subordinator-law", "tail-transform", "poisson-zero"};
  o.budget = 5000;
  o.parallel = {1, 4096};
  const auto a = run_identity_suite(mixed_model(), o);
  o.parallel = {3, 4096};
  const auto b = run_identity_suite(mixed_model(), o);
  REQUIRE(a.size() == b.size());
  REQUIRE_FALSE(a.empty());
  for (std::size_t i = 0; i < a.size(); ++i) {
    INFO(a[i].name);
    CHECK(a[i].name == b[i].name);
    CHECK(a[i].lhs == b[i].lhs);
    CHECK(a[i].se == b[i].se);
    CHECK(a[i].pass == b[i].pass);
    CHECK(a[i].pass);
  }
}

TEST_CASE("verdict NDJSON") {
  std::vector<Verdict> v{compare("x", 1.0, 1.0, 0.0, 4.0),
                         compare("y", 1.0, 2.0, 0.0, 4.0)};
  std::ostringstream os;
  write_verdicts_ndjson(os, v);
  std::istringstream in(os.str());
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.contains("name"));
    CHECK(j.contains("lhs"));
    CHECK(j.contains("rhs"));
    CHECK(j.contains("se"));
    CHECK(j.contains("z"));
    CHECK(j["pass"].get<bool>() == (n == 0));
    ++n;
  }
  CHECK(n == 2);
}
