// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// E_alpha(x) = sum_k x^k / Gamma(1 + alpha k) for x <= 0.
//
// Near the origin the power series is summed directly. Once the partial sums
// cancel badly (sum of |terms| beyond kSeriesMagnitudeLimit) we switch to the
// Laplace-type representation, valid for 0 < alpha < 1 and z = -x > 0:
//
//   E_alpha(-z) = sin(alpha pi) / (alpha pi)
//                 * int_0^inf exp(-z^(1/alpha) u^(1/alpha)) / (u^2 + 2 u cos(alpha pi) + 1) du
//
// which has a smooth, positive integrand.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "anisub/analytic.hpp"
#include "anisub/error.hpp"

namespace anisub::analytic {

namespace {

constexpr double kSeriesMagnitudeLimit = 1e5;
constexpr double kSeriesSwitchAbsX = 5.0;

struct SeriesResult {
  double value;
  bool reliable;
};

SeriesResult series(double alpha, double x) {
  const double log_abs_x = std::log(-x);
  double sum = 1.0;
  double magnitude = 1.0;
  for (int k = 1; k < 10000; ++k) {
    const double log_term = k * log_abs_x - std::lgamma(1.0 + alpha * k);
    const double abs_term = std::exp(log_term);
    sum += (k % 2 == 0) ? abs_term : -abs_term;
    magnitude += abs_term;
    if (magnitude > kSeriesMagnitudeLimit) return {sum, false};
    // Terms decay monotonically once Gamma dominates, so a small term ends it.
    if (abs_term < 1e-16 * std::max(1.0, std::abs(sum)) && k * alpha > -x) {
      return {sum, true};
    }
  }
  return {sum, false};
}

double integral(double alpha, double z) {
  // With v = z u the exponential decays on v ~ 1 for every z, so each
  // piece below is O(1) and a relative tolerance is cheap to meet.
  const double phi = alpha * std::numbers::pi;
  const double cos_phi = std::cos(phi);
  const double inv_alpha = 1.0 / alpha;
  auto f = [&](double v) {
    const double w = v / z;
    const double denom = w * w + 2.0 * w * cos_phi + 1.0;
    if (v == 0.0) return 1.0 / denom;
    return std::exp(-std::pow(v, inv_alpha)) / denom;
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kDepth = 15;
  constexpr double kTol = 1e-13;
  // For alpha > 1/2 the kernel peaks at v = -z cos(phi), with height
  // 1 / sin^2(phi); split there as well.
  double cuts[4] = {0.0, 1.0, 1.0, std::numeric_limits<double>::infinity()};
  if (cos_phi < 0.0) {
    const double peak = -z * cos_phi;
    cuts[1] = std::min(1.0, peak);
    cuts[2] = std::max(1.0, peak);
  }
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (cuts[i + 1] > cuts[i]) total += Quad::integrate(f, cuts[i], cuts[i + 1], kDepth, kTol);
  }
  return std::sin(phi) / phi * total / z;
}

}  // namespace

double mittag_leffler(double alpha, double x) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw DomainError("mittag_leffler: alpha must lie in (0, 1]");
  }
  if (!(x <= 0.0)) throw DomainError("mittag_leffler: argument must be <= 0");
  if (x == 0.0) return 1.0;
  if (alpha == 1.0) return std::exp(x);
  if (-x <= kSeriesSwitchAbsX) {
    const SeriesResult s = series(alpha, x);
    if (s.reliable) return s.value;
  }
  return integral(alpha, -x);
}

}  // namespace anisub::analytic
