// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Closed-form quantities of bivariate subordinators and their inverses.
// Every function here is pure; all throw DomainError outside their domain.

#pragma once

#include <optional>

#include "anisub/model.hpp"

namespace anisub::analytic {

/// Marginal Laplace exponent T_k(eta) of H_k.
double marginal_exponent(const BivariateModel& model, Component k, double eta);

/// Bivariate Laplace exponent S(eta1, eta2): E exp(-eta.H(x)) = exp(-x S).
double joint_exponent(const BivariateModel& model, double eta1, double eta2);

/// Joint upper tail of the Levy measure, phi((t1, inf) x (t2, inf)).
double levy_tail(const BivariateModel& model, double t1, double t2);

/// (T_1(eta1) + T_2(eta2) - S(eta1, eta2)) / (eta1 eta2), the double Laplace
/// transform of levy_tail.
double tail_transform(const BivariateModel& model, double eta1, double eta2);

/// One-parameter Mittag-Leffler function E_alpha(x) for 0 < alpha <= 1 and
/// x <= 0, absolute accuracy 1e-8 or better.
double mittag_leffler(double alpha, double x);

/// E exp(-eta1 H_1(t1) - eta2 H_2(t2)).
double biparameter_laplace(const BivariateModel& model, double t1, double t2, double eta1,
                           double eta2);

enum class Region { x1_below_x2, x1_above_x2, diagonal };

/// Time-Laplace transform of the law of (L_1(t1), L_2(t2)): the absolutely
/// continuous density for the two off-diagonal regions, and the density of
/// the singular part for Region::diagonal (where x1 must equal x2).
double inverse_density_laplace(const BivariateModel& model, Region region, double x1, double x2,
                               double eta1, double eta2);

/// Time-Laplace transform of cov(L_1(t1), L_2(t2)). Throws SingularInputError
/// when T_1, T_2 or S vanishes.
double covariance_laplace(const BivariateModel& model, double eta1, double eta2);

/// Time-Laplace transform of E[L_1(t1) L_2(t2)].
double mixed_moment_laplace(const BivariateModel& model, double eta1, double eta2);

/// Time-Laplace transform of the diagonal mass P(L_1(t1) = L_2(t2)),
/// (T_1 + T_2 - S) / (eta1 eta2 S).
double diagonal_mass_laplace(const BivariateModel& model, double eta1, double eta2);

/// Space-time transform: double time-Laplace transform of
/// E exp(-xi1 L_1(t1) - xi2 L_2(t2)).
double inverse_joint_laplace(const BivariateModel& model, double xi1, double xi2, double eta1,
                             double eta2);

/// Double time-Laplace transform of the characteristic function of
/// (B_1(L_1(t1)), B_2(L_2(t2))) with independent standard Brownian B.
double subdiffusion_char_laplace(const BivariateModel& model, double xi1, double xi2,
                                 double eta1, double eta2);

/// Same, for the standard spectral-stable model built from (alpha, m).
double subdiffusion_char_laplace(Alpha alpha, const SpectralMeasure& m, double xi1, double xi2,
                                 double eta1, double eta2);

/// Exponential upper bound on P(L_1(t1) >= x1, L_2(t2) >= x2) for a given
/// (eta1, eta2) >= 0.
double survival_bound(const BivariateModel& model, double x1, double x2, double t1, double t2,
                      double eta1, double eta2);

/// The marginal of component k as a stable Bernstein function, when it is one
/// (spectral and independent stable always; common-factor only if the
/// relevant descriptors share alpha).
std::optional<StableBernstein> stable_marginal(const BivariateModel& model, Component k);

}  // namespace anisub::analytic
