// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#include "anisub/anisub.h"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <string>

#include "anisub/analytic.hpp"
#include "anisub/cli.hpp"
#include "anisub/config.hpp"
#include "anisub/error.hpp"
#include "anisub/inverse.hpp"
#include "anisub/simulate.hpp"

struct anisub_model {
  anisub::BivariateModel model;
  std::string kind;
};

struct anisub_path {
  anisub::simulate::SubordinatorPath path;
};

namespace {

thread_local std::string g_last_error;

anisub_status fail(anisub_status status, const std::string& what) {
  g_last_error = what;
  return status;
}

// Runs fn and translates exceptions into status codes.
template <class Fn>
anisub_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return ANISUB_OK;
  } catch (const anisub::ConfigError& e) {
    const std::string field = e.field().empty() ? "" : e.field() + ": ";
    return fail(ANISUB_ERR_CONFIG, field + e.what());
  } catch (const anisub::SingularInputError& e) {
    return fail(ANISUB_ERR_SINGULAR, e.what());
  } catch (const anisub::DomainError& e) {
    return fail(ANISUB_ERR_DOMAIN, e.what());
  } catch (const anisub::TruncationError& e) {
    return fail(ANISUB_ERR_TRUNCATED, e.what());
  } catch (const std::exception& e) {
    return fail(ANISUB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ANISUB_ERR_INTERNAL, "unknown error");
  }
}

anisub_status make_model(anisub::BivariateModel model, anisub_model** out) {
  anisub::validate(model);
  auto* handle = new anisub_model{std::move(model), {}};
  handle->kind = anisub::model_kind(handle->model);
  *out = handle;
  return ANISUB_OK;
}

anisub::SpectralMeasure atoms(const double* angles, const double* weights, size_t n) {
  if (n == 0) throw anisub::ConfigError("atom_angles", "need at least one atom");
  if (!angles || !weights) throw anisub::DomainError("atom arrays must not be null");
  anisub::SpectralMeasure m;
  for (size_t i = 0; i < n; ++i) m.add_atom(angles[i], weights[i]);
  return m;
}

}  // namespace

extern "C" {

const char* anisub_version(void) { return anisub::cli::version(); }

const char* anisub_last_error(void) { return g_last_error.c_str(); }

anisub_status anisub_model_spectral(double alpha, double kappa, const double* angles,
                                    const double* weights, size_t n_atoms, anisub_model** out) {
  if (!out) return fail(ANISUB_ERR_NULL, "out is null");
  return guarded([&] {
    if (!(kappa > 0.0)) throw anisub::ConfigError("kappa", "kappa must be > 0");
    make_model(anisub::SpectralStable{anisub::Alpha(alpha), kappa, atoms(angles, weights, n_atoms)},
               out);
  });
}

anisub_status anisub_model_spectral_intensity(double alpha, double c, const double* angles,
                                              const double* weights, size_t n_atoms,
                                              anisub_model** out) {
  if (!out) return fail(ANISUB_ERR_NULL, "out is null");
  return guarded([&] {
    make_model(anisub::SpectralStable::with_intensity(anisub::Alpha(alpha), c,
                                                      atoms(angles, weights, n_atoms)),
               out);
  });
}

anisub_status anisub_model_independent(double alpha, double scale1, double scale2,
                                       anisub_model** out) {
  if (!out) return fail(ANISUB_ERR_NULL, "out is null");
  return guarded([&] {
    make_model(anisub::IndependentStable{anisub::Alpha(alpha), scale1, scale2}, out);
  });
}

anisub_status anisub_model_common_factor(double alpha1, double scale1, double alpha2,
                                         double scale2, double alpha_g, double scale_g, double c1,
                                         double c2, anisub_model** out) {
  if (!out) return fail(ANISUB_ERR_NULL, "out is null");
  return guarded([&] {
    anisub::CommonFactor cf;
    cf.t1 = {alpha1, scale1};
    cf.t2 = {alpha2, scale2};
    cf.g = {alpha_g, scale_g};
    cf.c1 = c1;
    cf.c2 = c2;
    make_model(cf, out);
  });
}

anisub_status anisub_model_from_config(const char* path, anisub_model** out) {
  if (!path || !out) return fail(ANISUB_ERR_NULL, "path or out is null");
  return guarded([&] { make_model(anisub::cli::load_config(path).model, out); });
}

void anisub_model_free(anisub_model* model) { delete model; }

const char* anisub_model_kind(const anisub_model* model) {
  return model ? model->kind.c_str() : "";
}

anisub_status anisub_joint_exponent(const anisub_model* model, double eta1, double eta2,
                                    double* out) {
  if (!model || !out) return fail(ANISUB_ERR_NULL, "model or out is null");
  return guarded([&] { *out = anisub::analytic::joint_exponent(model->model, eta1, eta2); });
}

anisub_status anisub_marginal_exponent(const anisub_model* model, int component, double eta,
                                       double* out) {
  if (!model || !out) return fail(ANISUB_ERR_NULL, "model or out is null");
  if (component != 1 && component != 2) return fail(ANISUB_ERR_DOMAIN, "component must be 1 or 2");
  return guarded([&] {
    *out = anisub::analytic::marginal_exponent(
        model->model, component == 1 ? anisub::Component::first : anisub::Component::second, eta);
  });
}

anisub_status anisub_tail_transform(const anisub_model* model, double eta1, double eta2,
                                    double* out) {
  if (!model || !out) return fail(ANISUB_ERR_NULL, "model or out is null");
  return guarded([&] { *out = anisub::analytic::tail_transform(model->model, eta1, eta2); });
}

anisub_status anisub_biparameter_laplace(const anisub_model* model, double t1, double t2,
                                         double eta1, double eta2, double* out) {
  if (!model || !out) return fail(ANISUB_ERR_NULL, "model or out is null");
  return guarded(
      [&] { *out = anisub::analytic::biparameter_laplace(model->model, t1, t2, eta1, eta2); });
}

anisub_status anisub_covariance_laplace(const anisub_model* model, double eta1, double eta2,
                                        double* out) {
  if (!model || !out) return fail(ANISUB_ERR_NULL, "model or out is null");
  return guarded([&] { *out = anisub::analytic::covariance_laplace(model->model, eta1, eta2); });
}

anisub_status anisub_mittag_leffler(double alpha, double x, double* out) {
  if (!out) return fail(ANISUB_ERR_NULL, "out is null");
  return guarded([&] { *out = anisub::analytic::mittag_leffler(alpha, x); });
}

anisub_status anisub_path_sample(const anisub_model* model, double x_max, double dx,
                                 uint64_t seed, uint64_t stream, anisub_path** out) {
  if (!model || !out) return fail(ANISUB_ERR_NULL, "model or out is null");
  return guarded([&] {
    auto path = anisub::simulate::sample_path(model->model, x_max, dx, anisub::RngSpec{seed, stream});
    *out = new anisub_path{std::move(path)};
  });
}

void anisub_path_free(anisub_path* path) { delete path; }

size_t anisub_path_size(const anisub_path* path) { return path ? path->path.h1.size() : 0; }

double anisub_path_dx(const anisub_path* path) { return path ? path->path.dx : 0.0; }

anisub_status anisub_path_values(const anisub_path* path, double* h1, double* h2,
                                 size_t capacity) {
  if (!path || !h1 || !h2) return fail(ANISUB_ERR_NULL, "path or buffer is null");
  const size_t n = path->path.h1.size();
  if (capacity < n) return fail(ANISUB_ERR_BUFFER, "buffer holds fewer than path size values");
  std::copy(path->path.h1.begin(), path->path.h1.end(), h1);
  std::copy(path->path.h2.begin(), path->path.h2.end(), h2);
  g_last_error.clear();
  return ANISUB_OK;
}

anisub_status anisub_inverse_sample(const anisub_model* model, double t1, double t2, double dx,
                                    uint64_t seed, uint64_t stream, double* l1, double* l2,
                                    int* on_diagonal) {
  if (!model || !l1 || !l2) return fail(ANISUB_ERR_NULL, "model or output is null");
  return guarded([&] {
    const auto s =
        anisub::inverse::sample_inverse(model->model, t1, t2, dx, anisub::RngSpec{seed, stream});
    if (s.truncated) throw anisub::TruncationError("inverse sample exhausted its cell budget");
    *l1 = s.l1;
    *l2 = s.l2;
    if (on_diagonal) *on_diagonal = s.on_diagonal ? 1 : 0;
  });
}

int anisub_run(const char* command, const anisub_run_options* options, char* diag,
               size_t diag_capacity) {
  std::ostringstream messages;
  int code = anisub::cli::kInternalError;
  try {
    anisub::cli::RunOptions opts;
    if (options) {
      if (options->config_path) opts.config_path = options->config_path;
      if (options->out_dir) opts.out_dir = options->out_dir;
      if (options->has_seed) opts.seed = options->seed;
      if (options->threads > 0) opts.threads = options->threads;
      if (options->format) opts.format = std::string(options->format);
    }
    code = anisub::cli::run(command ? command : "", opts, messages);
  } catch (const std::exception& e) {
    messages << "anisub: " << e.what() << '\n';
  }
  g_last_error = messages.str();
  if (diag && diag_capacity > 0) {
    const size_t n = std::min(diag_capacity - 1, g_last_error.size());
    std::memcpy(diag, g_last_error.data(), n);
    diag[n] = '\0';
  }
  return code;
}

}  // extern "C"
