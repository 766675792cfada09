/* Copyright 2026 The anisub Authors.
 * SPDX-License-Identifier: Apache-2.0 */

/* Compiles the public header as C and exercises a round trip. */

#include "anisub/anisub.h"

int anisub_c_smoke(double* value) {
  anisub_model* model = NULL;
  anisub_status status = anisub_model_independent(0.5, 1.0, 2.0, &model);
  if (status != ANISUB_OK) return (int)status;
  status = anisub_joint_exponent(model, 4.0, 1.0, value);
  anisub_model_free(model);
  return (int)status;
}
