// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace anisub {

/// Shortest round-trip decimal representation, independent of the C locale.
std::string format_number(double value);

}  // namespace anisub
