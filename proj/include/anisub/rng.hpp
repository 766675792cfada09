// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>

namespace anisub {

/// (seed, stream) pair naming one independent random substream.
struct RngSpec {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// Counter-based generator. The seed is the Philox key, the stream occupies
/// the upper 64 bits of the 128-bit counter and the draw index the lower 64,
/// so distinct (seed, stream) pairs never share a block.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngSpec spec);
  Rng(std::uint64_t seed, std::uint64_t stream) : Rng(RngSpec{seed, stream}) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return next_u64(); }
  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Exponential with mean 1.
  double exponential();
  /// Standard normal (Box-Muller, both variates used).
  double normal();

  RngSpec spec() const noexcept { return spec_; }

 private:
  void refill();

  RngSpec spec_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Stream identifiers are (tag << 40) | replicate, leaving 2^40 replicates per
/// tag and 2^24 tags.
constexpr std::uint64_t stream_id(std::uint32_t tag, std::uint64_t replicate) {
  return (static_cast<std::uint64_t>(tag) << 40) | (replicate & ((std::uint64_t{1} << 40) - 1));
}

}  // namespace anisub
