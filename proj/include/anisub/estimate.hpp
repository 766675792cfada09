// Copyright 2026 The anisub Authors.
// SPDX-License-Identifier: Apache-2.0

// Mergeable Monte Carlo accumulators and a deterministic block-parallel
// reduction.

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <thread>
#include <vector>

namespace anisub {

/// Running mean and centered second moment (Welford / Chan et al.).
struct MCEstimate {
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t n = 0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const MCEstimate& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double delta = other.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    n += other.n;
  }

  double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
  double se() const { return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

/// Mean vector and co-moment matrix of a fixed number of variables.
class VectorMoments {
 public:
  VectorMoments() = default;
  explicit VectorMoments(std::size_t dim) : mean_(dim, 0.0), comoment_(dim * dim, 0.0) {}

  std::size_t dim() const noexcept { return mean_.size(); }
  std::uint64_t n() const noexcept { return n_; }

  void add(const double* x) {
    ++n_;
    const std::size_t d = dim();
    const double inv = 1.0 / static_cast<double>(n_);
    delta_.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      delta_[i] = x[i] - mean_[i];
      mean_[i] += delta_[i] * inv;
    }
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) comoment_[i * d + j] += delta_[i] * (x[j] - mean_[j]);
    }
  }

  void add(std::initializer_list<double> x) { add(std::data(x)); }

  void merge(const VectorMoments& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
      *this = other;
      return;
    }
    const std::size_t d = dim();
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double total = na + nb;
    std::vector<double> delta(d);
    for (std::size_t i = 0; i < d; ++i) delta[i] = other.mean_[i] - mean_[i];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        comoment_[i * d + j] += other.comoment_[i * d + j] + delta[i] * delta[j] * na * nb / total;
      }
    }
    for (std::size_t i = 0; i < d; ++i) mean_[i] += delta[i] * nb / total;
    n_ += other.n_;
  }

  double mean(std::size_t i) const { return mean_[i]; }

  /// Unbiased sample covariance of variables i and j.
  double covariance(std::size_t i, std::size_t j) const {
    return n_ > 1 ? comoment_[i * dim() + j] / static_cast<double>(n_ - 1) : 0.0;
  }

  /// Standard error of sum_i g_i mean_i (delta method for a smooth function
  /// with gradient g at the means).
  double linear_se(const std::vector<double>& g) const {
    if (n_ < 2) return 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) v += g[i] * g[j] * covariance(i, j);
    }
    return std::sqrt(std::max(v, 0.0) / static_cast<double>(n_));
  }

 private:
  std::vector<double> mean_;
  std::vector<double> comoment_;
  std::vector<double> delta_;
  std::uint64_t n_ = 0;
};

struct ParallelOptions {
  unsigned threads = 1;
  std::uint64_t block_size = 4096;
};

/// Splits [0, n) into fixed-size blocks, evaluates fn(begin, end) for each
/// block on up to `threads` workers, and merges the block results in block
/// order. The result is therefore independent of the thread count.
/// Acc must be default-constructible and provide merge(const Acc&).
template <class Acc, class Fn>
Acc reduce_blocks(std::uint64_t n, const ParallelOptions& opts, Fn&& fn) {
  const std::uint64_t bs = std::max<std::uint64_t>(opts.block_size, 1);
  const std::uint64_t blocks = (n + bs - 1) / bs;
  std::vector<std::optional<Acc>> results(blocks);
  std::vector<std::exception_ptr> errors(blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        results[b].emplace(fn(b * bs, std::min(n, (b + 1) * bs)));
      } catch (...) {
        errors[b] = std::current_exception();
      }
    }
  };
  const unsigned threads =
      static_cast<unsigned>(std::clamp<std::uint64_t>(opts.threads, 1, std::max<std::uint64_t>(blocks, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Acc total{};
  for (auto& r : results) total.merge(*r);
  return total;
}

}  // namespace anisub
