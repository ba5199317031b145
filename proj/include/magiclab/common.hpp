// Copyright 2026 The magiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace magiclab {

using cplx = std::complex<double>;

// |<P>| above this counts toward the Hartley (n = 0) support.
inline constexpr double kSupportThreshold = 1e-8;

// Measurement branches with probability below this are treated as absent.
inline constexpr double kBranchProbFloor = 1e-12;

// States handed to the library must be normalized to within this.
inline constexpr double kNormTolerance = 1e-10;

// Magnitudes below this are flushed to zero before computing |x|^{2n},
// so that exp(2n log|x|) never sees a denormal or zero argument.
inline constexpr double kPowerFloor = 1e-300;

// Thrown when an operation would exceed its memory budget. Carries the
// estimate so callers can report actionable numbers.
class resource_error : public std::runtime_error {
 public:
  resource_error(const std::string& what, std::size_t required_bytes,
                 std::size_t budget_bytes)
      : std::runtime_error(what),
        required_(required_bytes),
        budget_(budget_bytes) {}
  std::size_t required_bytes() const noexcept { return required_; }
  std::size_t budget_bytes() const noexcept { return budget_; }

 private:
  std::size_t required_;
  std::size_t budget_;
};

// Worker count for parallel loops: hardware concurrency, capped by the
// MAGIC_LAB_THREADS environment variable when it is set to a positive value.
unsigned worker_thread_count();

// Neumaier compensated summation. value() includes the correction term, and
// merge() is exact enough to keep chunked reductions independent of the
// number of worker threads.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  void merge(const KahanSum& other) {
    add(other.sum);
    comp += other.comp;
  }
  double value() const { return sum + comp; }
};

namespace detail {

// Fixed chunk grid: boundaries depend only on the trip count, never on the
// worker count, so chunked reductions are bit-stable across machines with
// different core counts.
inline std::size_t chunk_size_for(std::size_t total) {
  std::size_t chunk = (total + 1023) / 1024;
  if (chunk < 4096) chunk = 4096;
  return chunk;
}

void run_chunks(std::size_t n_chunks, unsigned workers,
                const std::function<void(std::size_t)>& chunk_fn);

}  // namespace detail

// Applies fn(chunk_index, begin, end) over a deterministic chunk grid,
// possibly from several threads. fn must only write chunk-local state.
template <class Fn>
std::size_t parallel_for_chunks(std::size_t total, Fn&& fn) {
  if (total == 0) return 0;
  const std::size_t chunk = detail::chunk_size_for(total);
  const std::size_t n_chunks = (total + chunk - 1) / chunk;
  const unsigned workers = worker_thread_count();
  if (workers <= 1 || n_chunks == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      fn(c, c * chunk, std::min(total, (c + 1) * chunk));
    }
    return n_chunks;
  }
  detail::run_chunks(n_chunks, workers, [&](std::size_t c) {
    fn(c, c * chunk, std::min(total, (c + 1) * chunk));
  });
  return n_chunks;
}

// Deterministic parallel sum of f(i) over [0, total): per-chunk compensated
// sums merged in chunk order.
template <class PerIndex>
double parallel_sum(std::size_t total, PerIndex&& f) {
  const std::size_t chunk = detail::chunk_size_for(total);
  const std::size_t n_chunks = total == 0 ? 0 : (total + chunk - 1) / chunk;
  std::vector<KahanSum> partial(n_chunks);
  parallel_for_chunks(total, [&](std::size_t c, std::size_t b, std::size_t e) {
    KahanSum acc;
    for (std::size_t i = b; i < e; ++i) acc.add(f(i));
    partial[c] = acc;
  });
  KahanSum out;
  for (const KahanSum& p : partial) out.merge(p);
  return out.value();
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based stream derivation: the stream for (root, index) does not
// depend on how many streams were drawn before it, so parallel consumers and
// sequential consumers see identical randomness.
inline std::uint64_t stream_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t s = root ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

inline std::mt19937_64 make_stream(std::uint64_t root, std::uint64_t index) {
  return std::mt19937_64(stream_seed(root, index));
}

// x^{2n} for x >= 0 via exp(2n log x), with a hard flush to zero below
// kPowerFloor. Used everywhere a non-integer Renyi power appears.
inline double pow_2n(double abs_x, double n) {
  if (abs_x < kPowerFloor) return 0.0;
  return std::exp(2.0 * n * std::log(abs_x));
}

// Shortest round-trip decimal representation ("%.17g").
std::string format_g17(double x);

}  // namespace magiclab
