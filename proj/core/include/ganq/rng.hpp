// Copyright 2026 The GANQ Authors.
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

#ifndef GANQ_RNG_HPP_
#define GANQ_RNG_HPP_

#include <cstdint>

namespace ganq {

// Counter-based 64-bit generator.
//
// Output i of stream (seed, stream_id) is mix64(key + (i + 1) * kGolden), where
// key = mix64(seed ^ mix64(stream_id + kGolden)) and mix64 is the SplitMix64
// finalizer. Every draw is a pure function of (seed, stream_id, counter), so
// streams for different seeds or components never interact, and a run's
// numbers do not depend on thread scheduling.
//
// Distributions are implemented here rather than through <random> so that
// sequences are identical across standard library implementations:
//   uniform()       53-bit mantissa, in [0, 1)
//   normal()        Box-Muller, one cached spare
//   uniform_int(n)  Lemire's multiply-shift with rejection
class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream_id = 0);

  std::uint64_t next_u64();
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_int(std::uint64_t n);
  bool bernoulli(double p) { return uniform() < p; }

  // Derives an independent generator; children of the same parent with
  // distinct ids never share a stream.
  Rng split(std::uint64_t child_id) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix64(std::uint64_t z);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

// Well-known stream ids; keep them distinct.
namespace streams {
inline constexpr std::uint64_t kEnvironment = 1;
inline constexpr std::uint64_t kAgent = 2;
inline constexpr std::uint64_t kReplay = 3;
inline constexpr std::uint64_t kInit = 4;
inline constexpr std::uint64_t kDiagnostic = 5;
}  // namespace streams

}  // namespace ganq

#endif  // GANQ_RNG_HPP_
