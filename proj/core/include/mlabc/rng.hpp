// Copyright 2026 The mlabc Authors
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

#ifndef MLABC_RNG_HPP
#define MLABC_RNG_HPP

#include <cstdint>
#include <random>

namespace mlabc {

/// Stream identifier for replicate `replicate` and task `index` within it.
constexpr std::uint64_t derive_stream_id(std::uint64_t replicate, std::uint64_t index) {
  return (replicate << 32U) + index;
}

/// splitmix64 finalizer of base + salt: a well-spread seed for an independent task.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

/**
 * A seeded, independently owned source of randomness.
 *
 * The engine state is a pure function of (seed, stream_id): two streams built
 * from the same pair produce bitwise identical draws. Streams are values;
 * copying one forks the sequence. A stream must not be shared between
 * concurrent callers.
 */
class RngStream {
 public:
  using engine_type = std::mt19937_64;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  [[nodiscard]] std::uint64_t seed() const { return seed_; }
  [[nodiscard]] std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Unit-rate exponential.
  double exponential();
  /// Gamma with the given shape and unit scale.
  double gamma(double shape);

  engine_type& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  engine_type engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace mlabc

#endif  // MLABC_RNG_HPP
