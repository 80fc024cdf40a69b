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

#include "mlabc/rng.hpp"

namespace mlabc {

namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream_id) {
  constexpr std::uint64_t kLow = 0xffffffffULL;
  std::seed_seq seq{static_cast<std::uint32_t>(seed & kLow), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(stream_id & kLow), static_cast<std::uint32_t>(stream_id >> 32U),
                    0x6d6c6162U};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(seeded_engine(seed, stream_id)) {}

double RngStream::uniform() {
  // 53 random mantissa bits, shifted by half an ulp so 0 is never returned.
  const auto bits = engine_() >> 11U;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() { return normal_(engine_); }

double RngStream::exponential() {
  std::exponential_distribution<double> dist(1.0);
  return dist(engine_);
}

double RngStream::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(engine_);
}

}  // namespace mlabc
