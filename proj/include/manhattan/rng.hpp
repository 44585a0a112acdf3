// SPDX-License-Identifier: Apache-2.0
//
// manhattan-emf: rate and EMF exposure analysis for Manhattan street grids
// Copyright (C) 2026 The manhattan-emf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace manhattan {

// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
// independent sequence; split() derives child streams so that per-task
// sequences do not depend on scheduling order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  // Child generator keyed by (this stream, substream).
  CounterRng split(std::uint64_t substream) const noexcept;

  // Uniform double in the open interval (0, 1).
  double uniform() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int next_ = 4;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Poisson count with the given mean (0 for mean <= 0).
std::int64_t sample_poisson(CounterRng& rng, double mean);
// Standard normal via Box-Muller; consumes two uniforms, keeps no state.
double sample_normal(CounterRng& rng);
// Unit-rate exponential.
double sample_exponential(CounterRng& rng);

}  // namespace manhattan
