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

#include <optional>

#include "manhattan/common.hpp"
#include "manhattan/rng.hpp"

namespace manhattan {

enum class LinkCategory { LOS = 0, NLOS = 1, Diffraction = 2 };
const char* to_string(LinkCategory c);

// Distribution of the squared fading gain |h|^2.
struct FadingSpec {
  enum class Kind { Rice, ExponentialPower, Deterministic };
  Kind kind = Kind::Rice;
  double K = 0.0;     // Rice factor
  double rate = 1.0;  // ExponentialPower rate; mean 1/rate

  static FadingSpec rice(double K) { return {Kind::Rice, K, 1.0}; }
  static FadingSpec rayleigh() { return {Kind::Rice, 0.0, 1.0}; }
  static FadingSpec exponential(double rate) { return {Kind::ExponentialPower, 0.0, rate}; }
  // Point mass at 1; used for hand-checkable single-link tests.
  static FadingSpec none() { return {Kind::Deterministic, 0.0, 1.0}; }

  void validate() const;
};

cplx fading_cf(const FadingSpec& spec, cplx t);
// fading_cf(t) - 1 without cancellation for small |t|.
cplx fading_cf_minus_one(const FadingSpec& spec, cplx t);
double fading_mean(const FadingSpec& spec);
double sample_fading_power(const FadingSpec& spec, CounterRng& rng);
double sample_fading_power(const FadingSpec& spec, std::uint64_t seed);

struct PropagationParams {
  double tx_power_P_B = 1.0;  // W
  double frequency_f = 3.6e9;  // Hz
  double alpha_L = 1.7;
  double alpha_N = 2.5;
  double alpha_D = 3.5;
  // Intercepts; unset means (4 pi f / c)^2.
  std::optional<double> kappa_L, kappa_N, kappa_D;
  double rice_K = 6.0;
  double q_lambda = 0.031;
  double nu = 1.0;
  double noise_W = 0.0;        // W
  double bandwidth_B = 100e6;  // Hz
  // Per-category overrides; defaults are Rice(K) for L/N and Rayleigh for D.
  std::optional<FadingSpec> fading_L, fading_N, fading_D;

  double free_space_kappa() const;
  double kappa(LinkCategory c) const;
  double alpha(LinkCategory c) const;
  FadingSpec fading(LinkCategory c) const;
  double k_f() const;
  void validate() const;
};

double berg_distance(double s1, double s2, double theta, const PropagationParams& p);

// kappa^-1 dist^-alpha, where dist is sqrt(d^2 + dH^2) for L/N and the
// Berg distance (geometry_arg) for diffraction.
double path_loss(LinkCategory c, double geometry_arg, double delta_H, const PropagationParams& p);

}  // namespace manhattan
