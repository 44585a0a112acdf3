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

#include "manhattan/channel.hpp"

namespace manhattan {

const char* to_string(LinkCategory c) {
  switch (c) {
    case LinkCategory::LOS: return "L";
    case LinkCategory::NLOS: return "N";
    case LinkCategory::Diffraction: return "D";
  }
  return "?";
}

void FadingSpec::validate() const {
  if (kind == Kind::Rice && !(K >= 0.0)) throw DomainError("Rice K must be non-negative");
  if (kind == Kind::ExponentialPower && !(rate > 0.0))
    throw DomainError("exponential fading rate must be positive");
}

namespace {

void check_argument(cplx t) {
  // E[exp(j t X)] with X >= 0 converges only when Im t >= 0.
  if (t.imag() < -1e-300 || !std::isfinite(t.real()) || !std::isfinite(t.imag()))
    throw DomainError("fading CF argument outside the convergence half-plane");
}

}  // namespace

cplx fading_cf(const FadingSpec& spec, cplx t) { return 1.0 + fading_cf_minus_one(spec, t); }

cplx fading_cf_minus_one(const FadingSpec& spec, cplx t) {
  check_argument(t);
  constexpr cplx j{0.0, 1.0};
  switch (spec.kind) {
    case FadingSpec::Kind::Deterministic:
      return expm1(j * t);
    case FadingSpec::Kind::ExponentialPower: {
      const cplx jt = j * t;
      return jt / (spec.rate - jt);
    }
    case FadingSpec::Kind::Rice: {
      const double k1 = spec.K + 1.0;
      const cplx jt = j * t;
      const cplx den = k1 - jt;
      const cplx a_minus_1 = jt / den;  // (K+1)/(K+1-jt) - 1
      if (spec.K == 0.0) return a_minus_1;
      const cplx b = spec.K * jt / den;
      // A e^B - 1 = (A - 1) e^B + (e^B - 1)
      const cplx eb_minus_1 = expm1(b);
      return a_minus_1 * (1.0 + eb_minus_1) + eb_minus_1;
    }
  }
  return {};
}

double fading_mean(const FadingSpec& spec) {
  return spec.kind == FadingSpec::Kind::ExponentialPower ? 1.0 / spec.rate : 1.0;
}

double sample_fading_power(const FadingSpec& spec, CounterRng& rng) {
  switch (spec.kind) {
    case FadingSpec::Kind::Deterministic:
      return 1.0;
    case FadingSpec::Kind::ExponentialPower:
      return sample_exponential(rng) / spec.rate;
    case FadingSpec::Kind::Rice: {
      if (spec.K == 0.0) return sample_exponential(rng);
      const double k1 = spec.K + 1.0;
      const double mu = std::sqrt(spec.K / k1);
      const double sigma = std::sqrt(0.5 / k1);
      const double re = mu + sigma * sample_normal(rng);
      const double im = sigma * sample_normal(rng);
      return re * re + im * im;
    }
  }
  return 0.0;
}

double sample_fading_power(const FadingSpec& spec, std::uint64_t seed) {
  CounterRng rng(seed);
  return sample_fading_power(spec, rng);
}

double PropagationParams::free_space_kappa() const {
  const double g = 4.0 * kPi * frequency_f / kSpeedOfLight;
  return g * g;
}

double PropagationParams::kappa(LinkCategory c) const {
  const auto& k = c == LinkCategory::LOS ? kappa_L : c == LinkCategory::NLOS ? kappa_N : kappa_D;
  return k.value_or(free_space_kappa());
}

double PropagationParams::alpha(LinkCategory c) const {
  return c == LinkCategory::LOS ? alpha_L : c == LinkCategory::NLOS ? alpha_N : alpha_D;
}

FadingSpec PropagationParams::fading(LinkCategory c) const {
  switch (c) {
    case LinkCategory::LOS: return fading_L.value_or(FadingSpec::rice(rice_K));
    case LinkCategory::NLOS: return fading_N.value_or(FadingSpec::rice(rice_K));
    case LinkCategory::Diffraction: return fading_D.value_or(FadingSpec::rayleigh());
  }
  return {};
}

double PropagationParams::k_f() const { return std::sqrt(q_lambda * frequency_f / kSpeedOfLight); }

void PropagationParams::validate() const {
  if (!(tx_power_P_B >= 0.0)) throw DomainError("tx power must be non-negative");
  if (!(frequency_f > 0.0)) throw DomainError("frequency must be positive");
  if (!(alpha_L > 0.0 && alpha_N > 0.0 && alpha_D > 0.0))
    throw DomainError("path-loss exponents must be positive");
  for (const auto* k : {&kappa_L, &kappa_N, &kappa_D})
    if (*k && !(**k > 0.0)) throw DomainError("path-loss intercepts must be positive");
  if (!(rice_K >= 0.0)) throw DomainError("Rice K must be non-negative");
  if (!(q_lambda >= 0.0)) throw DomainError("q_lambda must be non-negative");
  if (!(noise_W >= 0.0)) throw DomainError("noise power must be non-negative");
  if (!(bandwidth_B > 0.0)) throw DomainError("bandwidth must be positive");
  for (auto c : {LinkCategory::LOS, LinkCategory::NLOS, LinkCategory::Diffraction})
    fading(c).validate();
}

double berg_distance(double s1, double s2, double theta, const PropagationParams& p) {
  if (!(s1 > 0.0) || !(s2 > 0.0)) throw DomainError("Berg distance needs positive legs");
  if (!(theta > 0.0 && theta <= kPi)) throw DomainError("Berg angle outside (0, pi]");
  return s1 + s2 + p.k_f() * std::pow(theta / (0.5 * kPi), p.nu) * s1 * s2;
}

double path_loss(LinkCategory c, double geometry_arg, double delta_H, const PropagationParams& p) {
  const double kappa = p.kappa(c);
  const double alpha = p.alpha(c);
  if (c == LinkCategory::Diffraction) {
    if (!(geometry_arg > 0.0)) throw DomainError("Berg distance must be positive");
    const double g = std::pow(geometry_arg, -alpha) / kappa;
    if (g > 1.0) throw std::logic_error("diffraction gain exceeds one; exclusion radius too small");
    return g;
  }
  if (!(delta_H > 1.0)) throw DomainError("height difference must exceed 1 m");
  const double d2 = geometry_arg * geometry_arg + delta_H * delta_H;
  return std::pow(d2, -0.5 * alpha) / kappa;
}

}  // namespace manhattan
