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

#include <algorithm>
#include <vector>

#include "manhattan/analytic.hpp"

namespace manhattan {

CharacteristicFunction CharacteristicFunction::operator*(const CharacteristicFunction& o) const {
  auto a = f_;
  auto b = o.f_;
  return CharacteristicFunction([a, b](cplx t) { return a(t) * b(t); },
                                category + "*" + o.category, q, r, std::max(scale, o.scale));
}

CharacteristicFunction CharacteristicFunction::pow(int n) const {
  if (n < 0) throw DomainError("CF power must be non-negative");
  auto a = f_;
  return CharacteristicFunction(
      [a, n](cplx t) {
        const cplx v = a(t);
        cplx out = 1.0;
        for (int i = 0; i < n; ++i) out *= v;
        return out;
      },
      category, q * n, r, scale * n);
}

CharacteristicFunction CharacteristicFunction::scaled(double s) const {
  auto a = f_;
  return CharacteristicFunction([a, s](cplx t) { return a(s * t); }, category, q, r,
                                scale * std::abs(s));
}

CharacteristicFunction CharacteristicFunction::shifted(double c) const {
  auto a = f_;
  return CharacteristicFunction(
      [a, c](cplx t) { return a(t) * std::exp(cplx(0.0, 1.0) * t * c); }, category, q, r,
      std::max(scale, std::abs(c)));
}

CharacteristicFunction CharacteristicFunction::exponential(double rate) {
  return CharacteristicFunction([rate](cplx t) { return rate / (rate - cplx(0.0, 1.0) * t); },
                                "exp", 1, std::numeric_limits<double>::quiet_NaN(), 1.0 / rate);
}

CharacteristicFunction CharacteristicFunction::gamma(double shape, double rate) {
  return CharacteristicFunction(
      [shape, rate](cplx t) { return std::pow(1.0 - cplx(0.0, 1.0) * t / rate, -shape); }, "gamma",
      1, std::numeric_limits<double>::quiet_NaN(), shape / rate);
}

CharacteristicFunction CharacteristicFunction::normal(double mean, double sigma) {
  return CharacteristicFunction(
      [mean, sigma](cplx t) {
        return std::exp(cplx(0.0, 1.0) * mean * t - 0.5 * sigma * sigma * t * t);
      },
      "normal", 1, std::numeric_limits<double>::quiet_NaN(), sigma > 0 ? sigma : std::abs(mean));
}

CharacteristicFunction CharacteristicFunction::point_mass(double c) {
  return CharacteristicFunction([c](cplx t) { return std::exp(cplx(0.0, 1.0) * t * c); }, "delta",
                                1, std::numeric_limits<double>::quiet_NaN(), std::abs(c));
}

namespace {

constexpr int kMaxDoublings = 60;

// Tail of an oscillating integrand over [a, inf): half-period panels summed
// and accelerated with the epsilon algorithm. Returns NaN when the sequence
// does not settle.
template <class G>
double oscillatory_tail(G& g, double a, double omega, double tol, double& err) {
  const double half = kPi / omega;
  std::vector<double> partial;
  double sum = 0.0;
  int quiet = 0;
  err = kInfinity;
  for (int n = 0; n < 400; ++n) {
    auto seg = integrate_adaptive<double>(g, a, a + half, 1e-10, 1e-3 * tol, 64);
    a += half;
    sum += seg.value;
    partial.push_back(sum);
    quiet = std::abs(seg.value) < 1e-3 * tol ? quiet + 1 : 0;
    if (quiet >= 3) {
      err = 3e-3 * tol;
      return sum;
    }
    if (n >= 8 && n % 2 == 0) {
      double e;
      const std::size_t keep = std::min<std::size_t>(partial.size(), 40);
      const double est =
          wynn_epsilon(std::span<const double>(partial).last(keep), e);
      if (e < 0.05 * tol) {
        err = e;
        return est;
      }
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace

InversionReport gil_pelaez_detailed(const CharacteristicFunction& cf, double theta,
                                    const QuadratureSpec& quad) {
  quad.validate();
  InversionReport rep;
  auto psi = [&](double t) {
    ++rep.evaluations;
    return std::exp(cplx(0.0, -t * theta)) * cf(cplx(t, 0.0));
  };
  // Nodes of the Kronrod rule never touch t = 0, where the integrand has a
  // removable singularity.
  auto g = [&](double t) { return psi(t).imag() / t; };

  const double tol_F = std::max(quad.absolute_tolerance, 0.5 * quad.relative_tolerance);
  const double tol = kPi * tol_F;  // on the integral

  auto finish = [&](double integral, double err) {
    rep.value = std::clamp(0.5 - integral / kPi, 0.0, 1.0);
    rep.error = err / kPi;
    return rep;
  };

  double T = quad.truncation_T;
  if (!(T > 0.0)) {
    auto moved = [&](double t) { return std::abs(1.0 - psi(t)) > 0.5; };
    double t = cf.scale > 0.0 ? 1.0 / cf.scale : (theta != 0.0 ? 1.0 / std::abs(theta) : 1.0);
    int guard = 0;
    if (moved(t)) {
      while (guard++ < 2000 && t > 1e-300 && moved(0.5 * t)) t *= 0.5;
    } else {
      while (guard++ < 2000 && t < 1e300 && !moved(t)) t *= 2.0;
      if (!moved(t)) {
        // The shifted CF is indistinguishable from 1: mass sits at theta.
        return finish(0.0, 0.0);
      }
    }
    T = t;
  }

  auto head_r = integrate_adaptive<double>(g, 0.0, T, 1e-12, 0.05 * tol, quad.panel_budget);
  if (!head_r.converged) throw NumericFailure("Gil-Pelaez head integral", head_r.error / kPi);
  double head = head_r.value;
  double head_err = head_r.error;
  double prev_total = std::numeric_limits<double>::quiet_NaN();

  for (int k = 0; k < kMaxDoublings; ++k) {
    const double a1 = std::abs(cf(cplx(T, 0.0)));
    const double a2 = std::abs(cf(cplx(2.0 * T, 0.0)));
    const double rho = a1 > 0.0 ? a2 / a1 : 0.0;
    if (rho < 0.5 && a1 * std::log(2.0) / (1.0 - rho) < 0.05 * tol) {
      rep.truncation_T = T;
      return finish(head, head_err + a1);
    }

    double tail = std::numeric_limits<double>::quiet_NaN();
    double tail_err = 0.0;
    const double delta = 1e-5 * T;
    const double omega = std::abs(std::arg(psi(T + delta) * std::conj(psi(T - delta)))) /
                         (2.0 * delta);
    if (omega * T >= 8.0 * kPi) {
      tail = oscillatory_tail(g, T, omega, tol, tail_err);
    } else if (omega * T < 0.5) {
      auto mapped = [&](double u) { return g(T / u) * T / (u * u); };
      auto m = integrate_adaptive<double>(mapped, 0.0, 1.0, 1e-10, 0.05 * tol, 400);
      if (m.converged) {
        tail = m.value;
        tail_err = m.error;
      }
    }
    if (std::isfinite(tail)) {
      const double total = head + tail;
      if (std::isfinite(prev_total) && std::abs(total - prev_total) < 0.5 * tol) {
        rep.truncation_T = T;
        rep.tail = tail / kPi;
        return finish(total, head_err + tail_err + std::abs(total - prev_total));
      }
      prev_total = total;
    } else {
      prev_total = std::numeric_limits<double>::quiet_NaN();
    }

    auto panel = integrate_adaptive<double>(g, T, 2.0 * T, 1e-12, 0.02 * tol, quad.panel_budget);
    if (!panel.converged)
      throw NumericFailure("Gil-Pelaez panel integral", (head_err + panel.error) / kPi);
    head += panel.value;
    head_err += panel.error;
    T *= 2.0;
  }
  throw NumericFailure("Gil-Pelaez integral did not converge", head_err / kPi);
}

double gil_pelaez_cdf(const CharacteristicFunction& cf, double threshold,
                      const QuadratureSpec& quad) {
  return gil_pelaez_detailed(cf, threshold, quad).value;
}

}  // namespace manhattan
