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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "manhattan/common.hpp"

namespace manhattan {

// Accuracy controls shared by the analytic engine.
struct QuadratureSpec {
  double relative_tolerance = 1e-6;
  double absolute_tolerance = 1e-9;
  // Upper limit of the leading t-interval; 0 selects it from the CF envelope.
  double truncation_T = 0.0;
  int panel_budget = 2000;
  // Envelope level below which spatial integrands are truncated.
  double inner_tolerance = 1e-10;

  void validate() const;
};

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
};

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Panel {
  double a, b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kWgk[7];
  T gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    kronrod += (f1 + f2) * kWgk[j];
    if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
  }
  return {a, b, kronrod * half, magnitude((kronrod - gauss) * half)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
// Never evaluates f at the endpoints. `converged` is false when the panel
// budget runs out before the tolerance is met.
template <class T, class F>
QuadResult<T> integrate_adaptive(F&& f, double a, double b, double rel_tol, double abs_tol,
                                 int max_panels) {
  QuadResult<T> out;
  if (!(b > a)) return out;
  std::priority_queue<detail::Panel<T>> heap;
  auto first = detail::gk15<T>(f, a, b);
  T total = first.value;
  double err = first.error;
  heap.push(first);
  int panels = 1;
  out.evaluations = 15;
  while (err > std::max(abs_tol, rel_tol * detail::magnitude(total))) {
    if (panels >= max_panels) {
      out.converged = false;
      break;
    }
    const auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      out.converged = false;
      heap.push(worst);
      break;
    }
    auto left = detail::gk15<T>(f, worst.a, mid);
    auto right = detail::gk15<T>(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to limit accumulated rounding from the running updates.
  T sum{};
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().error;
    heap.pop();
  }
  out.value = sum;
  out.error = esum;
  return out;
}

// Same as integrate_adaptive but throws NumericFailure on non-convergence.
template <class T, class F>
T integrate_or_throw(F&& f, double a, double b, double rel_tol, double abs_tol, int max_panels,
                     const char* what) {
  auto r = integrate_adaptive<T>(f, a, b, rel_tol, abs_tol, max_panels);
  if (!r.converged) throw NumericFailure(what, r.error);
  return r.value;
}

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int order);

// Composite Gauss-Legendre rule over consecutive panels, with the matrices
// needed to evaluate running tail integrals at every node.
class PanelGrid {
 public:
  PanelGrid() = default;
  PanelGrid(std::vector<double> breakpoints, int order);

  int order() const { return order_; }
  std::size_t panel_count() const { return breakpoints_.empty() ? 0 : breakpoints_.size() - 1; }
  double panel_begin(std::size_t p) const { return breakpoints_[p]; }
  double panel_end(std::size_t p) const { return breakpoints_[p + 1]; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t node_count(std::size_t panels) const { return panels * order_; }

  // Index of the panel containing x (clamped to the grid).
  std::size_t panel_of(double x) const;

  // For values sampled at the nodes of the first `panels` panels, writes
  // into `out` the integral from each node to the end of panel `panels-1`
  // plus `beyond`. `panel_tails` (size panels+1) receives the same quantity
  // at the panel boundaries.
  template <class T>
  void tail_integrals(std::span<const T> values, std::size_t panels, T beyond, std::span<T> out,
                      std::span<T> panel_tails) const {
    const int n = order_;
    T acc = beyond;
    panel_tails[panels] = acc;
    for (std::size_t p = panels; p-- > 0;) {
      const double half = 0.5 * (breakpoints_[p + 1] - breakpoints_[p]);
      const T* v = values.data() + p * n;
      T* o = out.data() + p * n;
      for (int i = 0; i < n; ++i) {
        T s{};
        const double* row = cumulative_.data() + static_cast<std::size_t>(i) * n;
        for (int k = 0; k < n; ++k) s += v[k] * row[k];
        o[i] = acc + s * half;
      }
      T full{};
      for (int k = 0; k < n; ++k) full += v[k] * rule_.weights[k];
      acc += full * half;
      panel_tails[p] = acc;
    }
  }

  // Integral of f over [x, end of the panel containing x] with the panel's
  // rule order, plus the supplied tail at that panel end.
  template <class T, class F>
  T integral_to_panel_end(double x, std::size_t panel, F&& f) const {
    const double end = breakpoints_[panel + 1];
    if (!(end > x)) return T{};
    const double c = 0.5 * (end + x);
    const double h = 0.5 * (end - x);
    T s{};
    for (int k = 0; k < order_; ++k) s += f(c + h * rule_.nodes[k]) * rule_.weights[k];
    return s * h;
  }

 private:
  std::vector<double> breakpoints_;
  int order_ = 0;
  GaussLegendreRule rule_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;  // order x order, row i: integral of l_k from x_i to 1
};

// Breakpoints start, start+first, then geometric growth by `ratio` until
// `stop` is reached (the last breakpoint equals stop).
std::vector<double> geometric_breakpoints(double start, double first_width, double ratio,
                                          double stop);

// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
// accelerated limit; `error` receives the difference between the last two
// extrapolants.
double wynn_epsilon(std::span<const double> partial_sums, double& error);

}  // namespace manhattan
