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

#include "manhattan/quadrature.hpp"

#include <algorithm>
#include <stdexcept>

namespace manhattan {

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0) || !(inner_tolerance > 0.0))
    throw DomainError("quadrature tolerances must be positive");
  if (truncation_T < 0.0) throw DomainError("truncation_T must be non-negative");
  if (panel_budget < 1) throw DomainError("panel_budget must be at least 1");
}

GaussLegendreRule gauss_legendre(int order) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

PanelGrid::PanelGrid(std::vector<double> breakpoints, int order)
    : breakpoints_(std::move(breakpoints)), order_(order), rule_(gauss_legendre(order)) {
  if (breakpoints_.size() < 2) throw DomainError("panel grid needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i)
    if (!(breakpoints_[i] > breakpoints_[i - 1]))
      throw DomainError("panel grid breakpoints must be strictly increasing");

  const std::size_t panels = panel_count();
  nodes_.reserve(panels * order_);
  weights_.reserve(panels * order_);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = 0.5 * (breakpoints_[p] + breakpoints_[p + 1]);
    const double h = 0.5 * (breakpoints_[p + 1] - breakpoints_[p]);
    for (int k = 0; k < order_; ++k) {
      nodes_.push_back(c + h * rule_.nodes[k]);
      weights_.push_back(h * rule_.weights[k]);
    }
  }

  // Barycentric weights of the Lagrange basis on the Gauss nodes.
  const auto& x = rule_.nodes;
  std::vector<double> bary(order_, 1.0);
  for (int k = 0; k < order_; ++k)
    for (int m = 0; m < order_; ++m)
      if (m != k) bary[k] /= (x[k] - x[m]);

  auto lagrange = [&](int k, double t) {
    double num = 1.0;
    for (int m = 0; m < order_; ++m)
      if (m != k) num *= (t - x[m]);
    return num * bary[k];
  };

  cumulative_.assign(static_cast<std::size_t>(order_) * order_, 0.0);
  for (int i = 0; i < order_; ++i) {
    const double c = 0.5 * (x[i] + 1.0);
    const double h = 0.5 * (1.0 - x[i]);
    for (int k = 0; k < order_; ++k) {
      double s = 0.0;
      for (int q = 0; q < order_; ++q) s += rule_.weights[q] * lagrange(k, c + h * rule_.nodes[q]);
      cumulative_[static_cast<std::size_t>(i) * order_ + k] = s * h;
    }
  }
}

std::size_t PanelGrid::panel_of(double x) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
  if (it == breakpoints_.begin()) return 0;
  std::size_t p = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return std::min(p, panel_count() - 1);
}

std::vector<double> geometric_breakpoints(double start, double first_width, double ratio,
                                          double stop) {
  if (!(first_width > 0.0) || !(ratio > 1.0) || !(stop > start))
    throw DomainError("invalid geometric breakpoint request");
  std::vector<double> b{start};
  double width = first_width;
  double x = start + width;
  while (x < stop) {
    b.push_back(x);
    // Grow panel widths so that panels stay proportional to their distance.
    width = std::max(width * ratio, x * (ratio - 1.0));
    x += width;
  }
  if (b.back() < stop) b.push_back(stop);
  // Avoid a sliver at the end.
  if (b.size() > 2 && (b[b.size() - 1] - b[b.size() - 2]) < 0.05 * (b[b.size() - 2] - b[b.size() - 3]))
    b.erase(b.end() - 2);
  return b;
}

double wynn_epsilon(std::span<const double> s, double& error) {
  const std::size_t n = s.size();
  error = kInfinity;
  if (n == 0) return 0.0;
  if (n < 3) {
    error = n == 2 ? std::abs(s[1] - s[0]) : kInfinity;
    return s[n - 1];
  }
  // e[k][j]: column k, entry j. Column -1 is zero, column 0 the sums.
  std::vector<double> prev(n, 0.0);            // column k-1
  std::vector<double> cur(s.begin(), s.end());  // column k
  double best = s[n - 1];
  double last_even = s[n - 1];
  error = std::abs(s[n - 1] - s[n - 2]);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    bool ok = true;
    for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
      const double diff = cur[j + 1] - cur[j];
      if (diff == 0.0 || !std::isfinite(diff)) {
        ok = false;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    if (!ok) break;
    if (k % 2 == 0) {
      const double est = next.back();
      if (!std::isfinite(est)) break;
      error = std::abs(est - last_even);
      last_even = est;
      best = est;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (cur.size() < 2) break;
  }
  return best;
}

}  // namespace manhattan
