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

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "manhattan/analytic.hpp"
#include "manhattan/channel.hpp"
#include "manhattan/geometry.hpp"
#include "manhattan/quadrature.hpp"
#include "manhattan/raytrace.hpp"
#include "manhattan/records.hpp"

namespace manhattan {

// Constants the regression needs beyond the records themselves.
struct FitContext {
  double kappa = 0.0;       // fixed intercept; <= 0 selects (4 pi f / c)^2
  double tx_power_P_B = 1.0;
  double frequency_f = 3.6e9;
  double delta_H = 4.5;     // h_B - h_U
  double resolved_kappa() const;
};

enum class InterceptMode {
  Free,   // slope from ordinary least squares with its own intercept
  Fixed,  // intercept pinned to log10(P_B / kappa)
};

struct PathlossFit {
  double alpha_L = 0.0, alpha_N = 0.0;
  // log10 of the fitted intercept (W); equals log10(P_B / kappa) in Fixed mode.
  double intercept_L = 0.0, intercept_N = 0.0;
  std::size_t n_L = 0, n_N = 0;
  InterceptMode mode = InterceptMode::Free;
};

// Typical-street records only; the regressor is sqrt(d^2 + dH^2).
PathlossFit fit_pathloss(std::span<const LinkRecord> records, const FitContext& ctx,
                         InterceptMode mode = InterceptMode::Free,
                         std::size_t min_records = 30);

struct BlockageBin {
  double r_mean = 0.0;
  double p_los = 0.0;
  std::size_t count = 0;
  bool used = false;  // p_los strictly inside (0, 1)
};

struct BlockageFit {
  BlockageParams params;
  std::vector<BlockageBin> bins;
  bool all_los = false;  // no NLOS link seen: beta = 0 and gamma = 1
};

BlockageFit fit_blockage(std::span<const LinkRecord> records, std::size_t bins = 20);

struct FadingFit {
  FadingSpec spec;  // ExponentialPower(rate)
  double rate = 1.0;
  double mean = 1.0;
  double ks_statistic = 0.0;
  double ks_critical = 0.0;  // 5% asymptotic critical value 1.358 / sqrt(n)
  bool ks_pass = true;
  bool degenerate = false;   // zero sample variance
  std::size_t n = 0;
  std::vector<double> histogram_edges;   // on log10 g
  std::vector<std::size_t> histogram_counts;
};

// Maximum-likelihood exponential fit of positive residual gains.
FadingFit fit_exponential(std::span<const double> residuals, std::size_t histogram_bins = 40);

struct FadingFits {
  FadingFit L, N;
};

// Residuals g = P / (P_B kappa^-1 dist^-alpha) per class with the fitted
// exponents and the fixed kappa.
std::vector<double> pathloss_residuals(std::span<const LinkRecord> records, LinkCategory c,
                                       const PathlossFit& pl, const FitContext& ctx);
FadingFits fit_fading(std::span<const LinkRecord> records, const PathlossFit& pl,
                      const FitContext& ctx);

// Fraction of placements inside an intersection square of side w_S.
double estimate_eta(std::span<const UserPlacement> placements);

struct FittedParams {
  double beta = 0.0, gamma = 1.0;
  double alpha_L = 0.0, alpha_N = 0.0;
  FadingSpec fading_L = FadingSpec::rayleigh(), fading_N = FadingSpec::rayleigh();
  double eta = 0.0;
  double kappa = 0.0;

  PathlossFit pathloss;
  BlockageFit blockage_fit;
  FadingFits fading_fit;

  void validate() const;
  BlockageParams blockage() const { return {beta, gamma}; }
  // Copy of `base` with the fitted exponents, fading and kappa applied.
  PropagationParams apply(const PropagationParams& base) const;
  // Key-value text readable as an analytic configuration.
  void write(std::ostream& os) const;
};

FittedParams fit_all(std::span<const LinkRecord> records, std::span<const UserPlacement> placements,
                     const FitContext& ctx, std::size_t blockage_bins = 20,
                     InterceptMode mode = InterceptMode::Free);

struct SensitivityRow {
  double delta = 0.0;
  std::vector<double> useful_ccdf, interference_ccdf;
  double max_dev_useful = 0.0, max_dev_interference = 0.0;
  double argmax_useful = 0.0, argmax_interference = 0.0;  // threshold, W
};

struct SensitivityResult {
  std::vector<double> theta_p;  // W
  std::vector<double> base_useful, base_interference;
  std::vector<SensitivityRow> rows;
};

// P(S > theta) and P(I > theta), eta-mixed over user types, for alpha_L and
// alpha_N both scaled by (1 + delta).
std::pair<std::vector<double>, std::vector<double>> power_ccdfs(
    const NetworkConfig& config, const PropagationParams& params, const BlockageParams& blockage,
    double eta, std::span<const double> theta_p, const QuadratureSpec& quad);

SensitivityResult sensitivity_sweep(const FittedParams& fitted, std::span<const double> deltas,
                                    std::span<const double> theta_p, const NetworkConfig& config,
                                    const PropagationParams& base, const QuadratureSpec& quad = {});

// Fitted SG model against the ray-traced realizations it was fitted on.
// CDFs are compared on the empirical k/(grid+1) quantiles of each RT sample.
struct RtComparison {
  FittedParams fitted;
  std::vector<double> theta_c, coverage_rt, coverage_sg;        // SINR, linear
  std::vector<double> theta_e, exposure_rt, exposure_sg;        // W, CDF
  std::vector<double> theta_s, useful_rt, useful_sg;            // W, CDF of S
  std::vector<double> theta_i, interference_rt, interference_sg;  // W, CDF of I
  double ks_coverage = 0.0, ks_exposure = 0.0, ks_useful = 0.0, ks_interference = 0.0;
};

RtComparison compare_with_raytrace(std::span<const RtRealization> realizations,
                                   const NetworkConfig& config, const PropagationParams& params,
                                   const QuadratureSpec& quad = {}, std::size_t blockage_bins = 20,
                                   InterceptMode mode = InterceptMode::Free,
                                   std::size_t grid_points = 39);

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf);
// Same distance restricted to a threshold grid where the CDF is known.
double ks_distance_on_grid(std::vector<double> sample, std::span<const double> grid,
                           std::span<const double> cdf_values);

}  // namespace manhattan
