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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "manhattan/channel.hpp"
#include "manhattan/geometry.hpp"
#include "manhattan/quadrature.hpp"

namespace manhattan {

class CharacteristicFunction {
 public:
  using Eval = std::function<cplx(cplx)>;

  CharacteristicFunction() = default;
  explicit CharacteristicFunction(Eval f, std::string category = {}, int q = 1,
                                  double r = std::numeric_limits<double>::quiet_NaN(),
                                  double scale = 0.0)
      : f_(std::move(f)), category(std::move(category)), q(q), r(r), scale(scale) {}

  cplx operator()(cplx t) const { return f_(t); }

  // CF of the sum of independent variables.
  CharacteristicFunction operator*(const CharacteristicFunction& other) const;
  // CF of the sum of n independent copies; exact repeated product.
  CharacteristicFunction pow(int n) const;
  // CF of a X.
  CharacteristicFunction scaled(double a) const;
  // CF of X + c.
  CharacteristicFunction shifted(double c) const;

  static CharacteristicFunction exponential(double rate);
  static CharacteristicFunction gamma(double shape, double rate);
  static CharacteristicFunction normal(double mean, double sigma);
  static CharacteristicFunction point_mass(double c);

 private:
  Eval f_;

 public:
  std::string category;  // S, L, N, D or a composite tag
  int q = 1;
  double r = std::numeric_limits<double>::quiet_NaN();
  double scale = 0.0;  // typical magnitude of the variable, seeds the inversion
};

struct InversionReport {
  double value = 0.0;
  double error = 0.0;       // estimated absolute error on the CDF
  double truncation_T = 0.0;  // end of the directly integrated range
  double tail = 0.0;        // contribution assigned to [truncation_T, inf)
  int evaluations = 0;
};

// P[X <= threshold] by Gil-Pelaez inversion.
double gil_pelaez_cdf(const CharacteristicFunction& cf, double threshold,
                      const QuadratureSpec& quad = {});
InversionReport gil_pelaez_detailed(const CharacteristicFunction& cf, double threshold,
                                    const QuadratureSpec& quad = {});

// Precomputed spatial grids for one parameter set. All CF work of the
// analytic engine goes through this class; it is immutable after
// construction and safe to share across threads.
class AnalyticModel {
 public:
  AnalyticModel(const NetworkConfig& config, const PropagationParams& params,
                const BlockageParams& blockage, const QuadratureSpec& quad = {});

  const NetworkConfig& config() const { return config_; }
  const PropagationParams& params() const { return params_; }
  const BlockageParams& blockage() const { return blockage_; }
  const QuadratureSpec& quad() const { return quad_; }

  // log of the q = 1 interference CF of category L or N, conditioned on r.
  cplx log_cf_street(LinkCategory c, cplx s, double r) const;
  // log of the q = 1 diffraction interference CF.
  cplx log_cf_diffraction(cplx s) const;

  // Integral over the serving distance of
  //   f_r [p_L g_L + p_N g_N] (phi_L1 phi_N1)^q (s_I | r),
  // with g_p = phi_S^(p)(t_S | r), or 1 - phi_S^(p) when complement is set.
  cplx serving_mixture(cplx t_S, cplx s_I, UserType q, bool complement = false) const;

  double mean_useful(UserType q) const;
  double useful_gain(LinkCategory c, double r) const;  // P_B kappa^-1 dist^-alpha

 private:
  struct StreetTerms {
    std::size_t panels = 0;
    std::vector<cplx> log_L, log_N;  // per node: integral from node to infinity
    std::vector<cplx> tails_L, tails_N;  // per panel boundary
  };
  StreetTerms street_terms(cplx s, std::size_t min_panels) const;
  cplx street_tail(LinkCategory c, cplx s, double r0) const;
  std::size_t street_cutoff(cplx s, std::size_t min_panels) const;

  NetworkConfig config_;
  PropagationParams params_;
  BlockageParams blockage_;
  QuadratureSpec quad_;
  FadingSpec fade_L_, fade_N_, fade_D_;
  double mean_L_, mean_N_, mean_D_;
  double lambda_t_;
  double kf_;

  PanelGrid rgrid_;
  std::vector<double> gain_L_, gain_N_, p_L_, p_N_;
  std::vector<double> fr_weight_[2];
  std::size_t fr_panels_[2] = {0, 0};

  PanelGrid dgrid_;
  std::vector<double> gain_D_;
  double d_max_ = kInfinity;     // largest Berg distance of the network
  std::size_t y_panels_ = 0;     // D-grid panels inside [r_s, R] when R is finite
};

// Serial adaptive evaluation of the same CFs straight from their integral
// definitions (nested double integral for diffraction). Slow; kept as the
// reference route for tests.
cplx log_cf_street_reference(LinkCategory c, cplx s, double r, const NetworkConfig& config,
                             const PropagationParams& params, const BlockageParams& blockage,
                             const QuadratureSpec& quad = {});
cplx log_cf_diffraction_reference(cplx s, const NetworkConfig& config,
                                  const PropagationParams& params, const QuadratureSpec& quad = {});

cplx cf_useful(LinkCategory p, cplx t, double r, const PropagationParams& params,
               const NetworkConfig& config);
cplx cf_interference(LinkCategory c, UserType q, cplx t, double r, const PropagationParams& params,
                     const BlockageParams& blockage, const NetworkConfig& config,
                     const QuadratureSpec& quad = {});

// CF of S - theta_c (I + W), whose mass above zero is the coverage probability.
CharacteristicFunction coverage_cf(const AnalyticModel& model, double theta_c, UserType q);
// CF of the exposure S + I_L + I_N + I_D.
CharacteristicFunction exposure_cf(const AnalyticModel& model, UserType q);

// CFs of the useful power S and of the total interference I_L + I_N + I_D.
CharacteristicFunction useful_power_cf(const AnalyticModel& model, UserType q);
CharacteristicFunction interference_cf(const AnalyticModel& model, UserType q);
// CDF of a CF on a threshold grid, threshold-parallel.
std::vector<double> cdf_curve(const CharacteristicFunction& cf, std::span<const double> thresholds,
                              const QuadratureSpec& quad);

double coverage_probability(double theta_c, UserType q, const PropagationParams& params,
                            const BlockageParams& blockage, const NetworkConfig& config,
                            const QuadratureSpec& quad = {});
double exposure_cdf(double theta_e, UserType q, const PropagationParams& params,
                    const BlockageParams& blockage, const NetworkConfig& config,
                    const QuadratureSpec& quad = {});

// Grid evaluations; the parallel versions distribute threshold points over
// OpenMP threads, the serial versions are the reference.
std::vector<double> coverage_curve(const AnalyticModel& model, std::span<const double> theta_c,
                                   UserType q);
std::vector<double> coverage_curve_serial(const AnalyticModel& model,
                                          std::span<const double> theta_c, UserType q);
std::vector<double> exposure_curve(const AnalyticModel& model, std::span<const double> theta_e,
                                   UserType q);
std::vector<double> exposure_curve_serial(const AnalyticModel& model,
                                          std::span<const double> theta_e, UserType q);

double joint_lower_bound(double coverage, double exposure);

double average_capacity(const AnalyticModel& model, UserType q);
double average_capacity(UserType q, const PropagationParams& params, const BlockageParams& blockage,
                        const NetworkConfig& config, const QuadratureSpec& quad = {});

struct MeanExposure {
  double mu_L = 0.0, mu_N = 0.0, mu_D = 0.0;
  double total() const { return mu_L + mu_N + mu_D; }
};
MeanExposure mean_exposure(UserType q, const PropagationParams& params,
                           const BlockageParams& blockage, const NetworkConfig& config);

struct MetricResult {
  std::string metric;   // coverage, exposure_cdf, joint_lower_bound, ...
  std::string engine;   // analytic, montecarlo, raytrace
  std::string grid_unit;  // dB, W, ...
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> stderrs;  // empty for analytic results
  std::string snapshot;         // resolved configuration, serialized

  void validate() const;
};

MetricResult mix_arbitrary_user(const MetricResult& street, const MetricResult& crossroad,
                                double eta);

struct DensityOptimum {
  double lambda_B = 0.0;
  double value = 0.0;
  bool at_boundary = false;
  std::vector<double> sweep_lambda;
  std::vector<double> sweep_value;
};

// Maximizes metric(lambda_B) over [lo, hi]: log-grid scan followed by a
// golden-section refinement around the best grid point.
DensityOptimum maximize_over_density(const std::function<double(double)>& metric, double lo,
                                     double hi, int grid_points = 13, double log_tolerance = 1e-4);

// Capacity of an arbitrary user ((1-eta) street + eta crossroad) maximized
// over lambda_B; lambda_B_t follows lambda_B unless explicitly overridden.
DensityOptimum optimal_bs_density(const PropagationParams& params, const BlockageParams& blockage,
                                  const NetworkConfig& config, double lo, double hi,
                                  const QuadratureSpec& quad = {}, int grid_points = 13);

}  // namespace manhattan
