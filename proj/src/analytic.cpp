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

#include <exception>
#include <mutex>

#include "manhattan/analytic.hpp"

namespace manhattan {

namespace {
constexpr cplx kJ{0.0, 1.0};
}

cplx cf_useful(LinkCategory p, cplx t, double r, const PropagationParams& params,
               const NetworkConfig& config) {
  if (!(r > 0.0)) throw DomainError("serving distance must be positive");
  if (p == LinkCategory::Diffraction) throw DomainError("useful power is LOS or NLOS");
  const double H = config.delta_H();
  const double gain = params.tx_power_P_B / params.kappa(p) *
                      std::pow(r * r + H * H, -0.5 * params.alpha(p));
  return fading_cf(params.fading(p), gain * t);
}

cplx cf_interference(LinkCategory c, UserType q, cplx t, double r, const PropagationParams& params,
                     const BlockageParams& blockage, const NetworkConfig& config,
                     const QuadratureSpec& quad) {
  const AnalyticModel model(config, params, blockage, quad);
  const cplx v = std::exp(c == LinkCategory::Diffraction ? model.log_cf_diffraction(t)
                                                         : model.log_cf_street(c, t, r));
  return q == UserType::Crossroad ? v * v : v;
}

CharacteristicFunction coverage_cf(const AnalyticModel& model, double theta_c, UserType q) {
  const double W = model.params().noise_W;
  const AnalyticModel* m = &model;
  return CharacteristicFunction(
      [m, theta_c, q, W](cplx t) {
        const cplx s = -theta_c * t;
        cplx d = std::exp(m->log_cf_diffraction(s));
        if (q == UserType::Crossroad) d *= d;
        cplx v = d * m->serving_mixture(t, s, q);
        if (W > 0.0) v *= std::exp(-kJ * t * theta_c * W);
        return v;
      },
      "S-theta*I", user_index(q), std::numeric_limits<double>::quiet_NaN(), model.mean_useful(q));
}

CharacteristicFunction exposure_cf(const AnalyticModel& model, UserType q) {
  const AnalyticModel* m = &model;
  return CharacteristicFunction(
      [m, q](cplx t) {
        cplx d = std::exp(m->log_cf_diffraction(t));
        if (q == UserType::Crossroad) d *= d;
        return d * m->serving_mixture(t, t, q);
      },
      "S+I", user_index(q), std::numeric_limits<double>::quiet_NaN(), model.mean_useful(q));
}

CharacteristicFunction useful_power_cf(const AnalyticModel& model, UserType q) {
  const AnalyticModel* m = &model;
  return CharacteristicFunction(
      [m, q](cplx t) { return m->serving_mixture(t, cplx(0.0, 0.0), q); }, "S", user_index(q),
      std::numeric_limits<double>::quiet_NaN(), model.mean_useful(q));
}

CharacteristicFunction interference_cf(const AnalyticModel& model, UserType q) {
  const AnalyticModel* m = &model;
  const double mean =
      mean_exposure(q, model.params(), model.blockage(), model.config()).total() -
      model.mean_useful(q);
  return CharacteristicFunction(
      [m, q](cplx t) {
        cplx d = std::exp(m->log_cf_diffraction(t));
        if (q == UserType::Crossroad) d *= d;
        return d * m->serving_mixture(cplx(0.0, 0.0), t, q);
      },
      "I", user_index(q), std::numeric_limits<double>::quiet_NaN(),
      mean > 0.0 ? mean : model.mean_useful(q));
}

namespace {

double coverage_point(const AnalyticModel& model, double theta_c, UserType q) {
  if (!(theta_c > 0.0)) throw DomainError("coverage threshold must be positive");
  return 1.0 - gil_pelaez_cdf(coverage_cf(model, theta_c, q), 0.0, model.quad());
}

double exposure_point(const AnalyticModel& model, double theta_e, UserType q) {
  if (!(theta_e > 0.0)) throw DomainError("exposure threshold must be positive");
  return gil_pelaez_cdf(exposure_cf(model, q), theta_e, model.quad());
}

template <class F>
std::vector<double> parallel_map(std::span<const double> xs, F&& f) {
  std::vector<double> out(xs.size());
  std::exception_ptr error;
  std::mutex mu;
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = f(xs[i]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace

double coverage_probability(double theta_c, UserType q, const PropagationParams& params,
                            const BlockageParams& blockage, const NetworkConfig& config,
                            const QuadratureSpec& quad) {
  return coverage_point(AnalyticModel(config, params, blockage, quad), theta_c, q);
}

double exposure_cdf(double theta_e, UserType q, const PropagationParams& params,
                    const BlockageParams& blockage, const NetworkConfig& config,
                    const QuadratureSpec& quad) {
  return exposure_point(AnalyticModel(config, params, blockage, quad), theta_e, q);
}

std::vector<double> coverage_curve(const AnalyticModel& model, std::span<const double> theta_c,
                                   UserType q) {
  return parallel_map(theta_c, [&](double th) { return coverage_point(model, th, q); });
}

std::vector<double> coverage_curve_serial(const AnalyticModel& model,
                                          std::span<const double> theta_c, UserType q) {
  std::vector<double> out;
  for (double th : theta_c) out.push_back(coverage_point(model, th, q));
  return out;
}

std::vector<double> exposure_curve(const AnalyticModel& model, std::span<const double> theta_e,
                                   UserType q) {
  return parallel_map(theta_e, [&](double th) { return exposure_point(model, th, q); });
}

std::vector<double> exposure_curve_serial(const AnalyticModel& model,
                                          std::span<const double> theta_e, UserType q) {
  std::vector<double> out;
  for (double th : theta_e) out.push_back(exposure_point(model, th, q));
  return out;
}

std::vector<double> cdf_curve(const CharacteristicFunction& cf, std::span<const double> thresholds,
                              const QuadratureSpec& quad) {
  return parallel_map(thresholds, [&](double th) { return gil_pelaez_cdf(cf, th, quad); });
}

double joint_lower_bound(double coverage, double exposure) {
  return std::max(0.0, coverage + exposure - 1.0);
}

double average_capacity(const AnalyticModel& model, UserType q) {
  const auto& p = model.params();
  if (p.tx_power_P_B == 0.0) return 0.0;
  const double W = p.noise_W;
  // In u = ln t the Hamdi integrand t g(t) (...) loses its 1/t factor.
  auto f = [&](double u) {
    const double t = std::exp(u);
    const cplx s = kJ * t;
    cplx d = std::exp(model.log_cf_diffraction(s));
    if (q == UserType::Crossroad) d *= d;
    const cplx v = d * model.serving_mixture(s, s, q, true);
    return std::exp(-t * W) * v.real();
  };
  const double u0 = -std::log(model.mean_useful(q));
  const double floor = 1e-3 * model.quad().absolute_tolerance;
  double hi = u0;
  int quiet = 0;
  for (int k = 0; k < 400 && quiet < 2; ++k) {
    hi += 1.0;
    quiet = std::abs(f(hi)) < floor ? quiet + 1 : 0;
  }
  if (quiet < 2)
    throw NumericFailure("capacity integrand does not decay (no noise and no interference?)",
                         std::abs(f(hi)));
  const double lo = u0 - 40.0;
  auto r = integrate_adaptive<double>(f, lo, hi, model.quad().relative_tolerance,
                                      model.quad().absolute_tolerance, model.quad().panel_budget);
  if (!r.converged) throw NumericFailure("capacity integral", r.error);
  return p.bandwidth_B / std::log(2.0) * r.value;
}

double average_capacity(UserType q, const PropagationParams& params, const BlockageParams& blockage,
                        const NetworkConfig& config, const QuadratureSpec& quad) {
  if (params.tx_power_P_B == 0.0) return 0.0;
  return average_capacity(AnalyticModel(config, params, blockage, quad), q);
}

void MetricResult::validate() const {
  if (values.size() != grid.size()) throw DomainError("metric values do not match the grid");
  if (!stderrs.empty() && stderrs.size() != grid.size())
    throw DomainError("metric standard errors do not match the grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("metric grid must be strictly increasing");
}

MetricResult mix_arbitrary_user(const MetricResult& street, const MetricResult& crossroad,
                                double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  if (street.grid != crossroad.grid || street.values.size() != crossroad.values.size())
    throw DomainError("street and crossroad metrics use different grids");
  MetricResult out = street;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = (1.0 - eta) * street.values[i] + eta * crossroad.values[i];
  if (!street.stderrs.empty() && street.stderrs.size() == crossroad.stderrs.size()) {
    for (std::size_t i = 0; i < out.stderrs.size(); ++i) {
      const double a = (1.0 - eta) * street.stderrs[i];
      const double b = eta * crossroad.stderrs[i];
      out.stderrs[i] = std::sqrt(a * a + b * b);
    }
  } else {
    out.stderrs.clear();
  }
  return out;
}

DensityOptimum maximize_over_density(const std::function<double(double)>& metric, double lo,
                                     double hi, int grid_points, double log_tolerance) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("density search range must be positive");
  if (grid_points < 3) throw DomainError("density search needs at least three grid points");
  DensityOptimum out;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < grid_points; ++i) {
    const double x = std::exp(a + (b - a) * i / (grid_points - 1));
    out.sweep_lambda.push_back(x);
    out.sweep_value.push_back(metric(x));
  }
  const auto best = static_cast<int>(
      std::max_element(out.sweep_value.begin(), out.sweep_value.end()) - out.sweep_value.begin());
  if (best == 0 || best == grid_points - 1) {
    out.at_boundary = true;
    out.lambda_B = out.sweep_lambda[best];
    out.value = out.sweep_value[best];
    return out;
  }
  // Golden-section search in log density on the bracketing grid cell pair.
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x0 = std::log(out.sweep_lambda[best - 1]);
  double x3 = std::log(out.sweep_lambda[best + 1]);
  double x1 = x3 - g * (x3 - x0);
  double x2 = x0 + g * (x3 - x0);
  double f1 = metric(std::exp(x1));
  double f2 = metric(std::exp(x2));
  while (x3 - x0 > log_tolerance) {
    if (f1 > f2) {
      x3 = x2;
      x2 = x1;
      f2 = f1;
      x1 = x3 - g * (x3 - x0);
      f1 = metric(std::exp(x1));
    } else {
      x0 = x1;
      x1 = x2;
      f1 = f2;
      x2 = x0 + g * (x3 - x0);
      f2 = metric(std::exp(x2));
    }
  }
  if (f1 > f2) {
    out.lambda_B = std::exp(x1);
    out.value = f1;
  } else {
    out.lambda_B = std::exp(x2);
    out.value = f2;
  }
  if (out.sweep_value[best] > out.value) {
    out.lambda_B = out.sweep_lambda[best];
    out.value = out.sweep_value[best];
  }
  return out;
}

DensityOptimum optimal_bs_density(const PropagationParams& params, const BlockageParams& blockage,
                                  const NetworkConfig& config, double lo, double hi,
                                  const QuadratureSpec& quad, int grid_points) {
  const double eta = config.crossroad_probability_eta;
  auto metric = [&](double lambda) {
    NetworkConfig c = config;
    c.bs_density_lambda_B = lambda;
    const AnalyticModel model(c, params, blockage, quad);
    double v = 0.0;
    if (eta < 1.0) v += (1.0 - eta) * average_capacity(model, UserType::Street);
    if (eta > 0.0) v += eta * average_capacity(model, UserType::Crossroad);
    return v;
  };
  return maximize_over_density(metric, lo, hi, grid_points);
}

}  // namespace manhattan
