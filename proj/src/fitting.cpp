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

#include "manhattan/fitting.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>
#include <tuple>

#include "manhattan/records.hpp"

namespace manhattan {

namespace {

bool typical_link(const LinkRecord& r) {
  return r.category == LinkCategory::LOS || r.category == LinkCategory::NLOS;
}

double dist3d(double d, double dH) { return std::sqrt(d * d + dH * dH); }

}  // namespace

double FitContext::resolved_kappa() const {
  if (kappa > 0.0) return kappa;
  const double g = 4.0 * kPi * frequency_f / kSpeedOfLight;
  return g * g;
}

PathlossFit fit_pathloss(std::span<const LinkRecord> records, const FitContext& ctx,
                         InterceptMode mode, std::size_t min_records) {
  if (!(ctx.tx_power_P_B > 0.0)) throw DomainError("fit_pathloss: P_B must be positive");
  const double c0 = std::log10(ctx.tx_power_P_B / ctx.resolved_kappa());
  // Sums per class: n, x, y, xx, xy with x = log10 dist, y = log10 P.
  struct Acc {
    std::size_t n = 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
  } acc[2];
  for (const auto& r : records) {
    if (!typical_link(r) || !(r.power_W > 0.0)) continue;
    const double x = std::log10(dist3d(r.distance_m, ctx.delta_H));
    const double y = std::log10(r.power_W);
    auto& a = acc[r.los ? 0 : 1];
    ++a.n;
    a.sx += x;
    a.sy += y;
    a.sxx += x * x;
    a.sxy += x * y;
  }
  PathlossFit out;
  out.mode = mode;
  out.n_L = acc[0].n;
  out.n_N = acc[1].n;
  for (int k = 0; k < 2; ++k) {
    const auto& a = acc[k];
    const char* name = k == 0 ? "LOS" : "NLOS";
    if (a.n < min_records)
      throw DomainError(std::string("fit_pathloss: ") + std::to_string(a.n) + " " + name +
                        " records, need " + std::to_string(min_records));
    double alpha, intercept;
    if (mode == InterceptMode::Fixed) {
      // min sum (y - c0 + alpha x)^2
      alpha = (c0 * a.sx - a.sxy) / a.sxx;
      intercept = c0;
    } else {
      const double n = static_cast<double>(a.n);
      const double vxx = a.sxx - a.sx * a.sx / n;
      if (!(vxx > 0.0)) throw DomainError(std::string("fit_pathloss: no distance spread for ") + name);
      const double vxy = a.sxy - a.sx * a.sy / n;
      alpha = -vxy / vxx;
      intercept = (a.sy + alpha * a.sx) / n;
    }
    (k == 0 ? out.alpha_L : out.alpha_N) = alpha;
    (k == 0 ? out.intercept_L : out.intercept_N) = intercept;
  }
  return out;
}

BlockageFit fit_blockage(std::span<const LinkRecord> records, std::size_t bins) {
  if (bins < 2) throw DomainError("fit_blockage: need at least 2 bins");
  std::vector<std::pair<double, bool>> v;
  for (const auto& r : records)
    if (typical_link(r)) v.emplace_back(r.distance_m, r.los);
  if (v.size() < bins) throw DomainError("fit_blockage: fewer records than bins");
  std::sort(v.begin(), v.end());
  BlockageFit out;
  const bool any_nlos = std::any_of(v.begin(), v.end(), [](const auto& p) { return !p.second; });
  const bool any_los = std::any_of(v.begin(), v.end(), [](const auto& p) { return p.second; });
  if (!any_los) throw DomainError("fit_blockage: every link is NLOS");
  // Equal-count bins.
  for (std::size_t b = 0; b < bins; ++b) {
    const std::size_t lo = b * v.size() / bins, hi = (b + 1) * v.size() / bins;
    BlockageBin bin;
    double rs = 0.0;
    std::size_t los = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      rs += v[i].first;
      los += v[i].second;
    }
    bin.count = hi - lo;
    bin.r_mean = rs / static_cast<double>(bin.count);
    bin.p_los = static_cast<double>(los) / static_cast<double>(bin.count);
    bin.used = bin.p_los > 0.0 && bin.p_los < 1.0 && bin.r_mean > 0.0;
    out.bins.push_back(bin);
  }
  if (!any_nlos) {
    out.all_los = true;
    out.params = {0.0, 1.0};
    return out;
  }
  // log(-log p) = log beta + gamma log r, weighted by the inverse delta-method
  // variance (1 - p) / (n p log^2 p) of log(-log p_hat).
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t used = 0;
  for (const auto& b : out.bins) {
    if (!b.used) continue;
    const double lp = std::log(b.p_los);
    const double w = static_cast<double>(b.count) * b.p_los * lp * lp / (1.0 - b.p_los);
    const double x = std::log(b.r_mean), y = std::log(-lp);
    ++used;
    n += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  if (used < 2) throw DomainError("fit_blockage: fewer than two bins with 0 < p_LOS < 1");
  const double vxx = sxx - sx * sx / n;
  if (!(vxx > 0.0)) throw DomainError("fit_blockage: no distance spread");
  const double gamma = (sxy - sx * sy / n) / vxx;
  const double beta = std::exp((sy - gamma * sx) / n);
  if (!(gamma > 0.0)) throw NumericFailure("fit_blockage: fitted gamma is not positive", gamma);
  out.params = {beta, gamma};
  return out;
}

double ks_distance(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw DomainError("ks_distance: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double F = cdf(sample[i]);
    d = std::max({d, std::abs(F - static_cast<double>(i) / n),
                  std::abs(static_cast<double>(i + 1) / n - F)});
  }
  return d;
}

double ks_distance_on_grid(std::vector<double> sample, std::span<const double> grid,
                           std::span<const double> cdf_values) {
  if (sample.empty()) throw DomainError("ks_distance_on_grid: empty sample");
  if (grid.size() != cdf_values.size()) throw DomainError("ks_distance_on_grid: size mismatch");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto below = std::lower_bound(sample.begin(), sample.end(), grid[i]) - sample.begin();
    const auto upto = std::upper_bound(sample.begin(), sample.end(), grid[i]) - sample.begin();
    d = std::max({d, std::abs(cdf_values[i] - static_cast<double>(below) / n),
                  std::abs(cdf_values[i] - static_cast<double>(upto) / n)});
  }
  return d;
}

FadingFit fit_exponential(std::span<const double> residuals, std::size_t histogram_bins) {
  if (residuals.empty()) throw DomainError("fit_fading: empty residual set");
  std::vector<double> g(residuals.begin(), residuals.end());
  for (double x : g)
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("fit_fading: residuals must be positive");
  std::sort(g.begin(), g.end());
  FadingFit f;
  f.n = g.size();
  f.mean = pairwise_sum(g) / static_cast<double>(f.n);
  f.rate = 1.0 / f.mean;
  f.spec = FadingSpec::exponential(f.rate);
  f.degenerate = g.front() == g.back();
  const double rate = f.rate;
  f.ks_statistic = ks_distance(g, [rate](double x) { return -std::expm1(-rate * x); });
  f.ks_critical = 1.358 / std::sqrt(static_cast<double>(f.n));
  f.ks_pass = !f.degenerate && f.ks_statistic <= f.ks_critical;
  if (histogram_bins > 0) {
    const double lo = std::log10(g.front()), hi = std::log10(g.back());
    const double width = hi > lo ? (hi - lo) / static_cast<double>(histogram_bins) : 1.0;
    for (std::size_t b = 0; b <= histogram_bins; ++b)
      f.histogram_edges.push_back(lo + width * static_cast<double>(b));
    f.histogram_counts.assign(histogram_bins, 0);
    for (double x : g) {
      auto b = static_cast<std::size_t>((std::log10(x) - lo) / width);
      ++f.histogram_counts[std::min(b, histogram_bins - 1)];
    }
  }
  return f;
}

std::vector<double> pathloss_residuals(std::span<const LinkRecord> records, LinkCategory c,
                                       const PathlossFit& pl, const FitContext& ctx) {
  if (c == LinkCategory::Diffraction) throw DomainError("residuals: diffraction is not fitted");
  const double alpha = c == LinkCategory::LOS ? pl.alpha_L : pl.alpha_N;
  const double scale = ctx.tx_power_P_B / ctx.resolved_kappa();
  std::vector<double> out;
  for (const auto& r : records) {
    if (!typical_link(r) || r.los != (c == LinkCategory::LOS) || !(r.power_W > 0.0)) continue;
    out.push_back(r.power_W / (scale * std::pow(dist3d(r.distance_m, ctx.delta_H), -alpha)));
  }
  return out;
}

FadingFits fit_fading(std::span<const LinkRecord> records, const PathlossFit& pl,
                      const FitContext& ctx) {
  FadingFits f;
  f.L = fit_exponential(pathloss_residuals(records, LinkCategory::LOS, pl, ctx));
  f.N = fit_exponential(pathloss_residuals(records, LinkCategory::NLOS, pl, ctx));
  return f;
}

double estimate_eta(std::span<const UserPlacement> placements) {
  if (placements.size() < 100) throw DomainError("estimate_eta: need at least 100 placements");
  std::size_t hits = 0;
  for (const auto& p : placements) {
    const double half = p.street_width / 2.0;
    auto near = [half](const std::vector<double>& axes, double v) {
      return std::any_of(axes.begin(), axes.end(),
                         [&](double c) { return std::abs(v - c) <= half; });
    };
    if (near(p.vertical_streets, p.x) && near(p.horizontal_streets, p.y)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(placements.size());
}

void FittedParams::validate() const {
  if (!(alpha_L > 0.0) || !(alpha_N > 0.0)) throw DomainError("fitted exponents must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("fitted eta must lie in [0, 1]");
  BlockageParams{beta, gamma}.validate();
}

PropagationParams FittedParams::apply(const PropagationParams& base) const {
  PropagationParams p = base;
  p.alpha_L = alpha_L;
  p.alpha_N = alpha_N;
  p.fading_L = fading_L;
  p.fading_N = fading_N;
  if (kappa > 0.0) {
    p.kappa_L = kappa;
    p.kappa_N = kappa;
  }
  return p;
}

void FittedParams::write(std::ostream& os) const {
  os << "# fitted stochastic-geometry parameters\n";
  os << "[BlockageParams]\n";
  os << "beta = " << format_double(beta) << "\n";
  os << "gamma = " << format_double(gamma) << "\n";
  os << "[PropagationParams]\n";
  os << "alpha_L = " << format_double(alpha_L) << "\n";
  os << "alpha_N = " << format_double(alpha_N) << "\n";
  if (kappa > 0.0) {
    os << "kappa_L = " << format_double(kappa) << "\n";
    os << "kappa_N = " << format_double(kappa) << "\n";
  }
  os << "fading_L = exponential:" << format_double(fading_L.rate) << "\n";
  os << "fading_N = exponential:" << format_double(fading_N.rate) << "\n";
  os << "[NetworkConfig]\n";
  os << "crossroad_probability = " << format_double(eta) << "\n";
  os << "# diagnostics\n";
  os << "# records_L " << pathloss.n_L << " records_N " << pathloss.n_N << "\n";
  os << "# ks_L " << format_double(fading_fit.L.ks_statistic) << " critical "
     << format_double(fading_fit.L.ks_critical) << "\n";
  os << "# ks_N " << format_double(fading_fit.N.ks_statistic) << " critical "
     << format_double(fading_fit.N.ks_critical) << "\n";
  if (blockage_fit.all_los) os << "# no NLOS link observed; beta set to 0\n";
}

FittedParams fit_all(std::span<const LinkRecord> records, std::span<const UserPlacement> placements,
                     const FitContext& ctx, std::size_t blockage_bins, InterceptMode mode) {
  FittedParams f;
  f.kappa = ctx.resolved_kappa();
  f.pathloss = fit_pathloss(records, ctx, mode);
  f.alpha_L = f.pathloss.alpha_L;
  f.alpha_N = f.pathloss.alpha_N;
  f.blockage_fit = fit_blockage(records, blockage_bins);
  f.beta = f.blockage_fit.params.beta;
  f.gamma = f.blockage_fit.params.gamma;
  f.fading_fit = fit_fading(records, f.pathloss, ctx);
  f.fading_L = f.fading_fit.L.spec;
  f.fading_N = f.fading_fit.N.spec;
  f.eta = placements.empty() ? 0.0 : estimate_eta(placements);
  f.validate();
  return f;
}

std::pair<std::vector<double>, std::vector<double>> power_ccdfs(
    const NetworkConfig& config, const PropagationParams& params, const BlockageParams& blockage,
    double eta, std::span<const double> theta_p, const QuadratureSpec& quad) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  std::vector<double> S(theta_p.size(), 0.0), I(theta_p.size(), 0.0);
  const AnalyticModel model(config, params, blockage, quad);
  for (UserType q : {UserType::Street, UserType::Crossroad}) {
    const double w = q == UserType::Street ? 1.0 - eta : eta;
    if (w == 0.0) continue;
    const auto s = cdf_curve(useful_power_cf(model, q), theta_p, quad);
    const auto i = cdf_curve(interference_cf(model, q), theta_p, quad);
    for (std::size_t k = 0; k < theta_p.size(); ++k) {
      S[k] += w * (1.0 - s[k]);
      I[k] += w * (1.0 - i[k]);
    }
  }
  return {S, I};
}

namespace {

std::vector<double> quantile_grid(std::vector<double> v, std::size_t points) {
  std::sort(v.begin(), v.end());
  std::vector<double> g;
  for (std::size_t k = 1; k <= points; ++k) {
    const double x = v[v.size() * k / (points + 1)];
    if (x > 0.0 && (g.empty() || x > g.back())) g.push_back(x);
  }
  return g;
}

std::vector<double> empirical_cdf(std::vector<double> v, std::span<const double> grid) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : grid)
    out.push_back(static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) /
                  static_cast<double>(v.size()));
  return out;
}

}  // namespace

RtComparison compare_with_raytrace(std::span<const RtRealization> realizations,
                                   const NetworkConfig& config, const PropagationParams& params,
                                   const QuadratureSpec& quad, std::size_t blockage_bins,
                                   InterceptMode mode, std::size_t grid_points) {
  if (realizations.size() < 10) throw DomainError("compare_with_raytrace: too few realizations");
  std::vector<LinkRecord> records;
  std::vector<UserPlacement> placements;
  std::vector<double> sinr, expo, S, I;
  for (const auto& r : realizations) {
    records.insert(records.end(), r.links.begin(), r.links.end());
    placements.push_back(r.placement);
    sinr.push_back(r.powers.sinr(params.noise_W));
    expo.push_back(r.powers.exposure());
    S.push_back(r.powers.S);
    I.push_back(r.powers.interference());
  }
  FitContext ctx;
  ctx.tx_power_P_B = params.tx_power_P_B;
  ctx.frequency_f = params.frequency_f;
  ctx.delta_H = config.delta_H();
  RtComparison out;
  out.fitted = fit_all(records, placements, ctx, blockage_bins, mode);
  const PropagationParams pf = out.fitted.apply(params);
  NetworkConfig cf = config;
  cf.crossroad_probability_eta = out.fitted.eta;
  const AnalyticModel model(cf, pf, out.fitted.blockage(), quad);
  const double eta = out.fitted.eta;

  out.theta_c = quantile_grid(sinr, grid_points);
  out.theta_e = quantile_grid(expo, grid_points);
  out.theta_s = quantile_grid(S, grid_points);
  out.theta_i = quantile_grid(I, grid_points);
  out.coverage_rt = empirical_cdf(sinr, out.theta_c);
  out.exposure_rt = empirical_cdf(expo, out.theta_e);
  out.useful_rt = empirical_cdf(S, out.theta_s);
  out.interference_rt = empirical_cdf(I, out.theta_i);
  out.coverage_sg.assign(out.theta_c.size(), 0.0);
  out.exposure_sg.assign(out.theta_e.size(), 0.0);
  out.useful_sg.assign(out.theta_s.size(), 0.0);
  out.interference_sg.assign(out.theta_i.size(), 0.0);
  auto accumulate = [](std::vector<double>& acc, const std::vector<double>& v, double w) {
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += w * v[k];
  };
  for (UserType q : {UserType::Street, UserType::Crossroad}) {
    const double w = q == UserType::Street ? 1.0 - eta : eta;
    if (w == 0.0) continue;
    auto cov = coverage_curve(model, out.theta_c, q);
    for (double& x : cov) x = 1.0 - x;  // CDF of the SINR
    accumulate(out.coverage_sg, cov, w);
    accumulate(out.exposure_sg, exposure_curve(model, out.theta_e, q), w);
    accumulate(out.useful_sg, cdf_curve(useful_power_cf(model, q), out.theta_s, quad), w);
    accumulate(out.interference_sg, cdf_curve(interference_cf(model, q), out.theta_i, quad), w);
  }
  out.ks_coverage = ks_distance_on_grid(sinr, out.theta_c, out.coverage_sg);
  out.ks_exposure = ks_distance_on_grid(expo, out.theta_e, out.exposure_sg);
  out.ks_useful = ks_distance_on_grid(S, out.theta_s, out.useful_sg);
  out.ks_interference = ks_distance_on_grid(I, out.theta_i, out.interference_sg);
  return out;
}

SensitivityResult sensitivity_sweep(const FittedParams& fitted, std::span<const double> deltas,
                                    std::span<const double> theta_p, const NetworkConfig& config,
                                    const PropagationParams& base, const QuadratureSpec& quad) {
  fitted.validate();
  SensitivityResult out;
  out.theta_p.assign(theta_p.begin(), theta_p.end());
  const PropagationParams p0 = fitted.apply(base);
  std::tie(out.base_useful, out.base_interference) =
      power_ccdfs(config, p0, fitted.blockage(), fitted.eta, theta_p, quad);
  for (double d : deltas) {
    if (!(d > -1.0)) throw DomainError("sensitivity: perturbation must exceed -1");
    SensitivityRow row;
    row.delta = d;
    PropagationParams p = p0;
    p.alpha_L *= 1.0 + d;
    p.alpha_N *= 1.0 + d;
    std::tie(row.useful_ccdf, row.interference_ccdf) =
        power_ccdfs(config, p, fitted.blockage(), fitted.eta, theta_p, quad);
    for (std::size_t k = 0; k < theta_p.size(); ++k) {
      const double du = std::abs(row.useful_ccdf[k] - out.base_useful[k]);
      const double di = std::abs(row.interference_ccdf[k] - out.base_interference[k]);
      if (du > row.max_dev_useful) {
        row.max_dev_useful = du;
        row.argmax_useful = theta_p[k];
      }
      if (di > row.max_dev_interference) {
        row.max_dev_interference = di;
        row.argmax_interference = theta_p[k];
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace manhattan
