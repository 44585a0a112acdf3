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

#include "manhattan/analytic.hpp"

namespace manhattan {

namespace {

constexpr cplx kJ{0.0, 1.0};
// Beyond this exponent p_L = exp(-beta r^gamma) is treated as zero.
constexpr double kNegligibleExponent = 45.0;

// Integral of (r^2 + H^2)^(-alpha/2) over [r0, inf), for r0 >> H.
double power_tail(double r0, double alpha, double H) {
  const double h2 = H * H / (r0 * r0);
  const double lead = std::pow(r0, 1.0 - alpha);
  return lead * (1.0 / (alpha - 1.0) - 0.5 * alpha * h2 / (alpha + 1.0) +
                 alpha * (alpha + 2.0) / 8.0 * h2 * h2 / (alpha + 3.0));
}

// Integral of y^(1-alpha) / (1 + k y) over [y0, inf), for k y0 >> 1 (or k = 0).
double diffraction_outer_tail(double y0, double alpha, double k) {
  if (k == 0.0) return std::pow(y0, 2.0 - alpha) / (alpha - 2.0);
  const double ky = k * y0;
  return std::pow(y0, 1.0 - alpha) / k *
         (1.0 / (alpha - 1.0) - 1.0 / (ky * alpha) + 1.0 / (ky * ky * (alpha + 1.0)));
}

double street_gain(const PropagationParams& p, LinkCategory c, double r, double H) {
  return p.tx_power_P_B / p.kappa(c) * std::pow(r * r + H * H, -0.5 * p.alpha(c));
}

bool blockage_settled(const BlockageParams& b, double r) {
  return b.beta == 0.0 || b.beta * std::pow(r, b.gamma) > kNegligibleExponent;
}

void check_convergence(const NetworkConfig& c, const PropagationParams& p,
                       const BlockageParams& b) {
  if (!c.infinite()) return;
  if (b.beta == 0.0 && !(p.alpha_L > 1.0))
    throw DomainError("infinite network needs alpha_L > 1");
  if (b.beta > 0.0 && !(p.alpha_N > 1.0))
    throw DomainError("infinite network needs alpha_N > 1");
  const double kf = p.k_f();
  if (c.street_density_lambda_S > 0.0 && c.bs_density_lambda_B > 0.0 &&
      !(p.alpha_D > (kf > 0.0 ? 1.0 : 2.0)))
    throw DomainError("infinite network needs alpha_D > 1 (> 2 without Berg cross term)");
}

}  // namespace

AnalyticModel::AnalyticModel(const NetworkConfig& config, const PropagationParams& params,
                             const BlockageParams& blockage, const QuadratureSpec& quad)
    : config_(config), params_(params), blockage_(blockage), quad_(quad) {
  config_.validate();
  params_.validate();
  blockage_.validate();
  quad_.validate();
  check_convergence(config_, params_, blockage_);
  lambda_t_ = config_.typical_density();
  if (!(lambda_t_ > 0.0)) throw DomainError("typical-street BS density must be positive");
  fade_L_ = params_.fading(LinkCategory::LOS);
  fade_N_ = params_.fading(LinkCategory::NLOS);
  fade_D_ = params_.fading(LinkCategory::Diffraction);
  mean_L_ = fading_mean(fade_L_);
  mean_N_ = fading_mean(fade_N_);
  mean_D_ = fading_mean(fade_D_);
  kf_ = params_.k_f();

  const double H = config_.delta_H();
  const double R = config_.half_size_R;
  const bool finite = !config_.infinite();

  const double w0 = std::min(0.5 * H, 0.125 / lambda_t_);
  rgrid_ = PanelGrid(geometric_breakpoints(0.0, w0, 2.0, finite ? R : 1e15), 16);
  const auto rn = rgrid_.nodes();
  const auto rw = rgrid_.weights();
  const std::size_t n = rn.size();
  gain_L_.resize(n);
  gain_N_.resize(n);
  p_L_.resize(n);
  p_N_.resize(n);
  for (int q = 0; q < 2; ++q) fr_weight_[q].resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rn[i];
    gain_L_[i] = street_gain(params_, LinkCategory::LOS, r, H);
    gain_N_[i] = street_gain(params_, LinkCategory::NLOS, r, H);
    p_L_[i] = los_probability(r, blockage_);
    p_N_[i] = nlos_probability(r, blockage_);
    fr_weight_[0][i] = rw[i] * serving_distance_pdf(r, UserType::Street, lambda_t_, R);
    fr_weight_[1][i] = rw[i] * serving_distance_pdf(r, UserType::Crossroad, lambda_t_, R);
  }
  for (int q = 0; q < 2; ++q) {
    // f_r below 1e-18 of its peak contributes nothing.
    const double r_max = 41.5 / (2.0 * (q + 1) * lambda_t_);
    std::size_t p = 0;
    while (p < rgrid_.panel_count() && (finite || rgrid_.panel_begin(p) < r_max)) ++p;
    fr_panels_[q] = p;
  }

  const double rs = config_.exclusion_radius_r_s;
  d_max_ = finite ? R * (2.0 + kf_ * R) : kInfinity;
  auto bp = geometric_breakpoints(rs, rs, 2.0, finite ? d_max_ : 1e18);
  if (finite && R > rs) {
    auto it = std::lower_bound(bp.begin(), bp.end(), R);
    if (it == bp.end() || *it != R) bp.insert(it, R);
  }
  dgrid_ = PanelGrid(std::move(bp), 16);
  gain_D_.resize(dgrid_.nodes().size());
  for (std::size_t i = 0; i < gain_D_.size(); ++i)
    gain_D_[i] = params_.tx_power_P_B / params_.kappa(LinkCategory::Diffraction) *
                 std::pow(dgrid_.nodes()[i], -params_.alpha_D);
  y_panels_ = 0;
  if (finite)
    while (y_panels_ < dgrid_.panel_count() && dgrid_.panel_end(y_panels_) <= R) ++y_panels_;
}

double AnalyticModel::useful_gain(LinkCategory c, double r) const {
  return street_gain(params_, c, r, config_.delta_H());
}

std::size_t AnalyticModel::street_cutoff(cplx s, std::size_t min_panels) const {
  const std::size_t total = rgrid_.panel_count();
  if (!config_.infinite()) return total;
  const double as = std::abs(s);
  const double eps = quad_.inner_tolerance;
  const double H = config_.delta_H();
  for (std::size_t p = std::max<std::size_t>(min_panels, 1) - 1; p < total; ++p) {
    const double r0 = rgrid_.panel_end(p);
    if (r0 < 20.0 * H || !blockage_settled(blockage_, r0)) continue;
    if (as * mean_L_ * useful_gain(LinkCategory::LOS, r0) < eps &&
        as * mean_N_ * useful_gain(LinkCategory::NLOS, r0) < eps)
      return p + 1;
  }
  return total;
}

cplx AnalyticModel::street_tail(LinkCategory c, cplx s, double r0) const {
  if (!config_.infinite()) return 0.0;
  const bool los = c == LinkCategory::LOS;
  // Beyond the cutoff p_L is either 1 (beta = 0) or negligible.
  const double p_far = blockage_.beta == 0.0 ? (los ? 1.0 : 0.0) : (los ? 0.0 : 1.0);
  if (p_far == 0.0) return 0.0;
  const double m = los ? mean_L_ : mean_N_;
  return 2.0 * lambda_t_ * kJ * s * m * params_.tx_power_P_B / params_.kappa(c) *
         power_tail(r0, params_.alpha(c), config_.delta_H());
}

AnalyticModel::StreetTerms AnalyticModel::street_terms(cplx s, std::size_t min_panels) const {
  StreetTerms st;
  st.panels = street_cutoff(s, min_panels);
  const std::size_t n = rgrid_.node_count(st.panels);
  std::vector<cplx> vL(n), vN(n);
  const double a = 2.0 * lambda_t_;
  for (std::size_t i = 0; i < n; ++i) {
    vL[i] = p_L_[i] > 0.0 ? a * p_L_[i] * fading_cf_minus_one(fade_L_, gain_L_[i] * s) : 0.0;
    vN[i] = p_N_[i] > 0.0 ? a * p_N_[i] * fading_cf_minus_one(fade_N_, gain_N_[i] * s) : 0.0;
  }
  const double r0 = rgrid_.breakpoints()[st.panels];
  st.log_L.resize(n);
  st.log_N.resize(n);
  st.tails_L.resize(st.panels + 1);
  st.tails_N.resize(st.panels + 1);
  rgrid_.tail_integrals<cplx>(vL, st.panels, street_tail(LinkCategory::LOS, s, r0), st.log_L,
                              st.tails_L);
  rgrid_.tail_integrals<cplx>(vN, st.panels, street_tail(LinkCategory::NLOS, s, r0), st.log_N,
                              st.tails_N);
  return st;
}

cplx AnalyticModel::log_cf_street(LinkCategory c, cplx s, double r) const {
  if (c == LinkCategory::Diffraction) throw DomainError("use log_cf_diffraction");
  if (!(r >= 0.0 && r <= config_.half_size_R)) throw DomainError("r outside [0, R]");
  if (s == cplx(0.0)) return 0.0;
  const std::size_t p = rgrid_.panel_of(r);
  const auto st = street_terms(s, p + 1);
  const bool los = c == LinkCategory::LOS;
  const FadingSpec& f = los ? fade_L_ : fade_N_;
  auto integrand = [&](double x) {
    const double pr = los ? los_probability(x, blockage_) : nlos_probability(x, blockage_);
    if (pr == 0.0) return cplx(0.0);
    return 2.0 * lambda_t_ * pr * fading_cf_minus_one(f, useful_gain(c, x) * s);
  };
  const auto& tails = los ? st.tails_L : st.tails_N;
  return rgrid_.integral_to_panel_end<cplx>(r, p, integrand) + tails[p + 1];
}

cplx AnalyticModel::log_cf_diffraction(cplx s) const {
  const double lS = config_.street_density_lambda_S;
  const double lB = config_.bs_density_lambda_B;
  if (lS == 0.0 || lB == 0.0 || s == cplx(0.0)) return 0.0;
  const double alpha = params_.alpha_D;
  const double c = params_.tx_power_P_B / params_.kappa(LinkCategory::Diffraction);
  const double as = std::abs(s);
  const double eps = quad_.inner_tolerance;
  const bool finite = !config_.infinite();
  const double R = config_.half_size_R;
  const std::size_t total = dgrid_.panel_count();

  std::size_t cut = total;
  for (std::size_t p = 0; p < total; ++p) {
    const double d0 = dgrid_.panel_end(p);
    if (kf_ > 0.0 && kf_ * d0 < 100.0) continue;
    if (as * mean_D_ * c * std::pow(d0, -alpha) < eps) {
      cut = p + 1;
      break;
    }
  }
  const bool truncated = cut < total;
  const double d0 = dgrid_.breakpoints()[cut];
  const double far = finite ? std::pow(d_max_, 1.0 - alpha) : 0.0;
  // First-order tail of the Berg-distance integral of h = 1 - phi_F.
  auto T_far = [&](double z) {
    if (z >= d_max_) return cplx(0.0);
    return -kJ * s * mean_D_ * c * (std::pow(z, 1.0 - alpha) - far) / (alpha - 1.0);
  };
  auto h = [&](double D) { return -fading_cf_minus_one(fade_D_, c * std::pow(D, -alpha) * s); };

  const std::size_t n = dgrid_.node_count(cut);
  std::vector<cplx> hv(n), T(n), tails(cut + 1);
  for (std::size_t i = 0; i < n; ++i) hv[i] = -fading_cf_minus_one(fade_D_, gain_D_[i] * s);
  dgrid_.tail_integrals<cplx>(hv, cut, truncated ? T_far(d0) : cplx(0.0), T, tails);

  auto T_at = [&](double z) -> cplx {
    if (z >= d_max_) return 0.0;
    if (truncated && z >= d0) return T_far(z);
    const std::size_t p = dgrid_.panel_of(z);
    return dgrid_.integral_to_panel_end<cplx>(z, p, h) + tails[p + 1];
  };

  const auto yn = dgrid_.nodes();
  const auto yw = dgrid_.weights();
  const std::size_t ypanels = finite ? y_panels_ : cut;
  const std::size_t ny = dgrid_.node_count(ypanels);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < ny; ++i) {
    const double y = yn[i];
    const double stretch = 1.0 + kf_ * y;
    cplx Ty = i < n ? T[i] : T_far(y);
    if (finite) Ty -= T_at(y + R * stretch);
    acc += yw[i] * -expm1(-2.0 * lB * Ty / stretch);
  }
  if (!finite)
    acc += 2.0 * lB * (-kJ * s * mean_D_ * c / (alpha - 1.0)) *
           diffraction_outer_tail(d0, alpha, kf_);
  return -2.0 * lS * acc;
}

cplx AnalyticModel::serving_mixture(cplx t_S, cplx s_I, UserType q, bool complement) const {
  const int qi = user_index(q) - 1;
  const std::size_t mp = fr_panels_[qi];
  const auto st = street_terms(s_I, mp);
  const std::size_t n = rgrid_.node_count(mp);
  const auto& w = fr_weight_[qi];
  cplx acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx gL = 0.0, gN = 0.0;
    if (p_L_[i] > 0.0) {
      const cplx m1 = fading_cf_minus_one(fade_L_, gain_L_[i] * t_S);
      gL = complement ? -m1 : 1.0 + m1;
    }
    if (p_N_[i] > 0.0) {
      const cplx m1 = fading_cf_minus_one(fade_N_, gain_N_[i] * t_S);
      gN = complement ? -m1 : 1.0 + m1;
    }
    cplx e = std::exp(st.log_L[i] + st.log_N[i]);
    if (q == UserType::Crossroad) e *= e;
    acc += w[i] * (p_L_[i] * gL + p_N_[i] * gN) * e;
  }
  return acc;
}

double AnalyticModel::mean_useful(UserType q) const {
  const int qi = user_index(q) - 1;
  const std::size_t n = rgrid_.node_count(fr_panels_[qi]);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += fr_weight_[qi][i] * (p_L_[i] * mean_L_ * gain_L_[i] + p_N_[i] * mean_N_ * gain_N_[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// Reference route: adaptive quadrature on the integrals as written.

namespace {

// Adaptive integral over [a, b) on doubling panels; stops early at the first
// panel end where `done` holds and reports it through `stop`.
template <class F, class Done>
cplx integrate_doubling(F&& f, double a, double b, double first, Done&& done, double tol,
                        int budget, double& stop) {
  cplx acc = 0.0;
  double lo = a;
  double width = first;
  while (lo < b) {
    const double hi = std::min(b, std::max(lo + width, 2.0 * lo));
    auto r = integrate_adaptive<cplx>(f, lo, hi, 1e-11, tol, budget);
    if (!r.converged) throw NumericFailure("reference CF quadrature", r.error);
    acc += r.value;
    lo = hi;
    width = hi - a;
    if (done(lo)) break;
  }
  stop = lo;
  return acc;
}

}  // namespace

cplx log_cf_street_reference(LinkCategory c, cplx s, double r, const NetworkConfig& config,
                             const PropagationParams& params, const BlockageParams& blockage,
                             const QuadratureSpec& quad) {
  config.validate();
  params.validate();
  check_convergence(config, params, blockage);
  const double lt = config.typical_density();
  const double H = config.delta_H();
  const bool los = c == LinkCategory::LOS;
  const FadingSpec f = params.fading(c);
  const double m = fading_mean(f);
  auto integrand = [&](double x) {
    const double pr = los ? los_probability(x, blockage) : nlos_probability(x, blockage);
    if (pr == 0.0) return cplx(0.0);
    return 2.0 * lt * pr * fading_cf_minus_one(f, street_gain(params, c, x, H) * s);
  };
  const double eps = quad.inner_tolerance;
  auto done = [&](double x) {
    return config.infinite() && x >= 20.0 * H && blockage_settled(blockage, x) &&
           std::abs(s) * m * street_gain(params, c, x, H) < eps;
  };
  double stop = 0.0;
  cplx acc = integrate_doubling(integrand, r, config.half_size_R, std::max(1.0, 0.1 * H), done,
                                1e-3 * eps, quad.panel_budget, stop);
  if (config.infinite()) {
    const double p_far = blockage.beta == 0.0 ? (los ? 1.0 : 0.0) : (los ? 0.0 : 1.0);
    acc += p_far * 2.0 * lt * kJ * s * m * params.tx_power_P_B / params.kappa(c) *
           power_tail(stop, params.alpha(c), H);
  }
  return acc;
}

cplx log_cf_diffraction_reference(cplx s, const NetworkConfig& config,
                                  const PropagationParams& params, const QuadratureSpec& quad) {
  config.validate();
  params.validate();
  const double lS = config.street_density_lambda_S;
  const double lB = config.bs_density_lambda_B;
  if (lS == 0.0 || lB == 0.0) return 0.0;
  const double alpha = params.alpha_D;
  const double kf = params.k_f();
  const double c = params.tx_power_P_B / params.kappa(LinkCategory::Diffraction);
  const FadingSpec f = params.fading(LinkCategory::Diffraction);
  const double m = fading_mean(f);
  const double eps = quad.inner_tolerance;
  const double R = config.half_size_R;
  const bool infinite = config.infinite();

  auto inner = [&](double y) {
    auto h = [&](double x) {
      const double D = y + x + kf * x * y;
      return -fading_cf_minus_one(f, c * std::pow(D, -alpha) * s);
    };
    auto done = [&](double x) {
      const double D = y + x + kf * x * y;
      return infinite && std::abs(s) * m * c * std::pow(D, -alpha) < eps;
    };
    double stop = 0.0;
    cplx X = integrate_doubling(h, 0.0, R, 1.0, done, 1e-4 * eps, quad.panel_budget, stop);
    if (infinite) {
      const double D = y + stop + kf * stop * y;
      X += -kJ * s * m * c * std::pow(D, 1.0 - alpha) / ((alpha - 1.0) * (1.0 + kf * y));
    }
    return X;
  };
  auto outer = [&](double y) { return -expm1(-2.0 * lB * inner(y)); };
  auto done = [&](double y) {
    return infinite && (kf == 0.0 || kf * y >= 100.0) &&
           std::abs(s) * m * c * std::pow(y, -alpha) < eps;
  };
  double stop = 0.0;
  const double rs = config.exclusion_radius_r_s;
  cplx acc = integrate_doubling(outer, rs, R, rs, done, 1e-3 * eps, quad.panel_budget, stop);
  if (infinite)
    acc += 2.0 * lB * (-kJ * s * m * c / (alpha - 1.0)) * diffraction_outer_tail(stop, alpha, kf);
  return -2.0 * lS * acc;
}

// ---------------------------------------------------------------------------
// Mean exposure by Campbell's theorem.

MeanExposure mean_exposure(UserType q, const PropagationParams& params,
                           const BlockageParams& blockage, const NetworkConfig& config) {
  config.validate();
  params.validate();
  blockage.validate();
  check_convergence(config, params, blockage);
  const double H = config.delta_H();
  const double R = config.half_size_R;
  const bool infinite = config.infinite();
  const double lt = config.typical_density();
  constexpr double tol = 1e-14;

  auto street = [&](LinkCategory c) {
    const bool los = c == LinkCategory::LOS;
    auto f = [&](double r) {
      const double pr = los ? los_probability(r, blockage) : nlos_probability(r, blockage);
      return pr * std::pow(r * r + H * H, -0.5 * params.alpha(c));
    };
    auto done = [&](double r) {
      return infinite && r >= 1e4 * H && blockage_settled(blockage, r);
    };
    double stop = 0.0;
    double acc =
        integrate_doubling([&](double r) { return cplx(f(r)); }, 0.0, R, 0.5 * H, done, tol, 200,
                           stop)
            .real();
    if (infinite) {
      const double p_far = blockage.beta == 0.0 ? (los ? 1.0 : 0.0) : (los ? 0.0 : 1.0);
      acc += p_far * power_tail(stop, params.alpha(c), H);
    }
    return params.tx_power_P_B / params.kappa(c) * fading_mean(params.fading(c)) * 2.0 * lt * acc;
  };

  MeanExposure out;
  out.mu_L = street(LinkCategory::LOS);
  out.mu_N = blockage.beta == 0.0 ? 0.0 : street(LinkCategory::NLOS);

  const double lS = config.street_density_lambda_S;
  const double lB = config.bs_density_lambda_B;
  if (lS > 0.0 && lB > 0.0) {
    const double alpha = params.alpha_D;
    const double kf = params.k_f();
    // Inner integral over the BS offset in closed form.
    auto inner = [&](double y) {
      const double stretch = 1.0 + kf * y;
      if (alpha == 1.0) return infinite ? kInfinity : std::log1p(R * stretch / y) / stretch;
      const double far = infinite ? 0.0 : std::pow(y + R * stretch, 1.0 - alpha);
      return (std::pow(y, 1.0 - alpha) - far) / ((alpha - 1.0) * stretch);
    };
    auto done = [&](double y) { return infinite && y >= 1e6 && (kf == 0.0 || kf * y >= 100.0); };
    double stop = 0.0;
    const double rs = config.exclusion_radius_r_s;
    double acc = integrate_doubling([&](double y) { return cplx(inner(y)); }, rs, R, rs, done,
                                    tol, 200, stop)
                     .real();
    if (infinite) acc += diffraction_outer_tail(stop, alpha, kf) / (alpha - 1.0);
    const LinkCategory d = LinkCategory::Diffraction;
    out.mu_D = params.tx_power_P_B / params.kappa(d) * fading_mean(params.fading(d)) * 4.0 * lS *
               lB * acc;
  }
  if (q == UserType::Crossroad) {
    out.mu_L *= 2.0;
    out.mu_N *= 2.0;
    out.mu_D *= 2.0;
  }
  return out;
}

}  // namespace manhattan
