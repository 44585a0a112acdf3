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

#include "manhattan/montecarlo.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "manhattan/quadrature.hpp"

namespace manhattan {

double McOptions::resolved_floor(const PropagationParams& p) const {
  if (power_floor_W > 0.0) return power_floor_W;
  return p.noise_W > 0.0 ? 1e-3 * p.noise_W : 1e-21;
}

namespace {

// Stream layout inside one realization.
constexpr std::uint64_t kTypicalStream = 1;
constexpr std::uint64_t kStreetStream = 2;
constexpr std::uint64_t kFadingStream = 3;
constexpr std::uint64_t kUserStream = 7;

double berg_window(const PropagationParams& p, double floor_W) {
  if (p.tx_power_P_B <= 0.0) return 0.0;
  return std::pow(p.tx_power_P_B / (p.kappa(LinkCategory::Diffraction) * floor_W),
                  1.0 / p.alpha_D);
}

}  // namespace

PowerDecomposition simulate_realization(const NetworkConfig& config,
                                        const PropagationParams& params,
                                        const BlockageParams& blockage, UserType user_type,
                                        std::uint64_t seed, std::uint64_t stream,
                                        const McOptions& options, std::vector<LinkRecord>* links) {
  config.validate();
  params.validate();
  blockage.validate();
  if (config.infinite()) throw DomainError("Monte Carlo needs a finite half size R");
  if (!(config.typical_density() > 0.0))
    throw DomainError("typical-street BS density must be positive");

  const double R = config.half_size_R;
  const double H = config.delta_H();
  const double P = params.tx_power_P_B;
  const int n_typical = user_index(user_type);
  const CounterRng root(seed, stream);
  CounterRng fading_rng = root.split(kFadingStream);

  thread_local std::vector<double> pos;
  thread_local std::vector<int> axis_of;
  pos.clear();
  axis_of.clear();
  for (std::uint64_t attempt = 0; pos.empty(); ++attempt) {
    if (attempt > 1000) throw DomainError("no BS in the typical street(s) after 1000 draws");
    CounterRng trng = root.split(kTypicalStream).split(attempt);
    for (int a = 0; a < n_typical; ++a) {
      const auto n = sample_poisson(trng, 2.0 * R * config.typical_density());
      for (std::int64_t k = 0; k < n; ++k) {
        pos.push_back(R * (2.0 * trng.uniform() - 1.0));
        axis_of.push_back(a);
      }
    }
  }

  std::size_t serving = 0;
  for (std::size_t j = 1; j < pos.size(); ++j)
    if (std::abs(pos[j]) < std::abs(pos[serving])) serving = j;

  PowerDecomposition out;
  out.user_type = user_type;
  out.serving_distance = std::abs(pos[serving]);

  const FadingSpec fL = params.fading(LinkCategory::LOS);
  const FadingSpec fN = params.fading(LinkCategory::NLOS);
  const FadingSpec fD = params.fading(LinkCategory::Diffraction);
  const double cL = P / params.kappa(LinkCategory::LOS);
  const double cN = P / params.kappa(LinkCategory::NLOS);
  const double cD = P / params.kappa(LinkCategory::Diffraction);
  std::uint64_t bs_id = 0;

  for (std::size_t j = 0; j < pos.size(); ++j) {
    const double d = std::abs(pos[j]);
    const bool los = fading_rng.uniform() < los_probability(d, blockage);
    const double g = sample_fading_power(los ? fL : fN, fading_rng);
    const double d2 = d * d + H * H;
    const double power =
        g * (los ? cL * std::pow(d2, -0.5 * params.alpha_L) : cN * std::pow(d2, -0.5 * params.alpha_N));
    if (j == serving) {
      out.S = power;
      out.serving_is_los = los;
    } else if (los) {
      out.I_L += power;
    } else {
      out.I_N += power;
    }
    if (links)
      links->push_back({stream, bs_id, los ? LinkCategory::LOS : LinkCategory::NLOS, d, los,
                        power, 1, user_type});
    ++bs_id;
  }

  // Perpendicular streets, restricted to the window where the mean
  // diffracted power can exceed the floor.
  const double d_floor = berg_window(params, options.resolved_floor(params));
  const double kf = params.k_f();
  const double rs = config.exclusion_radius_r_s;
  const double lS = config.street_density_lambda_S;
  const double lB = config.bs_density_lambda_B;
  if (d_floor > rs && lS > 0.0 && lB > 0.0) {
    CounterRng srng = root.split(kStreetStream);
    const double ymax = std::min(R, d_floor);
    for (int a = 0; a < n_typical; ++a) {
      const auto n_streets = sample_poisson(srng, 2.0 * ymax * lS);
      for (std::int64_t k = 0; k < n_streets; ++k) {
        const double y = std::abs(ymax * (2.0 * srng.uniform() - 1.0));
        if (y < rs) continue;  // exclusion zone: the street is ignored
        const double xmax = std::min(R, (d_floor - y) / (1.0 + kf * y));
        const auto n_bs = sample_poisson(srng, 2.0 * xmax * lB);
        for (std::int64_t b = 0; b < n_bs; ++b) {
          const double x = std::abs(xmax * (2.0 * srng.uniform() - 1.0));
          const double D = y + x + kf * x * y;
          const double g = sample_fading_power(fD, fading_rng);
          const double power = g * cD * std::pow(D, -params.alpha_D);
          out.I_D += power;
          if (links)
            links->push_back(
                {stream, bs_id, LinkCategory::Diffraction, D, false, power, 1, user_type});
          ++bs_id;
        }
      }
    }
  }
  return out;
}

namespace {

template <bool Parallel>
std::vector<PowerDecomposition> batch(std::size_t n, const NetworkConfig& config,
                                      const PropagationParams& params,
                                      const BlockageParams& blockage, double eta,
                                      std::uint64_t seed_base, const McOptions& options) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw DomainError("eta must lie in [0, 1]");
  std::vector<PowerDecomposition> out(n);
  auto one = [&](std::size_t i) {
    CounterRng urng = CounterRng(seed_base, i).split(kUserStream);
    const UserType u = urng.uniform() < eta ? UserType::Crossroad : UserType::Street;
    out[i] = simulate_realization(config, params, blockage, u, seed_base, i, options);
  };
  // Validate once up front so worker threads do not throw.
  config.validate();
  params.validate();
  blockage.validate();
  if (config.infinite()) throw DomainError("Monte Carlo needs a finite half size R");
  if (!(config.typical_density() > 0.0))
    throw DomainError("typical-street BS density must be positive");
  const auto m = static_cast<std::ptrdiff_t>(n);
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < m; ++i) one(static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < m; ++i) one(static_cast<std::size_t>(i));
  }
  return out;
}

}  // namespace

std::vector<PowerDecomposition> simulate_batch(std::size_t n, const NetworkConfig& config,
                                               const PropagationParams& params,
                                               const BlockageParams& blockage, double eta,
                                               std::uint64_t seed_base,
                                               const McOptions& options) {
  return batch<true>(n, config, params, blockage, eta, seed_base, options);
}

std::vector<PowerDecomposition> simulate_batch_serial(std::size_t n, const NetworkConfig& config,
                                                      const PropagationParams& params,
                                                      const BlockageParams& blockage, double eta,
                                                      std::uint64_t seed_base,
                                                      const McOptions& options) {
  return batch<false>(n, config, params, blockage, eta, seed_base, options);
}

std::vector<LinkRecord> simulate_links(std::size_t n, const NetworkConfig& config,
                                       const PropagationParams& params,
                                       const BlockageParams& blockage, UserType user_type,
                                       std::uint64_t seed_base, const McOptions& options) {
  std::vector<std::vector<LinkRecord>> per(n);
  const auto m = static_cast<std::ptrdiff_t>(n);
  config.validate();
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < m; ++i)
    simulate_realization(config, params, blockage, user_type, seed_base,
                         static_cast<std::uint64_t>(i), options, &per[i]);
  std::vector<LinkRecord> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

namespace {

McEstimate mean_estimate(std::vector<double>& v, std::uint64_t seed_base) {
  McEstimate e;
  e.count = v.size();
  e.seed_base = seed_base;
  if (v.empty()) return e;
  const double n = static_cast<double>(v.size());
  e.value = pairwise_sum(v) / n;
  for (double& x : v) x = (x - e.value) * (x - e.value);
  const double var = v.size() > 1 ? pairwise_sum(v) / (n - 1.0) : 0.0;
  e.stderr_ = std::sqrt(var / n);
  return e;
}

McEstimate proportion(std::size_t hits, std::size_t n, std::uint64_t seed_base) {
  McEstimate e;
  e.count = n;
  e.seed_base = seed_base;
  if (n == 0) return e;
  e.value = static_cast<double>(hits) / static_cast<double>(n);
  e.stderr_ = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
  return e;
}

}  // namespace

McMetrics summarize(std::span<const PowerDecomposition> rec, std::span<const double> theta_c,
                    std::span<const double> theta_e, const PropagationParams& params,
                    std::uint64_t seed_base) {
  McMetrics m;
  m.theta_c.assign(theta_c.begin(), theta_c.end());
  m.theta_e.assign(theta_e.begin(), theta_e.end());
  const std::size_t n = rec.size();
  const double W = params.noise_W;
  std::vector<std::size_t> cov(theta_c.size(), 0), exp(theta_e.size(), 0),
      joint(theta_c.size() * theta_e.size(), 0);
  std::vector<double> cap(n), L(n), N(n), D(n), E(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rec[i];
    const double sinr = r.sinr(W);
    const double e = r.exposure();
    for (std::size_t a = 0; a < theta_c.size(); ++a) {
      if (!(sinr > theta_c[a])) continue;
      ++cov[a];
      for (std::size_t b = 0; b < theta_e.size(); ++b)
        if (e < theta_e[b]) ++joint[a * theta_e.size() + b];
    }
    for (std::size_t b = 0; b < theta_e.size(); ++b)
      if (e < theta_e[b]) ++exp[b];
    cap[i] = params.bandwidth_B * std::log2(1.0 + sinr);
    L[i] = r.I_L + (r.serving_is_los ? r.S : 0.0);
    N[i] = r.I_N + (r.serving_is_los ? 0.0 : r.S);
    D[i] = r.I_D;
    E[i] = e;
  }
  for (auto c : cov) m.coverage.push_back(proportion(c, n, seed_base));
  for (auto c : exp) m.exposure_cdf.push_back(proportion(c, n, seed_base));
  for (auto c : joint) m.joint.push_back(proportion(c, n, seed_base));
  m.mean_capacity = mean_estimate(cap, seed_base);
  m.mu_L = mean_estimate(L, seed_base);
  m.mu_N = mean_estimate(N, seed_base);
  m.mu_D = mean_estimate(D, seed_base);
  m.mu_E = mean_estimate(E, seed_base);
  return m;
}

McMetrics estimate_metrics(std::size_t n, std::span<const double> theta_c,
                           std::span<const double> theta_e, const NetworkConfig& config,
                           const PropagationParams& params, const BlockageParams& blockage,
                           double eta, std::uint64_t seed_base, const McOptions& options) {
  if (n < 1) throw DomainError("need at least one realization");
  const auto rec = simulate_batch(n, config, params, blockage, eta, seed_base, options);
  auto m = summarize(rec, theta_c, theta_e, params, seed_base);
  m.truncation_bound_W =
      diffraction_truncation_bound(config, params, options.resolved_floor(params));
  return m;
}

McMetrics estimate_metrics_serial(std::size_t n, std::span<const double> theta_c,
                                  std::span<const double> theta_e, const NetworkConfig& config,
                                  const PropagationParams& params, const BlockageParams& blockage,
                                  double eta, std::uint64_t seed_base,
                                  const McOptions& options) {
  if (n < 1) throw DomainError("need at least one realization");
  const auto rec = simulate_batch_serial(n, config, params, blockage, eta, seed_base, options);
  auto m = summarize(rec, theta_c, theta_e, params, seed_base);
  m.truncation_bound_W =
      diffraction_truncation_bound(config, params, options.resolved_floor(params));
  return m;
}

double diffraction_truncation_bound(const NetworkConfig& config, const PropagationParams& params,
                                    double floor_W) {
  const double lS = config.street_density_lambda_S;
  const double lB = config.bs_density_lambda_B;
  const double R = config.half_size_R;
  const double rs = config.exclusion_radius_r_s;
  if (lS == 0.0 || lB == 0.0 || params.tx_power_P_B == 0.0 || !(R > rs)) return 0.0;
  const double alpha = params.alpha_D;
  const double kf = params.k_f();
  const double df = berg_window(params, floor_W);
  auto inner = [&](double y) {
    const double stretch = 1.0 + kf * y;
    const double lo = std::max(y, df);
    const double hi = y + R * stretch;
    if (!(hi > lo)) return 0.0;
    if (alpha == 1.0) return std::log(hi / lo) / stretch;
    return (std::pow(lo, 1.0 - alpha) - std::pow(hi, 1.0 - alpha)) / ((alpha - 1.0) * stretch);
  };
  auto bp = geometric_breakpoints(rs, rs, 2.0, R);
  if (df > rs && df < R) bp.insert(std::lower_bound(bp.begin(), bp.end(), df), df);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    acc += integrate_adaptive<double>(inner, bp[i], bp[i + 1], 1e-8, 1e-300, 200).value;
  const LinkCategory d = LinkCategory::Diffraction;
  return params.tx_power_P_B / params.kappa(d) * fading_mean(params.fading(d)) * 4.0 * lS * lB *
         acc;
}

void write_realizations(std::ostream& os, std::span<const PowerDecomposition> records) {
  os << "# realization S_W I_L_W I_N_W I_D_W serving_distance_m serving_is_los user_type\n";
  std::size_t i = 0;
  for (const auto& r : records) {
    os << i++ << ' ' << format_double(r.S) << ' ' << format_double(r.I_L) << ' '
       << format_double(r.I_N) << ' ' << format_double(r.I_D) << ' '
       << format_double(r.serving_distance) << ' ' << (r.serving_is_los ? 1 : 0) << ' '
       << to_string(r.user_type) << '\n';
  }
}

std::vector<PowerDecomposition> read_realizations(std::istream& is) {
  std::vector<PowerDecomposition> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string idx, s, l, nn, d, r, los, user;
    if (!(ls >> idx >> s >> l >> nn >> d >> r >> los >> user))
      throw DomainError("realization line " + std::to_string(lineno) + ": expected 8 columns");
    PowerDecomposition p;
    p.S = parse_double(s);
    p.I_L = parse_double(l);
    p.I_N = parse_double(nn);
    p.I_D = parse_double(d);
    p.serving_distance = parse_double(r);
    p.serving_is_los = los == "1";
    p.user_type = parse_user_type(user);
    out.push_back(p);
  }
  return out;
}

}  // namespace manhattan
