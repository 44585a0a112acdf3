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

// Acceptance run: one PASS/FAIL line per criterion. Usage: manhattan_acceptance [N ...]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "manhattan/analytic.hpp"
#include "manhattan/cli.hpp"
#include "manhattan/fitting.hpp"
#include "manhattan/montecarlo.hpp"
#include "manhattan/raytrace.hpp"

using namespace manhattan;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kGpTolerance = 1e-6;
constexpr double kGpSeconds = 1.0;
constexpr double kCoverageTolerance = 0.015;
constexpr double kExposureTolerance = 0.015;
constexpr double kSigmas = 3.0;
constexpr double kExactRatio = 1e-12;
constexpr double kCapacityRelative = 0.03;
constexpr double kOptimumSlack = 1e-3;  // relative, against the optimizer's log tolerance
constexpr double kFriisRelative = 1e-9;
constexpr double kNullRelative = 0.01;
constexpr double kReciprocityRelative = 1e-9;
constexpr double kExponentRelative = 0.05;
constexpr double kBlockageRelative = 0.10;
constexpr double kKsLimit = 0.1;

// Criteria that are reported but do not fail the run; see README.
const std::set<int> kKnownDeviations{10};

// Mid-size Monte Carlo layout standing in for the infinite plane.
constexpr double kMcHalfSize = 128000.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

NetworkConfig fig2_network() { return NetworkConfig{}; }

PropagationParams fig2_params() { return PropagationParams{}; }

NetworkConfig mc_layout(NetworkConfig c) {
  c.half_size_R = kMcHalfSize;
  return c;
}

std::vector<double> coverage_grid() {
  std::vector<double> th;
  for (int i = 0; i <= 20; ++i) th.push_back(db_to_linear(-10.0 + 2.0 * i));
  return th;
}

template <class F>
std::vector<double> mixed(const AnalyticModel& m, std::span<const double> grid, double eta, F curve) {
  const auto s = curve(m, grid, UserType::Street);
  const auto c = curve(m, grid, UserType::Crossroad);
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = (1.0 - eta) * s[i] + eta * c[i];
  return out;
}

std::vector<double> percentile_grid(std::vector<double> x, std::size_t points) {
  std::sort(x.begin(), x.end());
  const double lo = x[x.size() / 100], hi = x[x.size() * 99 / 100];
  std::vector<double> g;
  for (std::size_t i = 0; i < points; ++i)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
  return g;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  const auto ex = CharacteristicFunction::exponential(1.0);
  const auto ga = CharacteristicFunction::gamma(2.0, 1.0);
  const auto no = CharacteristicFunction::normal(1.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    const double t = 0.05 + 0.2 * i, x = -5.0 + 0.25 * i;
    worst = std::max(worst, std::abs(gil_pelaez_cdf(ex, t) + std::expm1(-t)));
    worst = std::max(worst, std::abs(gil_pelaez_cdf(ga, t) - (1.0 - std::exp(-t) * (1.0 + t))));
    worst = std::max(worst, std::abs(gil_pelaez_cdf(no, x) -
                                     0.5 * std::erfc(-(x - 1.0) / (2.0 * std::sqrt(2.0)))));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= kGpTolerance && secs < kGpSeconds,
          fmt("max |error| %.2e (<= %.0e), %.3f s (< %.0f s)", worst, kGpTolerance, secs, kGpSeconds)};
}

// Shared Monte Carlo batches for criteria 2 and 3.
std::map<double, std::vector<PowerDecomposition>>& fig2_batches() {
  static std::map<double, std::vector<PowerDecomposition>> cache;
  if (cache.empty())
    for (double beta : {0.0, 0.012, 0.04})
      cache[beta] = simulate_batch(10000, mc_layout(fig2_network()), fig2_params(), {beta, 1.0},
                                   fig2_network().crossroad_probability_eta, kSeed);
  return cache;
}

Outcome criterion2() {
  const auto net = fig2_network();
  const auto p = fig2_params();
  const auto th = coverage_grid();
  std::string detail;
  double worst = 0.0;
  for (const auto& [beta, batch] : fig2_batches()) {
    const AnalyticModel m(net, p, {beta, 1.0});
    const auto a = mixed(m, th, net.crossroad_probability_eta,
                         [](auto& mm, auto g, auto q) { return coverage_curve(mm, g, q); });
    const auto mc = summarize(batch, th, {}, p, kSeed);
    double d = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i) d = std::max(d, std::abs(a[i] - mc.coverage[i].value));
    detail += fmt("beta=%g: %.4f; ", beta, d);
    worst = std::max(worst, d);
  }
  return {worst <= kCoverageTolerance, detail + fmt("max %.4f (<= %.3f)", worst, kCoverageTolerance)};
}

Outcome criterion3() {
  const auto net = fig2_network();
  const auto p = fig2_params();
  std::string detail;
  double worst = 0.0;
  for (const auto& [beta, batch] : fig2_batches()) {
    std::vector<double> e;
    for (const auto& r : batch) e.push_back(r.exposure());
    const auto th = percentile_grid(e, 21);
    const AnalyticModel m(net, p, {beta, 1.0});
    const auto a = mixed(m, th, net.crossroad_probability_eta,
                         [](auto& mm, auto g, auto q) { return exposure_curve(mm, g, q); });
    const auto mc = summarize(batch, {}, th, p, kSeed);
    double d = 0.0;
    for (std::size_t i = 0; i < th.size(); ++i)
      d = std::max(d, std::abs(a[i] - mc.exposure_cdf[i].value));
    detail += fmt("beta=%g: %.4f; ", beta, d);
    worst = std::max(worst, d);
  }
  return {worst <= kExposureTolerance, detail + fmt("max %.4f (<= %.3f)", worst, kExposureTolerance)};
}

Outcome criterion4() {
  const auto net = fig2_network();
  const auto p = fig2_params();
  const BlockageParams b{0.012, 1.0};
  const double eta = net.crossroad_probability_eta;
  const auto s = mean_exposure(UserType::Street, p, b, net);
  const auto c = mean_exposure(UserType::Crossroad, p, b, net);
  const auto mc = estimate_metrics(100000, {}, {}, mc_layout(net), p, b, eta, kSeed + 4);
  bool pass = true;
  std::string detail;
  auto check = [&](const char* name, double street, double cross, const McEstimate& m) {
    const double a = (1.0 - eta) * street + eta * cross;
    const double z = std::abs(m.value - a) / m.stderr_;
    pass = pass && z <= kSigmas;
    detail += fmt("%s %.2f sigma; ", name, z);
  };
  check("mu_L", s.mu_L, c.mu_L, mc.mu_L);
  check("mu_N", s.mu_N, c.mu_N, mc.mu_N);
  check("mu_D", s.mu_D, c.mu_D, mc.mu_D);
  const double ratio = std::abs(c.total() / (2.0 * s.total()) - 1.0);
  pass = pass && ratio <= kExactRatio;
  return {pass, detail + fmt("|crossroad/(2 street) - 1| = %.1e (<= %.0e)", ratio, kExactRatio)};
}

Outcome criterion5() {
  const auto net = fig2_network();
  const auto p = fig2_params();
  const BlockageParams b{0.0004, 1.0};
  const double eta = net.crossroad_probability_eta;
  std::vector<double> tc;
  for (int i = 0; i < 15; ++i) tc.push_back(db_to_linear(-10.0 + 3.0 * i));
  const auto batch = simulate_batch(10000, mc_layout(net), p, b, eta, kSeed + 5);
  std::vector<double> e;
  for (const auto& r : batch) e.push_back(r.exposure());
  const auto te = percentile_grid(e, 15);
  const AnalyticModel m(net, p, b);
  const auto pc = mixed(m, tc, eta, [](auto& mm, auto g, auto q) { return coverage_curve(mm, g, q); });
  const auto pe = mixed(m, te, eta, [](auto& mm, auto g, auto q) { return exposure_curve(mm, g, q); });
  const auto mc = summarize(batch, tc, te, p, kSeed + 5);
  double worst = kInfinity, active = kInfinity;
  int nonzero = 0;
  for (std::size_t i = 0; i < tc.size(); ++i)
    for (std::size_t j = 0; j < te.size(); ++j) {
      const auto& joint = mc.joint[i * te.size() + j];
      const double bound = joint_lower_bound(pc[i], pe[j]);
      const double margin = joint.value - bound + kSigmas * joint.stderr_;
      worst = std::min(worst, margin);
      if (bound > 0.0) {
        ++nonzero;
        active = std::min(active, margin);
      }
    }
  return {worst >= 0.0, fmt("min over 15x15 of P_joint - bound + 3 sigma = %.4f (>= 0); "
                            "%d points with a positive bound, min margin there %.4f",
                            worst, nonzero, active)};
}

PropagationParams fig5_params() {
  PropagationParams p;
  p.alpha_L = 2.5;
  p.alpha_N = 2.75;
  p.rice_K = 1.0;
  p.noise_W = dbm_to_watts(-93.0);
  return p;
}

NetworkConfig fig5_network() {
  NetworkConfig c;
  c.bs_height_h_B = 4.5;
  return c;
}

Outcome criterion6() {
  const auto net = fig5_network();
  const auto p = fig5_params();
  const BlockageParams b{0.004, 1.0};
  const double eta = net.crossroad_probability_eta;
  const AnalyticModel m(net, p, b);
  const double a = (1.0 - eta) * average_capacity(m, UserType::Street) +
                   eta * average_capacity(m, UserType::Crossroad);
  const auto mc = estimate_metrics(10000, {}, {}, mc_layout(net), p, b, eta, kSeed + 6);
  const double rel = std::abs(a / mc.mean_capacity.value - 1.0);
  bool pass = rel <= kCapacityRelative;
  std::string detail = fmt("capacity rel. dev %.4f (<= %.2f); ", rel, kCapacityRelative);

  const double lo = 0.5e-3, hi = 40e-3;
  const auto base = optimal_bs_density(p, b, net, lo, hi, {}, 13);
  const bool interior = !base.at_boundary && base.sweep_lambda.size() >= 8;
  pass = pass && interior;
  detail += fmt("optimum %.2f /km %s over %zu points; ", base.lambda_B * 1e3,
                interior ? "interior" : "NOT interior", base.sweep_lambda.size());

  const double betas[3] = {0.002, 0.004, 0.008};
  const double powers[3] = {0.1, 1.0, 10.0};
  double opt[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      PropagationParams pj = p;
      pj.tx_power_P_B = powers[j];
      opt[i][j] = optimal_bs_density(pj, {betas[i], 1.0}, net, lo, hi, {}, 13).lambda_B;
    }
  bool mono = true;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i > 0) mono = mono && opt[i][j] >= opt[i - 1][j] * (1.0 - kOptimumSlack);
      if (j > 0) mono = mono && opt[i][j] <= opt[i][j - 1] * (1.0 + kOptimumSlack);
    }
  pass = pass && mono;
  detail += "lambda_opt /km [beta rows x P_B cols]:";
  for (int i = 0; i < 3; ++i)
    detail += fmt(" %.2f,%.2f,%.2f;", opt[i][0] * 1e3, opt[i][1] * 1e3, opt[i][2] * 1e3);
  detail += mono ? " monotone" : " NOT monotone";
  return {pass, detail};
}

Outcome criterion7() {
  const auto net = fig2_network();
  const auto p = fig2_params();
  const double eta = net.crossroad_probability_eta;
  const double th = db_to_linear(5.0);
  double pc[3], err[3];
  const double betas[3] = {0.0, 0.012, 0.04};
  for (int i = 0; i < 3; ++i) {
    const AnalyticModel m(net, p, {betas[i], 1.0});
    const auto s = gil_pelaez_detailed(coverage_cf(m, th, UserType::Street), 0.0, m.quad());
    const auto c = gil_pelaez_detailed(coverage_cf(m, th, UserType::Crossroad), 0.0, m.quad());
    // coverage_cf is the CF of S - theta (I + W); coverage is its complementary CDF at 0.
    pc[i] = (1.0 - eta) * (1.0 - s.value) + eta * (1.0 - c.value);
    err[i] = (1.0 - eta) * s.error + eta * c.error;
  }
  const double up = pc[1] - pc[0], down = pc[1] - pc[2];
  const bool pass = up > err[0] + err[1] && down > err[1] + err[2];
  return {pass, fmt("P_c(5 dB): beta 0 %.4f, 0.012 %.4f, 0.04 %.4f; margins %.4f, %.4f vs "
                    "tolerance %.1e, %.1e",
                    pc[0], pc[1], pc[2], up, down, err[0] + err[1], err[1] + err[2])};
}

Outcome criterion8() {
  RtSceneConfig rt;
  const PropagationParams p;
  const double lambda = kSpeedOfLight / p.frequency_f;
  const auto ground = RtScene::open_ground(rt);

  double friis = 0.0;
  for (double d : {10.0, 100.0, 1000.0}) {
    const Vec3 a{0.0, 0.0, 6.0}, b{d, 0.0, 1.5};
    auto paths = enumerate_paths(ground, a, b);
    paths.resize(1);
    const double g = lambda / (4.0 * kPi * (a - b).norm());
    friis = std::max(friis, std::abs(received_power_rt(paths, p, rt) / (g * g) - 1.0));
  }

  RtSceneConfig rth = rt;
  rth.polarization = Polarization::Horizontal;
  const auto ground_h = RtScene::open_ground(rth);
  const double hb = 6.0, hu = 1.5, step = 0.002;
  auto power = [&](double d) {
    auto paths = enumerate_paths(ground_h, {0.0, 0.0, hb}, {d, 0.0, hu});
    return received_power_rt(paths, p, rth);
  };
  int nulls = 0;
  double nul = 0.0;
  double p2 = power(5.0), p1 = power(5.0 + step);
  for (double d = 5.0 + 2.0 * step; d < 60.0; d += step) {
    const double p0 = power(d);
    if (p1 < p2 && p1 < p0) {
      const double dm = d - step;
      const double k = std::round((std::hypot(dm, hb + hu) - std::hypot(dm, hb - hu)) / lambda);
      double lo = 1.0, hi = 1000.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::hypot(mid, hb + hu) - std::hypot(mid, hb - hu) > k * lambda ? lo : hi) = mid;
      }
      nul = std::max(nul, std::abs(dm - lo) / lo);
      ++nulls;
    }
    p2 = p1;
    p1 = p0;
  }

  NetworkConfig c;
  c.half_size_R = 2000.0;
  int pairs = 0;
  double recip = 0.0;
  for (std::uint64_t seed = 40; pairs < 100 && seed < 80; ++seed) {
    const auto scene = RtScene::build(sample_scene(c, UserType::Street, seed), c, rt, seed);
    for (const auto& t : scene.transmitters()) {
      if (pairs >= 100) break;
      auto fwd = enumerate_paths(scene, t.position, scene.user(), &t);
      auto bwd = enumerate_paths(scene, scene.user(), t.position, &t);
      if (fwd.empty()) continue;
      ++pairs;
      const double a = received_power_rt(fwd, p, rt), b = received_power_rt(bwd, p, rt);
      recip = std::max(recip, std::abs(a - b) / a);
    }
  }
  const bool pass = friis <= kFriisRelative && nulls >= 5 && nul <= kNullRelative && pairs == 100 &&
                    recip <= kReciprocityRelative;
  return {pass, fmt("Friis %.1e (<= %.0e); %d two-ray nulls, worst %.2e (<= %.2f); "
                    "reciprocity %.1e over %d pairs (<= %.0e)",
                    friis, kFriisRelative, nulls, nul, kNullRelative, recip, pairs,
                    kReciprocityRelative)};
}

Outcome criterion9() {
  NetworkConfig c;
  c.half_size_R = 1000.0;
  PropagationParams p;
  p.alpha_L = 1.7;
  p.alpha_N = 2.5;
  p.fading_L = FadingSpec::exponential(1.66);
  p.fading_N = FadingSpec::exponential(0.33);
  const BlockageParams b{0.004, 0.85};
  // About 1e5 typical-street links, the records the fit consumes.
  const auto rec = simulate_links(9900, c, p, b, UserType::Street, kSeed + 9);
  const auto fitted = static_cast<std::size_t>(std::count_if(
      rec.begin(), rec.end(), [](const LinkRecord& r) { return r.category != LinkCategory::Diffraction; }));
  FitContext ctx;
  ctx.delta_H = c.delta_H();
  const auto f = fit_all(rec, {}, ctx, 20);
  auto rel = [](double x, double t) { return std::abs(x / t - 1.0); };
  const double eL = rel(f.alpha_L, 1.7), eN = rel(f.alpha_N, 2.5);
  const double eb = rel(f.beta, 0.004), eg = rel(f.gamma, 0.85);
  const double rL = rel(f.fading_fit.L.rate, 1.66), rN = rel(f.fading_fit.N.rate, 0.33);
  const bool in_range = fitted >= 10000 && fitted <= 100000;
  const bool pass = in_range && eL <= kExponentRelative && eN <= kExponentRelative &&
                    eb <= kBlockageRelative && eg <= kBlockageRelative && rL <= kBlockageRelative &&
                    rN <= kBlockageRelative;
  return {pass, fmt("%zu street-link records; rel. errors alpha_L %.3f alpha_N %.3f (<= %.2f), beta %.3f "
                    "gamma %.3f rate_L %.3f rate_N %.3f (<= %.2f)",
                    fitted, eL, eN, kExponentRelative, eb, eg, rL, rN, kBlockageRelative)};
}

Outcome criterion10() {
  NetworkConfig c;
  c.half_size_R = 2000.0;
  c.crossroad_probability_eta = 0.02;
  PropagationParams p;
  p.noise_W = dbm_to_watts(-93.0);
  const RtSceneConfig rt;
  const auto batch = simulate_rt_batch(500, c, p, rt, c.crossroad_probability_eta, kSeed + 10);
  const auto cmp = compare_with_raytrace(batch, c, p);
  const bool pass = cmp.ks_coverage <= kKsLimit && cmp.ks_exposure <= kKsLimit;
  return {pass, fmt("KS coverage %.3f, exposure %.3f (<= %.1f); fitted alpha_L %.2f alpha_N %.2f "
                    "beta %.4f gamma %.2f eta %.3f",
                    cmp.ks_coverage, cmp.ks_exposure, kKsLimit, cmp.fitted.alpha_L,
                    cmp.fitted.alpha_N, cmp.fitted.beta, cmp.fitted.gamma, cmp.fitted.eta)};
}

Outcome criterion11() {
  FittedParams f;
  f.alpha_L = 1.7;
  f.alpha_N = 2.5;
  f.beta = 0.004;
  f.gamma = 1.0;
  f.fading_L = FadingSpec::exponential(1.66);
  f.fading_N = FadingSpec::exponential(0.33);
  f.eta = 0.1;
  const NetworkConfig c;
  std::vector<double> theta;
  for (double dbm = -110.0; dbm <= -30.0; dbm += 5.0) theta.push_back(dbm_to_watts(dbm));
  const std::vector<double> deltas{0.05, 0.10};
  const auto res = sensitivity_sweep(f, deltas, theta, c, PropagationParams{});
  const auto& r5 = res.rows[0];
  const auto& r10 = res.rows[1];
  const bool pass = r10.max_dev_useful > r5.max_dev_useful &&
                    r10.max_dev_interference > r5.max_dev_interference;
  return {pass, fmt("max CDF deviation useful %.4f -> %.4f, interference %.4f -> %.4f (5%% -> 10%%)",
                    r5.max_dev_useful, r10.max_dev_useful, r5.max_dev_interference,
                    r10.max_dev_interference)};
}

std::map<std::string, std::string> read_tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream is(e.path(), std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

Outcome criterion12() {
  const fs::path root = fs::temp_directory_path() / "manhattan_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "scenario.ini";
  std::ofstream(cfg) << "[NetworkConfig]\nhalf_size_km = 1\nstreet_density_per_km = 5\n"
                        "bs_density_per_km = 5\ncrossroad_probability = 0.3\n"
                        "[PropagationParams]\nnoise_dBm = -93\n"
                        "[BlockageParams]\nbeta = 0.012\n"
                        "[Experiment]\ntheta_e_dBm = -70:-30:5\nseed = 99\n";
  const int saved = omp_get_max_threads();
  bool pass = true;
  std::string detail;
  for (const auto& [command, n] : {std::pair<std::string, std::string>{"montecarlo", "4000"},
                                   {"raytrace", "24"}}) {
    std::map<std::string, std::string> reference;
    std::size_t files = 0;
    for (const char* threads : {"1", "4", "16"}) {
      ::setenv("THREADS", threads, 1);
      const fs::path out = root / (command + "_" + threads);
      std::ostringstream o, e;
      const int code = run_cli({command, "--config", cfg.string(), "--realizations", n, "--out",
                                out.string()},
                               o, e);
      if (code != 0) {
        pass = false;
        detail += command + " exit " + std::to_string(code) + " " + e.str() + "; ";
        continue;
      }
      const auto tree = read_tree(out);
      if (reference.empty()) {
        reference = tree;
        files = tree.size();
      } else if (tree != reference) {
        pass = false;
        detail += command + " differs at THREADS=" + threads + "; ";
      }
    }
    detail += fmt("%s: %zu files identical under 1/4/16 threads; ", command.c_str(), files);
  }
  ::unsetenv("THREADS");
  omp_set_num_threads(saved);
  fs::remove_all(root);
  return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{
      criterion1, criterion2, criterion3, criterion4,  criterion5,  criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11, criterion12};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0, known = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool excused = !o.pass && kKnownDeviations.count(id);
    std::printf("criterion %2d: %s  %s [%.1f s]\n", id,
                o.pass ? "PASS" : (excused ? "FAIL (known deviation)" : "FAIL"), o.detail.c_str(),
                secs);
    std::fflush(stdout);
    if (!o.pass) ++(excused ? known : failed);
  }
  std::printf("%d unexpected failure(s), %d known deviation(s)\n", failed, known);
  return failed == 0 ? 0 : 1;
}
