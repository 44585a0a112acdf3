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

#include "manhattan/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "manhattan/analytic.hpp"
#include "manhattan/common.hpp"
#include "manhattan/config.hpp"
#include "manhattan/fitting.hpp"
#include "manhattan/montecarlo.hpp"
#include "manhattan/output.hpp"
#include "manhattan/raytrace.hpp"
#include "manhattan/records.hpp"

namespace manhattan {
namespace {

struct StrictBreach : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> realizations;
  std::string out_dir = "results";
  bool strict = false;
  std::vector<std::string> overlays;
  std::vector<std::string> overrides;
};

struct Run {
  const Options& opt;
  ExperimentConfig cfg;
  std::ostream& out;
  std::vector<ResultTable> tables;
  RunMetadata meta;
};

double effective_eta(const ExperimentConfig& c) {
  switch (c.user) {
    case UserSelection::Street: return 0.0;
    case UserSelection::Crossroad: return 1.0;
    default: return c.network.crossroad_probability_eta;
  }
}

const char* user_name(UserSelection u) {
  switch (u) {
    case UserSelection::Street: return "street";
    case UserSelection::Crossroad: return "crossroad";
    default: return "arbitrary";
  }
}

bool wants(const ExperimentConfig& c, const std::string& m) {
  return std::find(c.metrics.begin(), c.metrics.end(), m) != c.metrics.end();
}

std::vector<double> theta_c_grid(const ExperimentConfig& c) {
  return c.theta_c_dB.empty() ? parse_grid("-10:30:2") : c.theta_c_dB;
}

// Default exposure window: 30 dB below to 15 dB above the mean street exposure.
std::vector<double> theta_e_grid(const ExperimentConfig& c) {
  if (!c.theta_e_dBm.empty()) return c.theta_e_dBm;
  const double mean =
      mean_exposure(UserType::Street, c.propagation, c.blockage, c.network).total();
  const double centre = std::round(watts_to_dbm(mean));
  std::vector<double> g;
  for (int k = 0; k <= 30; ++k) g.push_back(centre - 30.0 + 1.5 * k);
  return g;
}

std::vector<double> theta_p_grid(const ExperimentConfig& c) {
  return c.theta_p_dBm.empty() ? parse_grid("-120:-20:2") : c.theta_p_dBm;
}

std::vector<double> to_linear(const std::vector<double>& db) {
  std::vector<double> v;
  for (double x : db) v.push_back(db_to_linear(x));
  return v;
}

std::vector<double> to_watts(const std::vector<double>& dbm) {
  std::vector<double> v;
  for (double x : dbm) v.push_back(dbm_to_watts(x));
  return v;
}

std::size_t realizations(const Run& run, std::size_t fallback) {
  return run.opt.realizations.value_or(fallback);
}

// Per-user-type analytic evaluation mixed with the effective eta.
template <class F>
std::vector<double> mixed(const ExperimentConfig& c, F&& f) {
  const double eta = effective_eta(c);
  std::vector<double> acc;
  for (UserType q : {UserType::Street, UserType::Crossroad}) {
    const double w = q == UserType::Street ? 1.0 - eta : eta;
    if (w == 0.0) continue;
    const std::vector<double> v = f(q);
    if (acc.empty()) acc.assign(v.size(), 0.0);
    for (std::size_t k = 0; k < v.size(); ++k) acc[k] += w * v[k];
  }
  return acc;
}

void cmd_analytic(Run& run) {
  const auto& c = run.cfg;
  const AnalyticModel model(c.network, c.propagation, c.blockage, c.quad);
  const auto tc_db = theta_c_grid(c);
  const auto te_dbm = theta_e_grid(c);
  const auto tc = to_linear(tc_db), te = to_watts(te_dbm);
  const bool joint = wants(c, "joint");
  std::vector<double> cov, exp;
  if (wants(c, "coverage") || joint) {
    cov = mixed(c, [&](UserType q) { return coverage_curve(model, tc, q); });
    if (wants(c, "coverage")) run.tables.push_back({"coverage", {{"theta_c_dB", tc_db}, {"P_c", cov}}});
  }
  if (wants(c, "exposure") || joint) {
    exp = mixed(c, [&](UserType q) { return exposure_curve(model, te, q); });
    if (wants(c, "exposure"))
      run.tables.push_back({"exposure", {{"theta_e_dBm", te_dbm}, {"P_e", exp}}});
  }
  if (joint) {
    const auto bound = mixed(c, [&](UserType q) {
      const auto cq = coverage_curve(model, tc, q);
      const auto eq = exposure_curve(model, te, q);
      std::vector<double> b;
      for (double x : cq)
        for (double y : eq) b.push_back(joint_lower_bound(x, y));
      return b;
    });
    run.tables.push_back(joint_long_table(tc_db, te_dbm, bound, {}));
  }
  if (wants(c, "capacity")) {
    const auto cap = mixed(c, [&](UserType q) { return std::vector{average_capacity(model, q)}; });
    run.tables.push_back({"capacity", {{"capacity_bps", cap}}});
  }
  if (wants(c, "mean_exposure")) {
    const auto mu = mixed(c, [&](UserType q) {
      const auto m = mean_exposure(q, c.propagation, c.blockage, c.network);
      return std::vector{m.mu_L, m.mu_N, m.mu_D, m.total()};
    });
    run.tables.push_back({"mean_exposure",
                          {{"mu_L_W", {mu[0]}}, {"mu_N_W", {mu[1]}}, {"mu_D_W", {mu[2]}},
                           {"mu_E_W", {mu[3]}}}});
  }
}

std::vector<double> values(const std::vector<McEstimate>& v) {
  std::vector<double> o;
  for (const auto& e : v) o.push_back(e.value);
  return o;
}
std::vector<double> stderrs(const std::vector<McEstimate>& v) {
  std::vector<double> o;
  for (const auto& e : v) o.push_back(e.stderr_);
  return o;
}

// Coverage, exposure, joint, capacity and mean-exposure tables from samples.
void sample_tables(Run& run, const McMetrics& m, const std::vector<double>& tc_db,
                   const std::vector<double>& te_dbm) {
  const auto& c = run.cfg;
  if (wants(c, "coverage"))
    run.tables.push_back({"coverage",
                          {{"theta_c_dB", tc_db},
                           {"P_c", values(m.coverage)},
                           {"stderr", stderrs(m.coverage)}}});
  if (wants(c, "exposure"))
    run.tables.push_back({"exposure",
                          {{"theta_e_dBm", te_dbm},
                           {"P_e", values(m.exposure_cdf)},
                           {"stderr", stderrs(m.exposure_cdf)}}});
  if (wants(c, "joint"))
    run.tables.push_back(joint_long_table(tc_db, te_dbm, values(m.joint), stderrs(m.joint)));
  if (wants(c, "capacity"))
    run.tables.push_back({"capacity",
                          {{"capacity_bps", {m.mean_capacity.value}},
                           {"stderr", {m.mean_capacity.stderr_}}}});
  if (wants(c, "mean_exposure"))
    run.tables.push_back({"mean_exposure",
                          {{"mu_L_W", {m.mu_L.value}},
                           {"mu_L_stderr", {m.mu_L.stderr_}},
                           {"mu_N_W", {m.mu_N.value}},
                           {"mu_N_stderr", {m.mu_N.stderr_}},
                           {"mu_D_W", {m.mu_D.value}},
                           {"mu_D_stderr", {m.mu_D.stderr_}},
                           {"mu_E_W", {m.mu_E.value}},
                           {"mu_E_stderr", {m.mu_E.stderr_}}}});
}

void write_text(const Run& run, const std::string& name,
                const std::function<void(std::ostream&)>& body) {
  std::filesystem::create_directories(run.opt.out_dir);
  const auto path = std::filesystem::path(run.opt.out_dir) / name;
  std::ofstream os(path);
  if (!os) throw OutputError("cannot write " + path.string());
  body(os);
  if (!os) throw OutputError("write failed: " + path.string());
  run.out << "wrote " << path.string() << "\n";
}

void cmd_montecarlo(Run& run) {
  const auto& c = run.cfg;
  const std::size_t n = realizations(run, c.realizations);
  const auto tc_db = theta_c_grid(c);
  const auto te_dbm = theta_e_grid(c);
  const auto batch =
      simulate_batch(n, c.network, c.propagation, c.blockage, effective_eta(c), c.seed);
  const auto m = summarize(batch, to_linear(tc_db), to_watts(te_dbm), c.propagation, c.seed);
  sample_tables(run, m, tc_db, te_dbm);
  run.meta.realizations = n;
  run.meta.notes["diffraction_truncation_bound_W"] = format_double(m.truncation_bound_W);
  write_text(run, "montecarlo_realizations.txt",
             [&](std::ostream& os) { write_realizations(os, batch); });
}

std::vector<RtRealization> rt_batch(Run& run) {
  const auto& c = run.cfg;
  if (c.network.infinite())
    throw ConfigError("ray tracing needs a finite NetworkConfig.half_size_m",
                      "NetworkConfig.half_size_m");
  const std::size_t n = realizations(run, c.rt_realizations);
  run.meta.realizations = n;
  return simulate_rt_batch(n, c.network, c.propagation, c.rt, effective_eta(c), c.seed);
}

void cmd_raytrace(Run& run) {
  const auto& c = run.cfg;
  const auto batch = rt_batch(run);
  std::vector<PowerDecomposition> powers;
  std::vector<LinkRecord> links;
  int clipped = 0;
  for (const auto& r : batch) {
    powers.push_back(r.powers);
    links.insert(links.end(), r.links.begin(), r.links.end());
    clipped += r.clip_events;
  }
  const auto tc_db = theta_c_grid(c);
  const auto te_dbm = theta_e_grid(c);
  const auto m = summarize(powers, to_linear(tc_db), to_watts(te_dbm), c.propagation, c.seed);
  sample_tables(run, m, tc_db, te_dbm);
  run.meta.notes["grazing_clip_events"] = std::to_string(clipped);
  write_text(run, "raytrace_realizations.txt",
             [&](std::ostream& os) { write_realizations(os, powers); });
  write_text(run, "raytrace_links.txt", [&](std::ostream& os) { write_link_records(os, links); });
}

FitContext fit_context(const ExperimentConfig& c) {
  FitContext ctx;
  ctx.tx_power_P_B = c.propagation.tx_power_P_B;
  ctx.frequency_f = c.propagation.frequency_f;
  ctx.delta_H = c.network.delta_H();
  return ctx;
}

void fit_tables(Run& run, const FittedParams& f) {
  run.tables.push_back({"summary",
                        {{"alpha_L", {f.alpha_L}},
                         {"alpha_N", {f.alpha_N}},
                         {"beta", {f.beta}},
                         {"gamma", {f.gamma}},
                         {"rate_L", {f.fading_fit.L.rate}},
                         {"rate_N", {f.fading_fit.N.rate}},
                         {"eta", {f.eta}},
                         {"ks_L", {f.fading_fit.L.ks_statistic}},
                         {"ks_N", {f.fading_fit.N.ks_statistic}},
                         {"records_L", {static_cast<double>(f.pathloss.n_L)}},
                         {"records_N", {static_cast<double>(f.pathloss.n_N)}}}});
  ResultTable bins{"blockage_bins", {{"r_mean_m", {}}, {"p_los", {}}, {"count", {}}, {"used", {}}}};
  for (const auto& b : f.blockage_fit.bins) {
    bins.columns[0].values.push_back(b.r_mean);
    bins.columns[1].values.push_back(b.p_los);
    bins.columns[2].values.push_back(static_cast<double>(b.count));
    bins.columns[3].values.push_back(b.used ? 1.0 : 0.0);
  }
  run.tables.push_back(std::move(bins));
  write_text(run, "fit_params.ini", [&](std::ostream& os) { f.write(os); });
}

void cmd_fit(Run& run) {
  const auto& c = run.cfg;
  const InterceptMode mode = c.fixed_intercept ? InterceptMode::Fixed : InterceptMode::Free;
  FittedParams f;
  if (!c.records_path.empty()) {
    std::ifstream in(c.records_path);
    if (!in) throw ConfigError("cannot read Experiment.records_path " + c.records_path,
                               "Experiment.records_path");
    const auto records = read_link_records(in);
    f = fit_all(records, {}, fit_context(c), c.blockage_bins, mode);
    f.eta = c.network.crossroad_probability_eta;  // no placements in a record file
    run.meta.notes["records"] = c.records_path;
  } else {
    const auto batch = rt_batch(run);
    std::vector<LinkRecord> records;
    std::vector<UserPlacement> placements;
    for (const auto& r : batch) {
      records.insert(records.end(), r.links.begin(), r.links.end());
      placements.push_back(r.placement);
    }
    f = fit_all(records, placements, fit_context(c), c.blockage_bins, mode);
  }
  fit_tables(run, f);
}

void cmd_compare(Run& run) {
  const auto& c = run.cfg;
  const AnalyticModel model(c.network, c.propagation, c.blockage, c.quad);
  const auto tc_db = theta_c_grid(c);
  const auto te_dbm = theta_e_grid(c);
  const auto tc = to_linear(tc_db), te = to_watts(te_dbm);
  const std::size_t n = realizations(run, c.realizations);
  const auto m = estimate_metrics(n, tc, te, c.network, c.propagation, c.blockage,
                                  effective_eta(c), c.seed);
  run.meta.realizations = n;
  double worst = 0.0;
  auto side_by_side = [&](const std::string& name, const std::string& grid_name,
                          const std::vector<double>& grid, const std::vector<double>& analytic,
                          const std::vector<McEstimate>& mc) {
    ResultTable t{name,
                  {{grid_name, grid}, {"analytic", analytic}, {"montecarlo", values(mc)},
                   {"stderr", stderrs(mc)}, {"deviation", {}}}};
    double local = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double d = analytic[k] - mc[k].value;
      t.columns[4].values.push_back(d);
      local = std::max(local, std::abs(d));
    }
    worst = std::max(worst, local);
    run.meta.notes["max_deviation_" + name] = format_double(local);
    run.out << name << ": max |analytic - montecarlo| = " << format_csv_number(local) << "\n";
    run.tables.push_back(std::move(t));
  };
  side_by_side("coverage", "theta_c_dB", tc_db,
               mixed(c, [&](UserType q) { return coverage_curve(model, tc, q); }), m.coverage);
  side_by_side("exposure", "theta_e_dBm", te_dbm,
               mixed(c, [&](UserType q) { return exposure_curve(model, te, q); }), m.exposure_cdf);

  std::vector<std::string> breaches;
  if (worst > c.strict_tolerance)
    breaches.push_back("analytic vs Monte Carlo deviation " + format_csv_number(worst) +
                       " exceeds " + format_csv_number(c.strict_tolerance));

  if (c.compare_raytrace) {
    constexpr double kKsLimit = 0.1;
    const auto batch = rt_batch(run);
    run.meta.notes["rt_realizations"] = std::to_string(batch.size());
    const InterceptMode mode = c.fixed_intercept ? InterceptMode::Fixed : InterceptMode::Free;
    const auto cmp = compare_with_raytrace(batch, c.network, c.propagation, c.quad,
                                           c.blockage_bins, mode);
    std::vector<double> tcr_db;
    for (double x : cmp.theta_c) tcr_db.push_back(linear_to_db(x));
    std::vector<double> ter_dbm;
    for (double x : cmp.theta_e) ter_dbm.push_back(watts_to_dbm(x));
    run.tables.push_back({"rt_sinr_cdf",
                          {{"theta_c_dB", tcr_db}, {"raytrace", cmp.coverage_rt},
                           {"fitted_sg", cmp.coverage_sg}}});
    run.tables.push_back({"rt_exposure_cdf",
                          {{"theta_e_dBm", ter_dbm}, {"raytrace", cmp.exposure_rt},
                           {"fitted_sg", cmp.exposure_sg}}});
    run.tables.push_back({"rt_ks",
                          {{"ks_coverage", {cmp.ks_coverage}},
                           {"ks_exposure", {cmp.ks_exposure}},
                           {"ks_useful", {cmp.ks_useful}},
                           {"ks_interference", {cmp.ks_interference}}}});
    run.out << "raytrace: KS coverage " << format_csv_number(cmp.ks_coverage) << ", exposure "
            << format_csv_number(cmp.ks_exposure) << "\n";
    if (std::max(cmp.ks_coverage, cmp.ks_exposure) > kKsLimit)
      breaches.push_back("ray-tracing KS distance exceeds " + format_csv_number(kKsLimit));
  }
  if (run.opt.strict && !breaches.empty()) {
    std::string msg;
    for (const auto& b : breaches) msg += (msg.empty() ? "" : "; ") + b;
    throw StrictBreach(msg);
  }
}

std::string delta_label(double d) {
  return (d >= 0.0 ? "+" : "") + format_csv_number(d);
}

void cmd_sensitivity(Run& run) {
  const auto& c = run.cfg;
  FittedParams f;
  f.alpha_L = c.propagation.alpha_L;
  f.alpha_N = c.propagation.alpha_N;
  f.fading_L = c.propagation.fading(LinkCategory::LOS);
  f.fading_N = c.propagation.fading(LinkCategory::NLOS);
  f.beta = c.blockage.beta;
  f.gamma = c.blockage.gamma;
  f.eta = effective_eta(c);
  f.kappa = 0.0;  // keep the configured intercepts
  const auto tp_dbm = theta_p_grid(c);
  const auto res =
      sensitivity_sweep(f, c.perturbations, to_watts(tp_dbm), c.network, c.propagation, c.quad);
  ResultTable ccdf{"ccdf",
                   {{"theta_p_dBm", tp_dbm},
                    {"useful_base", res.base_useful},
                    {"interference_base", res.base_interference}}};
  ResultTable summary{"summary", {{"delta", {}}, {"max_dev_useful", {}}, {"max_dev_interference", {}}}};
  for (const auto& row : res.rows) {
    ccdf.columns.push_back({"useful_" + delta_label(row.delta), row.useful_ccdf});
    ccdf.columns.push_back({"interference_" + delta_label(row.delta), row.interference_ccdf});
    summary.columns[0].values.push_back(row.delta);
    summary.columns[1].values.push_back(row.max_dev_useful);
    summary.columns[2].values.push_back(row.max_dev_interference);
  }
  run.tables.push_back(std::move(ccdf));
  run.tables.push_back(std::move(summary));
}

void cmd_optimize(Run& run) {
  const auto& c = run.cfg;
  NetworkConfig net = c.network;
  net.crossroad_probability_eta = effective_eta(c);
  const auto opt = optimal_bs_density(c.propagation, c.blockage, net, c.lambda_B_min_per_km * 1e-3,
                                      c.lambda_B_max_per_km * 1e-3, c.quad,
                                      static_cast<int>(c.lambda_B_points));
  ResultTable sweep{"sweep", {{"lambda_B_per_km", {}}, {"capacity_bps", opt.sweep_value}}};
  for (double l : opt.sweep_lambda) sweep.columns[0].values.push_back(l * 1e3);
  run.tables.push_back(std::move(sweep));
  run.tables.push_back({"optimum",
                        {{"lambda_B_opt_per_km", {opt.lambda_B * 1e3}},
                         {"capacity_bps", {opt.value}},
                         {"at_boundary", {opt.at_boundary ? 1.0 : 0.0}}}});
  run.out << "optimal lambda_B = " << format_csv_number(opt.lambda_B * 1e3) << " /km"
          << (opt.at_boundary ? " (at the search boundary)" : "") << "\n";
}

void apply_threads(std::ostream& err) {
  const char* env = std::getenv("THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    err << "THREADS must be a positive integer, got '" << env << "'\n";
    throw ConfigError("invalid THREADS value", "THREADS");
  }
  omp_set_num_threads(static_cast<int>(n));
}

int execute(const Options& opt, std::ostream& out) {
  if (opt.config_path.empty()) throw ConfigError("--config is required", "--config");
  Run run{opt, load_config(opt.config_path), out, {}, {}};
  for (const auto& path : opt.overlays) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open overlay " + path, "--overlay");
    apply_overlay(run.cfg, is, path);
  }
  for (const auto& o : opt.overrides) apply_override(run.cfg, o);
  if (opt.seed) run.cfg.seed = *opt.seed;
  if (opt.realizations) {
    if (*opt.realizations == 0) throw ConfigError("--realizations must be positive", "--realizations");
    run.cfg.realizations = *opt.realizations;
    run.cfg.rt_realizations = *opt.realizations;
  }
  run.cfg.validate();
  run.meta.engine = opt.command;
  run.meta.version = library_version();
  run.meta.seed = run.cfg.seed;
  run.meta.config = run.cfg.snapshot();
  run.meta.notes["user"] = user_name(run.cfg.user);

  int status = kExitOk;
  try {
    if (opt.command == "analytic") cmd_analytic(run);
    else if (opt.command == "montecarlo") cmd_montecarlo(run);
    else if (opt.command == "raytrace") cmd_raytrace(run);
    else if (opt.command == "fit") cmd_fit(run);
    else if (opt.command == "compare") cmd_compare(run);
    else if (opt.command == "sensitivity") cmd_sensitivity(run);
    else if (opt.command == "optimize") cmd_optimize(run);
  } catch (const StrictBreach& e) {
    run.meta.notes["strict_breach"] = e.what();
    out << "strict check failed: " << e.what() << "\n";
    status = kExitStrict;
  }
  for (const auto& p : write_results(opt.out_dir, opt.command, run.meta, run.tables))
    out << "wrote " << p << "\n";
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Manhattan-network coverage and EMF exposure analysis", "manhattan"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--config", opt.config_path, "Experiment configuration (INI or JSON result)");
  app.add_option("--seed", opt.seed, "Seed base");
  app.add_option("--realizations", opt.realizations, "Realization count");
  app.add_option("--out", opt.out_dir, "Output directory");
  app.add_flag("--strict", opt.strict, "compare: exit 4 when a validation threshold is breached");
  app.add_option("--overlay", opt.overlays, "Partial INI applied over the config, e.g. fit output");
  app.add_option("--override", opt.overrides, "Section.key=value, repeatable");
  const std::pair<const char*, const char*> commands[] = {
      {"analytic", "Stochastic-geometry metrics by CF inversion"},
      {"montecarlo", "Monte Carlo estimates over the line process"},
      {"raytrace", "Ray-traced realizations and link records"},
      {"fit", "Fit SG parameters to link records"},
      {"compare", "Analytic against Monte Carlo (and optionally ray tracing)"},
      {"sensitivity", "CDF deviation under path-loss exponent errors"},
      {"optimize", "Capacity-optimal BS density"},
  };
  for (const auto& [name, help] : commands)
    app.add_subcommand(name, help)->callback([&opt, name] { opt.command = name; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  }

  try {
    apply_threads(err);
    return execute(opt, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const DomainError& e) {
    err << "error: invalid parameter: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace manhattan
