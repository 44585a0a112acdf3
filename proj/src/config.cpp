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

#include "manhattan/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "manhattan/records.hpp"

namespace manhattan {

ConfigError::ConfigError(const std::string& what, std::string field, int line)
    : std::runtime_error(what), field_(std::move(field)), line_(line) {}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double number(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "inf" || t == "infinite" || t == "infinity") return kInfinity;
  if (t == "-inf") return -kInfinity;
  try {
    return parse_double(t);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
}

std::uint64_t integer(const std::string& s) {
  const double v = number(s);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
    throw ConfigError("not a non-negative integer: '" + s + "'");
  return static_cast<std::uint64_t>(v);
}

bool boolean(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError("not a boolean: '" + s + "'");
}

cplx complex_number(const std::string& s) {
  // "a+bj", "a-bj", "a" or "bj"
  std::string t = lower(trim(s));
  t.erase(std::remove(t.begin(), t.end(), ' '), t.end());
  if (t.empty()) throw ConfigError("empty complex value");
  if (t.back() != 'j' && t.back() != 'i') return {number(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;)
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e') {
      split = i;
      break;
    }
  if (split == std::string::npos) return {0.0, number(t)};
  return {number(t.substr(0, split)), number(t.substr(split))};
}

std::string format_complex(cplx z) {
  std::string s = format_double(z.real());
  s += z.imag() < 0.0 || std::signbit(z.imag()) ? "-" : "+";
  s += format_double(std::abs(z.imag())) + "j";
  return s;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "infinite" : "-inf";
  return format_double(v);
}

std::optional<FadingSpec> fading(const std::string& s) {
  const std::string t = lower(trim(s));
  if (t == "default") return std::nullopt;
  if (t == "rayleigh") return FadingSpec::rayleigh();
  if (t == "none" || t == "deterministic") return FadingSpec::none();
  const auto colon = t.find(':');
  const std::string head = t.substr(0, colon);
  if (colon != std::string::npos) {
    const double v = number(t.substr(colon + 1));
    if (head == "rice") return FadingSpec::rice(v);
    if (head == "exponential") return FadingSpec::exponential(v);
  }
  throw ConfigError("fading must be default, rayleigh, none, rice:K or exponential:rate; got '" +
                    s + "'");
}

std::string format_fading(const std::optional<FadingSpec>& f) {
  if (!f) return "default";
  switch (f->kind) {
    case FadingSpec::Kind::Rice:
      return f->K == 0.0 ? "rayleigh" : "rice:" + format_double(f->K);
    case FadingSpec::Kind::ExponentialPower:
      return "exponential:" + format_double(f->rate);
    case FadingSpec::Kind::Deterministic:
      return "none";
  }
  return "default";
}

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;
using Getter = std::function<std::optional<std::string>(const ExperimentConfig&)>;

struct Field {
  std::string section, key, group;
  Setter set;
  Getter get;  // empty for unit aliases
};

std::vector<Field> build_fields() {
  std::vector<Field> f;
  auto add = [&](std::string sec, std::string key, std::string group, Setter s, Getter g = {}) {
    f.push_back({std::move(sec), std::move(key), std::move(group), std::move(s), std::move(g)});
  };
  // Scalar with a canonical SI key and scaled aliases.
  auto scalar = [&](const std::string& sec, const std::string& group, auto member, const std::string& canon,
                    std::vector<std::pair<std::string, double>> aliases) {
    add(sec, canon, group,
        [member](ExperimentConfig& c, const std::string& v) { member(c) = number(v); },
        [member](const ExperimentConfig& c) {
          return std::optional<std::string>(fmt(member(const_cast<ExperimentConfig&>(c))));
        });
    for (const auto& [key, scale] : aliases)
      add(sec, key, group, [member, scale](ExperimentConfig& c, const std::string& v) {
        member(c) = number(v) * scale;
      });
  };
  using C = ExperimentConfig;
  const std::string N = "NetworkConfig", P = "PropagationParams", B = "BlockageParams",
                    R = "RtSceneConfig", Q = "QuadratureSpec", E = "Experiment";

  scalar(N, "half_size", [](C& c) -> double& { return c.network.half_size_R; },
         "half_size_m", {{"half_size_km", 1e3}});
  scalar(N, "street_density",
         [](C& c) -> double& { return c.network.street_density_lambda_S; },
         "street_density_per_m", {{"street_density_per_km", 1e-3}});
  scalar(N, "bs_density", [](C& c) -> double& { return c.network.bs_density_lambda_B; },
         "bs_density_per_m", {{"bs_density_per_km", 1e-3}});
  add(N, "typical_bs_density_per_m", "typical_bs_density",
      [](C& c, const std::string& v) { c.network.typical_bs_density_lambda_B_t = number(v); },
      [](const C& c) -> std::optional<std::string> {
        if (!c.network.typical_bs_density_lambda_B_t) return std::nullopt;
        return fmt(*c.network.typical_bs_density_lambda_B_t);
      });
  add(N, "typical_bs_density_per_km", "typical_bs_density",
      [](C& c, const std::string& v) { c.network.typical_bs_density_lambda_B_t = number(v) * 1e-3; });
  scalar(N, "user_height", [](C& c) -> double& { return c.network.user_height_h_U; },
         "user_height_m", {});
  scalar(N, "bs_height", [](C& c) -> double& { return c.network.bs_height_h_B; },
         "bs_height_m", {});
  scalar(N, "exclusion_radius",
         [](C& c) -> double& { return c.network.exclusion_radius_r_s; }, "exclusion_radius_m", {});
  scalar(N, "crossroad_probability",
         [](C& c) -> double& { return c.network.crossroad_probability_eta; },
         "crossroad_probability", {});

  scalar(P, "tx_power", [](C& c) -> double& { return c.propagation.tx_power_P_B; },
         "tx_power_W", {});
  add(P, "tx_power_dBm", "tx_power",
      [](C& c, const std::string& v) { c.propagation.tx_power_P_B = dbm_to_watts(number(v)); });
  scalar(P, "frequency", [](C& c) -> double& { return c.propagation.frequency_f; },
         "frequency_Hz", {{"frequency_GHz", 1e9}, {"frequency_MHz", 1e6}});
  scalar(P, "alpha_L", [](C& c) -> double& { return c.propagation.alpha_L; }, "alpha_L",
         {});
  scalar(P, "alpha_N", [](C& c) -> double& { return c.propagation.alpha_N; }, "alpha_N",
         {});
  scalar(P, "alpha_D", [](C& c) -> double& { return c.propagation.alpha_D; }, "alpha_D",
         {});
  for (auto [name, mem] : {std::pair{"kappa_L", &PropagationParams::kappa_L},
                           std::pair{"kappa_N", &PropagationParams::kappa_N},
                           std::pair{"kappa_D", &PropagationParams::kappa_D}}) {
    add(P, name, name,
        [mem](C& c, const std::string& v) {
          const std::string t = lower(trim(v));
          if (t == "default" || t == "free_space") c.propagation.*mem = std::nullopt;
          else c.propagation.*mem = number(v);
        },
        [mem](const C& c) -> std::optional<std::string> {
          const auto& k = c.propagation.*mem;
          return k ? fmt(*k) : std::string("free_space");
        });
    add(P, std::string(name) + "_dB", name, [mem](C& c, const std::string& v) {
      c.propagation.*mem = db_to_linear(number(v));
    });
  }
  scalar(P, "rice_K", [](C& c) -> double& { return c.propagation.rice_K; }, "rice_K", {});
  add(P, "rice_K_dB", "rice_K",
      [](C& c, const std::string& v) { c.propagation.rice_K = db_to_linear(number(v)); });
  scalar(P, "q_lambda", [](C& c) -> double& { return c.propagation.q_lambda; },
         "q_lambda", {});
  scalar(P, "nu", [](C& c) -> double& { return c.propagation.nu; }, "nu", {});
  scalar(P, "noise", [](C& c) -> double& { return c.propagation.noise_W; }, "noise_W",
         {});
  add(P, "noise_dBm", "noise", [](C& c, const std::string& v) {
    const double d = number(v);
    c.propagation.noise_W = std::isinf(d) && d < 0 ? 0.0 : dbm_to_watts(d);
  });
  scalar(P, "bandwidth", [](C& c) -> double& { return c.propagation.bandwidth_B; },
         "bandwidth_Hz", {{"bandwidth_MHz", 1e6}});
  for (auto [name, mem] : {std::pair{"fading_L", &PropagationParams::fading_L},
                           std::pair{"fading_N", &PropagationParams::fading_N},
                           std::pair{"fading_D", &PropagationParams::fading_D}})
    add(P, name, name, [mem](C& c, const std::string& v) { c.propagation.*mem = fading(v); },
        [mem](const C& c) -> std::optional<std::string> {
          return format_fading(c.propagation.*mem);
        });

  scalar(B, "beta", [](C& c) -> double& { return c.blockage.beta; }, "beta", {});
  scalar(B, "gamma", [](C& c) -> double& { return c.blockage.gamma; }, "gamma", {});

  scalar(R, "street_width", [](C& c) -> double& { return c.rt.street_width_w_S; },
         "street_width_m", {});
  scalar(R, "bs_wall_offset", [](C& c) -> double& { return c.rt.bs_wall_offset_d_BU; },
         "bs_wall_offset_m", {});
  scalar(R, "obstacle_density",
         [](C& c) -> double& { return c.rt.obstacle_density_lambda_O; }, "obstacle_density_per_m",
         {{"obstacle_density_per_km", 1e-3}});
  scalar(R, "obstacle_length", [](C& c) -> double& { return c.rt.obstacle_length; },
         "obstacle_length_m", {});
  scalar(R, "obstacle_width", [](C& c) -> double& { return c.rt.obstacle_width; },
         "obstacle_width_m", {});
  scalar(R, "obstacle_height", [](C& c) -> double& { return c.rt.obstacle_height; },
         "obstacle_height_m", {});
  add(R, "ground_permittivity", "ground_permittivity",
      [](C& c, const std::string& v) { c.rt.ground_permittivity = complex_number(v); },
      [](const C& c) -> std::optional<std::string> {
        return format_complex(c.rt.ground_permittivity);
      });
  add(R, "building_permittivity", "building_permittivity",
      [](C& c, const std::string& v) { c.rt.building_permittivity = complex_number(v); },
      [](const C& c) -> std::optional<std::string> {
        return format_complex(c.rt.building_permittivity);
      });
  add(R, "polarization", "polarization",
      [](C& c, const std::string& v) {
        const auto t = lower(trim(v));
        if (t == "vertical") c.rt.polarization = Polarization::Vertical;
        else if (t == "horizontal") c.rt.polarization = Polarization::Horizontal;
        else throw ConfigError("polarization must be vertical or horizontal");
      },
      [](const C& c) -> std::optional<std::string> {
        return c.rt.polarization == Polarization::Vertical ? "vertical" : "horizontal";
      });
  scalar(R, "path_power_threshold",
         [](C& c) -> double& { return c.rt.path_power_threshold; }, "path_power_threshold", {});
  scalar(R, "grazing_clip", [](C& c) -> double& { return c.rt.grazing_clip_rad; },
         "grazing_clip_rad", {{"grazing_clip_mrad", 1e-3}});
  add(R, "reflect_then_diffract", "reflect_then_diffract",
      [](C& c, const std::string& v) { c.rt.reflect_then_diffract = boolean(v); },
      [](const C& c) -> std::optional<std::string> {
        return c.rt.reflect_then_diffract ? "true" : "false";
      });

  scalar(Q, "relative_tolerance",
         [](C& c) -> double& { return c.quad.relative_tolerance; }, "relative_tolerance", {});
  scalar(Q, "absolute_tolerance",
         [](C& c) -> double& { return c.quad.absolute_tolerance; }, "absolute_tolerance", {});
  scalar(Q, "truncation_T", [](C& c) -> double& { return c.quad.truncation_T; },
         "truncation_T", {});
  add(Q, "panel_budget", "panel_budget",
      [](C& c, const std::string& v) { c.quad.panel_budget = static_cast<int>(integer(v)); },
      [](const C& c) -> std::optional<std::string> { return std::to_string(c.quad.panel_budget); });
  scalar(Q, "inner_tolerance", [](C& c) -> double& { return c.quad.inner_tolerance; },
         "inner_tolerance", {});

  add(E, "user", "user",
      [](C& c, const std::string& v) {
        const auto t = lower(trim(v));
        if (t == "street") c.user = UserSelection::Street;
        else if (t == "crossroad") c.user = UserSelection::Crossroad;
        else if (t == "arbitrary") c.user = UserSelection::Arbitrary;
        else throw ConfigError("user must be street, crossroad or arbitrary");
      },
      [](const C& c) -> std::optional<std::string> {
        switch (c.user) {
          case UserSelection::Street: return "street";
          case UserSelection::Crossroad: return "crossroad";
          default: return "arbitrary";
        }
      });
  add(E, "metrics", "metrics",
      [](C& c, const std::string& v) {
        static const std::set<std::string> known{"coverage", "exposure", "joint", "capacity",
                                                 "mean_exposure"};
        c.metrics.clear();
        std::stringstream ss(v);
        std::string item;
        while (std::getline(ss, item, ',')) {
          item = lower(trim(item));
          if (item.empty()) continue;
          if (!known.count(item)) throw ConfigError("unknown metric '" + item + "'");
          c.metrics.push_back(item);
        }
      },
      [](const C& c) -> std::optional<std::string> {
        std::string s;
        for (const auto& m : c.metrics) s += (s.empty() ? "" : ",") + m;
        return s;
      });
  auto grid = [&](const std::string& key, std::vector<double> C::*mem) {
    add(E, key, key, [mem](C& c, const std::string& v) { c.*mem = parse_grid(v); },
        [mem](const C& c) -> std::optional<std::string> { return format_grid(c.*mem); });
  };
  grid("theta_c_dB", &C::theta_c_dB);
  grid("theta_e_dBm", &C::theta_e_dBm);
  grid("theta_p_dBm", &C::theta_p_dBm);
  grid("perturbations", &C::perturbations);
  auto count = [&](const std::string& key, auto mem) {
    add(E, key, key,
        [mem](C& c, const std::string& v) {
          c.*mem = static_cast<std::remove_reference_t<decltype(c.*mem)>>(integer(v));
        },
        [mem](const C& c) -> std::optional<std::string> { return std::to_string(c.*mem); });
  };
  count("realizations", &C::realizations);
  count("rt_realizations", &C::rt_realizations);
  count("seed", &C::seed);
  count("lambda_B_points", &C::lambda_B_points);
  count("blockage_bins", &C::blockage_bins);
  scalar(E, "lambda_B_min", [](C& c) -> double& { return c.lambda_B_min_per_km; },
         "lambda_B_min_per_km", {});
  scalar(E, "lambda_B_max", [](C& c) -> double& { return c.lambda_B_max_per_km; },
         "lambda_B_max_per_km", {});
  scalar(E, "strict_tolerance", [](C& c) -> double& { return c.strict_tolerance; },
         "strict_tolerance", {});
  add(E, "compare_raytrace", "compare_raytrace",
      [](C& c, const std::string& v) { c.compare_raytrace = boolean(v); },
      [](const C& c) -> std::optional<std::string> {
        return c.compare_raytrace ? "true" : "false";
      });
  add(E, "records_path", "records_path",
      [](C& c, const std::string& v) { c.records_path = trim(v); },
      [](const C& c) -> std::optional<std::string> { return c.records_path; });
  add(E, "pathloss_intercept", "pathloss_intercept",
      [](C& c, const std::string& v) {
        const auto t = lower(trim(v));
        if (t == "free") c.fixed_intercept = false;
        else if (t == "fixed") c.fixed_intercept = true;
        else throw ConfigError("pathloss_intercept must be free or fixed");
      },
      [](const C& c) -> std::optional<std::string> {
        return c.fixed_intercept ? "fixed" : "free";
      });

  for (auto& x : f)
    if (x.group.empty()) x.group = x.key;
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = build_fields();
  return table;
}

const std::vector<std::pair<std::string, std::string>> kRequired = {
    {"NetworkConfig", "street_density"}, {"NetworkConfig", "bs_density"}};

struct Entry {
  std::string section, key, value;
  int line = 0;
};

void assign(ExperimentConfig& cfg, const std::vector<Entry>& entries, const std::string& source,
            std::set<std::pair<std::string, std::string>>& seen) {
  for (const auto& e : entries) {
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) {
      return f.section == e.section && f.key == e.key;
    });
    const std::string where = source + (e.line > 0 ? ":" + std::to_string(e.line) : "");
    const std::string name = e.section + "." + e.key;
    if (it == table.end()) throw ConfigError(where + ": unknown field " + name, name, e.line);
    if (!seen.insert({it->section, it->group}).second)
      throw ConfigError(where + ": field " + name + " given twice", name, e.line);
    try {
      it->set(cfg, e.value);
    } catch (const ConfigError& err) {
      throw ConfigError(where + ": " + name + ": " + err.what(), name, e.line);
    }
  }
}

ExperimentConfig build(const std::vector<Entry>& entries, const std::string& source) {
  ExperimentConfig cfg;
  std::set<std::pair<std::string, std::string>> seen;
  assign(cfg, entries, source, seen);
  for (const auto& [sec, group] : kRequired)
    if (!seen.count({sec, group}))
      throw ConfigError(source + ": missing required field " + sec + "." + group +
                            "_per_km (or _per_m)",
                        sec + "." + group);
  cfg.validate();
  return cfg;
}

std::vector<Entry> parse_ini(std::istream& is, const std::string& source) {
  std::vector<Entry> out;
  std::string line, section;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(source + ":" + std::to_string(n) + ": malformed section header", {}, n);
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(n) + ": expected key = value", {}, n);
    const std::string key = trim(line.substr(0, eq));
    if (section.empty())
      throw ConfigError(source + ":" + std::to_string(n) + ": field " + key + " outside a section",
                        key, n);
    out.push_back({section, key, trim(line.substr(eq + 1)), n});
  }
  return out;
}

std::vector<Entry> parse_json(const std::string& text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  const nlohmann::json& root = j.contains("config") ? j["config"] : j;
  if (!root.is_object()) throw ConfigError(source + ": JSON config must be an object");
  std::vector<Entry> out;
  auto scalar = [&](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number()) return format_double(v.get<double>());
    throw ConfigError(source + ": unsupported JSON value " + v.dump());
  };
  for (const auto& [section, body] : root.items()) {
    if (!body.is_object()) throw ConfigError(source + ": section " + section + " is not an object");
    for (const auto& [key, v] : body.items()) {
      std::string value;
      if (v.is_array()) {
        for (const auto& x : v) value += (value.empty() ? "" : ",") + scalar(x);
      } else {
        value = scalar(v);
      }
      out.push_back({section, key, value, 0});
    }
  }
  return out;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  std::vector<double> out;
  if (t.empty()) return out;
  if (t.find(':') != std::string::npos && t.find(',') == std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(number(item));
    if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
      throw ConfigError("range must be start:stop:step with step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) out.push_back(parts[0] + parts[2] * static_cast<double>(i));
    return out;
  }
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(number(item));
  }
  return out;
}

std::string format_grid(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
  return s;
}

ExperimentConfig::Snapshot ExperimentConfig::snapshot() const {
  Snapshot s;
  for (const auto& f : fields()) {
    if (!f.get) continue;
    if (auto v = f.get(*this)) s[f.section][f.key] = *v;
  }
  return s;
}

void ExperimentConfig::validate() const {
  try {
    network.validate();
    propagation.validate();
    blockage.validate();
    quad.validate();
    rt.validate(network);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid parameter: ") + e.what());
  }
  if (realizations == 0) throw ConfigError("Experiment.realizations must be positive",
                                           "Experiment.realizations");
  if (!(lambda_B_min_per_km > 0.0) || !(lambda_B_max_per_km > lambda_B_min_per_km))
    throw ConfigError("Experiment.lambda_B range must satisfy 0 < min < max",
                      "Experiment.lambda_B_min_per_km");
  if (lambda_B_points < 3)
    throw ConfigError("Experiment.lambda_B_points must be at least 3", "Experiment.lambda_B_points");
  if (!(strict_tolerance > 0.0))
    throw ConfigError("Experiment.strict_tolerance must be positive", "Experiment.strict_tolerance");
  if (blockage_bins < 2)
    throw ConfigError("Experiment.blockage_bins must be at least 2", "Experiment.blockage_bins");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& source) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return build(parse_json(text, source), source);
  std::istringstream is(text);
  return build(parse_ini(is, source), source);
}

ExperimentConfig parse_config(std::istream& is, const std::string& source) {
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_config_text(text, source);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  return parse_config(in, path);
}

void apply_overlay(ExperimentConfig& cfg, std::istream& is, const std::string& source) {
  std::set<std::pair<std::string, std::string>> seen;
  assign(cfg, parse_ini(is, source), source, seen);
  cfg.validate();
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override must be key=value: " + assignment);
  const std::string lhs = trim(assignment.substr(0, eq)), value = trim(assignment.substr(eq + 1));
  std::string section, key = lhs;
  if (const auto dot = lhs.find('.'); dot != std::string::npos) {
    section = lhs.substr(0, dot);
    key = lhs.substr(dot + 1);
  }
  std::vector<const Field*> hits;
  for (const auto& f : fields())
    if (f.key == key && (section.empty() || f.section == section)) hits.push_back(&f);
  if (hits.empty()) throw ConfigError("override: unknown field " + lhs, lhs);
  if (hits.size() > 1) throw ConfigError("override: ambiguous field " + lhs + ", add a section", lhs);
  try {
    hits.front()->set(cfg, value);
  } catch (const ConfigError& e) {
    throw ConfigError("override " + lhs + ": " + e.what(), lhs);
  }
  cfg.validate();
}

}  // namespace manhattan
