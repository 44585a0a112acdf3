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

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "manhattan/channel.hpp"
#include "manhattan/geometry.hpp"
#include "manhattan/quadrature.hpp"
#include "manhattan/raytrace.hpp"

namespace manhattan {

// Schema violation; `line` is 0 when the problem is not tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field = {}, int line = 0);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class UserSelection { Street, Crossroad, Arbitrary };

struct ExperimentConfig {
  NetworkConfig network;
  PropagationParams propagation;
  BlockageParams blockage;
  RtSceneConfig rt;
  QuadratureSpec quad;

  UserSelection user = UserSelection::Arbitrary;
  std::vector<std::string> metrics{"coverage", "exposure"};
  std::vector<double> theta_c_dB;
  std::vector<double> theta_e_dBm;
  std::vector<double> theta_p_dBm;
  std::size_t realizations = 10000;
  std::size_t rt_realizations = 500;
  std::uint64_t seed = 1;
  std::vector<double> perturbations{-0.10, -0.05, 0.05, 0.10};
  double lambda_B_min_per_km = 0.5;
  double lambda_B_max_per_km = 20.0;
  std::size_t lambda_B_points = 13;
  double strict_tolerance = 0.015;
  bool compare_raytrace = false;
  std::string records_path;
  std::size_t blockage_bins = 20;
  bool fixed_intercept = false;

  // Canonical key-value view: section -> key -> value. Parsing it back gives
  // an identical configuration.
  using Snapshot = std::map<std::string, std::map<std::string, std::string>>;
  Snapshot snapshot() const;
  void validate() const;
};

// INI-like text, or a JSON document whose "config" member (or root) holds
// the same sections.
ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>");
ExperimentConfig parse_config_text(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

// Applies a partial INI document (e.g. fitted parameters) on top of `cfg`.
void apply_overlay(ExperimentConfig& cfg, std::istream& is, const std::string& source = "<overlay>");

// "Section.key=value" or a bare "key=value" when the key is unambiguous.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

std::vector<double> parse_grid(const std::string& text);
std::string format_grid(const std::vector<double>& v);

}  // namespace manhattan
