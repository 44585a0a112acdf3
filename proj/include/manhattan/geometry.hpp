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
#include <optional>
#include <string>
#include <vector>

#include "manhattan/common.hpp"

namespace manhattan {

enum class UserType { Street = 1, Crossroad = 2 };

inline int user_index(UserType u) { return static_cast<int>(u); }
const char* to_string(UserType u);
UserType parse_user_type(const std::string& s);

struct NetworkConfig {
  double half_size_R = kInfinity;        // m; infinite only for analytic use
  double street_density_lambda_S = 5e-3;  // 1/m
  double bs_density_lambda_B = 5e-3;      // 1/m
  double user_height_h_U = 1.5;           // m
  double bs_height_h_B = 6.0;             // m
  double exclusion_radius_r_s = 1.0;      // m
  double crossroad_probability_eta = 0.1;
  // Density in the typical street(s); unset means lambda_B.
  std::optional<double> typical_bs_density_lambda_B_t;

  double delta_H() const { return bs_height_h_B - user_height_h_U; }
  double typical_density() const {
    return typical_bs_density_lambda_B_t.value_or(bs_density_lambda_B);
  }
  bool infinite() const { return std::isinf(half_size_R); }
  void validate() const;
};

struct BlockageParams {
  double beta = 0.0;
  double gamma = 1.0;
  void validate() const;
};

double los_probability(double r, const BlockageParams& b);
inline double nlos_probability(double r, const BlockageParams& b) {
  return -std::expm1(-b.beta * std::pow(r, b.gamma));
}

// Density of the 1D distance to the nearest typical-street BS.
double serving_distance_pdf(double r, UserType q, double lambda_B, double R);
double serving_distance_cdf(double r, UserType q, double lambda_B, double R);

enum class Axis { Horizontal, Vertical };

struct Street {
  Axis axis = Axis::Horizontal;
  double coordinate = 0.0;          // y for horizontal streets, x for vertical
  bool typical = false;
  std::vector<double> bs_offsets;  // position along the street, sorted
};

struct ManhattanScene {
  double half_size_R = 0.0;
  double exclusion_radius_r_s = 0.0;
  UserType user_type = UserType::Street;
  std::vector<Street> horizontal;  // sorted by coordinate, typical included
  std::vector<Street> vertical;

  std::vector<double> horizontal_street_ordinates() const;
  std::vector<double> vertical_street_abscissas() const;
  std::size_t bs_count() const;
  // Typical streets; one for a street user, two for a crossroad user.
  std::vector<const Street*> typical_streets() const;

  void write(std::ostream& os) const;
  static ManhattanScene read(std::istream& is);
};

ManhattanScene sample_scene(const NetworkConfig& config, UserType user_type, std::uint64_t seed);

}  // namespace manhattan
