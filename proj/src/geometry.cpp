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

#include "manhattan/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "manhattan/rng.hpp"

namespace manhattan {

const char* to_string(UserType u) { return u == UserType::Street ? "street" : "crossroad"; }

UserType parse_user_type(const std::string& s) {
  if (s == "street" || s == "1") return UserType::Street;
  if (s == "crossroad" || s == "2") return UserType::Crossroad;
  throw DomainError("unknown user type '" + s + "'");
}

void NetworkConfig::validate() const {
  if (!(half_size_R > 0.0)) throw DomainError("half_size_R must be positive");
  if (!(street_density_lambda_S >= 0.0) || !(bs_density_lambda_B >= 0.0))
    throw DomainError("densities must be non-negative");
  if (typical_bs_density_lambda_B_t && !(*typical_bs_density_lambda_B_t >= 0.0))
    throw DomainError("typical-street BS density must be non-negative");
  if (!(delta_H() > 1.0)) throw DomainError("h_B - h_U must exceed 1 m");
  if (!(exclusion_radius_r_s > 0.0)) throw DomainError("exclusion radius must be positive");
  if (!(crossroad_probability_eta >= 0.0 && crossroad_probability_eta <= 1.0))
    throw DomainError("eta must lie in [0, 1]");
}

void BlockageParams::validate() const {
  if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
  if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
}

double los_probability(double r, const BlockageParams& b) {
  if (b.beta == 0.0 || r == 0.0) return 1.0;
  return std::exp(-b.beta * std::pow(r, b.gamma));
}

namespace {

double rate_of(UserType q, double lambda_B) { return 2.0 * user_index(q) * lambda_B; }

}  // namespace

double serving_distance_pdf(double r, UserType q, double lambda_B, double R) {
  if (!(r > 0.0 && r < R)) throw DomainError("serving distance outside (0, R)");
  const double a = rate_of(q, lambda_B);
  const double norm = std::isinf(R) ? 1.0 : -std::expm1(-a * R);
  return a * std::exp(-a * r) / norm;
}

double serving_distance_cdf(double r, UserType q, double lambda_B, double R) {
  if (r <= 0.0) return 0.0;
  if (r >= R) return 1.0;
  const double a = rate_of(q, lambda_B);
  const double norm = std::isinf(R) ? 1.0 : -std::expm1(-a * R);
  return -std::expm1(-a * r) / norm;
}

std::vector<double> ManhattanScene::horizontal_street_ordinates() const {
  std::vector<double> v;
  for (const auto& s : horizontal) v.push_back(s.coordinate);
  return v;
}

std::vector<double> ManhattanScene::vertical_street_abscissas() const {
  std::vector<double> v;
  for (const auto& s : vertical) v.push_back(s.coordinate);
  return v;
}

std::size_t ManhattanScene::bs_count() const {
  std::size_t n = 0;
  for (const auto& s : horizontal) n += s.bs_offsets.size();
  for (const auto& s : vertical) n += s.bs_offsets.size();
  return n;
}

std::vector<const Street*> ManhattanScene::typical_streets() const {
  std::vector<const Street*> out;
  for (const auto& s : horizontal)
    if (s.typical) out.push_back(&s);
  for (const auto& s : vertical)
    if (s.typical) out.push_back(&s);
  return out;
}

void ManhattanScene::write(std::ostream& os) const {
  os << "# manhattan-scene 1\n";
  char buf[64];
  auto num = [&](double v) {
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  os << "half_size_m " << num(half_size_R) << '\n';
  os << "exclusion_radius_m " << num(exclusion_radius_r_s) << '\n';
  os << "user_type " << to_string(user_type) << '\n';
  auto emit = [&](const Street& s) {
    os << "street " << (s.axis == Axis::Horizontal ? 'H' : 'V') << ' ' << num(s.coordinate) << ' '
       << (s.typical ? "typical" : "regular");
    for (double x : s.bs_offsets) os << ' ' << num(x);
    os << '\n';
  };
  for (const auto& s : horizontal) emit(s);
  for (const auto& s : vertical) emit(s);
}

ManhattanScene ManhattanScene::read(std::istream& is) {
  ManhattanScene scene;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw DomainError("scene line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    ls.imbue(std::locale::classic());
    std::string key;
    ls >> key;
    if (key == "half_size_m") {
      if (!(ls >> scene.half_size_R)) fail("bad half size");
    } else if (key == "exclusion_radius_m") {
      if (!(ls >> scene.exclusion_radius_r_s)) fail("bad exclusion radius");
    } else if (key == "user_type") {
      std::string u;
      ls >> u;
      scene.user_type = parse_user_type(u);
    } else if (key == "street") {
      Street s;
      std::string axis, kind;
      if (!(ls >> axis >> s.coordinate >> kind)) fail("truncated street record");
      if (axis != "H" && axis != "V") fail("axis must be H or V");
      if (kind != "typical" && kind != "regular") fail("street kind must be typical or regular");
      s.axis = axis == "H" ? Axis::Horizontal : Axis::Vertical;
      s.typical = kind == "typical";
      double x;
      while (ls >> x) s.bs_offsets.push_back(x);
      if (!ls.eof()) fail("bad BS offset");
      std::sort(s.bs_offsets.begin(), s.bs_offsets.end());
      (s.axis == Axis::Horizontal ? scene.horizontal : scene.vertical).push_back(std::move(s));
    } else {
      fail("unknown record '" + key + "'");
    }
  }
  auto by_coord = [](const Street& a, const Street& b) { return a.coordinate < b.coordinate; };
  std::sort(scene.horizontal.begin(), scene.horizontal.end(), by_coord);
  std::sort(scene.vertical.begin(), scene.vertical.end(), by_coord);
  return scene;
}

namespace {

std::vector<double> uniform_points(CounterRng& rng, double mean, double lo, double hi) {
  const auto n = sample_poisson(rng, mean);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = lo + (hi - lo) * rng.uniform();
  std::sort(v.begin(), v.end());
  return v;
}

void populate_axis(std::vector<Street>& streets, Axis axis, bool with_typical,
                   const NetworkConfig& c, CounterRng rng) {
  const double R = c.half_size_R;
  auto coords = uniform_points(rng, 2.0 * R * c.street_density_lambda_S, -R, R);
  // Streets falling inside the exclusion segment are ignored.
  std::erase_if(coords, [&](double v) { return std::abs(v) < c.exclusion_radius_r_s; });
  if (with_typical) coords.insert(std::upper_bound(coords.begin(), coords.end(), 0.0), 0.0);
  std::uint64_t index = 0;
  for (double v : coords) {
    Street s;
    s.axis = axis;
    s.coordinate = v;
    s.typical = with_typical && v == 0.0;
    CounterRng brng = rng.split(++index);
    const double density = s.typical ? c.typical_density() : c.bs_density_lambda_B;
    s.bs_offsets = uniform_points(brng, 2.0 * R * density, -R, R);
    streets.push_back(std::move(s));
  }
}

}  // namespace

ManhattanScene sample_scene(const NetworkConfig& config, UserType user_type, std::uint64_t seed) {
  config.validate();
  if (config.infinite()) throw DomainError("scene sampling needs a finite half size R");
  ManhattanScene scene;
  scene.half_size_R = config.half_size_R;
  scene.exclusion_radius_r_s = config.exclusion_radius_r_s;
  scene.user_type = user_type;
  CounterRng root(seed, 0);
  populate_axis(scene.horizontal, Axis::Horizontal, true, config, root.split(1));
  populate_axis(scene.vertical, Axis::Vertical, user_type == UserType::Crossroad, config,
                root.split(2));
  return scene;
}

}  // namespace manhattan
