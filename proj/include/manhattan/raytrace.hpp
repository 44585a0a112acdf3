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

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "manhattan/channel.hpp"
#include "manhattan/geometry.hpp"
#include "manhattan/montecarlo.hpp"
#include "manhattan/records.hpp"

namespace manhattan {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
  double norm_xy() const { return std::hypot(x, y); }
};

enum class Polarization { Vertical, Horizontal };

struct RtSceneConfig {
  double street_width_w_S = 35.0;
  double bs_wall_offset_d_BU = 5.0;
  double obstacle_density_lambda_O = 20e-3;  // per meter of typical street
  double obstacle_length = 4.5;
  double obstacle_width = 1.8;
  double obstacle_height = 2.5;
  cplx ground_permittivity{15.0, -1.5};
  cplx building_permittivity{5.3, -0.42};
  Polarization polarization = Polarization::Vertical;
  // Paths weaker than this fraction of the strongest path of a BS are dropped.
  double path_power_threshold = 1e-8;
  // Incidence closer to grazing than this (rad) is clipped.
  double grazing_clip_rad = 1e-4;
  // Allow a wall/ground reflection before the corner diffraction. Off by
  // default: the reversed path (diffraction first) is outside the path set,
  // so enabling it breaks exact reciprocity.
  bool reflect_then_diffract = false;

  void validate(const NetworkConfig& config) const;
};

struct Plane {
  Vec3 normal;  // unit, pointing into free space
  double offset = 0.0;  // normal . p = offset on the plane
  bool ground = false;
};

// Vertical building edge; the building occupies the quadrant
// {(x - x) sx >= 0, (y - y) sy >= 0} around it.
struct Edge {
  double x = 0.0, y = 0.0;
  int sx = 1, sy = 1;
};

struct Box {
  Vec3 lo, hi;
};

struct Transmitter {
  Vec3 position;
  std::uint64_t id = 0;
  bool typical = false;     // in a typical street
  Axis street_axis = Axis::Horizontal;
  double street_coordinate = 0.0;
  double along = 0.0;       // offset along its street
};

class RtScene {
 public:
  // Street grid from a sampled scene; obstacles are drawn from `seed`.
  static RtScene build(const ManhattanScene& scene, const NetworkConfig& config,
                       const RtSceneConfig& rt, std::uint64_t seed);
  // Flat ground without buildings or obstacles.
  static RtScene open_ground(const RtSceneConfig& rt);

  // True when the straight segment crosses neither a building nor an obstacle.
  bool segment_clear(const Vec3& a, const Vec3& b, bool obstacles = true) const;
  bool in_street(double x, double y) const;

  // Reflecting planes relevant to a link (typical-street walls, the
  // transmitter's street walls, ground).
  std::vector<Plane> candidate_planes(const Transmitter& tx) const;
  // Corners where the transmitter's street meets a typical street.
  std::vector<Edge> candidate_edges(const Transmitter& tx) const;
  bool on_wall(const Vec3& q, const Plane& p) const;

  const RtSceneConfig& config() const { return rt_; }
  const Vec3& user() const { return user_; }
  UserType user_type() const { return user_type_; }
  const std::vector<Transmitter>& transmitters() const { return tx_; }
  const std::vector<Box>& obstacles() const { return obstacles_; }
  bool has_buildings() const { return buildings_; }
  const std::vector<double>& horizontal_streets() const { return hy_; }
  const std::vector<double>& vertical_streets() const { return vx_; }

  // Test hooks.
  void set_user(const Vec3& u) { user_ = u; }
  void add_obstacle(const Box& b) { obstacles_.push_back(b); }
  void add_transmitter(const Transmitter& t) { tx_.push_back(t); }

 private:
  RtSceneConfig rt_;
  bool buildings_ = true;
  std::vector<double> hy_, vx_;  // street axes
  std::vector<bool> hy_typical_, vx_typical_;
  std::vector<Transmitter> tx_;
  std::vector<Box> obstacles_;
  Vec3 user_;
  UserType user_type_ = UserType::Street;
};

enum class InteractionKind { Reflection, Diffraction };

struct Interaction {
  Vec3 point;
  InteractionKind kind = InteractionKind::Reflection;
  Plane plane;  // reflection
  Edge edge;    // diffraction
};

struct RayPath {
  Vec3 source, target;
  std::vector<Interaction> interactions;  // at most two, diffraction only last
  std::vector<double> segment_lengths;
  double unfolded_length() const;
  cplx field{0.0, 0.0};  // co-polar field, normalized source
};

std::vector<RayPath> enumerate_paths(const RtScene& scene, const Vec3& tx, const Vec3& rx,
                                     const Transmitter* info = nullptr);
std::vector<RayPath> enumerate_paths(const RtScene& scene, std::size_t bs_index);

// Co-polar complex field at the path end for a unit source. `clipped`
// counts grazing-incidence clips.
cplx field_contribution(const RayPath& path, const RtSceneConfig& rt, double frequency,
                        int* clipped = nullptr);

// Computes fields, drops weak paths and sums coherently; paths keep their
// fields. Returns P_B (c / 4 pi f)^2 |sum e|^2.
double received_power_rt(std::vector<RayPath>& paths, const PropagationParams& params,
                         const RtSceneConfig& rt, int* clipped = nullptr);
double received_power_rt(std::span<const RayPath> paths, const PropagationParams& params);

cplx reflection_coefficient(cplx permittivity, double cos_incidence, bool transverse_electric);
cplx utd_wedge_coefficient(double phi, double phi_incident, double distance_param, double k,
                           double sin_beta0, double n, bool soft);
// Fresnel integrals C(x), S(x) with kernel cos/sin(pi t^2 / 2).
void fresnel_integrals(double x, double& C, double& S);

struct UserPlacement {
  double x = 0.0, y = 0.0;
  std::vector<double> vertical_streets, horizontal_streets;
  double street_width = 0.0;
};

struct RtRealization {
  PowerDecomposition powers;
  std::vector<LinkRecord> links;
  UserPlacement placement;
  int clip_events = 0;
};

RtRealization simulate_rt_realization(const NetworkConfig& config, const PropagationParams& params,
                                      const RtSceneConfig& rt, UserType user_type,
                                      std::uint64_t seed, std::uint64_t stream);
std::vector<RtRealization> simulate_rt_batch(std::size_t n, const NetworkConfig& config,
                                             const PropagationParams& params,
                                             const RtSceneConfig& rt, double eta,
                                             std::uint64_t seed_base);
std::vector<RtRealization> simulate_rt_batch_serial(std::size_t n, const NetworkConfig& config,
                                                    const PropagationParams& params,
                                                    const RtSceneConfig& rt, double eta,
                                                    std::uint64_t seed_base);

}  // namespace manhattan
