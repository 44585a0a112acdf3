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
#include <span>
#include <vector>

#include "manhattan/channel.hpp"
#include "manhattan/geometry.hpp"
#include "manhattan/records.hpp"
#include "manhattan/rng.hpp"

namespace manhattan {

struct PowerDecomposition {
  double S = 0.0, I_L = 0.0, I_N = 0.0, I_D = 0.0;  // W
  double serving_distance = 0.0;
  bool serving_is_los = true;
  UserType user_type = UserType::Street;

  double interference() const { return I_L + I_N + I_D; }
  double exposure() const { return S + I_L + I_N + I_D; }
  double sinr(double noise_W) const { return S / (interference() + noise_W); }
};

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t count = 0;
  std::uint64_t seed_base = 0;
};

struct McOptions {
  // Mean received power below which perpendicular-street BSs are not drawn.
  // 0 selects 1e-3 W_noise, or 1e-21 W without noise.
  double power_floor_W = 0.0;
  double resolved_floor(const PropagationParams& p) const;
};

// One realization drawn from the stream (seed, stream). When `links` is
// given, one record per drawn BS is appended (realization index = stream).
PowerDecomposition simulate_realization(const NetworkConfig& config,
                                        const PropagationParams& params,
                                        const BlockageParams& blockage, UserType user_type,
                                        std::uint64_t seed, std::uint64_t stream = 0,
                                        const McOptions& options = {},
                                        std::vector<LinkRecord>* links = nullptr);

// Realization i uses stream i of seed_base; its user type is crossroad with
// probability eta. Output order follows the index, independent of threads.
std::vector<PowerDecomposition> simulate_batch(std::size_t n, const NetworkConfig& config,
                                               const PropagationParams& params,
                                               const BlockageParams& blockage, double eta,
                                               std::uint64_t seed_base,
                                               const McOptions& options = {});
std::vector<PowerDecomposition> simulate_batch_serial(std::size_t n, const NetworkConfig& config,
                                                      const PropagationParams& params,
                                                      const BlockageParams& blockage, double eta,
                                                      std::uint64_t seed_base,
                                                      const McOptions& options = {});

// Link records of n realizations (user type fixed), in index order.
std::vector<LinkRecord> simulate_links(std::size_t n, const NetworkConfig& config,
                                       const PropagationParams& params,
                                       const BlockageParams& blockage, UserType user_type,
                                       std::uint64_t seed_base, const McOptions& options = {});

struct McMetrics {
  std::vector<double> theta_c;  // linear
  std::vector<double> theta_e;  // W
  std::vector<McEstimate> coverage;
  std::vector<McEstimate> exposure_cdf;
  std::vector<McEstimate> joint;  // row-major: theta_c index major
  McEstimate mean_capacity;       // bit/s
  McEstimate mu_L, mu_N, mu_D, mu_E;  // W; S counted in mu_L or mu_N
  double truncation_bound_W = 0.0;    // expected diffraction power not drawn
};

McMetrics summarize(std::span<const PowerDecomposition> records, std::span<const double> theta_c,
                    std::span<const double> theta_e, const PropagationParams& params,
                    std::uint64_t seed_base);

McMetrics estimate_metrics(std::size_t n, std::span<const double> theta_c,
                           std::span<const double> theta_e, const NetworkConfig& config,
                           const PropagationParams& params, const BlockageParams& blockage,
                           double eta, std::uint64_t seed_base, const McOptions& options = {});
McMetrics estimate_metrics_serial(std::size_t n, std::span<const double> theta_c,
                                  std::span<const double> theta_e, const NetworkConfig& config,
                                  const PropagationParams& params, const BlockageParams& blockage,
                                  double eta, std::uint64_t seed_base,
                                  const McOptions& options = {});

// Expected diffraction power (street user) of BSs whose mean power is below
// the floor; the bias introduced by the perpendicular-street window.
double diffraction_truncation_bound(const NetworkConfig& config, const PropagationParams& params,
                                    double floor_W);

// Pairwise summation; fixed association order for a given length.
double pairwise_sum(std::span<const double> v);

void write_realizations(std::ostream& os, std::span<const PowerDecomposition> records);
std::vector<PowerDecomposition> read_realizations(std::istream& is);

}  // namespace manhattan
