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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "manhattan/geometry.hpp"
#include "manhattan/quadrature.hpp"

using namespace manhattan;

TEST_SUITE("geometry") {
  TEST_CASE("LOS probability") {
    CHECK(los_probability(100.0, {0.0, 1.0}) == 1.0);
    const BlockageParams b{0.004, 0.85};
    for (double r : {1.0, 10.0, 250.0, 1500.0}) {
      CHECK(los_probability(r, b) == doctest::Approx(std::exp(-0.004 * std::pow(r, 0.85))));
      CHECK(los_probability(r, b) + nlos_probability(r, b) == doctest::Approx(1.0));
    }
    CHECK(los_probability(10.0, b) > los_probability(20.0, b));
  }

  TEST_CASE("serving distance law") {
    const double lam = 5e-3;
    for (UserType q : {UserType::Street, UserType::Crossroad}) {
      const double a = 2.0 * user_index(q) * lam;
      for (double r : {1.0, 50.0, 400.0})
        CHECK(serving_distance_cdf(r, q, lam, kInfinity) == doctest::Approx(1.0 - std::exp(-a * r)));
      for (double R : {kInfinity, 300.0}) {
        const double hi = std::isinf(R) ? 5000.0 : R;
        auto res = integrate_adaptive<double>(
            [&](double r) { return serving_distance_pdf(r, q, lam, R); }, 0.0, hi, 1e-10, 0.0, 200);
        CHECK(res.value == doctest::Approx(1.0).epsilon(1e-8));
      }
    }
    CHECK_THROWS_AS(serving_distance_pdf(10.0, UserType::Street, lam, 5.0), DomainError);
  }

  TEST_CASE("parameter validation") {
    NetworkConfig c;
    c.bs_height_h_B = 2.0;
    CHECK_THROWS_AS(c.validate(), DomainError);
    c = {};
    c.crossroad_probability_eta = 1.5;
    CHECK_THROWS_AS(c.validate(), DomainError);
    CHECK_THROWS_AS((BlockageParams{-1.0, 1.0}.validate()), DomainError);
    CHECK_THROWS_AS((BlockageParams{0.1, 0.0}.validate()), DomainError);
  }

  TEST_CASE("scene sampling") {
    NetworkConfig c;
    c.half_size_R = 1000.0;
    CHECK_THROWS_AS(sample_scene(NetworkConfig{}, UserType::Street, 1), DomainError);

    const auto a = sample_scene(c, UserType::Crossroad, 17);
    const auto b = sample_scene(c, UserType::Crossroad, 17);
    CHECK(a.bs_count() == b.bs_count());
    CHECK(a.horizontal_street_ordinates() == b.horizontal_street_ordinates());
    CHECK(a.typical_streets().size() == 2);
    CHECK(sample_scene(c, UserType::Street, 17).typical_streets().size() == 1);

    for (const auto* s : a.typical_streets()) CHECK(s->coordinate == 0.0);
    for (const auto& s : a.horizontal) {
      CHECK(std::is_sorted(s.bs_offsets.begin(), s.bs_offsets.end()));
      if (!s.typical) CHECK(std::abs(s.coordinate) >= c.exclusion_radius_r_s);
      for (double x : s.bs_offsets) CHECK(std::abs(x) <= c.half_size_R);
    }
  }

  TEST_CASE("scene counts follow the Poisson means") {
    NetworkConfig c;
    c.half_size_R = 1000.0;
    const int n = 400;
    double streets = 0.0, typical_bs = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto s = sample_scene(c, UserType::Street, 1000 + i);
      streets += static_cast<double>(s.horizontal.size() - 1 + s.vertical.size());
      typical_bs += static_cast<double>(s.typical_streets().front()->bs_offsets.size());
    }
    // 2 axes x 2R lambda_S streets (less a negligible exclusion), 2R lambda_B BSs.
    const double m_streets = 2.0 * 2.0 * c.half_size_R * c.street_density_lambda_S;
    const double m_bs = 2.0 * c.half_size_R * c.bs_density_lambda_B;
    CHECK(std::abs(streets / n - m_streets) < 5.0 * std::sqrt(m_streets / n));
    CHECK(std::abs(typical_bs / n - m_bs) < 5.0 * std::sqrt(m_bs / n));
  }

  TEST_CASE("scene text round trip") {
    NetworkConfig c;
    c.half_size_R = 800.0;
    const auto a = sample_scene(c, UserType::Crossroad, 5);
    std::stringstream ss;
    a.write(ss);
    const auto b = ManhattanScene::read(ss);
    CHECK(b.user_type == a.user_type);
    REQUIRE(b.horizontal.size() == a.horizontal.size());
    for (std::size_t i = 0; i < a.horizontal.size(); ++i) {
      CHECK(b.horizontal[i].coordinate == a.horizontal[i].coordinate);
      CHECK(b.horizontal[i].bs_offsets == a.horizontal[i].bs_offsets);
      CHECK(b.horizontal[i].typical == a.horizontal[i].typical);
    }
    std::stringstream bad("street X 1 typical\n");
    CHECK_THROWS(ManhattanScene::read(bad));
  }
}
