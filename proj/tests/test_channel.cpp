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

#include "manhattan/channel.hpp"
#include "manhattan/rng.hpp"

using namespace manhattan;

TEST_SUITE("channel") {
  TEST_CASE("dB conversions are inverse to 1e-12") {
    for (double db = -150.0; db <= 60.0; db += 3.7) {
      CHECK(std::abs(linear_to_db(db_to_linear(db)) - db) <= 1e-12 * std::max(1.0, std::abs(db)));
      CHECK(std::abs(watts_to_dbm(dbm_to_watts(db)) - db) <= 1e-12 * std::max(1.0, std::abs(db)));
    }
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(-93.0) == doctest::Approx(5.011872336272715e-13));
  }

  TEST_CASE("fading CFs") {
    for (const auto& f : {FadingSpec::rayleigh(), FadingSpec::rice(6.0), FadingSpec::exponential(0.33),
                          FadingSpec::none()}) {
      CHECK(std::abs(fading_cf(f, 0.0) - cplx(1.0)) < 1e-15);
      // Mean from the CF slope: phi'(0) = j E[g].
      const double h = 1e-6;
      const cplx slope = fading_cf_minus_one(f, h) / h;
      CHECK(slope.imag() == doctest::Approx(fading_mean(f)).epsilon(1e-5));
      CHECK(std::abs(fading_cf(f, 0.3) - 1.0 - fading_cf_minus_one(f, 0.3)) < 1e-14);
      CHECK(std::abs(fading_cf(f, 1e4)) <= 1.0 + 1e-12);
    }
    CHECK(fading_mean(FadingSpec::rice(6.0)) == doctest::Approx(1.0));
    CHECK(fading_mean(FadingSpec::exponential(0.25)) == doctest::Approx(4.0));
    CHECK_THROWS_AS(FadingSpec::exponential(-1.0).validate(), DomainError);
  }

  TEST_CASE("fading samples match the mean") {
    for (const auto& f : {FadingSpec::rice(6.0), FadingSpec::rice(0.0), FadingSpec::exponential(2.0)}) {
      CounterRng r(3);
      const int n = 100000;
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += sample_fading_power(f, r);
      CHECK(s / n == doctest::Approx(fading_mean(f)).epsilon(0.02));
    }
  }

  TEST_CASE("path loss and defaults") {
    PropagationParams p;
    const double kf = std::pow(4.0 * kPi * p.frequency_f / kSpeedOfLight, 2);
    CHECK(p.kappa(LinkCategory::LOS) == doctest::Approx(kf));
    p.kappa_N = 1e3;
    CHECK(p.kappa(LinkCategory::NLOS) == 1e3);
    const double d = 120.0, dh = 4.5;
    CHECK(path_loss(LinkCategory::LOS, d, dh, p) ==
          doctest::Approx(std::pow(d * d + dh * dh, -p.alpha_L / 2.0) / kf));
    CHECK(path_loss(LinkCategory::NLOS, d, dh, p) ==
          doctest::Approx(std::pow(d * d + dh * dh, -p.alpha_N / 2.0) / 1e3));
    CHECK(p.fading(LinkCategory::Diffraction).K == 0.0);
    CHECK(p.fading(LinkCategory::LOS).K == p.rice_K);
  }

  TEST_CASE("Berg distance") {
    PropagationParams p;
    CHECK(berg_distance(100.0, 50.0, 1e-9, p) == doctest::Approx(150.0));
    const double right = berg_distance(100.0, 50.0, kPi / 2.0, p);
    CHECK(right == doctest::Approx(150.0 + p.k_f() * 5000.0));
    CHECK(berg_distance(100.0, 50.0, kPi, p) > right);
    CHECK_THROWS_AS(berg_distance(0.0, 5.0, 1.0, p), DomainError);
  }
}
