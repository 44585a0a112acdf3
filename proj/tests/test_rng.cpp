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
#include <set>
#include <vector>

#include "manhattan/rng.hpp"

using namespace manhattan;

TEST_SUITE("rng") {
  TEST_CASE("streams are reproducible and distinct") {
    CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 100; ++i) {
      const auto x = a();
      CHECK(x == b());
      seen.insert(x);
      seen.insert(c());
      seen.insert(d());
    }
    CHECK(seen.size() == 300);
  }

  TEST_CASE("split is deterministic and independent of parent position") {
    CounterRng a(11, 2);
    const auto child1 = a.split(5);
    for (int i = 0; i < 17; ++i) a();
    auto child2 = a.split(5);
    auto c1 = child1;
    for (int i = 0; i < 10; ++i) CHECK(c1() == child2());
    CounterRng other = CounterRng(11, 2).split(6);
    CHECK(CounterRng(11, 2).split(5)() != other());
  }

  TEST_CASE("uniform moments") {
    CounterRng r(1);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = r.uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
      s += u;
      s2 += u * u;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(var == doctest::Approx(1.0 / 12.0).epsilon(0.01));
  }

  TEST_CASE("poisson mean and variance") {
    for (double mu : {0.3, 3.7, 42.0, 250.0}) {
      CounterRng r(99, static_cast<std::uint64_t>(mu * 10));
      const int n = 50000;
      double s = 0.0, s2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double k = static_cast<double>(sample_poisson(r, mu));
        REQUIRE(k >= 0.0);
        s += k;
        s2 += k * k;
      }
      const double mean = s / n, var = s2 / n - mean * mean;
      CHECK(std::abs(mean - mu) < 5.0 * std::sqrt(mu / n));
      CHECK(var == doctest::Approx(mu).epsilon(0.05));
    }
    CounterRng r(1);
    CHECK(sample_poisson(r, 0.0) == 0);
    CHECK(sample_poisson(r, -1.0) == 0);
  }

  TEST_CASE("exponential and normal moments") {
    CounterRng r(5);
    const int n = 100000;
    double se = 0.0, sn = 0.0, sn2 = 0.0;
    for (int i = 0; i < n; ++i) {
      se += sample_exponential(r);
      const double z = sample_normal(r);
      sn += z;
      sn2 += z * z;
    }
    CHECK(std::abs(se / n - 1.0) < 5.0 / std::sqrt(n));
    CHECK(std::abs(sn / n) < 5.0 / std::sqrt(n));
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
  }
}
