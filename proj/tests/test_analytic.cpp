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
#include <vector>

#include "manhattan/analytic.hpp"

using namespace manhattan;

namespace {

cplx rel_diff(cplx a, cplx b) { return (a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_SUITE("analytic") {
  TEST_CASE("precomputed CFs match the direct integrals") {
    NetworkConfig c;
    PropagationParams p;
    const BlockageParams b{0.012, 1.0};
    for (double R : {kInfinity, 2000.0}) {
      c.half_size_R = R;
      const AnalyticModel m(c, p, b);
      for (double s : {1e8, 1e10}) {
        for (auto cat : {LinkCategory::LOS, LinkCategory::NLOS}) {
          const cplx fast = m.log_cf_street(cat, s, 50.0);
          const cplx ref = log_cf_street_reference(cat, s, 50.0, c, p, b);
          CHECK(std::abs(rel_diff(fast, ref)) < 1e-6);
        }
        const cplx fast = m.log_cf_diffraction(s);
        const cplx ref = log_cf_diffraction_reference(s, c, p);
        CHECK(std::abs(rel_diff(fast, ref)) < 1e-6);
      }
    }
  }

  TEST_CASE("crossroad Campbell means are twice the street means") {
    PropagationParams p;
    for (double beta : {0.0, 0.004, 0.04}) {
      const BlockageParams b{beta, 1.0};
      for (double R : {kInfinity, 1500.0}) {
        NetworkConfig c;
        c.half_size_R = R;
        const auto st = mean_exposure(UserType::Street, p, b, c);
        const auto cr = mean_exposure(UserType::Crossroad, p, b, c);
        CHECK(std::abs(cr.total() / (2.0 * st.total()) - 1.0) <= 1e-12);
        CHECK(st.mu_L > 0.0);
        CHECK(st.mu_D > 0.0);
        if (beta == 0.0) CHECK(st.mu_N == 0.0);
      }
    }
  }

  TEST_CASE("CF slopes reproduce the means") {
    NetworkConfig c;
    PropagationParams p;
    const BlockageParams b{0.004, 1.0};
    const AnalyticModel m(c, p, b);
    for (UserType q : {UserType::Street, UserType::Crossroad}) {
      const double mean_s = m.mean_useful(q);
      const double mean_i = mean_exposure(q, p, b, c).total() - mean_s;
      const auto s_cf = useful_power_cf(m, q);
      const auto i_cf = interference_cf(m, q);
      const double hs = 1e-5 / mean_s, hi = 1e-5 / mean_i;
      CHECK(((s_cf(hs) - 1.0) / cplx(0.0, hs)).real() == doctest::Approx(mean_s).epsilon(1e-3));
      CHECK(((i_cf(hi) - 1.0) / cplx(0.0, hi)).real() == doctest::Approx(mean_i).epsilon(1e-3));
    }
  }

  TEST_CASE("coverage is a decreasing probability; parallel equals serial") {
    NetworkConfig c;
    PropagationParams p;
    const AnalyticModel m(c, p, {0.012, 1.0});
    std::vector<double> th;
    for (double db : {-10.0, 0.0, 10.0, 20.0}) th.push_back(db_to_linear(db));
    const auto par = coverage_curve(m, th, UserType::Street);
    const auto ser = coverage_curve_serial(m, th, UserType::Street);
    CHECK(par == ser);
    for (std::size_t i = 0; i < par.size(); ++i) {
      CHECK(par[i] >= 0.0);
      CHECK(par[i] <= 1.0);
      if (i) CHECK(par[i] < par[i - 1]);
    }
    CHECK(coverage_probability(th[1], UserType::Street, p, {0.012, 1.0}, c) ==
          doctest::Approx(par[1]).epsilon(1e-9));
    // Crossroad users see twice the interferers.
    CHECK(coverage_curve(m, std::vector{th[1]}, UserType::Crossroad)[0] < par[1]);
  }

  TEST_CASE("noise lowers coverage") {
    NetworkConfig c;
    PropagationParams p;
    const BlockageParams b{0.004, 1.0};
    const double th = db_to_linear(5.0);
    const double quiet = coverage_probability(th, UserType::Street, p, b, c);
    p.noise_W = dbm_to_watts(-70.0);
    CHECK(coverage_probability(th, UserType::Street, p, b, c) < quiet);
  }

  TEST_CASE("exposure CDF is increasing") {
    NetworkConfig c;
    PropagationParams p;
    const BlockageParams b{0.012, 1.0};
    const AnalyticModel m(c, p, b);
    const double mean = mean_exposure(UserType::Street, p, b, c).total();
    std::vector<double> th{0.1 * mean, mean, 10.0 * mean, 100.0 * mean};
    const auto v = exposure_curve(m, th, UserType::Street);
    CHECK(v == exposure_curve_serial(m, th, UserType::Street));
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
    CHECK(v.back() > 0.99);
    CHECK(exposure_cdf(th[1], UserType::Street, p, b, c) == doctest::Approx(v[1]).epsilon(1e-9));
  }

  TEST_CASE("joint lower bound and user mixture") {
    CHECK(joint_lower_bound(0.7, 0.6) == doctest::Approx(0.3));
    CHECK(joint_lower_bound(0.2, 0.3) == 0.0);
    MetricResult st{"coverage", "analytic", "dB", {0.0, 5.0}, {0.8, 0.6}, {}, ""};
    MetricResult cr{"coverage", "analytic", "dB", {0.0, 5.0}, {0.6, 0.4}, {}, ""};
    const auto mix = mix_arbitrary_user(st, cr, 0.25);
    CHECK(mix.values[0] == doctest::Approx(0.75));
    CHECK(mix.values[1] == doctest::Approx(0.55));
    cr.grid = {1.0, 2.0};
    CHECK_THROWS_AS(mix_arbitrary_user(st, cr, 0.5), DomainError);
    CHECK_THROWS_AS(mix_arbitrary_user(st, st, 1.5), DomainError);
  }

  TEST_CASE("density maximization") {
    auto f = [](double l) { return -std::pow(std::log(l / 0.0123), 2); };
    const auto opt = maximize_over_density(f, 1e-4, 1.0, 9);
    CHECK_FALSE(opt.at_boundary);
    CHECK(opt.lambda_B == doctest::Approx(0.0123).epsilon(1e-3));
    CHECK(opt.sweep_lambda.size() == 9);
    const auto edge = maximize_over_density([](double l) { return l; }, 1e-3, 1e-1, 5);
    CHECK(edge.at_boundary);
    CHECK_THROWS_AS(maximize_over_density(f, 0.0, 1.0), DomainError);
  }
}
