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

#include "manhattan/quadrature.hpp"

using namespace manhattan;

TEST_SUITE("quadrature") {
  TEST_CASE("adaptive Gauss-Kronrod on smooth and peaked integrands") {
    auto r = integrate_adaptive<double>([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13,
                                        0.0, 100);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));

    // Lorentzian peak: integral of 1/(1 + (x/eps)^2) over [-1, 1].
    const double eps = 1e-3;
    auto p = integrate_adaptive<double>([&](double x) { return 1.0 / (1.0 + x * x / (eps * eps)); },
                                        -1.0, 1.0, 1e-10, 0.0, 500);
    CHECK(p.converged);
    CHECK(p.value == doctest::Approx(2.0 * eps * std::atan(1.0 / eps)).epsilon(1e-10));
  }

  TEST_CASE("complex integrand") {
    auto r = integrate_adaptive<cplx>([](double t) { return std::exp(cplx(0.0, t)); }, 0.0, kPi,
                                      1e-12, 0.0, 100);
    CHECK(r.value.real() == doctest::Approx(0.0).epsilon(1e-12).scale(1.0));
    CHECK(r.value.imag() == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("budget exhaustion is reported") {
    auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)); };
    auto r = integrate_adaptive<double>(f, 0.0, 1.0, 1e-14, 0.0, 3);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(integrate_or_throw<double>(f, 0.0, 1.0, 1e-14, 0.0, 3, "test"), NumericFailure);
  }

  TEST_CASE("Gauss-Legendre exactness") {
    for (int order : {2, 5, 8, 16}) {
      const auto rule = gauss_legendre(order);
      REQUIRE(rule.nodes.size() == static_cast<std::size_t>(order));
      for (int deg = 0; deg <= 2 * order - 1; ++deg) {
        double s = 0.0;
        for (int i = 0; i < order; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
      }
    }
  }

  TEST_CASE("panel tail integrals") {
    PanelGrid g({0.0, 0.5, 1.5, 3.0, 6.0, 10.0}, 10);
    const std::size_t panels = g.panel_count();
    std::vector<double> v, out(g.node_count(panels)), tails(panels + 1);
    for (double x : g.nodes()) v.push_back(std::exp(-x));
    const double beyond = std::exp(-10.0);
    g.tail_integrals<double>(std::span<const double>(v).first(g.node_count(panels)), panels, beyond,
                             out, tails);
    for (std::size_t i = 0; i < out.size(); ++i)
      CHECK(out[i] == doctest::Approx(std::exp(-g.nodes()[i])).epsilon(1e-10));
    CHECK(tails[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g.panel_of(2.0) == 2);
  }
}
