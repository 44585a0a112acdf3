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

#include <sstream>

#include "manhattan/config.hpp"

using namespace manhattan;

namespace {

const char* kMinimal = R"([NetworkConfig]
street_density_per_km = 5
bs_density_per_km = 4
)";

std::string to_ini(const ExperimentConfig::Snapshot& s) {
  std::string t;
  for (const auto& [sec, kv] : s) {
    t += "[" + sec + "]\n";
    for (const auto& [k, v] : kv) t += k + " = " + v + "\n";
  }
  return t;
}

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("units are converted to SI") {
    const auto c = parse_config_text(R"(
# comment
[NetworkConfig]
half_size_km = 2
street_density_per_km = 5
bs_density_per_km = 4   ; trailing comment
typical_bs_density_per_km = 8
[PropagationParams]
frequency_GHz = 2
tx_power_dBm = 40
noise_dBm = -93
bandwidth_MHz = 20
kappa_D_dB = 30
fading_N = exponential:0.33
fading_D = none
[RtSceneConfig]
obstacle_density_per_km = 20
ground_permittivity = 15 - 1.5j
polarization = horizontal
[Experiment]
user = crossroad
theta_c_dB = -10:10:5
theta_e_dBm = -60, -50
)");
    CHECK(c.network.half_size_R == 2000.0);
    CHECK(c.network.street_density_lambda_S == doctest::Approx(5e-3));
    CHECK(c.network.bs_density_lambda_B == doctest::Approx(4e-3));
    CHECK(c.network.typical_density() == doctest::Approx(8e-3));
    CHECK(c.propagation.frequency_f == 2e9);
    CHECK(c.propagation.tx_power_P_B == doctest::Approx(10.0));
    CHECK(c.propagation.noise_W == doctest::Approx(dbm_to_watts(-93.0)));
    CHECK(c.propagation.bandwidth_B == 20e6);
    CHECK(c.propagation.kappa(LinkCategory::Diffraction) == doctest::Approx(1000.0));
    CHECK(c.propagation.fading(LinkCategory::NLOS).kind == FadingSpec::Kind::ExponentialPower);
    CHECK(c.propagation.fading(LinkCategory::Diffraction).kind == FadingSpec::Kind::Deterministic);
    CHECK(c.rt.obstacle_density_lambda_O == doctest::Approx(0.02));
    CHECK(c.rt.ground_permittivity == cplx(15.0, -1.5));
    CHECK(c.rt.polarization == Polarization::Horizontal);
    CHECK(c.user == UserSelection::Crossroad);
    CHECK(c.theta_c_dB == std::vector<double>{-10, -5, 0, 5, 10});
    CHECK(c.theta_e_dBm == std::vector<double>{-60, -50});
  }

  TEST_CASE("snapshot round trip is exact") {
    auto c = parse_config_text(kMinimal);
    apply_override(c, "frequency_GHz=3.6");
    apply_override(c, "NetworkConfig.half_size_km=1.7");
    apply_override(c, "noise_dBm=-93");
    apply_override(c, "building_permittivity=5.3-0.42j");
    apply_override(c, "theta_e_dBm=-61.3,-40.1");
    const auto s = c.snapshot();
    const auto back = parse_config_text(to_ini(s));
    CHECK(back.snapshot() == s);
    CHECK(back.propagation.noise_W == c.propagation.noise_W);
    CHECK(back.network.half_size_R == c.network.half_size_R);
    CHECK(back.rt.building_permittivity == c.rt.building_permittivity);
  }

  TEST_CASE("JSON documents are accepted") {
    const auto c = parse_config_text(R"({"engine": "analytic", "config": {
      "NetworkConfig": {"street_density_per_km": 5, "bs_density_per_m": "0.004",
                        "half_size_km": "infinite"},
      "Experiment": {"theta_c_dB": [0, 5], "compare_raytrace": true, "seed": 12}}})");
    CHECK(c.network.bs_density_lambda_B == 0.004);
    CHECK(c.network.infinite());
    CHECK(c.theta_c_dB == std::vector<double>{0, 5});
    CHECK(c.compare_raytrace);
    CHECK(c.seed == 12);
  }

  TEST_CASE("schema violations name the field and line") {
    auto expect = [](const std::string& text, const std::string& field, int line) {
      try {
        parse_config_text(text);
        FAIL("no error for: " << text);
      } catch (const ConfigError& e) {
        CHECK(e.field() == field);
        CHECK(e.line() == line);
      }
    };
    expect("[NetworkConfig]\nstreet_density_per_km = 5\n", "NetworkConfig.bs_density", 0);
    expect("[NetworkConfig]\nbs_density_per_km = 5\n", "NetworkConfig.street_density", 0);
    expect(std::string(kMinimal) + "bs_height_m = tall\n", "NetworkConfig.bs_height_m", 4);
    expect(std::string(kMinimal) + "colour = red\n", "NetworkConfig.colour", 4);
    expect(std::string(kMinimal) + "bs_density_per_m = 0.004\n", "NetworkConfig.bs_density_per_m", 4);
    expect("street_density_per_km = 5\n", "street_density_per_km", 1);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimal) + "[PropagationParams]\nfading_L = weibull\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_config_text(std::string(kMinimal) + "bs_height_m = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("{not json"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.ini"), ConfigError);
  }

  TEST_CASE("overrides") {
    auto c = parse_config_text(kMinimal);
    apply_override(c, "beta=0.04");
    CHECK(c.blockage.beta == 0.04);
    apply_override(c, "Experiment.realizations=123");
    CHECK(c.realizations == 123);
    CHECK_THROWS_AS(apply_override(c, "nonsense=1"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "beta"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "realizations=0"), ConfigError);
    CHECK_THROWS_AS(apply_override(c, "gamma=-1"), ConfigError);
  }

  TEST_CASE("grids") {
    CHECK(parse_grid("").empty());
    CHECK(parse_grid("1:2:0.25") == std::vector<double>{1, 1.25, 1.5, 1.75, 2});
    CHECK(parse_grid("-10:30:2").size() == 21);
    CHECK(parse_grid(" 3, 1 ,2") == std::vector<double>{3, 1, 2});
    CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("2:1:1"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1,x"), ConfigError);
    const std::vector<double> g{0.1, -3.0, 1e-9};
    CHECK(parse_grid(format_grid(g)) == g);
  }
}
