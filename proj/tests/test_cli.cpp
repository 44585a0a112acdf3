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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "manhattan/cli.hpp"

using namespace manhattan;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

void write_file(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const std::string& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kCoverage = R"([NetworkConfig]
half_size_km = 2
street_density_per_km = 5
bs_density_per_km = 5
crossroad_probability = 0
[BlockageParams]
beta = 0.012
gamma = 0.85
[Experiment]
theta_c_dB = -5:15:10
theta_e_dBm = -40,-30
)";

const char* kAnalytic = "metrics = coverage,exposure\n";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("missing bs density is a schema error") {
    TempDir d("manhattan_cli_missing");
    write_file(d / "c.ini", "[NetworkConfig]\nstreet_density_per_km = 5\n");
    const auto r = run({"analytic", "--config", d / "c.ini", "--out", d / "out"});
    CHECK(r.code == kExitSchema);
    CHECK(r.err.find("NetworkConfig.bs_density") != std::string::npos);
    CHECK_FALSE(fs::exists(d.path / "out"));
  }

  TEST_CASE("usage errors") {
    CHECK(run({}).code == kExitSchema);
    CHECK(run({"teleport"}).code == kExitSchema);
    CHECK(run({"analytic"}).code == kExitSchema);
    CHECK(run({"analytic", "--config", "/nonexistent.ini"}).code == kExitSchema);
  }

  TEST_CASE("analytic output and JSON re-ingest") {
    TempDir d("manhattan_cli_analytic");
    write_file(d / "c.ini", std::string(kCoverage) + kAnalytic);
    const auto r = run({"analytic", "--config", d / "c.ini", "--out", d / "a"});
    REQUIRE(r.code == kExitOk);
    const std::string csv = slurp(d / "a/analytic_coverage.csv");
    CHECK(csv.rfind("theta_c_dB,P_c\n-5,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    const auto again = run({"analytic", "--config", d / "a/analytic.json", "--out", d / "b"});
    REQUIRE(again.code == kExitOk);
    CHECK(slurp(d / "b/analytic_coverage.csv") == csv);
    CHECK(slurp(d / "b/analytic_exposure.csv") == slurp(d / "a/analytic_exposure.csv"));
  }

  TEST_CASE("overrides reach the engine") {
    TempDir d("manhattan_cli_override");
    write_file(d / "c.ini", std::string(kCoverage) + kAnalytic);
    REQUIRE(run({"analytic", "--config", d / "c.ini", "--out", d / "a"}).code == kExitOk);
    REQUIRE(run({"analytic", "--config", d / "c.ini", "--out", d / "b", "--override",
                 "bs_density_per_km=10"})
                .code == kExitOk);
    CHECK(slurp(d / "a/analytic_coverage.csv") != slurp(d / "b/analytic_coverage.csv"));
    CHECK(run({"analytic", "--config", d / "c.ini", "--override", "beta=-1"}).code == kExitSchema);
  }

  TEST_CASE("fitted parameters load as an overlay") {
    TempDir d("manhattan_cli_overlay");
    write_file(d / "c.ini", std::string(kCoverage) + kAnalytic);
    write_file(d / "fit.ini", "[BlockageParams]\nbeta = 0.004\ngamma = 0.85\n"
                              "[PropagationParams]\nalpha_L = 1.66\nfading_L = exponential:1.66\n");
    REQUIRE(run({"analytic", "--config", d / "c.ini", "--overlay", d / "fit.ini", "--out", d / "a"})
                .code == kExitOk);
    const std::string json = slurp(d / "a/analytic.json");
    CHECK(json.find("\"gamma\": \"0.85\"") != std::string::npos);
    CHECK(json.find("exponential:1.66") != std::string::npos);
    CHECK(run({"analytic", "--config", d / "c.ini", "--overlay", d / "missing.ini"}).code ==
          kExitSchema);
  }

  TEST_CASE("compare under --strict") {
    TempDir d("manhattan_cli_compare");
    write_file(d / "c.ini", std::string(kCoverage) + "metrics = coverage\nrealizations = 3000\n"
                                                     "strict_tolerance = 0.05\n");
    const auto ok = run({"compare", "--strict", "--config", d / "c.ini", "--out", d / "ok"});
    CHECK(ok.code == kExitOk);
    CHECK(fs::exists(d.path / "ok/compare_coverage.csv"));

    const auto bad = run({"compare", "--strict", "--config", d / "c.ini", "--out", d / "bad",
                          "--override", "strict_tolerance=1e-9"});
    CHECK(bad.code == kExitStrict);
    CHECK(fs::exists(d.path / "bad/compare_coverage.csv"));
    CHECK(slurp(d / "bad/compare.json").find("strict_breach") != std::string::npos);

    const auto lax = run({"compare", "--config", d / "c.ini", "--out", d / "lax", "--override",
                          "strict_tolerance=1e-9"});
    CHECK(lax.code == kExitOk);
  }

  TEST_CASE("THREADS must be a positive integer") {
    TempDir d("manhattan_cli_threads");
    write_file(d / "c.ini", std::string(kCoverage) + kAnalytic);
    ::setenv("THREADS", "many", 1);
    const auto r = run({"analytic", "--config", d / "c.ini", "--out", d / "a"});
    ::unsetenv("THREADS");
    CHECK(r.code == kExitSchema);
    CHECK(r.err.find("THREADS") != std::string::npos);
  }

  TEST_CASE("raytrace requires a finite layout") {
    TempDir d("manhattan_cli_rt");
    write_file(d / "c.ini", "[NetworkConfig]\nstreet_density_per_km = 5\nbs_density_per_km = 5\n");
    CHECK(run({"raytrace", "--config", d / "c.ini", "--out", d / "a"}).code == kExitSchema);
  }
}
