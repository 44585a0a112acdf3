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

// Serial reference kernels against their OpenMP counterparts.
// Usage: manhattan_bench [threads]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "manhattan/analytic.hpp"
#include "manhattan/montecarlo.hpp"
#include "manhattan/raytrace.hpp"

using namespace manhattan;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class A, class B>
void compare(const char* name, A serial, B parallel) {
  decltype(serial()) rs, rp;
  const double ts = seconds([&] { rs = serial(); });
  const double tp = seconds([&] { rp = parallel(); });
  std::printf("%-22s serial %8.3f s  parallel %8.3f s  speedup %5.2f  identical %s\n", name, ts, tp,
              ts / tp, rs == rp ? "yes" : "NO");
}

std::vector<double> flat(const std::vector<PowerDecomposition>& r) {
  std::vector<double> out;
  for (const auto& x : r) out.insert(out.end(), {x.S, x.I_L, x.I_N, x.I_D});
  return out;
}

std::vector<double> flat(const std::vector<RtRealization>& r) {
  std::vector<double> out;
  for (const auto& x : r) out.insert(out.end(), {x.powers.S, x.powers.I_L, x.powers.I_N, x.powers.I_D});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) omp_set_num_threads(std::atoi(argv[1]));
  std::printf("threads: %d\n", omp_get_max_threads());

  const NetworkConfig net;
  const PropagationParams p;
  const BlockageParams b{0.012, 1.0};
  const AnalyticModel model(net, p, b);
  std::vector<double> th;
  for (int i = 0; i <= 20; ++i) th.push_back(db_to_linear(-10.0 + 2.0 * i));
  compare("analytic coverage", [&] { return coverage_curve_serial(model, th, UserType::Street); },
          [&] { return coverage_curve(model, th, UserType::Street); });

  NetworkConfig mc = net;
  mc.half_size_R = 128000.0;
  compare("monte carlo batch", [&] { return flat(simulate_batch_serial(20000, mc, p, b, 0.1, 1)); },
          [&] { return flat(simulate_batch(20000, mc, p, b, 0.1, 1)); });

  NetworkConfig rtn = net;
  rtn.half_size_R = 2000.0;
  const RtSceneConfig rt;
  compare("ray tracing batch",
          [&] { return flat(simulate_rt_batch_serial(40, rtn, p, rt, 0.1, 1)); },
          [&] { return flat(simulate_rt_batch(40, rtn, p, rt, 0.1, 1)); });
}
