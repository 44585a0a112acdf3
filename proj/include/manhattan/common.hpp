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
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace manhattan {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when a quadrature or iterative procedure does not reach its
// tolerance within the allotted budget.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double error_estimate)
      : std::runtime_error(what + " (achieved error estimate " +
                           std::to_string(error_estimate) + ")"),
        error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

// Conversions between linear and logarithmic power scales.
inline double linear_to_db(double value) { return 10.0 * std::log10(value); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double watts_to_dbm(double watts) { return linear_to_db(watts) + 30.0; }
inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }

// exp(z) - 1 without cancellation for small |z|.
inline cplx expm1(cplx z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  const double em1 = std::expm1(x);
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  const double re = em1 * std::cos(y) - 2.0 * s * s;
  const double im = std::exp(x) * std::sin(y);
  return {re, im};
}

}  // namespace manhattan
