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
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "manhattan/config.hpp"

namespace manhattan {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Column {
  std::string name;
  std::vector<double> values;
};

// Named table of equal-length columns; one CSV file per table.
struct ResultTable {
  std::string name;
  std::vector<Column> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().values.size(); }
  void validate() const;
  const Column& column(const std::string& name) const;
};

struct RunMetadata {
  std::string engine;
  std::string version;
  std::uint64_t seed = 0;
  std::size_t realizations = 0;
  ExperimentConfig::Snapshot config;
  std::map<std::string, std::string> notes;
};

std::string library_version();

// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_csv_number(double v);

void write_csv(std::ostream& os, const ResultTable& table);
void write_json(std::ostream& os, const RunMetadata& meta, std::span<const ResultTable> tables);

// <dir>/<stem>_<table>.csv for every table plus <dir>/<stem>.json; returns
// the paths written.
std::vector<std::string> write_results(const std::string& dir, const std::string& stem,
                                       const RunMetadata& meta,
                                       std::span<const ResultTable> tables);

// Joint metric in long format: theta_c_dB, theta_e_dBm, value, stderr.
// `values` is row-major with theta_c as the major index.
ResultTable joint_long_table(std::span<const double> theta_c_dB, std::span<const double> theta_e_dBm,
                             std::span<const double> values, std::span<const double> stderrs,
                             const std::string& name = "joint");

}  // namespace manhattan
