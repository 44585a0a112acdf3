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

#include "manhattan/output.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#ifndef MANHATTAN_VERSION
#define MANHATTAN_VERSION "0.0.0"
#endif

namespace manhattan {

std::string library_version() { return MANHATTAN_VERSION; }

void ResultTable::validate() const {
  for (const auto& c : columns)
    if (c.values.size() != rows())
      throw OutputError("table " + name + ": column " + c.name + " has " +
                        std::to_string(c.values.size()) + " rows, expected " +
                        std::to_string(rows()));
}

const Column& ResultTable::column(const std::string& col) const {
  for (const auto& c : columns)
    if (c.name == col) return c;
  throw OutputError("table " + name + " has no column " + col);
}

std::string format_csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const ResultTable& table) {
  table.validate();
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c].name;
  os << "\n";
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      os << (c ? "," : "") << format_csv_number(table.columns[c].values[r]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const RunMetadata& meta, std::span<const ResultTable> tables) {
  nlohmann::ordered_json j;
  j["engine"] = meta.engine;
  j["version"] = meta.version.empty() ? library_version() : meta.version;
  j["seed"] = meta.seed;
  j["realizations"] = meta.realizations;
  j["config"] = meta.config;
  if (!meta.notes.empty()) j["notes"] = meta.notes;
  auto& results = j["results"];
  results = nlohmann::ordered_json::object();
  for (const auto& t : tables) {
    t.validate();
    auto& obj = results[t.name];
    obj = nlohmann::ordered_json::object();
    for (const auto& c : t.columns) {
      auto arr = nlohmann::ordered_json::array();
      for (double v : c.values) {
        if (std::isfinite(v)) arr.push_back(v);
        else arr.push_back(nullptr);
      }
      obj[c.name] = std::move(arr);
    }
  }
  os << j.dump(2) << "\n";
}

std::vector<std::string> write_results(const std::string& dir, const std::string& stem,
                                       const RunMetadata& meta,
                                       std::span<const ResultTable> tables) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw OutputError("cannot create output directory " + dir + ": " + ec.message());
  std::vector<std::string> written;
  auto open = [&](const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw OutputError("cannot write " + p.string());
    return out;
  };
  for (const auto& t : tables) {
    const fs::path p = fs::path(dir) / (stem + "_" + t.name + ".csv");
    auto out = open(p);
    write_csv(out, t);
    if (!out) throw OutputError("write failed: " + p.string());
    written.push_back(p.string());
  }
  const fs::path p = fs::path(dir) / (stem + ".json");
  auto out = open(p);
  write_json(out, meta, tables);
  if (!out) throw OutputError("write failed: " + p.string());
  written.push_back(p.string());
  return written;
}

ResultTable joint_long_table(std::span<const double> theta_c_dB, std::span<const double> theta_e_dBm,
                             std::span<const double> values, std::span<const double> stderrs,
                             const std::string& name) {
  const std::size_t n = theta_c_dB.size() * theta_e_dBm.size();
  if (values.size() != n || (!stderrs.empty() && stderrs.size() != n))
    throw OutputError("joint table: value count does not match the threshold grid");
  ResultTable t{name, {{"theta_c_dB", {}}, {"theta_e_dBm", {}}, {"value", {}}, {"stderr", {}}}};
  for (std::size_t i = 0; i < theta_c_dB.size(); ++i)
    for (std::size_t k = 0; k < theta_e_dBm.size(); ++k) {
      const std::size_t idx = i * theta_e_dBm.size() + k;
      t.columns[0].values.push_back(theta_c_dB[i]);
      t.columns[1].values.push_back(theta_e_dBm[k]);
      t.columns[2].values.push_back(values[idx]);
      t.columns[3].values.push_back(stderrs.empty() ? 0.0 : stderrs[idx]);
    }
  return t;
}

}  // namespace manhattan
