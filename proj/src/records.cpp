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

#include "manhattan/records.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace manhattan {

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    if (s == "inf" || s == "infinity") return kInfinity;
    throw DomainError("not a number: '" + s + "'");
  }
  return v;
}

namespace {
constexpr const char* kHeader =
    "# realization bs_id category distance_m los power_W path_count user_type";
}

void write_link_records(std::ostream& os, std::span<const LinkRecord> records) {
  os << kHeader << '\n';
  for (const auto& r : records) {
    os << r.realization << ' ' << r.bs_id << ' ' << to_string(r.category) << ' '
       << format_double(r.distance_m) << ' ' << (r.los ? 1 : 0) << ' ' << format_double(r.power_W)
       << ' ' << r.path_count << ' ' << to_string(r.user_type) << '\n';
  }
}

std::vector<LinkRecord> read_link_records(std::istream& is) {
  std::vector<LinkRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string real, id, cat, dist, los, pw, paths, user;
    if (!(ls >> real >> id >> cat >> dist >> los >> pw >> paths >> user))
      throw DomainError("link record line " + std::to_string(lineno) + ": expected 8 columns");
    LinkRecord r;
    try {
      r.realization = std::stoull(real);
      r.bs_id = std::stoull(id);
      r.path_count = std::stoi(paths);
      r.distance_m = parse_double(dist);
      r.power_W = parse_double(pw);
      r.user_type = parse_user_type(user);
    } catch (const std::exception& e) {
      throw DomainError("link record line " + std::to_string(lineno) + ": " + e.what());
    }
    if (cat == "L") r.category = LinkCategory::LOS;
    else if (cat == "N") r.category = LinkCategory::NLOS;
    else if (cat == "D") r.category = LinkCategory::Diffraction;
    else throw DomainError("link record line " + std::to_string(lineno) + ": bad category");
    if (los != "0" && los != "1")
      throw DomainError("link record line " + std::to_string(lineno) + ": los must be 0 or 1");
    r.los = los == "1";
    out.push_back(r);
  }
  return out;
}

}  // namespace manhattan
