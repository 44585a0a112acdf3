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
#include <span>
#include <string>
#include <vector>

#include "manhattan/channel.hpp"
#include "manhattan/geometry.hpp"

namespace manhattan {

// One BS-to-typical-user link, as emitted by the Monte Carlo and ray-tracing
// engines and consumed by the fitting module.
struct LinkRecord {
  std::uint64_t realization = 0;
  std::uint64_t bs_id = 0;
  LinkCategory category = LinkCategory::LOS;
  double distance_m = 0.0;  // along-street distance for typical-street links
  bool los = true;
  double power_W = 0.0;
  int path_count = 1;
  UserType user_type = UserType::Street;
};

// Whitespace-separated columns with a '#' header; numbers use the shortest
// round-trip representation so files reproduce bit-exactly.
void write_link_records(std::ostream& os, std::span<const LinkRecord> records);
std::vector<LinkRecord> read_link_records(std::istream& is);

std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace manhattan
