// Copyright 2026 The celltwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "celltwin/city.hpp"
#include "celltwin/radio.hpp"
#include "celltwin/traffic.hpp"

namespace celltwin::config {

/// Full scenario configuration. Defaults reproduce the reference parameter
/// set (powers, gains, band, bandwidths, beamwidths, overhead, d_p, tile
/// size, beta, n).
struct ScenarioConfig {
  // [map]
  double tile_size = 4.0;
  double height_min = 5.0;
  double height_max = 15.0;
  double gap_eps = 0.25;

  // [stations]
  std::string stations_file;
  bool local_coords = false;

  // [radio.lte] / [radio.nn]
  radio::RadioConfig lte;
  radio::RadioConfig nn;

  // [traffic]
  int max_users_per_tile = 10;
  traffic::SpatialFieldParams field;
  traffic::OccupancyProfile occupancy = traffic::OccupancyProfile::defaults();

  // [placement]
  double d_p = 100.0;
  int n_tiles = 1000;

  // [sim]
  std::uint64_t seed = 1;
  int timesteps = 50;
  int start_hour = 0;  // 12 a.m.
  double beta = 0.25;
  double user_height = 1.5;
  std::vector<int> variants = {0, 5, 10, 15, 20};

  city::BuildConfig build_config() const {
    return {tile_size, height_min, height_max, gap_eps, seed};
  }
};

ScenarioConfig default_config();

/// Parses the sectioned key=value scenario file. Unknown sections or keys
/// are rejected.
ScenarioConfig parse_scenario_file(const std::string& text);

std::string serialize_scenario_file(const ScenarioConfig& cfg);

/// Post-parse consistency checks (radio invariants, beta range, ...).
void validate(const ScenarioConfig& cfg);

}  // namespace celltwin::config
