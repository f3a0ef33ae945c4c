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

#include <string>
#include <vector>

#include "celltwin/city.hpp"

namespace celltwin::artifact {

struct CityArtifact {
  city::CityMap map;
  std::vector<city::BaseStation> stations;  // snapped LTE inventory
};

/// Versioned JSON artifact with the full city map (including the tile grid)
/// and the snapped stations. Serialization is deterministic.
void save_city(const CityArtifact& artifact, const std::string& path);
CityArtifact load_city(const std::string& path);

}  // namespace celltwin::artifact
