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

#include <vector>

#include "celltwin/rss.hpp"

namespace celltwin::placement {

struct PlacementConfig {
  double d_p = 100.0;   // minimum in-centre distance to deployed stations, metres
  int n_tiles = 1000;   // nearest road tiles averaged per candidate
  int max_total = 0;    // stop when |P| reaches this (LTE + NN)
  int threads = 1;
};

struct PlacementStep {
  int iteration = 0;  // 1-based
  int building_id = -1;
  geom::Point2D position;
  double mean_rss_before = 0.0;  // region mean over current best RSS
};

struct PlacementResult {
  std::vector<PlacementStep> placed;
  std::vector<city::BaseStation> final_stations;  // LTE followed by placed NNs
  std::vector<std::string> warnings;
};

/// Delaunay in-centres of the station set whose distance to every station
/// exceeds d_p. Collinear or insufficient stations yield an empty list.
std::vector<geom::Point2D> surviving_incentres(const std::vector<geom::Point2D>& stations,
                                               double d_p);

/// Mean of the supplied per-tile best RSS over the n outdoor tiles nearest
/// to pos (all of them when fewer exist).
double region_mean_rss(const geom::Point2D& pos, int n, const city::CityMap& map,
                       const std::vector<double>& tile_best_rss);

/// Greedy nomadic-node placement: repeatedly triangulate the deployed set,
/// keep in-centres farther than d_p from every station, map them to their
/// nearest candidate building, and place at the candidate whose surrounding
/// road tiles currently see the worst mean RSS.
PlacementResult place_nns(const city::CityMap& map, const std::vector<city::BaseStation>& lte,
                          const sim::RssEngine& engine, const PlacementConfig& cfg);

}  // namespace celltwin::placement
