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

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "celltwin/city.hpp"

namespace celltwin::traffic {

/// Per building type: maximum-occupancy range and hourly occupancy fractions.
struct OccupancyEntry {
  int users_min = 0;
  int users_max = 0;
  std::array<double, 24> rho{};  // fractions in [0,1]
};

struct OccupancyProfile {
  std::map<city::BuildingType, OccupancyEntry> by_type;

  const OccupancyEntry& entry(city::BuildingType t) const;
  /// Paper-reported user ranges with the documented default hourly curves.
  static OccupancyProfile defaults();
};

/// Third-order sinusoid of daily traffic volume plus the alignment shift
/// that puts the daily minimum at 4 a.m.
struct TemporalModel {
  double base = 173.29;
  std::array<double, 3> amplitude{89.83, 52.6, 16.68};
  std::array<double, 3> frequency{M_PI / 12.0, M_PI / 6.0, M_PI / 4.0};
  std::array<double, 3> phase{3.08, 2.08, 1.13};
  double align_shift_h = 0.0;
  int max_users_per_tile = 10;
  double vmin = 0.0, vmax = 0.0;  // extremes on the alignment grid
};

/// Raw curve V'(t), 24 h periodic.
double temporal_volume(const TemporalModel& model, double t_prime);

/// Aligned curve V(t) = V'(t + shift).
double aligned_volume(const TemporalModel& model, double t);

/// Computes and stores the shift placing argmin V at 4.0 h (0.01 h grid with
/// local refinement) plus the curve extremes; returns the shift.
double align_to_4am(TemporalModel& model);

/// Round-half-even of 1 + (v-vmin)/(vmax-vmin)*(max_users-1), clamped to
/// [1, max_users].
int normalize_volume(double v, double vmin, double vmax, int max_users);

struct SpatialFieldParams {
  int terms = 500;           // summand count of the sinusoid expansion
  double omega_max = 0.05;   // rad/m spatial frequency bound
  double sigma = 1.0;
  double mu = 0.0;
  int hotspot_count = 0;     // 0: use ceil(mx*my/420)
};

/// Log-normal spatial density F = exp(sigma*r + mu) sampled at outdoor tile
/// centres; zero elsewhere.
struct SpatialField {
  std::vector<double> value;  // per flat tile index
  double sum = 0.0;           // over outdoor tiles
  double mean = 0.0;
  int hotspot_count = 1;      // N
};

SpatialField generate_field(const SpatialFieldParams& params, const city::CityMap& map,
                            std::uint64_t seed, int threads = 1);

/// Gaussian random field r(x, y) at one point given the drawn frequencies
/// and phases; exposed for property tests.
struct FieldDraws {
  std::vector<double> fi, fj, phi, psi;
};
FieldDraws draw_field_terms(const SpatialFieldParams& params, std::uint64_t seed);
double field_r(const FieldDraws& draws, double x, double y);

/// Distributes the timestep road-user budget across outdoor tiles
/// proportionally to the field (largest-remainder apportionment), then clips
/// each tile at max_users_per_tile. Returns per-flat-tile-index counts.
std::vector<int> road_users(int norm_volume, const SpatialField& field, const city::CityMap& map,
                            int max_users_per_tile);

/// Maximum occupancy u_k is sampled once per building per scenario seed;
/// the result is round(rho[hour] * u_k).
int building_users(int hour, const city::Building& b, const OccupancyProfile& profile,
                   std::uint64_t seed);

struct TrafficSnapshot {
  int hour = 0;
  std::vector<int> road_users;      // per flat tile index
  std::vector<int> building_users;  // per building id
};

TrafficSnapshot make_snapshot(int hour, const TemporalModel& temporal, const SpatialField& field,
                              const city::CityMap& map, const OccupancyProfile& profile,
                              std::uint64_t seed);

}  // namespace celltwin::traffic
