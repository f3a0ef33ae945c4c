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

#include "celltwin/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "celltwin/util.hpp"

namespace celltwin::traffic {

namespace {

// Hourly occupancy fractions, hour 0 = midnight. Office-like types peak in
// working hours, residential the inverse, hospitals stay near-full. These
// curves are configuration defaults, not measured data.
constexpr std::array<double, 24> kRhoHotel = {
    0.90, 0.90, 0.90, 0.90, 0.90, 0.85, 0.75, 0.60, 0.45, 0.35, 0.30, 0.30,
    0.30, 0.30, 0.30, 0.35, 0.40, 0.50, 0.60, 0.70, 0.80, 0.85, 0.90, 0.90};
constexpr std::array<double, 24> kRhoSchool = {
    0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.05, 0.30, 0.80, 0.90, 0.90, 0.90,
    0.85, 0.90, 0.90, 0.70, 0.40, 0.15, 0.05, 0.02, 0.00, 0.00, 0.00, 0.00};
constexpr std::array<double, 24> kRhoResidential = {
    0.95, 0.95, 0.95, 0.95, 0.95, 0.90, 0.80, 0.60, 0.40, 0.30, 0.25, 0.25,
    0.25, 0.25, 0.25, 0.30, 0.40, 0.55, 0.70, 0.80, 0.85, 0.90, 0.95, 0.95};
constexpr std::array<double, 24> kRhoOffice = {
    0.02, 0.02, 0.02, 0.02, 0.02, 0.05, 0.15, 0.40, 0.75, 0.90, 0.90, 0.90,
    0.80, 0.90, 0.90, 0.85, 0.70, 0.45, 0.20, 0.10, 0.05, 0.02, 0.02, 0.02};
constexpr std::array<double, 24> kRhoSmallBusiness = {
    0.02, 0.02, 0.02, 0.02, 0.02, 0.05, 0.15, 0.35, 0.60, 0.75, 0.80, 0.80,
    0.75, 0.75, 0.75, 0.75, 0.75, 0.70, 0.55, 0.35, 0.15, 0.05, 0.02, 0.02};
constexpr std::array<double, 24> kRhoHospital = {
    0.80, 0.80, 0.80, 0.80, 0.80, 0.80, 0.82, 0.85, 0.90, 0.90, 0.90, 0.90,
    0.90, 0.90, 0.90, 0.90, 0.88, 0.85, 0.85, 0.82, 0.80, 0.80, 0.80, 0.80};
constexpr std::array<double, 24> kRhoMall = {
    0.00, 0.00, 0.00, 0.00, 0.00, 0.00, 0.02, 0.05, 0.15, 0.35, 0.55, 0.65,
    0.70, 0.70, 0.65, 0.65, 0.70, 0.75, 0.70, 0.55, 0.30, 0.10, 0.02, 0.00};

}  // namespace

const OccupancyEntry& OccupancyProfile::entry(city::BuildingType t) const {
  const auto it = by_type.find(t);
  if (it == by_type.end())
    throw ValidationError(std::string("occupancy profile missing building type ") +
                          city::to_string(t));
  return it->second;
}

OccupancyProfile OccupancyProfile::defaults() {
  using BT = city::BuildingType;
  OccupancyProfile p;
  p.by_type[BT::Hotel] = {50, 200, kRhoHotel};
  p.by_type[BT::School] = {100, 200, kRhoSchool};
  p.by_type[BT::Residential] = {10, 50, kRhoResidential};
  p.by_type[BT::Office] = {25, 75, kRhoOffice};
  p.by_type[BT::SmallBusiness] = {5, 30, kRhoSmallBusiness};
  p.by_type[BT::Hospital] = {200, 450, kRhoHospital};
  p.by_type[BT::Mall] = {500, 1000, kRhoMall};
  return p;
}

double temporal_volume(const TemporalModel& model, double t_prime) {
  double v = model.base;
  for (std::size_t i = 0; i < model.amplitude.size(); ++i)
    v += model.amplitude[i] * std::sin(model.frequency[i] * t_prime + model.phase[i]);
  return v;
}

double aligned_volume(const TemporalModel& model, double t) {
  return temporal_volume(model, t + model.align_shift_h);
}

double align_to_4am(TemporalModel& model) {
  // Locate the current minimizer on a 0.01 h grid, then refine by ternary
  // search; the curve searched includes any shift already applied, so a
  // second alignment is a no-op.
  const double step = 0.01;
  double best_t = 0.0, best_v = aligned_volume(model, 0.0);
  for (int i = 1; i < 2400; ++i) {
    const double t = i * step;
    const double v = aligned_volume(model, t);
    if (v < best_v) {
      best_v = v;
      best_t = t;
    }
  }
  double lo = best_t - step, hi = best_t + step;
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (aligned_volume(model, m1) < aligned_volume(model, m2))
      hi = m2;
    else
      lo = m1;
  }
  const double t_min = (lo + hi) / 2.0;
  double shift = t_min - 4.0;
  shift -= 24.0 * std::floor(shift / 24.0);  // wrap into [0, 24)
  if (shift > 24.0 - 1e-9) shift = 0.0;
  model.align_shift_h += shift;
  model.align_shift_h -= 24.0 * std::floor(model.align_shift_h / 24.0);

  model.vmin = aligned_volume(model, 4.0);
  double vmax = model.vmin;
  for (int i = 0; i < 2400; ++i) vmax = std::max(vmax, aligned_volume(model, i * 0.01));
  model.vmax = vmax;
  return shift;
}

int normalize_volume(double v, double vmin, double vmax, int max_users) {
  if (!(vmin < vmax)) throw ValidationError("normalize_volume: requires vmin < vmax");
  if (max_users < 1) throw ValidationError("normalize_volume: max_users must be >= 1");
  const double scaled = 1.0 + (v - vmin) / (vmax - vmin) * (max_users - 1);
  const int rounded = static_cast<int>(round_half_even(scaled));
  return std::clamp(rounded, 1, max_users);
}

FieldDraws draw_field_terms(const SpatialFieldParams& params, std::uint64_t seed) {
  if (params.terms < 1) throw ValidationError("spatial field: terms must be positive");
  rng::SubRng r(rng::derive(seed, "spatial_field"));
  FieldDraws d;
  d.fi.resize(static_cast<std::size_t>(params.terms));
  d.fj.resize(d.fi.size());
  d.phi.resize(d.fi.size());
  d.psi.resize(d.fi.size());
  for (std::size_t l = 0; l < d.fi.size(); ++l) {
    d.fi[l] = r.uniform(0.0, params.omega_max);
    d.fj[l] = r.uniform(0.0, params.omega_max);
    d.phi[l] = r.uniform(0.0, 2.0 * M_PI);
    d.psi[l] = r.uniform(0.0, 2.0 * M_PI);
  }
  return d;
}

double field_r(const FieldDraws& draws, double x, double y) {
  double s = 0.0;
  for (std::size_t l = 0; l < draws.fi.size(); ++l)
    s += std::cos(draws.fi[l] * x + draws.phi[l]) * std::cos(draws.fj[l] * y + draws.psi[l]);
  return 2.0 / std::sqrt(static_cast<double>(draws.fi.size())) * s;
}

SpatialField generate_field(const SpatialFieldParams& params, const city::CityMap& map,
                            std::uint64_t seed, int threads) {
  const FieldDraws draws = draw_field_terms(params, seed);
  SpatialField field;
  field.value.assign(map.tiles.size(), 0.0);
  parallel_for(map.tiles.size(), threads, [&](std::size_t i) {
    const city::Tile& tile = map.tiles[i];
    if (tile.kind != city::TileKind::Outdoor) return;
    const double r = field_r(draws, tile.centre.x, tile.centre.y);
    field.value[i] = std::exp(params.sigma * r + params.mu);
  });
  std::size_t outdoor = 0;
  for (std::size_t i = 0; i < field.value.size(); ++i) {
    if (map.tiles[i].kind == city::TileKind::Outdoor) {
      field.sum += field.value[i];
      ++outdoor;
    }
  }
  field.mean = outdoor > 0 ? field.sum / static_cast<double>(outdoor) : 0.0;
  field.hotspot_count =
      params.hotspot_count > 0
          ? params.hotspot_count
          : std::max(1, static_cast<int>(std::ceil(map.mx * map.my / 420.0)));
  return field;
}

std::vector<int> road_users(int norm_volume, const SpatialField& field, const city::CityMap& map,
                            int max_users_per_tile) {
  std::vector<std::size_t> outdoor;
  for (std::size_t i = 0; i < map.tiles.size(); ++i)
    if (map.tiles[i].kind == city::TileKind::Outdoor) outdoor.push_back(i);
  if (outdoor.empty()) throw ValidationError("road_users: map has no outdoor tiles");

  std::vector<int> users(map.tiles.size(), 0);
  if (field.sum <= 0.0 || field.mean <= 0.0) return users;
  const long long budget = static_cast<long long>(
      round_half_even(field.sum / field.hotspot_count * norm_volume / field.mean));
  if (budget <= 0) return users;

  // Largest-remainder apportionment proportional to the field value.
  struct Rem {
    double frac;
    std::size_t tile;
  };
  std::vector<Rem> rems;
  rems.reserve(outdoor.size());
  long long assigned = 0;
  for (const std::size_t i : outdoor) {
    const double quota = static_cast<double>(budget) * field.value[i] / field.sum;
    const double base = std::floor(quota);
    users[i] = static_cast<int>(base);
    assigned += static_cast<long long>(base);
    rems.push_back({quota - base, i});
  }
  long long leftover = budget - assigned;
  std::sort(rems.begin(), rems.end(), [](const Rem& a, const Rem& b) {
    return a.frac != b.frac ? a.frac > b.frac : a.tile < b.tile;
  });
  for (const auto& rem : rems) {
    if (leftover <= 0) break;
    ++users[rem.tile];
    --leftover;
  }
  // Cap after apportionment; clipped overflow is discarded.
  for (const std::size_t i : outdoor) users[i] = std::min(users[i], max_users_per_tile);
  return users;
}

int building_users(int hour, const city::Building& b, const OccupancyProfile& profile,
                   std::uint64_t seed) {
  const OccupancyEntry& entry = profile.entry(b.kind);
  rng::SubRng r(rng::derive(seed, "building_occupancy", static_cast<std::uint64_t>(b.id)));
  const int u_max = r.uniform_int(entry.users_min, entry.users_max);
  const double rho = entry.rho[static_cast<std::size_t>(((hour % 24) + 24) % 24)];
  return static_cast<int>(round_half_even(rho * u_max));
}

TrafficSnapshot make_snapshot(int hour, const TemporalModel& temporal, const SpatialField& field,
                              const city::CityMap& map, const OccupancyProfile& profile,
                              std::uint64_t seed) {
  TrafficSnapshot snap;
  snap.hour = ((hour % 24) + 24) % 24;
  const double v = aligned_volume(temporal, static_cast<double>(snap.hour));
  const int norm = normalize_volume(v, temporal.vmin, temporal.vmax, temporal.max_users_per_tile);
  snap.road_users = road_users(norm, field, map, temporal.max_users_per_tile);
  snap.building_users.resize(map.buildings.size(), 0);
  for (const auto& b : map.buildings)
    snap.building_users[static_cast<std::size_t>(b.id)] = building_users(snap.hour, b, profile, seed);
  return snap;
}

}  // namespace celltwin::traffic
