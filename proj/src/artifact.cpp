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

#include "celltwin/artifact.hpp"

#include <fstream>

#include <json.hpp>

#include "celltwin/util.hpp"

namespace celltwin::artifact {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "celltwin-city";
constexpr int kVersion = 1;

json ring_to_json(const std::vector<geom::Point2D>& ring) {
  json out = json::array();
  for (const auto& p : ring) out.push_back(json::array({p.x, p.y}));
  return out;
}

std::vector<geom::Point2D> ring_from_json(const json& j) {
  std::vector<geom::Point2D> ring;
  for (const auto& p : j) ring.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return ring;
}

json polygon_to_json(const geom::Polygon& poly) {
  json out;
  out["outer"] = ring_to_json(poly.outer);
  json holes = json::array();
  for (const auto& h : poly.holes) holes.push_back(ring_to_json(h));
  out["holes"] = holes;
  return out;
}

geom::Polygon polygon_from_json(const json& j) {
  geom::Polygon poly;
  poly.outer = ring_from_json(j.at("outer"));
  for (const auto& h : j.at("holes")) poly.holes.push_back(ring_from_json(h));
  return poly;
}

char tile_code(city::TileKind kind) {
  switch (kind) {
    case city::TileKind::Indoor: return 'I';
    case city::TileKind::Outdoor: return 'O';
    case city::TileKind::Void: return 'V';
  }
  return 'V';
}

}  // namespace

void save_city(const CityArtifact& artifact, const std::string& path) {
  const city::CityMap& map = artifact.map;
  json j;
  j["format"] = kFormat;
  j["version"] = kVersion;
  j["mx"] = map.mx;
  j["my"] = map.my;
  j["tile_size"] = map.tile_size;
  j["rows"] = map.rows;
  j["cols"] = map.cols;
  j["projector"] = {{"lat0", map.projector.lat0_deg},
                    {"lon0", map.projector.lon0_deg},
                    {"x_offset", map.projector.x_offset},
                    {"y_offset", map.projector.y_offset}};

  json buildings = json::array();
  for (const auto& b : map.buildings) {
    json jb = polygon_to_json(b.footprint);
    jb["id"] = b.id;
    jb["height"] = b.height;
    jb["kind"] = city::to_string(b.kind);
    jb["centre"] = json::array({b.centre.x, b.centre.y});
    buildings.push_back(std::move(jb));
  }
  j["buildings"] = std::move(buildings);

  json roads = json::array();
  for (const auto& r : map.roads) roads.push_back(polygon_to_json(r));
  j["roads"] = std::move(roads);
  json areas = json::array();
  for (const auto& a : map.open_areas) areas.push_back(polygon_to_json(a));
  j["open_areas"] = std::move(areas);

  // Tile kinds as one row string each; indoor hosts in scan order.
  json kinds = json::array();
  json hosts = json::array();
  for (int r = 0; r < map.rows; ++r) {
    std::string row(static_cast<std::size_t>(map.cols), 'V');
    for (int c = 0; c < map.cols; ++c) {
      const city::Tile& t = map.tile_at(r, c);
      row[static_cast<std::size_t>(c)] = tile_code(t.kind);
      if (t.kind == city::TileKind::Indoor) hosts.push_back(t.host_building);
    }
    kinds.push_back(row);
  }
  j["tile_kinds"] = std::move(kinds);
  j["tile_hosts"] = std::move(hosts);

  json stations = json::array();
  for (const auto& st : artifact.stations) {
    stations.push_back({{"id", st.id},
                        {"kind", city::to_string(st.kind)},
                        {"x", st.position.x},
                        {"y", st.position.y},
                        {"antenna_height", st.antenna_height},
                        {"host_building", st.host_building}});
  }
  j["stations"] = std::move(stations);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot write city artifact to " + path);
  out << j.dump(1, '\t') << "\n";
}

CityArtifact load_city(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open city artifact " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("city artifact " + path + ": invalid JSON: " + e.what());
  }
  if (j.value("format", "") != kFormat)
    throw ValidationError("city artifact " + path + ": unexpected format");
  if (j.value("version", -1) != kVersion)
    throw ValidationError("city artifact " + path + ": unsupported version");

  CityArtifact artifact;
  city::CityMap& map = artifact.map;
  map.mx = j.at("mx").get<double>();
  map.my = j.at("my").get<double>();
  map.tile_size = j.at("tile_size").get<double>();
  map.rows = j.at("rows").get<int>();
  map.cols = j.at("cols").get<int>();
  const auto& proj = j.at("projector");
  map.projector.lat0_deg = proj.at("lat0").get<double>();
  map.projector.lon0_deg = proj.at("lon0").get<double>();
  map.projector.x_offset = proj.at("x_offset").get<double>();
  map.projector.y_offset = proj.at("y_offset").get<double>();

  for (const auto& jb : j.at("buildings")) {
    city::Building b;
    b.footprint = polygon_from_json(jb);
    b.id = jb.at("id").get<int>();
    b.height = jb.at("height").get<double>();
    const auto kind = city::building_type_from_string(jb.at("kind").get<std::string>());
    if (!kind) throw ValidationError("city artifact: unknown building kind");
    b.kind = *kind;
    b.centre = {jb.at("centre").at(0).get<double>(), jb.at("centre").at(1).get<double>()};
    map.buildings.push_back(std::move(b));
  }
  for (const auto& jr : j.at("roads")) map.roads.push_back(polygon_from_json(jr));
  for (const auto& ja : j.at("open_areas")) map.open_areas.push_back(polygon_from_json(ja));

  const auto& kinds = j.at("tile_kinds");
  if (static_cast<int>(kinds.size()) != map.rows)
    throw ValidationError("city artifact: tile rows mismatch");
  map.tiles.resize(static_cast<std::size_t>(map.rows) * map.cols);
  std::size_t host_cursor = 0;
  const auto& hosts = j.at("tile_hosts");
  for (int r = 0; r < map.rows; ++r) {
    const std::string row = kinds.at(static_cast<std::size_t>(r)).get<std::string>();
    if (static_cast<int>(row.size()) != map.cols)
      throw ValidationError("city artifact: tile cols mismatch");
    for (int c = 0; c < map.cols; ++c) {
      city::Tile& t = map.tiles[map.flat_index(r, c)];
      t.row = r;
      t.col = c;
      t.centre = {(c + 0.5) * map.tile_size, (r + 0.5) * map.tile_size};
      switch (row[static_cast<std::size_t>(c)]) {
        case 'I':
          t.kind = city::TileKind::Indoor;
          if (host_cursor >= hosts.size())
            throw ValidationError("city artifact: missing tile host entries");
          t.host_building = hosts.at(host_cursor++).get<int>();
          break;
        case 'O': t.kind = city::TileKind::Outdoor; break;
        case 'V': t.kind = city::TileKind::Void; break;
        default: throw ValidationError("city artifact: invalid tile code");
      }
    }
  }

  for (const auto& js : j.at("stations")) {
    city::BaseStation st;
    st.id = js.at("id").get<int>();
    st.kind = js.at("kind").get<std::string>() == "NN" ? city::StationKind::NN
                                                       : city::StationKind::LTE;
    st.position = {js.at("x").get<double>(), js.at("y").get<double>()};
    st.antenna_height = js.at("antenna_height").get<double>();
    st.host_building = js.at("host_building").get<int>();
    artifact.stations.push_back(st);
  }
  return artifact;
}

}  // namespace celltwin::artifact
