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
//
// Map-extract parsing: the documented OSM-style XML subset with <node> and
// <way> elements. Ways tagged building=* become buildings, highway=* roads,
// leisure=park open areas.

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "celltwin/city.hpp"
#include "celltwin/util.hpp"

namespace celltwin::city {

namespace {

constexpr double kEarthRadius = 6371000.0;  // metres
constexpr double kDegToRad = M_PI / 180.0;
constexpr double kLaneWidth = 3.5;  // metres per lane
constexpr double kDefaultRoadWidth = 7.0;

BuildingType building_type_from_tag(const std::string& value) {
  static const std::map<std::string, BuildingType> table = {
      {"hotel", BuildingType::Hotel},
      {"hostel", BuildingType::Hotel},
      {"school", BuildingType::School},
      {"university", BuildingType::School},
      {"kindergarten", BuildingType::School},
      {"college", BuildingType::School},
      {"residential", BuildingType::Residential},
      {"house", BuildingType::Residential},
      {"apartments", BuildingType::Residential},
      {"office", BuildingType::Office},
      {"commercial", BuildingType::Office},
      {"retail", BuildingType::SmallBusiness},
      {"shop", BuildingType::SmallBusiness},
      {"small_business", BuildingType::SmallBusiness},
      {"hospital", BuildingType::Hospital},
      {"clinic", BuildingType::Hospital},
      {"mall", BuildingType::Mall},
      {"supermarket", BuildingType::Mall},
  };
  const auto it = table.find(value);
  if (it != table.end()) return it->second;
  return BuildingType::Residential;  // unmapped tags default to Residential
}

}  // namespace

const char* to_string(BuildingType t) {
  switch (t) {
    case BuildingType::Hotel: return "hotel";
    case BuildingType::School: return "school";
    case BuildingType::Residential: return "residential";
    case BuildingType::Office: return "office";
    case BuildingType::SmallBusiness: return "small_business";
    case BuildingType::Hospital: return "hospital";
    case BuildingType::Mall: return "mall";
  }
  return "residential";
}

std::optional<BuildingType> building_type_from_string(const std::string& s) {
  for (BuildingType t : {BuildingType::Hotel, BuildingType::School, BuildingType::Residential,
                         BuildingType::Office, BuildingType::SmallBusiness,
                         BuildingType::Hospital, BuildingType::Mall})
    if (s == to_string(t)) return t;
  return std::nullopt;
}

geom::Point2D LocalProjector::to_local(double lat_deg, double lon_deg) const {
  const double x = kEarthRadius * (lon_deg - lon0_deg) * kDegToRad * std::cos(lat0_deg * kDegToRad);
  const double y = kEarthRadius * (lat_deg - lat0_deg) * kDegToRad;
  return {x + x_offset, y + y_offset};
}

geom::Point2D project_to_local(double lat_deg, double lon_deg, const LocalProjector& proj) {
  if (std::abs(lat_deg) > 90.0 || std::abs(lon_deg) > 180.0)
    throw ValidationError("project_to_local: latitude/longitude out of range");
  return proj.to_local(lat_deg, lon_deg);
}

MapExtract parse_map_extract(const std::string& xml_text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in(xml_text);
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ValidationError(std::string("malformed map extract: ") + e.what());
  }
  const auto osm = tree.get_child_optional("osm");
  if (!osm) throw ValidationError("malformed map extract: missing <osm> root element");

  struct GeoNode {
    double lat, lon;
  };
  std::map<std::int64_t, GeoNode> nodes;
  double lat_min = std::numeric_limits<double>::infinity(), lat_max = -lat_min;
  double lon_min = lat_min, lon_max = -lat_min;

  for (const auto& [name, child] : *osm) {
    if (name != "node") continue;
    const std::int64_t id = child.get<std::int64_t>("<xmlattr>.id");
    const double lat = child.get<double>("<xmlattr>.lat");
    const double lon = child.get<double>("<xmlattr>.lon");
    if (std::abs(lat) > 90.0 || std::abs(lon) > 180.0)
      throw ValidationError("node " + std::to_string(id) + ": latitude/longitude out of range");
    nodes[id] = {lat, lon};
    lat_min = std::min(lat_min, lat);
    lat_max = std::max(lat_max, lat);
    lon_min = std::min(lon_min, lon);
    lon_max = std::max(lon_max, lon);
  }
  if (nodes.empty()) throw ValidationError("map extract contains no nodes");

  LocalProjector proj;
  proj.lat0_deg = (lat_min + lat_max) / 2.0;
  proj.lon0_deg = (lon_min + lon_max) / 2.0;

  MapExtract extract;
  for (const auto& [name, child] : *osm) {
    if (name != "way") continue;
    const std::int64_t way_id = child.get<std::int64_t>("<xmlattr>.id");
    std::vector<std::int64_t> refs;
    std::map<std::string, std::string> tags;
    for (const auto& [cname, cchild] : child) {
      if (cname == "nd") {
        refs.push_back(cchild.get<std::int64_t>("<xmlattr>.ref"));
      } else if (cname == "tag") {
        tags[cchild.get<std::string>("<xmlattr>.k")] = cchild.get<std::string>("<xmlattr>.v");
      }
    }
    const auto to_points = [&](bool drop_closing) {
      std::vector<geom::Point2D> pts;
      const std::size_t n = refs.size() - (drop_closing ? 1 : 0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = nodes.find(refs[i]);
        if (it == nodes.end())
          throw ValidationError("way " + std::to_string(way_id) + ": unknown node ref " +
                                std::to_string(refs[i]));
        pts.push_back(proj.to_local(it->second.lat, it->second.lon));
      }
      return pts;
    };
    const bool closed = refs.size() >= 2 && refs.front() == refs.back();

    if (const auto b = tags.find("building"); b != tags.end()) {
      if (!closed)
        throw ValidationError("way " + std::to_string(way_id) + ": building ring does not close");
      if (refs.size() < 4)
        throw ValidationError("way " + std::to_string(way_id) + ": building ring too short");
      RawBuilding rb;
      rb.way_id = way_id;
      rb.ring = to_points(true);
      rb.kind = building_type_from_tag(b->second);
      if (const auto h = tags.find("height"); h != tags.end()) rb.height = std::stod(h->second);
      extract.buildings.push_back(std::move(rb));
    } else if (tags.count("highway")) {
      if (refs.size() < 2)
        throw ValidationError("way " + std::to_string(way_id) + ": road needs >= 2 nodes");
      RawRoad rr;
      rr.way_id = way_id;
      rr.polyline = to_points(false);
      if (const auto w = tags.find("width"); w != tags.end()) {
        rr.width = std::stod(w->second);
      } else if (const auto l = tags.find("lanes"); l != tags.end()) {
        rr.width = std::stod(l->second) * kLaneWidth;
      } else {
        rr.width = kDefaultRoadWidth;
      }
      extract.roads.push_back(std::move(rr));
    } else if (const auto lz = tags.find("leisure"); lz != tags.end() && lz->second == "park") {
      if (!closed)
        throw ValidationError("way " + std::to_string(way_id) + ": park ring does not close");
      RawArea ra;
      ra.way_id = way_id;
      ra.ring = to_points(true);
      extract.parks.push_back(std::move(ra));
    }
    // Other tag families are ignored.
  }

  if (extract.buildings.empty()) throw ValidationError("map extract contains no buildings");
  extract.projector = proj;
  return extract;
}

}  // namespace celltwin::city
