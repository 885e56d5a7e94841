#include "dualthresh/catalog.h"

#include <fstream>
#include <sstream>

#include "dualthresh/errors.h"
#include "json.hpp"

namespace dualthresh {
namespace {

using nlohmann::json;

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) {
    throw InvalidCluster(where + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    bool known = false;
    for (std::string_view key : allowed) {
      known = known || item.key() == key;
    }
    if (!known) {
      throw InvalidCluster(where + ": unknown key '" + item.key() + "'");
    }
  }
}

std::array<int, 2> parse_edge(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
      !value[1].is_number_integer()) {
    throw InvalidCluster(where + ": edge must be a pair of integer vertex ids");
  }
  return {value[0].get<int>(), value[1].get<int>()};
}

ClusterSpec parse_cluster(const json& obj) {
  require_keys(obj, {"name", "layers", "vertices", "slots"}, "cluster");
  if (!obj.contains("name") || !obj["name"].is_string()) {
    throw InvalidCluster("cluster: 'name' must be a string");
  }
  const std::string name = obj["name"].get<std::string>();
  const std::string where = "cluster '" + name + "'";
  if (!obj.contains("layers") || !obj["layers"].is_number_integer()) {
    throw InvalidCluster(where + ": 'layers' must be an integer");
  }
  if (!obj.contains("vertices") || !obj["vertices"].is_array()) {
    throw InvalidCluster(where + ": 'vertices' must be an array");
  }
  if (!obj.contains("slots") || !obj["slots"].is_array()) {
    throw InvalidCluster(where + ": 'slots' must be an array");
  }

  std::vector<Vertex> vertices;
  for (const json& v : obj["vertices"]) {
    require_keys(v, {"id", "role", "layer"}, where + " vertex");
    if (!v.contains("id") || !v["id"].is_number_integer()) {
      throw InvalidCluster(where + ": vertex 'id' must be an integer");
    }
    Vertex vertex;
    vertex.id = v["id"].get<int>();
    const std::string role = v.value("role", "");
    if (role == "internal") {
      vertex.role = VertexRole::kInternal;
    } else if (role == "boundary") {
      vertex.role = VertexRole::kBoundary;
    } else {
      throw InvalidCluster(where + ": vertex role must be 'internal' or 'boundary'");
    }
    const std::string layer = v.value("layer", "");
    if (layer == "primal") {
      vertex.layer = Sublattice::kPrimal;
    } else if (layer == "dual") {
      vertex.layer = Sublattice::kDual;
    } else {
      throw InvalidCluster(where + ": vertex layer must be 'primal' or 'dual'");
    }
    vertices.push_back(vertex);
  }

  std::vector<Slot> slots;
  for (const json& s : obj["slots"]) {
    require_keys(s, {"primal_edge", "dual_edge"}, where + " slot");
    if (!s.contains("primal_edge")) {
      throw InvalidCluster(where + ": slot lacks 'primal_edge'");
    }
    Slot slot;
    slot.primal_edge = parse_edge(s["primal_edge"], where);
    if (s.contains("dual_edge") && !s["dual_edge"].is_null()) {
      slot.dual_edge = parse_edge(s["dual_edge"], where);
    }
    slots.push_back(slot);
  }
  return ClusterSpec(name, obj["layers"].get<int>(), std::move(vertices), std::move(slots));
}

nlohmann::ordered_json cluster_json(const ClusterSpec& cluster) {
  nlohmann::ordered_json vertices = nlohmann::ordered_json::array();
  for (const Vertex& v : cluster.vertices()) {
    vertices.push_back({{"id", v.id},
                        {"role", v.role == VertexRole::kInternal ? "internal" : "boundary"},
                        {"layer", v.layer == Sublattice::kPrimal ? "primal" : "dual"}});
  }
  nlohmann::ordered_json slots = nlohmann::ordered_json::array();
  for (const Slot& s : cluster.slots()) {
    nlohmann::ordered_json dual = nullptr;
    if (s.dual_edge) {
      dual = nlohmann::ordered_json::array({(*s.dual_edge)[0], (*s.dual_edge)[1]});
    }
    slots.push_back({{"primal_edge", nlohmann::ordered_json::array({s.primal_edge[0], s.primal_edge[1]})},
                     {"dual_edge", dual}});
  }
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  out["name"] = cluster.name();
  out["layers"] = cluster.layers();
  out["vertices"] = std::move(vertices);
  out["slots"] = std::move(slots);
  return out;
}

}  // namespace

std::vector<ClusterSpec> parse_catalog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw InvalidCluster(std::string("catalog is not valid JSON: ") + e.what());
  }
  std::vector<ClusterSpec> out;
  if (doc.is_array()) {
    if (doc.empty()) {
      throw InvalidCluster("catalog array is empty");
    }
    for (const json& item : doc) {
      out.push_back(parse_cluster(item));
    }
  } else {
    out.push_back(parse_cluster(doc));
  }
  return out;
}

std::vector<ClusterSpec> load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidCluster("cannot open cluster file '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str());
}

std::string serialize_cluster(const ClusterSpec& cluster) { return cluster_json(cluster).dump(2); }

std::string_view to_string(CalibrationStatus status) {
  return status == CalibrationStatus::kVerified ? "verified" : "unverified";
}

}  // namespace dualthresh
