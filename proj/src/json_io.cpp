#include "augmatch/json_io.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace augmatch {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument("json: " + what);
}

Json vertex_to_json(const Vertex& v) {
  Json jv;
  jv["id"] = v.id;
  jv["x"] = rat_to_string(v.pos.x);
  jv["y"] = rat_to_string(v.pos.y);
  if (v.color)
    jv["color"] = *v.color == Color::Cross ? "cross" : "circle";
  else
    jv["color"] = nullptr;
  return jv;
}

Vertex vertex_from_json(const Json& jv) {
  Vertex v;
  v.id = jv.at("id").get<int>();
  v.pos.x = rat_from_string(jv.at("x").get<std::string>());
  v.pos.y = rat_from_string(jv.at("y").get<std::string>());
  const Json& c = jv.at("color");
  if (c.is_null()) {
    v.color = std::nullopt;
  } else {
    std::string s = c.get<std::string>();
    if (s == "cross")
      v.color = Color::Cross;
    else if (s == "circle")
      v.color = Color::Circle;
    else
      bad("unknown color '" + s + "'");
  }
  return v;
}

std::vector<std::pair<int, int>> edges_from_json(const Json& je) {
  std::vector<std::pair<int, int>> out;
  if (!je.is_array()) bad("edges must be an array");
  out.reserve(je.size());
  for (const Json& e : je) {
    if (!e.is_array() || e.size() != 2) bad("edge must be a two-element array");
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

Json edges_to_json(const std::vector<std::pair<int, int>>& edges) {
  Json je = Json::array();
  for (const auto& [a, b] : edges) je.push_back(Json::array({a, b}));
  return je;
}

}  // namespace

std::string instance_to_json(const MatchingInstance& inst) {
  Json j;
  j["mode"] = inst.mode == Mode::Colored ? "colored" : "uncolored";
  Json vs = Json::array();
  for (const Vertex& v : inst.vertices) vs.push_back(vertex_to_json(v));
  j["vertices"] = std::move(vs);
  j["edges"] = edges_to_json(inst.mandatory_edges);
  return j.dump(2) + "\n";
}

MatchingInstance instance_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("parse failure: ") + e.what());
  }
  try {
    MatchingInstance inst;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "colored")
      inst.mode = Mode::Colored;
    else if (mode == "uncolored")
      inst.mode = Mode::Uncolored;
    else
      bad("unknown mode '" + mode + "'");
    for (const Json& jv : j.at("vertices")) inst.vertices.push_back(vertex_from_json(jv));
    inst.mandatory_edges = edges_from_json(j.at("edges"));
    return inst;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("bad instance document: ") + e.what());
  }
}

std::string augmentation_to_json(const Augmentation& aug) {
  Json j;
  j["added_edges"] = edges_to_json(aug.added_edges);
  return j.dump(2) + "\n";
}

Augmentation augmentation_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("parse failure: ") + e.what());
  }
  try {
    Augmentation aug;
    aug.added_edges = edges_from_json(j.at("added_edges"));
    return aug;
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("bad augmentation document: ") + e.what());
  }
}

}  // namespace augmatch
