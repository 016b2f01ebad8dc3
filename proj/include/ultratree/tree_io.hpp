#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ultratree/labeled_tree.hpp"

namespace ultratree {

// Interchange form:
//   {"vertices":[{"id":"r","label":"1"},...],
//    "edges":[["r","r/0"],...],
//    "frontier":["r/0^4"]}
inline nlohmann::ordered_json tree_to_json(const LabeledTree& t) {
  nlohmann::ordered_json out;
  out["vertices"] = nlohmann::ordered_json::array();
  for (int v = 0; v < static_cast<int>(t.size()); ++v) {
    nlohmann::ordered_json vert;
    vert["id"] = t.id(v).to_string();
    vert["label"] = format_rat(t.label(v));
    out["vertices"].push_back(std::move(vert));
  }
  out["edges"] = nlohmann::ordered_json::array();
  for (auto [u, v] : t.edge_list())
    out["edges"].push_back({t.id(u).to_string(), t.id(v).to_string()});
  out["frontier"] = nlohmann::ordered_json::array();
  for (int v = 0; v < static_cast<int>(t.size()); ++v)
    if (t.is_frontier(v)) out["frontier"].push_back(t.id(v).to_string());
  return out;
}

inline LabeledTree tree_from_json(const nlohmann::json& j) {
  try {
    std::map<VertexId, Rat> labels;
    for (const auto& vert : j.at("vertices")) {
      VertexId id = VertexId::parse(vert.at("id").get<std::string>());
      Rat value = parse_rat(vert.at("label").get<std::string>());
      if (!labels.emplace(id, value).second)
        fail(Errc::MalformedInput, "duplicate vertex '" + id.to_string() + "'");
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) fail(Errc::MalformedInput, "edge must be a pair");
      edges.emplace_back(VertexId::parse(e[0].get<std::string>()),
                         VertexId::parse(e[1].get<std::string>()));
    }
    std::vector<VertexId> frontier;
    if (j.contains("frontier"))
      for (const auto& f : j.at("frontier")) frontier.push_back(VertexId::parse(f.get<std::string>()));
    return build_tree(edges, labels, frontier);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedInput, e.what());
  } catch (const std::invalid_argument& e) {
    fail(Errc::MalformedInput, e.what());
  }
}

inline LabeledTree load_tree(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::MalformedInput, "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::MalformedInput, std::string("parse error in '") + path + "': " + e.what());
  }
  return tree_from_json(j);
}

// Graphviz view: vertex label under the id, frontier vertices dashed.
inline std::string to_dot(const LabeledTree& t, const std::string& name = "ultratree") {
  auto quote = [](const std::string& s) {  // ids never contain quotes or backslashes
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '\\';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream dot;
  dot << "graph " << name << " {\n  node [shape=circle];\n";
  for (int v = 0; v < static_cast<int>(t.size()); ++v) {
    dot << "  " << quote(t.id(v).to_string()) << " [label="
        << quote(t.id(v).to_string() + "\\n" + format_rat(t.label(v)));
    if (t.is_frontier(v)) dot << ", style=dashed";
    dot << "];\n";
  }
  for (auto [u, v] : t.edge_list())
    dot << "  " << quote(t.id(u).to_string()) << " -- " << quote(t.id(v).to_string()) << ";\n";
  dot << "}\n";
  return dot.str();
}

}  // namespace ultratree
