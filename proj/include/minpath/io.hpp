#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "minpath/error.hpp"
#include "minpath/instance.hpp"

namespace minpath {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void field_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::parse_error, "field '" + field + "': " + what);
}

inline const Json& require(const Json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object()) field_error(ctx, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(ctx.empty() ? key : ctx + "." + key, "missing");
  return *it;
}

inline int as_int(const Json& j, const std::string& ctx) {
  if (!j.is_number_integer()) field_error(ctx, "expected an integer");
  return j.get<int>();
}

inline double as_number(const Json& j, const std::string& ctx) {
  if (!j.is_number()) field_error(ctx, "expected a number");
  return j.get<double>();
}

}  // namespace detail

/// Reads the canonical instance format. Structural problems (bad color ids,
/// broken rotation, ...) are left to validate(); only malformed documents and
/// self-loops are rejected here.
inline Instance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  using detail::as_int;
  using detail::field_error;
  using detail::require;

  Instance in;
  auto& g = in.graph;
  g.num_colors = as_int(require(doc, "num_colors", ""), "num_colors");

  const Json& vertices = require(doc, "vertices", "");
  if (!vertices.is_array()) field_error("vertices", "expected an array");
  g.colors.resize(vertices.size());
  std::vector<char> seen(vertices.size(), 0);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const std::string ctx = "vertices[" + std::to_string(i) + "]";
    const int id = as_int(require(vertices[i], "id", ctx), ctx + ".id");
    if (id < 0 || static_cast<std::size_t>(id) >= vertices.size() || seen[static_cast<std::size_t>(id)]) {
      field_error(ctx + ".id", "ids must be a permutation of 0..n-1");
    }
    seen[static_cast<std::size_t>(id)] = 1;
    const Json& cs = require(vertices[i], "colors", ctx);
    if (!cs.is_array()) field_error(ctx + ".colors", "expected an array");
    std::vector<Color> ids;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      ids.push_back(as_int(cs[k], ctx + ".colors[" + std::to_string(k) + "]"));
    }
    g.colors[static_cast<std::size_t>(id)] = ColorSet(std::move(ids));
  }

  const Json& edges = require(doc, "edges", "");
  if (!edges.is_array()) field_error("edges", "expected an array");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string ctx = "edges[" + std::to_string(e) + "]";
    if (!edges[e].is_array() || edges[e].size() != 2) field_error(ctx, "expected [u, v]");
    const int u = as_int(edges[e][0], ctx + "[0]");
    const int v = as_int(edges[e][1], ctx + "[1]");
    if (u == v) field_error(ctx, "self-loop");
    g.edges.emplace_back(u, v);
  }

  if (auto it = doc.find("rotation"); it != doc.end()) {
    if (!it->is_object()) field_error("rotation", "expected an object keyed by vertex id");
    g.rotation.assign(g.colors.size(), {});
    for (const auto& [key, list] : it->items()) {
      const std::string ctx = "rotation." + key;
      int v = -1;
      try {
        std::size_t used = 0;
        v = std::stoi(key, &used);
        if (used != key.size()) v = -1;
      } catch (const std::exception&) {
        v = -1;
      }
      if (v < 0 || static_cast<std::size_t>(v) >= g.rotation.size()) field_error(ctx, "unknown vertex");
      if (!list.is_array()) field_error(ctx, "expected an array of edge ids");
      for (std::size_t k = 0; k < list.size(); ++k) {
        g.rotation[static_cast<std::size_t>(v)].push_back(
            as_int(list[k], ctx + "[" + std::to_string(k) + "]"));
      }
    }
  } else {
    g.embedded = false;
  }

  if (auto it = doc.find("color_weights"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) field_error("color_weights", "expected an array");
    for (std::size_t c = 0; c < it->size(); ++c) {
      g.color_weights.push_back(detail::as_number((*it)[c], "color_weights[" + std::to_string(c) + "]"));
    }
  }

  const Json& terms = require(doc, "terminals", "");
  if (!terms.is_array()) field_error("terminals", "expected an array");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string ctx = "terminals[" + std::to_string(k) + "]";
    TerminalPair p;
    p.s = as_int(require(terms[k], "s", ctx), ctx + ".s");
    p.t = as_int(require(terms[k], "t", ctx), ctx + ".t");
    if (auto it = terms[k].find("prize"); it != terms[k].end() && !it->is_null()) {
      p.prize = detail::as_number(*it, ctx + ".prize");
    }
    in.terminals.push_back(p);
  }
  return in;
}

inline Json instance_to_json(const Instance& in) {
  const auto& g = in.graph;
  Json doc;
  doc["num_colors"] = g.num_colors;
  Json vertices = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    vertices.push_back({{"id", v}, {"colors", g.colors[static_cast<std::size_t>(v)].ids()}});
  }
  doc["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  if (g.embedded) {
    Json rot = Json::object();
    for (std::size_t v = 0; v < g.rotation.size(); ++v) rot[std::to_string(v)] = g.rotation[v];
    doc["rotation"] = std::move(rot);
  }
  if (!g.color_weights.empty()) doc["color_weights"] = g.color_weights;
  Json terms = Json::array();
  for (const auto& p : in.terminals) {
    Json jp;
    jp["s"] = p.s;
    jp["t"] = p.t;
    jp["prize"] = (p.prize == kInfinity) ? Json(nullptr) : Json(p.prize);
    terms.push_back(std::move(jp));
  }
  doc["terminals"] = std::move(terms);
  return doc;
}

inline std::string serialize_instance(const Instance& in) {
  return instance_to_json(in).dump(1) + "\n";
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

/// Per-color weights: either a bare JSON array or {"weights": [...]}.
inline std::vector<double> parse_weights(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  const Json* arr = &doc;
  if (doc.is_object()) arr = &detail::require(doc, "weights", "");
  if (!arr->is_array()) detail::field_error("weights", "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    out.push_back(detail::as_number((*arr)[i], "weights[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace minpath
