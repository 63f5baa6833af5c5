#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "minpath/decomp.hpp"
#include "minpath/exact.hpp"
#include "minpath/instance.hpp"
#include "minpath/io.hpp"
#include "minpath/lp.hpp"
#include "minpath/planar.hpp"
#include "minpath/round.hpp"
#include "minpath/separator.hpp"

namespace minpath {

// JSON has no infinity; unbounded values are written as null.
inline Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json to_json(const ColorSet& cs) { return Json(cs.ids()); }

inline Json to_json(const ValidationReport& r) {
  Json out = Json::array();
  for (const auto& v : r.violations) out.push_back({{"kind", v.kind}, {"id", v.id}, {"message", v.message}});
  return out;
}

inline Json paths_to_json(const std::vector<std::optional<std::vector<int>>>& paths) {
  Json out = Json::array();
  for (const auto& p : paths) out.push_back(p ? Json(*p) : Json("FORFEITED"));
  return out;
}

inline Json to_json(const Solution& s) {
  Json out;
  out["colors"] = to_json(s.colors);
  out["paths"] = paths_to_json(s.paths);
  out["objective"] = s.objective;
  out["lower_bound"] = s.lower_bound;
  out["ratio"] = s.ratio;
  out["repaired"] = s.repaired;
  out["base_colors"] = to_json(s.base_colors);
  out["pre_rounded"] = to_json(s.pre_rounded);
  out["cut"] = to_json(s.cut);
  out["forfeited_prize"] = s.forfeited_prize;
  out["lp_iterations"] = s.lp_iterations;
  out["lp_cuts"] = s.lp_cuts;
  return out;
}

inline Json to_json(const SeparatorResult& r) {
  Json out;
  out["colors"] = to_json(r.colors);
  out["weight"] = r.weight;
  out["witness_cycle"] = r.witness_cycle;
  out["inter_layer_arcs"] = r.inter_layer_arcs;
  return out;
}

inline Json cuts_to_json(const std::vector<Cut>& cuts) {
  Json out = Json::array();
  for (const auto& c : cuts) {
    out.push_back({{"pair", c.pair}, {"colors", to_json(c.colors)}, {"weight", c.weight}, {"iteration", c.iteration}});
  }
  return out;
}

inline Json to_json(const LpState& st) {
  Json out;
  out["objective"] = st.objective_value;
  out["x"] = st.x;
  out["y"] = st.y;
  out["iterations"] = st.iterations;
  out["num_cuts"] = st.constraints.size();
  return out;
}

inline Json to_json(const Decomposition& d, const ColorIntersectionGraph& g) {
  auto colors_of = [&](const std::vector<int>& nodes) {
    std::vector<Color> out;
    for (int v : nodes) out.push_back(g.colors[static_cast<std::size_t>(v)]);
    return out;
  };
  Json comps = Json::array();
  for (const auto& c : d.components) comps.push_back(colors_of(c));
  Json out;
  out["delta"] = d.delta;
  out["cut"] = colors_of(d.cut);
  out["components"] = std::move(comps);
  out["fallback_components"] = d.fallback_components;
  return out;
}

inline Json to_json(const ExactResult& r) {
  Json out;
  out["value"] = r.value;
  out["witness"] = to_json(r.witness);
  out["paths"] = paths_to_json(r.paths);
  return out;
}

inline Json to_json(const DualColoredGraph& d) {
  Json out;
  out["num_colors"] = d.num_colors;
  Json verts = Json::array();
  for (const auto& cs : d.vertex_colors) verts.push_back(to_json(cs));
  out["vertex_colors"] = std::move(verts);
  Json edges = Json::array();
  for (int i = 0; i < d.num_edges(); ++i) {
    const auto& e = d.edges[static_cast<std::size_t>(i)];
    edges.push_back({{"primal", d.primal_of(i)}, {"x", e.x}, {"y", e.y}, {"colors", to_json(e.colors)}, {"crossing", e.crossing}});
  }
  out["edges"] = std::move(edges);
  return out;
}

}  // namespace minpath
