#pragma once

#include "epd/bounded_dtw.hpp"
#include "epd/claims.hpp"
#include "epd/classify.hpp"
#include "epd/clusters.hpp"
#include "epd/core.hpp"
#include "epd/digraph.hpp"
#include "epd/dtd.hpp"
#include "epd/ep_engine.hpp"
#include "epd/flow.hpp"
#include "epd/generators.hpp"
#include "epd/json_io.hpp"
#include "epd/linkage.hpp"
#include "epd/minors.hpp"
#include "epd/model.hpp"
#include "epd/oracle.hpp"

namespace epd {

inline json to_json(const Linkage& l) {
  json j;
  j["pairs"] = json::array();
  for (auto [u, v] : l.pairs) j["pairs"].push_back({u, v});
  j["paths"] = l.paths;
  return j;
}

inline json to_json(const BoundAccount& b) {
  json j;
  j["formula"] = b.formula;
  j["parameters"] = json::object();
  for (const auto& [k, v] : b.parameters) j["parameters"][k] = v;
  j["value"] = b.value;
  return j;
}

inline json to_json(const PackOrHit& r) {
  json j;
  j["arm"] = r.packing() ? "packing" : "hitting";
  if (r.packing()) {
    j["models"] = json::array();
    for (const auto& m : r.models) j["models"].push_back(to_json(m));
  } else {
    j["hitting_set"] = vertex_list_json(r.hitting_set);
    j["certificate"] = r.certificate;
    j["bound"] = to_json(r.bound);
  }
  j["verified"] = r.verified;
  j["notes"] = r.notes;
  return j;
}

inline json to_json(const GridLabeling& l) {
  json j;
  j["cycles"] = l.cycles;
  j["paths"] = l.paths;
  if (!l.columns.empty()) j["columns"] = l.columns;
  return j;
}

inline json to_json(const Attachment& a) {
  json j;
  j["graph"] = to_json(a.graph);
  j["grid"] = to_json(a.grid);
  j["copies"] = json::array();
  for (const auto& m : a.copies) {
    json c = json::object();
    for (auto [v, x] : m) c[std::to_string(v)] = x;
    j["copies"].push_back(c);
  }
  auto edges = [](const std::vector<Edge>& es) {
    json out = json::array();
    for (auto [u, v] : es) out.push_back({u, v});
    return out;
  };
  j["deleted"] = edges(a.deleted);
  j["added"] = edges(a.added);
  return j;
}

}  // namespace epd
