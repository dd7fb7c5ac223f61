#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/templates.hpp"

namespace posadisc {

using Json = nlohmann::json;

namespace detail {

inline void reject_unknown_fields(const Json& obj, std::initializer_list<const char*> allowed,
                                  const std::string& what) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    require(known, ErrorKind::Parse, what + ": unknown field '" + key + "'");
  }
}

inline long long as_integer(const Json& j, const std::string& what) {
  require(j.is_number_integer(), ErrorKind::Parse, what + " must be an integer");
  return j.get<long long>();
}

}  // namespace detail

/// Parses {"n": N, "edges": [[u, v, label], ...]}.
inline ColoredGraph graph_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::Parse, "graph: expected a JSON object");
  detail::reject_unknown_fields(j, {"n", "edges"}, "graph");
  require(j.contains("n"), ErrorKind::Parse, "graph: missing field 'n'");
  require(j.contains("edges"), ErrorKind::Parse, "graph: missing field 'edges'");
  const long long n = detail::as_integer(j["n"], "graph.n");
  require(n >= 0 && n <= 1 << 20, ErrorKind::Parse, "graph.n out of range");
  require(j["edges"].is_array(), ErrorKind::Parse, "graph.edges must be an array");

  GraphBuilder builder(static_cast<int>(n));
  for (const Json& e : j["edges"]) {
    require(e.is_array() && e.size() == 3, ErrorKind::Parse, "graph edge must be [u, v, label]");
    const long long u = detail::as_integer(e[0], "edge endpoint");
    const long long v = detail::as_integer(e[1], "edge endpoint");
    const long long label = detail::as_integer(e[2], "edge label");
    require(u >= 0 && u < n && v >= 0 && v < n, ErrorKind::OutOfRange,
            "edge endpoint out of range: [" + std::to_string(u) + "," + std::to_string(v) + "]");
    require(u != v, ErrorKind::InvalidArgument, "self-loop at vertex " + std::to_string(u));
    require(u < v, ErrorKind::Parse,
            "edge endpoints must satisfy u < v: [" + std::to_string(u) + "," + std::to_string(v) + "]");
    builder.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), sign_from_int(label));
  }
  return builder.build();
}

inline Json graph_to_json(const ColoredGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, value(e.label)});
  return Json{{"n", g.n()}, {"edges", std::move(edges)}};
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  require(out.good(), ErrorKind::Parse, "cannot write '" + path + "'");
  out << j.dump() << '\n';
}

inline ColoredGraph parse_graph(const std::string& text) {
  try {
    return graph_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::Parse, e.what());
  }
}

inline ColoredGraph load_graph(const std::string& path) { return graph_from_json(read_json_file(path)); }

inline void save_graph(const std::string& path, const ColoredGraph& g) {
  write_json_file(path, graph_to_json(g));
}

/// {"r": 3, "tiles": [[0,1,2,3], ...], "shared": 2}; "shared" is optional and
/// only read by the pipeline (number of leading tiles forming the shared part).
inline Tiling tiling_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::Parse, "tiling: expected a JSON object");
  detail::reject_unknown_fields(j, {"r", "tiles", "shared"}, "tiling");
  require(j.contains("r") && j.contains("tiles"), ErrorKind::Parse, "tiling: needs fields 'r' and 'tiles'");
  const long long r = detail::as_integer(j["r"], "tiling.r");
  require(r >= 1 && r <= 64, ErrorKind::Parse, "tiling.r out of range");
  require(j["tiles"].is_array(), ErrorKind::Parse, "tiling.tiles must be an array");
  Tiling t{static_cast<int>(r), {}};
  for (const Json& c : j["tiles"]) {
    require(c.is_array(), ErrorKind::Parse, "tile must be an array of vertex ids");
    std::vector<Vertex> vs;
    for (const Json& v : c) vs.push_back(static_cast<Vertex>(detail::as_integer(v, "tile vertex")));
    t.cycles.emplace_back(std::move(vs));
  }
  if (j.contains("shared")) detail::as_integer(j["shared"], "tiling.shared");
  return t;
}

inline Json tiling_to_json(const Tiling& t) {
  Json tiles = Json::array();
  for (const auto& c : t.cycles) tiles.push_back(c.vertices());
  return Json{{"r", t.r}, {"tiles", std::move(tiles)}};
}

}  // namespace posadisc
