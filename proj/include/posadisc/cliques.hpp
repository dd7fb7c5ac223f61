#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/templates.hpp"

namespace posadisc {

enum class CliqueKind { PlusClique, MinusClique, PlusStar, MinusStar };

inline std::string to_string(CliqueKind k) {
  switch (k) {
    case CliqueKind::PlusClique: return "plus-clique";
    case CliqueKind::MinusClique: return "minus-clique";
    case CliqueKind::PlusStar: return "plus-star";
    case CliqueKind::MinusStar: return "minus-star";
  }
  return "unknown";
}

/// One of the four structured colourings of a clique. Stars carry their head.
struct CliqueType {
  CliqueKind kind = CliqueKind::PlusClique;
  std::optional<Vertex> head;

  static CliqueType plus_clique() { return {CliqueKind::PlusClique, std::nullopt}; }
  static CliqueType minus_clique() { return {CliqueKind::MinusClique, std::nullopt}; }
  static CliqueType plus_star(Vertex h) { return {CliqueKind::PlusStar, h}; }
  static CliqueType minus_star(Vertex h) { return {CliqueKind::MinusStar, h}; }

  bool is_star() const noexcept { return kind == CliqueKind::PlusStar || kind == CliqueKind::MinusStar; }

  /// Label this type prescribes for the pair {a, b}.
  Sign expected_label(Vertex a, Vertex b) const {
    switch (kind) {
      case CliqueKind::PlusClique: return Sign::Plus;
      case CliqueKind::MinusClique: return Sign::Minus;
      case CliqueKind::PlusStar: return (a == *head || b == *head) ? Sign::Plus : Sign::Minus;
      case CliqueKind::MinusStar: return (a == *head || b == *head) ? Sign::Minus : Sign::Plus;
    }
    return Sign::Plus;
  }

  std::string describe() const {
    return head ? to_string(kind) + " head " + std::to_string(*head) : to_string(kind);
  }

  friend bool operator==(const CliqueType&, const CliqueType&) = default;
};

inline bool is_clique(const ColoredGraph& g, const VertexSet& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.has_edge(s[i], s[j])) return false;
  return true;
}

inline void require_clique(const ColoredGraph& g, const VertexSet& s) {
  for (Vertex v : s) g.check_vertex(v);
  require(is_clique(g, s), ErrorKind::InvalidArgument, "vertex set does not induce a clique");
}

/// f(a,b) + f(c,d) = f(a,c) + f(b,d) for every ordered choice of distinct a, b, c, d;
/// equivalently, on every 4-subset the three pair-partitions have equal sums.
inline bool square_equation_holds(const ColoredGraph& g, const VertexSet& s) {
  require(s.size() >= 4, ErrorKind::InvalidArgument, "square equation needs at least 4 vertices");
  require_clique(g, s);
  const std::size_t k = s.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      for (std::size_t c = b + 1; c < k; ++c)
        for (std::size_t d = c + 1; d < k; ++d) {
          const int ab_cd = g.sign(s[a], s[b]) + g.sign(s[c], s[d]);
          const int ac_bd = g.sign(s[a], s[c]) + g.sign(s[b], s[d]);
          const int ad_bc = g.sign(s[a], s[d]) + g.sign(s[b], s[c]);
          if (ab_cd != ac_bd || ac_bd != ad_bc) return false;
        }
  return true;
}

/// Matches the four patterns directly in O(k^2). Uniform colourings take
/// precedence over stars, so the four outcomes are disjoint for every k >= 3.
inline std::optional<CliqueType> classify_clique(const ColoredGraph& g, const VertexSet& s) {
  require(s.size() >= 3, ErrorKind::InvalidArgument, "classification needs at least 3 vertices");
  require_clique(g, s);
  const std::size_t k = s.size();
  std::vector<int> plus_degree(k, 0);
  std::size_t plus_edges = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (g.sign(s[i], s[j]) > 0) {
        ++plus_degree[i];
        ++plus_degree[j];
        ++plus_edges;
      }
  const std::size_t all = k * (k - 1) / 2;
  if (plus_edges == all) return CliqueType::plus_clique();
  if (plus_edges == 0) return CliqueType::minus_clique();
  const int spoke = static_cast<int>(k - 1);
  if (plus_edges == k - 1) {
    for (std::size_t i = 0; i < k; ++i)
      if (plus_degree[i] == spoke) return CliqueType::plus_star(s[i]);
  }
  if (all - plus_edges == k - 1) {
    for (std::size_t i = 0; i < k; ++i)
      if (plus_degree[i] == 0) return CliqueType::minus_star(s[i]);
  }
  return std::nullopt;
}

/// Tile counts by type: |A| plus-cliques, |B| minus-cliques, |C| plus-stars, |D| minus-stars.
struct TypeCensus {
  std::size_t plus_cliques = 0;
  std::size_t minus_cliques = 0;
  std::size_t plus_stars = 0;
  std::size_t minus_stars = 0;
  std::vector<std::optional<CliqueType>> tile_types;
  std::vector<std::size_t> unclassified;

  std::size_t classified() const noexcept { return plus_cliques + minus_cliques + plus_stars + minus_stars; }
  bool complete() const noexcept { return unclassified.empty(); }

  /// Throws when some tile matches none of the four types.
  void require_complete() const {
    if (complete()) return;
    std::string list;
    for (std::size_t i : unclassified) list += (list.empty() ? "" : ",") + std::to_string(i);
    fail(ErrorKind::NotFound, "tiles not classifiable: " + list);
  }
};

inline TypeCensus census_tiling(const ColoredGraph& g, const Tiling& t) {
  TypeCensus census;
  for (std::size_t i = 0; i < t.cycles.size(); ++i) {
    const Cycle& c = t.cycles[i];
    require(static_cast<int>(c.length()) == t.r + 1, ErrorKind::InvalidArgument,
            "census needs every tile to be an (r+1)-clique; tile " + std::to_string(i) + " has length " +
                std::to_string(c.length()));
    auto type = classify_clique(g, VertexSet(c.vertices()));
    census.tile_types.push_back(type);
    if (!type) {
      census.unclassified.push_back(i);
      continue;
    }
    switch (type->kind) {
      case CliqueKind::PlusClique: ++census.plus_cliques; break;
      case CliqueKind::MinusClique: ++census.minus_cliques; break;
      case CliqueKind::PlusStar: ++census.plus_stars; break;
      case CliqueKind::MinusStar: ++census.minus_stars; break;
    }
  }
  return census;
}

}  // namespace posadisc
