#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "posadisc/cycle_power.hpp"
#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"

namespace posadisc {

/// Cycle lengths allowed in templates and tilings: [r+1, 10r^2].
inline void require_cycle_length(const Cycle& c, int r) {
  const auto m = static_cast<long long>(c.length());
  const long long hi = 10LL * r * r;
  require(m >= r + 1 && m <= hi, ErrorKind::InvalidArgument,
          "cycle length " + std::to_string(m) + " outside [" + std::to_string(r + 1) + ", " +
              std::to_string(hi) + "]");
}

/// Multiset of short cycles; repeated cycles are stored once with a count.
struct Template {
  int r = 0;
  std::vector<std::pair<Cycle, int>> entries;

  Template& add(const Cycle& c, int copies = 1) {
    require(copies >= 1, ErrorKind::InvalidArgument, "template multiplicity must be positive");
    entries.emplace_back(c, copies);
    return *this;
  }

  /// Number of cycles counted with multiplicity.
  int cycle_count() const {
    int s = 0;
    for (const auto& [_, k] : entries) s += k;
    return s;
  }

  std::map<Vertex, int> occurrences() const {
    std::map<Vertex, int> cnt;
    for (const auto& [c, k] : entries)
      for (Vertex v : c) cnt[v] += k;
    return cnt;
  }

  std::vector<Vertex> support() const {
    std::vector<Vertex> out;
    for (const auto& [v, _] : occurrences()) out.push_back(v);
    return out;
  }
};

struct TemplateLimits {
  /// Limits used when a template is compared against another one: |F| <= 10r and k <= 10r.
  bool bound_support_and_k = true;
};

/// Returns the common occurrence count k of every support vertex.
inline int validate_template(const Template& t, TemplateLimits limits = {}) {
  require(t.r >= 1, ErrorKind::InvalidArgument, "template power order must be at least 1");
  require(!t.entries.empty(), ErrorKind::InvalidArgument, "template has no cycles");
  for (const auto& [c, _] : t.entries) {
    require_cycle_length(c, t.r);
    power_multiplicities(c, t.r);
  }
  const auto cnt = t.occurrences();
  const int k = cnt.begin()->second;
  for (const auto& [v, c] : cnt) {
    require(c == k, ErrorKind::InvalidArgument,
            "unequal occurrence counts: vertex " + std::to_string(cnt.begin()->first) + " appears " +
                std::to_string(k) + " times, vertex " + std::to_string(v) + " appears " +
                std::to_string(c) + " times");
  }
  if (limits.bound_support_and_k) {
    require(static_cast<long long>(cnt.size()) <= 10LL * t.r, ErrorKind::InvalidArgument,
            "template support exceeds 10r vertices");
    require(k <= 10 * t.r, ErrorKind::InvalidArgument, "template occurrence count exceeds 10r");
  }
  return k;
}

inline long long template_discrepancy(const ColoredGraph& g, const Template& t) {
  long long s = 0;
  for (const auto& [c, k] : t.entries) s += static_cast<long long>(k) * power_discrepancy(g, c, t.r);
  return s;
}

/// Vertex-disjoint simple cycles covering every vertex of the host exactly once.
struct Tiling {
  int r = 0;
  std::vector<Cycle> cycles;

  Template as_template() const {
    Template t{r, {}};
    for (const auto& c : cycles) t.add(c);
    return t;
  }
};

/// Throws on overlap, uncovered vertices, bad lengths or non-contained powers.
inline bool validate_tiling(const ColoredGraph& g, const Tiling& t) {
  require(t.r >= 1, ErrorKind::InvalidArgument, "tiling power order must be at least 1");
  std::vector<int> seen(static_cast<std::size_t>(g.n()), 0);
  for (const auto& c : t.cycles) {
    require_cycle_length(c, t.r);
    for (Vertex v : c) {
      g.check_vertex(v);
      require(seen[static_cast<std::size_t>(v)] == 0, ErrorKind::InvalidArgument,
              "tiling covers vertex " + std::to_string(v) + " more than once");
      seen[static_cast<std::size_t>(v)] = 1;
    }
  }
  for (Vertex v = 0; v < g.n(); ++v)
    require(seen[static_cast<std::size_t>(v)] == 1, ErrorKind::InvalidArgument,
            "tiling leaves vertex " + std::to_string(v) + " uncovered");
  for (const auto& c : t.cycles)
    require(is_power_subgraph(g, c, t.r), ErrorKind::Containment, "tile power is not contained in the graph");
  return true;
}

inline long long tiling_discrepancy(const ColoredGraph& g, const Tiling& t) {
  validate_tiling(g, t);
  long long s = 0;
  for (const auto& c : t.cycles) s += power_discrepancy(g, c, t.r);
  return s;
}

}  // namespace posadisc
