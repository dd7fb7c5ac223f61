#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"

namespace posadisc {

/// Cyclic vertex sequence; repeats are allowed. Closure v_{m+1} = v_1 is implied.
class Cycle {
 public:
  Cycle() = default;
  Cycle(std::initializer_list<Vertex> seq) : seq_(seq) {}
  explicit Cycle(std::vector<Vertex> seq) : seq_(std::move(seq)) {}

  std::size_t length() const noexcept { return seq_.size(); }
  Vertex operator[](std::size_t i) const { return seq_[i % seq_.size()]; }
  const std::vector<Vertex>& vertices() const noexcept { return seq_; }
  auto begin() const noexcept { return seq_.begin(); }
  auto end() const noexcept { return seq_.end(); }

  /// Number of occurrences of v when read as a closed walk.
  int count(Vertex v) const { return static_cast<int>(std::count(seq_.begin(), seq_.end(), v)); }

  bool is_simple() const {
    std::vector<Vertex> s = seq_;
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
  }

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle&, const Cycle&) = default;

 private:
  std::vector<Vertex> seq_;
};

using VertexPair = std::pair<Vertex, Vertex>;

inline VertexPair make_pair_key(Vertex a, Vertex b) { return a < b ? VertexPair{a, b} : VertexPair{b, a}; }

/// Edge multiplicities of the r-th power of a cycle.
struct PowerMultigraph {
  int r = 0;
  std::map<VertexPair, int> mul;

  int multiplicity(Vertex a, Vertex b) const {
    auto it = mul.find(make_pair_key(a, b));
    return it == mul.end() ? 0 : it->second;
  }

  long long total() const {
    long long s = 0;
    for (const auto& [_, k] : mul) s += k;
    return s;
  }

  /// Sum of multiplicities of pairs containing v.
  long long weighted_degree(Vertex v) const {
    long long s = 0;
    for (const auto& [p, k] : mul)
      if (p.first == v || p.second == v) s += k;
    return s;
  }

  /// Number of distinct partners of v.
  int distinct_degree(Vertex v) const {
    int s = 0;
    for (const auto& [p, _] : mul)
      if (p.first == v || p.second == v) ++s;
    return s;
  }
};

/// mul(xy) = |{(i, j) : i in [m], j in [r], {v_i, v_{i+j}} = {x, y}}| with cyclic indices.
/// A slot whose two ends coincide is rejected: such a power has a loop and is
/// never a subgraph of a simple graph.
inline PowerMultigraph power_multiplicities(const Cycle& c, int r) {
  require(r >= 1, ErrorKind::InvalidArgument, "power order r must be at least 1");
  const std::size_t m = c.length();
  require(m >= 3, ErrorKind::InvalidArgument, "cycle must have at least 3 vertices");
  require(m >= static_cast<std::size_t>(r) + 1, ErrorKind::InvalidArgument,
          "cycle of length " + std::to_string(m) + " is too short for power " + std::to_string(r));
  PowerMultigraph p;
  p.r = r;
  for (std::size_t i = 0; i < m; ++i) {
    for (int j = 1; j <= r; ++j) {
      const Vertex a = c[i];
      const Vertex b = c[i + static_cast<std::size_t>(j)];
      require(a != b, ErrorKind::InvalidArgument, [&] {
        return "degenerate slot: vertex " + std::to_string(a) + " repeats within distance " +
               std::to_string(j) + " at position " + std::to_string(i);
      });
      ++p.mul[make_pair_key(a, b)];
    }
  }
  return p;
}

/// Containment ignores multiplicity: each positive pair must be an edge.
inline bool is_power_subgraph(const ColoredGraph& g, const PowerMultigraph& p) {
  for (const auto& [pair, _] : p.mul)
    if (!g.has_edge(pair.first, pair.second)) return false;
  return true;
}

inline bool is_power_subgraph(const ColoredGraph& g, const Cycle& c, int r) {
  for (Vertex v : c) g.check_vertex(v);
  return is_power_subgraph(g, power_multiplicities(c, r));
}

/// Sum of mul(e) * f(e) over the multigraph; every pair must be an edge of g.
inline long long discrepancy(const ColoredGraph& g, const PowerMultigraph& p) {
  long long s = 0;
  for (const auto& [pair, k] : p.mul) {
    auto l = g.label(pair.first, pair.second);
    require(l.has_value(), ErrorKind::Containment, [&] {
      return "power is not contained: {" + std::to_string(pair.first) + "," + std::to_string(pair.second) +
             "} is not an edge";
    });
    s += static_cast<long long>(k) * value(*l);
  }
  return s;
}

inline long long power_discrepancy(const ColoredGraph& g, const Cycle& c, int r) {
  for (Vertex v : c) g.check_vertex(v);
  return discrepancy(g, power_multiplicities(c, r));
}

struct HamiltonPower {
  PowerMultigraph power;
  long long discrepancy = 0;
};

inline void require_permutation(std::span<const Vertex> ordering, int n) {
  require(static_cast<int>(ordering.size()) == n, ErrorKind::InvalidArgument,
          "ordering has " + std::to_string(ordering.size()) + " entries, expected " + std::to_string(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex v : ordering) {
    require(v >= 0 && v < n, ErrorKind::OutOfRange, [&] { return "ordering entry " + std::to_string(v) + " out of range"; });
    require(!seen[static_cast<std::size_t>(v)], ErrorKind::InvalidArgument,
            [&] { return "ordering repeats vertex " + std::to_string(v); });
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

/// r-th power of the Hamilton cycle given by `ordering`, with its discrepancy.
/// Needs n >= 2r+1 so that the power is a simple 2r-regular graph.
inline HamiltonPower hamilton_power(const ColoredGraph& g, std::span<const Vertex> ordering, int r) {
  require(r >= 1, ErrorKind::InvalidArgument, "power order r must be at least 1");
  require_permutation(ordering, g.n());
  require(g.n() >= 2 * r + 1, ErrorKind::InvalidArgument,
          "Hamilton power needs n >= 2r+1 (n=" + std::to_string(g.n()) + ", r=" + std::to_string(r) + ")");
  HamiltonPower h;
  h.power = power_multiplicities(Cycle(std::vector<Vertex>(ordering.begin(), ordering.end())), r);
  h.discrepancy = discrepancy(g, h.power);
  return h;
}

}  // namespace posadisc
