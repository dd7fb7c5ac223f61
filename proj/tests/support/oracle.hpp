#pragma once

// Brute-force reference computations for tests. Nothing here calls the
// library's power, tiling or search code; only graph storage is shared.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "posadisc/graph.hpp"

namespace oracle {

using posadisc::ColoredGraph;
using posadisc::Vertex;

// Multiplicity via position pairs: positions p < q at forward distance
// d = q - p contribute [d <= r] + [m - d <= r].
inline std::map<std::pair<Vertex, Vertex>, int> power_mul(const std::vector<Vertex>& seq, int r) {
  std::map<std::pair<Vertex, Vertex>, int> mul;
  const int m = static_cast<int>(seq.size());
  for (int p = 0; p < m; ++p)
    for (int q = p + 1; q < m; ++q) {
      const int k = (q - p <= r) + (m - (q - p) <= r);
      if (k == 0) continue;
      Vertex a = seq[p], b = seq[q];
      if (a > b) std::swap(a, b);
      mul[{a, b}] += k;
    }
  return mul;
}

// nullopt when some pair of the power is not an edge (or is a loop)
inline std::optional<long long> power_value(const ColoredGraph& g, const std::vector<Vertex>& seq, int r) {
  long long s = 0;
  for (const auto& [e, k] : power_mul(seq, r)) {
    if (e.first == e.second) return std::nullopt;
    auto l = g.label(e.first, e.second);
    if (!l) return std::nullopt;
    s += k * static_cast<long long>(*l == posadisc::Sign::Plus ? 1 : -1);
  }
  return s;
}

// Every Hamilton ordering starting at vertex 0 (both directions, no symmetry
// breaking); calls visit(ordering, value) for contained powers.
inline void each_power(const ColoredGraph& g, int r,
                       const std::function<void(const std::vector<Vertex>&, long long)>& visit) {
  std::vector<Vertex> ord(static_cast<std::size_t>(g.n()));
  std::iota(ord.begin(), ord.end(), 0);
  do {
    if (auto v = power_value(g, ord, r)) visit(ord, *v);
  } while (std::next_permutation(ord.begin() + 1, ord.end()));
}

// max |f| over contained powers, or nullopt when there are none
inline std::optional<long long> max_abs_power(const ColoredGraph& g, int r) {
  std::optional<long long> best;
  each_power(g, r, [&](const std::vector<Vertex>&, long long v) {
    const long long a = v < 0 ? -v : v;
    if (!best || a > *best) best = a;
  });
  return best;
}

inline bool is_clique(const ColoredGraph& g, const std::vector<Vertex>& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (!g.has_edge(s[i], s[j])) return false;
  return true;
}

// Perfect partitions of V(g) into (r+1)-cliques; the lowest uncovered vertex
// always opens the next part, so each partition is produced once.
inline void each_clique_partition(const ColoredGraph& g, int r,
                                  const std::function<void(const std::vector<std::vector<Vertex>>&)>& visit) {
  const int n = g.n();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<Vertex>> parts;
  std::function<void()> rec = [&] {
    int first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      visit(parts);
      return;
    }
    std::vector<Vertex> part{first};
    used[first] = 1;
    std::function<void(int)> pick = [&](int from) {
      if (static_cast<int>(part.size()) == r + 1) {
        parts.push_back(part);
        rec();
        parts.pop_back();
        return;
      }
      for (int v = from; v < n; ++v) {
        if (used[v]) continue;
        bool ok = true;
        for (Vertex u : part) ok = ok && g.has_edge(u, v);
        if (!ok) continue;
        used[v] = 1;
        part.push_back(v);
        pick(v + 1);
        part.pop_back();
        used[v] = 0;
      }
    };
    pick(first + 1);
    used[first] = 0;
  };
  if (n % (r + 1) == 0) rec();
}

inline ColoredGraph random_graph(int n, double p_edge, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p_edge), plus(0.5);
  posadisc::GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (edge(rng)) b.add_edge(u, v, plus(rng) ? posadisc::Sign::Plus : posadisc::Sign::Minus);
  return b.build();
}

inline int sign_of(const ColoredGraph& g, Vertex a, Vertex b) {
  return *g.label(a, b) == posadisc::Sign::Plus ? 1 : -1;
}

}  // namespace oracle
