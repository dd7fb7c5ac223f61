#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/pipeline/params.hpp"

namespace posadisc {

/// Minimum-cost perfect assignment of rows to columns of a square matrix
/// (Hungarian method with potentials, O(n^3)). Returns the column of each row.
inline std::vector<int> solve_assignment(const std::vector<std::vector<long long>>& cost) {
  const int n = static_cast<int>(cost.size());
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(static_cast<std::size_t>(n) + 1, 0), v(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> match(static_cast<std::size_t>(n) + 1, 0), way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<long long> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<char> done(static_cast<std::size_t>(n) + 1, 0);
    do {
      done[static_cast<std::size_t>(j0)] = 1;
      const int i0 = match[static_cast<std::size_t>(j0)];
      long long delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (done[static_cast<std::size_t>(j)]) continue;
        const long long cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                              u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (done[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) row_to_col[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = j - 1;
  return row_to_col;
}

struct FillStats {
  std::uint64_t iterations = 0;
  int initial_conflicts = 0;
};

/// Places every vertex of `pools` (keyed by cluster) on the slots of `route`
/// so that left ++ fill ++ right is the r-th power of a path in g.
///
/// Greedy first: each slot takes the pool vertex adjacent to most of the last r
/// placed vertices, preferring vertices with few remaining neighbours. Remaining
/// conflicts are repaired by min-conflicts swaps inside one cluster's slots.
inline std::vector<Vertex> fill_route(const ColoredGraph& g, const std::vector<Vertex>& left,
                                      const std::vector<int>& route, std::map<int, std::vector<Vertex>> pools,
                                      const std::vector<Vertex>& right, int r, std::mt19937_64& rng,
                                      std::uint64_t budget, FillStats* stats = nullptr) {
  std::map<int, std::size_t> need;
  for (int c : route) ++need[c];
  for (const auto& [c, k] : need)
    require(pools[c].size() == k, ErrorKind::Stage,
            "fill: cluster " + std::to_string(c) + " has " + std::to_string(pools[c].size()) + " free vertices for " +
                std::to_string(k) + " slots");

  std::map<Vertex, int> local_id;
  std::vector<Vertex> members(left.begin(), left.end());
  members.insert(members.end(), right.begin(), right.end());
  for (const auto& [c, pool] : pools) members.insert(members.end(), pool.begin(), pool.end());
  for (Vertex v : members) local_id.emplace(v, static_cast<int>(local_id.size()));
  const std::size_t nl = local_id.size();
  std::vector<char> am(nl * nl, 0);
  for (const auto& [x, i] : local_id)
    for (const auto& [y, j] : local_id) am[static_cast<std::size_t>(i) * nl + static_cast<std::size_t>(j)] = x != y && g.has_edge(x, y);

  const int lo = static_cast<int>(left.size());
  const int len = lo + static_cast<int>(route.size()) + static_cast<int>(right.size());
  std::vector<Vertex> a(static_cast<std::size_t>(len), -1);
  std::copy(left.begin(), left.end(), a.begin());
  std::copy(right.begin(), right.end(), a.begin() + lo + static_cast<std::ptrdiff_t>(route.size()));
  for (auto& x : a)
    if (x >= 0) x = local_id.at(x);
  for (auto& [c, pool] : pools)
    for (auto& x : pool) x = local_id.at(x);
  auto adj = [&](int x, int y) { return am[static_cast<std::size_t>(x) * nl + static_cast<std::size_t>(y)] != 0; };
  auto is_fill = [&](int p) { return p >= lo && p < lo + static_cast<int>(route.size()); };

  // greedy pass
  for (std::size_t s = 0; s < route.size(); ++s) {
    const int p = lo + static_cast<int>(s);
    auto& pool = pools[route[s]];
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t pick = 0;
    int best_hits = -1;
    long long best_spare = 0;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      const Vertex v = pool[k];
      int hits = 0;
      for (int q = std::max(0, p - r); q < p; ++q) hits += adj(a[static_cast<std::size_t>(q)], v);
      for (int q = lo + static_cast<int>(route.size()); q < len && q <= p + r; ++q) hits += adj(a[static_cast<std::size_t>(q)], v);
      if (hits < best_hits) continue;
      long long spare = 0;
      for (const auto& [c, rest] : pools)
        if (c != route[s])
          for (Vertex u : rest) spare += adj(u, v);
      if (hits > best_hits || spare < best_spare) {
        best_hits = hits;
        best_spare = spare;
        pick = k;
      }
    }
    a[static_cast<std::size_t>(p)] = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }

  // breakout weights, one per slot pair (p, p+k) with 1 <= k <= r
  std::vector<int> w(static_cast<std::size_t>(len) * static_cast<std::size_t>(r), 1);
  auto weight = [&](int p, int q) -> int& {
    if (q < p) std::swap(p, q);
    return w[static_cast<std::size_t>(p) * static_cast<std::size_t>(r) + static_cast<std::size_t>(q - p - 1)];
  };
  auto cost_at = [&](int p, Vertex v) {
    int c = 0;
    for (int q = std::max(0, p - r); q <= std::min(len - 1, p + r); ++q)
      if (q != p && !adj(a[static_cast<std::size_t>(q)], v)) c += weight(p, q);
    return c;
  };

  std::vector<int> cc(static_cast<std::size_t>(len), 0);
  std::vector<int> where(static_cast<std::size_t>(len), -1);
  std::vector<int> hot;  // conflicted fill positions
  auto refresh = [&](int p) {
    if (!is_fill(p)) return;
    cc[static_cast<std::size_t>(p)] = cost_at(p, a[static_cast<std::size_t>(p)]);
    const bool in = where[static_cast<std::size_t>(p)] >= 0;
    if (cc[static_cast<std::size_t>(p)] > 0 && !in) {
      where[static_cast<std::size_t>(p)] = static_cast<int>(hot.size());
      hot.push_back(p);
    } else if (cc[static_cast<std::size_t>(p)] == 0 && in) {
      const int k = where[static_cast<std::size_t>(p)];
      hot[static_cast<std::size_t>(k)] = hot.back();
      where[static_cast<std::size_t>(hot.back())] = k;
      hot.pop_back();
      where[static_cast<std::size_t>(p)] = -1;
    }
  };
  auto refresh_around = [&](int x) {
    for (int y = std::max(0, x - r); y <= std::min(len - 1, x + r); ++y) refresh(y);
  };
  for (int p = 0; p < len; ++p) refresh(p);
  // a conflict between two fixed context vertices cannot be repaired
  for (int p = 0; p < len; ++p)
    for (int q = p + 1; q < len && q <= p + r; ++q)
      if (!is_fill(p) && !is_fill(q))
        require(adj(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(q)]), ErrorKind::Stage,
                "fill: boundary vertices are not adjacent and no slot separates them");

  std::map<int, std::vector<int>> slots_of;
  for (std::size_t s = 0; s < route.size(); ++s) slots_of[route[s]].push_back(lo + static_cast<int>(s));

  // min-conflicts with breakout: a conflicted slot takes its best swap inside its
  // cluster; when no swap improves, the weights of its violated pairs go up
  FillStats local;
  local.initial_conflicts = static_cast<int>(hot.size());
  std::vector<int> best_q;
  while (!hot.empty()) {
    if (local.iterations >= budget)
      fail(ErrorKind::BudgetExhausted,
           "fill: iteration budget exhausted with " + std::to_string(hot.size()) + " conflicted slots");
    ++local.iterations;
    const int p = hot[below(rng, hot.size())];
    if (local.iterations % 10 == 0) {
      // re-seat the whole cluster of p optimally against its fixed neighbours
      const auto& slots = slots_of[route[static_cast<std::size_t>(p - lo)]];
      std::vector<int> verts;
      for (int q : slots) verts.push_back(a[static_cast<std::size_t>(q)]);
      std::vector<std::vector<long long>> cost(slots.size(), std::vector<long long>(verts.size()));
      for (std::size_t i = 0; i < slots.size(); ++i)
        for (std::size_t k = 0; k < verts.size(); ++k) cost[i][k] = cost_at(slots[i], verts[k]);
      const auto pick = solve_assignment(cost);
      for (std::size_t i = 0; i < slots.size(); ++i)
        a[static_cast<std::size_t>(slots[i])] = verts[static_cast<std::size_t>(pick[i])];
      for (int q : slots) refresh_around(q);
      continue;
    }
    const auto& same = slots_of[route[static_cast<std::size_t>(p - lo)]];
    const Vertex vp = a[static_cast<std::size_t>(p)];
    int best_delta = 0;
    best_q.clear();
    for (int q : same) {
      if (q == p) continue;
      const Vertex vq = a[static_cast<std::size_t>(q)];
      // slots of one cluster are at least r+1 apart, so the two windows are independent
      const int delta = cost_at(p, vq) + cost_at(q, vp) - cc[static_cast<std::size_t>(p)] - cc[static_cast<std::size_t>(q)];
      if (delta < best_delta) {
        best_delta = delta;
        best_q.assign(1, q);
      } else if (delta == best_delta) {
        best_q.push_back(q);
      }
    }
    if (best_delta == 0 && (best_q.empty() || unit(rng) < 0.5)) {
      for (int q = std::max(0, p - r); q <= std::min(len - 1, p + r); ++q)
        if (q != p && !adj(a[static_cast<std::size_t>(q)], vp)) ++weight(p, q);
      refresh_around(p);
      continue;
    }
    const int q = best_q[below(rng, best_q.size())];
    std::swap(a[static_cast<std::size_t>(p)], a[static_cast<std::size_t>(q)]);
    refresh_around(p);
    refresh_around(q);
  }
  if (stats) *stats = local;
  std::vector<Vertex> out;
  for (std::size_t s = 0; s < route.size(); ++s) out.push_back(members[static_cast<std::size_t>(a[static_cast<std::size_t>(lo) + s])]);
  return out;
}

}  // namespace posadisc
