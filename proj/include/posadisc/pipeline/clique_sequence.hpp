#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "posadisc/cliques.hpp"
#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"

namespace posadisc {

/// w_{(L,L')}(C) = deg(C, L) + deg(C, L').
inline int clique_weight(const ColoredGraph& reduced, Vertex c, const std::vector<Vertex>& l1,
                         const std::vector<Vertex>& l2) {
  int w = 0;
  for (Vertex v : l1) w += v != c && reduced.has_edge(c, v);
  for (Vertex v : l2) w += v != c && reduced.has_edge(c, v);
  return w;
}

namespace detail {

inline int degree_to(const ColoredGraph& g, Vertex c, const std::vector<Vertex>& s) {
  int k = 0;
  for (Vertex v : s) k += v != c && g.has_edge(c, v);
  return k;
}

inline bool contains(const std::vector<Vertex>& s, Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); }

/// Cliques are slot vectors: position k of consecutive cliques holds the same
/// cluster unless that slot is the one being replaced.
inline std::vector<Vertex> replace_slot(std::vector<Vertex> s, Vertex out, Vertex in) {
  *std::find(s.begin(), s.end(), out) = in;
  return s;
}

/// D_0 = from, ..., D_{r+1} = a permutation of `to`. `to[k]` preferably lands in slot k.
inline std::vector<std::vector<Vertex>> transition(const ColoredGraph& g, const std::vector<Vertex>& from,
                                                   const std::vector<Vertex>& to) {
  std::vector<std::vector<Vertex>> d{from};
  std::vector<Vertex> cur = from;
  std::vector<Vertex> pending = to;
  while (!pending.empty()) {
    // prefer a cluster whose slot partner may be removed; otherwise the first pending one
    std::size_t pick = 0;
    Vertex drop = -1;
    for (std::size_t q = 0; q < pending.size() && drop < 0; ++q) {
      const Vertex c = pending[q];
      std::vector<Vertex> blockers;
      for (Vertex x : cur)
        if (!contains(to, x) && !g.has_edge(c, x)) blockers.push_back(x);
      const auto slot = static_cast<std::size_t>(std::find(to.begin(), to.end(), c) - to.begin());
      const Vertex want = cur[slot];
      if (blockers.empty() && !contains(to, want)) {
        pick = q;
        drop = want;
      } else if (blockers.size() == 1 && blockers[0] == want) {
        pick = q;
        drop = want;
      }
    }
    const Vertex c = pending[pick];
    if (drop < 0) {
      std::vector<Vertex> blockers;
      for (Vertex x : cur)
        if (!contains(to, x) && !g.has_edge(c, x)) blockers.push_back(x);
      require(blockers.size() <= 1, ErrorKind::Stage, "clique transition: cluster misses two clique members");
      if (blockers.empty()) {
        for (Vertex x : cur)
          if (!contains(to, x)) {
            drop = x;
            break;
          }
      } else {
        drop = blockers[0];
      }
    }
    cur = replace_slot(cur, drop, c);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    d.push_back(cur);
  }
  return d;
}

}  // namespace detail

/// L_1 = K1, ..., L_t = K2 with |L_i n L_{i+1}| = r, built from two growing
/// fronts A and B plus the D transition between them. Cliques keep slot order:
/// each step swaps exactly one slot, and the last clique lists K2 in the given order.
inline std::vector<std::vector<Vertex>> clique_sequence(const ColoredGraph& reduced, const std::vector<Vertex>& k1,
                                                        const std::vector<Vertex>& k2, int r) {
  require(r >= 1, ErrorKind::InvalidArgument, "r must be at least 1");
  require(static_cast<int>(k1.size()) == r + 1 && static_cast<int>(k2.size()) == r + 1, ErrorKind::InvalidArgument,
          "clique sequence endpoints must have r+1 clusters");
  for (Vertex v : k1)
    require(!detail::contains(k2, v), ErrorKind::InvalidArgument, "K1 and K2 must be disjoint");
  require_clique(reduced, VertexSet(k1));
  require_clique(reduced, VertexSet(k2));

  std::vector<std::vector<Vertex>> a{k1};
  std::vector<std::vector<Vertex>> b{k2};
  auto done_b_sees_a = [&] {
    for (Vertex c : b.back())
      if (detail::degree_to(reduced, c, a.back()) < r) return false;
    return true;
  };
  auto done_a_sees_b = [&] {
    for (Vertex c : a.back())
      if (detail::degree_to(reduced, c, b.back()) < r) return false;
    return true;
  };

  const int cap = (r + 1) * (r + 1) + 1;
  int steps = 0;
  while (!done_b_sees_a() && !done_a_sees_b()) {
    require(++steps <= cap, ErrorKind::Stage, "clique sequence: front growth exceeded " + std::to_string(cap) + " steps");
    const auto& ai = a.back();
    const auto& bj = b.back();
    Vertex best = -1;
    int best_w = -1;
    for (Vertex c = 0; c < reduced.n(); ++c) {
      if (detail::contains(ai, c) || detail::contains(bj, c)) continue;
      const int w = clique_weight(reduced, c, ai, bj);
      if (w > best_w) {
        best_w = w;
        best = c;
      }
    }
    require(best >= 0 && best_w >= 2 * r + 1, ErrorKind::Stage,
            "clique sequence: no cluster of weight >= 2r+1 (degree hypothesis violated)");
    const bool grow_a = detail::degree_to(reduced, best, ai) == r + 1;
    const auto& grow = grow_a ? ai : bj;
    const auto& other = grow_a ? bj : ai;
    Vertex out = -1;
    for (Vertex c : grow)
      if (detail::degree_to(reduced, c, other) <= r - 1) {
        out = c;
        break;
      }
    require(out >= 0, ErrorKind::Stage, "clique sequence: no cluster to exchange");
    auto next = detail::replace_slot(grow, out, best);
    (grow_a ? a : b).push_back(std::move(next));
  }

  std::vector<std::vector<Vertex>> seq = a;
  if (done_b_sees_a()) {
    auto d = detail::transition(reduced, a.back(), b.back());
    for (std::size_t i = 1; i + 1 < d.size(); ++i) seq.push_back(d[i]);
    // the transition may leave B_t2 in another slot order; the B front is replayed on it
    std::vector<Vertex> cur = d.back();
    seq.push_back(cur);
    for (std::size_t j = b.size(); j-- > 1;) {
      const Vertex out = *std::find_if(b[j].begin(), b[j].end(), [&](Vertex v) { return !detail::contains(b[j - 1], v); });
      const Vertex in = *std::find_if(b[j - 1].begin(), b[j - 1].end(), [&](Vertex v) { return !detail::contains(b[j], v); });
      cur = detail::replace_slot(cur, out, in);
      seq.push_back(cur);
    }
  } else {
    // every cluster of A_t1 sees r of B_t2: build the transition from B and walk it backwards
    auto d = detail::transition(reduced, b.back(), a.back());
    std::vector<Vertex> cur = a.back();
    for (std::size_t i = d.size() - 1; i-- > 0;) {
      const Vertex out = *std::find_if(d[i + 1].begin(), d[i + 1].end(), [&](Vertex v) { return !detail::contains(d[i], v); });
      const Vertex in = *std::find_if(d[i].begin(), d[i].end(), [&](Vertex v) { return !detail::contains(d[i + 1], v); });
      cur = detail::replace_slot(cur, out, in);
      seq.push_back(cur);
    }
    for (std::size_t j = b.size(); j-- > 1;) {
      const Vertex out = *std::find_if(b[j].begin(), b[j].end(), [&](Vertex v) { return !detail::contains(b[j - 1], v); });
      const Vertex in = *std::find_if(b[j - 1].begin(), b[j - 1].end(), [&](Vertex v) { return !detail::contains(b[j], v); });
      cur = detail::replace_slot(cur, out, in);
      seq.push_back(cur);
    }
  }
  return seq;
}

/// Cluster sequence forming the r-th power of a path: starts with the first
/// clique in slot order and, at each step, keeps cycling through the slots
/// until the outgoing slot comes up, where the incoming cluster is emitted.
/// Ends after completing the round, so the last r+1 entries are the final slots.
inline std::vector<Vertex> emit_cluster_sequence(const std::vector<std::vector<Vertex>>& cliques) {
  require(!cliques.empty(), ErrorKind::InvalidArgument, "empty clique sequence");
  const std::size_t k = cliques.front().size();
  std::vector<Vertex> slots = cliques.front();
  std::vector<Vertex> out = slots;
  for (std::size_t i = 0; i + 1 < cliques.size(); ++i) {
    std::size_t changed = k;
    for (std::size_t s = 0; s < k; ++s)
      if (cliques[i][s] != cliques[i + 1][s]) {
        require(changed == k, ErrorKind::InvalidArgument, "consecutive cliques differ in more than one slot");
        changed = s;
      }
    require(changed < k, ErrorKind::InvalidArgument, "consecutive cliques are identical");
    for (std::size_t p = out.size() % k; p != changed; p = (p + 1) % k) out.push_back(slots[p]);
    slots[changed] = cliques[i + 1][changed];
    out.push_back(slots[changed]);
  }
  for (std::size_t p = out.size() % k; p != 0; p = (p + 1) % k) out.push_back(slots[p]);
  return out;
}

/// Swap gadget rows for exchanging positions i and j of the tail U through a
/// common neighbour c: U, U[i:=c], U[i:=c, j:=U_i], U[i<->j].
inline std::vector<std::vector<Vertex>> swap_gadget(const std::vector<Vertex>& u, std::size_t i, std::size_t j,
                                                    Vertex c) {
  std::vector<Vertex> r2 = u;
  r2[i] = c;
  std::vector<Vertex> r3 = r2;
  r3[j] = u[i];
  std::vector<Vertex> r4 = r3;
  r4[i] = u[j];
  return {u, r2, r3, r4};
}

/// Appends swap gadgets (at most r of them) until the sequence ends with
/// `target` in exactly that order.
inline std::vector<Vertex> reorder_clique_tail(const ColoredGraph& reduced, std::vector<Vertex> prefix,
                                               const std::vector<Vertex>& target) {
  const std::size_t k = target.size();
  require(prefix.size() >= k, ErrorKind::InvalidArgument, "prefix shorter than the target clique");
  std::vector<Vertex> u(prefix.end() - static_cast<std::ptrdiff_t>(k), prefix.end());
  {
    auto a = u, b = target;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    require(a == b, ErrorKind::InvalidArgument, "tail is not a permutation of the target clique");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (u[i] == target[i]) continue;
    const std::size_t j = static_cast<std::size_t>(std::find(u.begin(), u.end(), target[i]) - u.begin());
    const VertexSet common = common_neighborhood(reduced, VertexSet(u));
    require(!common.empty(), ErrorKind::Stage, "reorder: no common neighbour cluster of the tail clique");
    for (const auto& row : swap_gadget(u, i, j, common[0])) prefix.insert(prefix.end(), row.begin(), row.end());
    std::swap(u[i], u[j]);
  }
  return prefix;
}

/// Every window of r+1 consecutive clusters is a clique of r+1 distinct clusters.
inline bool is_power_of_path(const ColoredGraph& reduced, const std::vector<Vertex>& seq, int r) {
  for (std::size_t a = 0; a < seq.size(); ++a)
    for (std::size_t b = a + 1; b < seq.size() && b <= a + static_cast<std::size_t>(r); ++b)
      if (seq[a] == seq[b] || !reduced.has_edge(seq[a], seq[b])) return false;
  return true;
}

/// Full cluster route from K1 (in order) to K2 (in order).
inline std::vector<Vertex> connecting_clusters(const ColoredGraph& reduced, const std::vector<Vertex>& k1,
                                               const std::vector<Vertex>& k2, int r) {
  const auto cliques = clique_sequence(reduced, k1, k2, r);
  auto seq = emit_cluster_sequence(cliques);
  seq = reorder_clique_tail(reduced, std::move(seq), k2);
  require(static_cast<long long>(seq.size()) <= 40LL * r * r * r, ErrorKind::Stage,
          "connecting route longer than 40 r^3 clusters");
  return seq;
}

}  // namespace posadisc
