#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "posadisc/cycle_power.hpp"
#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/templates.hpp"

namespace posadisc {

struct SearchBudget {
  std::uint64_t node_limit = 2'000'000'000ULL;
  double time_limit_seconds = 3600.0;
  int workers = 1;
};

inline void validate(const SearchBudget& b) {
  require(b.node_limit > 0, ErrorKind::InvalidArgument, "node limit must be positive");
  require(b.time_limit_seconds > 0, ErrorKind::InvalidArgument, "time limit must be positive");
  require(b.workers >= 1, ErrorKind::InvalidArgument, "worker count must be at least 1");
}

enum class SearchOutcome { Optimal, BudgetExhausted, NoneExists };

inline std::string to_string(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Optimal: return "optimal";
    case SearchOutcome::BudgetExhausted: return "budget_exhausted";
    case SearchOutcome::NoneExists: return "none_exists";
  }
  return "unknown";
}

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::NoneExists;
  std::vector<Vertex> ordering;   // power searches
  std::optional<Tiling> tiling;   // tiling searches
  long long value = 0;
  std::uint64_t nodes = 0;

  bool found() const noexcept { return !ordering.empty() || tiling.has_value(); }
  bool optimal() const noexcept { return outcome == SearchOutcome::Optimal; }
  long long abs_value() const noexcept { return value < 0 ? -value : value; }
};

/// Larger |value| wins, then the positive value, then the lexicographically
/// smaller witness.
template <class Witness>
bool better_candidate(long long v1, const Witness& w1, long long v2, const Witness& w2) {
  const long long a1 = v1 < 0 ? -v1 : v1;
  const long long a2 = v2 < 0 ? -v2 : v2;
  if (a1 != a2) return a1 > a2;
  if (v1 != v2) return v1 > v2;
  return w1 < w2;
}

namespace detail {

inline void require_small(const ColoredGraph& g, const char* what) {
  require(g.n() <= 64, ErrorKind::InvalidArgument, std::string(what) + " supports at most 64 vertices");
}

inline void require_power_size(const ColoredGraph& g, int r) {
  require(r >= 1, ErrorKind::InvalidArgument, "power order r must be at least 1");
  require(g.n() >= 2 * r + 1, ErrorKind::InvalidArgument,
          "Hamilton power needs n >= 2r+1 (n=" + std::to_string(g.n()) + ", r=" + std::to_string(r) + ")");
}

struct BitGraph {
  int n = 0;
  std::vector<std::uint64_t> adj;
  std::vector<std::uint64_t> pos;

  explicit BitGraph(const ColoredGraph& g) : n(g.n()), adj(g.n()), pos(g.n()) {
    for (Vertex v = 0; v < n; ++v) {
      adj[v] = g.adjacency_row(v).empty() ? 0 : g.adjacency_row(v)[0];
      pos[v] = g.positive_row(v).empty() ? 0 : g.positive_row(v)[0];
    }
  }
  int sign(Vertex a, Vertex b) const { return (pos[a] >> b) & 1U ? 1 : -1; }
};

/// Shared budget: nodes are counted globally, time is polled every few thousand nodes.
class BudgetGuard {
 public:
  explicit BudgetGuard(const SearchBudget& b)
      : limit_(b.node_limit),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(b.time_limit_seconds))) {}

  /// False once any limit is hit; every caller sees the same verdict afterwards.
  bool tick() {
    if (stop_.load(std::memory_order_relaxed)) return false;
    const std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > limit_ || ((n & 4095U) == 0 && std::chrono::steady_clock::now() > deadline_)) {
      stop_.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
  bool stopped() const { return stop_.load(std::memory_order_relaxed); }
  std::uint64_t nodes() const { return std::min(nodes_.load(), limit_); }

 private:
  std::uint64_t limit_;
  std::chrono::steady_clock::time_point deadline_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> stop_{false};
};

/// Depth-first extension of canonical orderings (vertex 0 first, ordering[1] < ordering[n-1]).
/// Slots are fixed as soon as both ends are placed; wrap slots of position p pair it
/// with the already placed start of the cycle.
class PowerDfs {
 public:
  PowerDfs(const BitGraph& g, int r, BudgetGuard& guard, bool use_labels)
      : g_(g), r_(r), guard_(guard), labels_(use_labels), ord_(g.n, -1) {}

  /// Searches the subtree with a fixed prefix. Returns false when the prefix is infeasible.
  void run(const std::vector<Vertex>& prefix, bool stop_at_first) {
    stop_first_ = stop_at_first;
    std::uint64_t used = 0;
    long long partial = 0;
    int fixed = 0;
    for (std::size_t p = 0; p < prefix.size(); ++p) {
      const Vertex v = prefix[p];
      if ((used >> v) & 1U) return;
      if (p > 0 && !((candidates(static_cast<int>(p), used) >> v) & 1U)) return;
      partial += slot_sum(static_cast<int>(p), v, fixed);
      ord_[p] = v;
      used |= std::uint64_t{1} << v;
    }
    dfs(static_cast<int>(prefix.size()), used, partial, fixed);
  }

  bool found = false;
  long long best_value = 0;
  std::vector<Vertex> best;

 private:
  std::uint64_t candidates(int p, std::uint64_t used) const {
    std::uint64_t c = (g_.n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g_.n) - 1)) & ~used;
    for (int j = 1; j <= r_ && j <= p; ++j) c &= g_.adj[ord_[p - j]];
    for (int q = 0; q <= p + r_ - g_.n; ++q) c &= g_.adj[ord_[q]];
    return c;
  }

  long long slot_sum(int p, Vertex v, int& fixed) const {
    long long s = 0;
    for (int j = 1; j <= r_ && j <= p; ++j, ++fixed) s += g_.sign(ord_[p - j], v);
    for (int q = 0; q <= p + r_ - g_.n; ++q, ++fixed) s += g_.sign(ord_[q], v);
    return s;
  }

  bool worth_exploring(long long partial, int fixed) const {
    if (!labels_ || !found) return true;
    const long long remaining = static_cast<long long>(g_.n) * r_ - fixed;
    const long long best_abs = best_value < 0 ? -best_value : best_value;
    // a later leaf is lexicographically larger, so a tie only helps by flipping sign
    const long long need_pos = best_value < 0 ? best_abs : best_abs + 1;
    const long long need_neg = best_abs + 1;
    return partial + remaining >= need_pos || remaining - partial >= need_neg;
  }

  void dfs(int p, std::uint64_t used, long long partial, int fixed) {
    if (stop_first_ && found) return;
    if (p == g_.n) {
      if (ord_[g_.n - 1] < ord_[1]) return;
      if (!found || better_candidate(partial, ord_, best_value, best)) {
        found = true;
        best_value = partial;
        best = ord_;
      }
      return;
    }
    if (!worth_exploring(partial, fixed)) return;
    std::uint64_t c = candidates(p, used);
    while (c) {
      const Vertex v = std::countr_zero(c);
      c &= c - 1;
      if (!guard_.tick()) return;
      int f = fixed;
      const long long s = slot_sum(p, v, f);
      ord_[p] = v;
      dfs(p + 1, used | (std::uint64_t{1} << v), partial + s, f);
      if (stop_first_ && found) return;
      if (guard_.stopped()) return;
    }
    ord_[p] = -1;
  }

  const BitGraph& g_;
  int r_;
  BudgetGuard& guard_;
  bool labels_;
  bool stop_first_ = false;
  std::vector<Vertex> ord_;
};

/// Top-level work items: every prefix (0, a, b) with distinct a, b.
inline std::vector<std::vector<Vertex>> power_tasks(int n) {
  std::vector<std::vector<Vertex>> tasks;
  for (Vertex a = 1; a < n; ++a)
    for (Vertex b = 1; b < n; ++b)
      if (a != b) tasks.push_back({0, a, b});
  return tasks;
}

inline void run_parallel(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) job(i);
  };
  const int extra = std::max(0, std::min<int>(workers, static_cast<int>(count)) - 1);
  std::vector<std::thread> pool;
  for (int w = 0; w < extra; ++w) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// Brute-force stream over canonical Hamilton orderings (one per dihedral class)
/// whose r-th power lies in g, in lexicographic order. Returns how many were visited.
inline std::size_t enumerate_hamilton_powers(const ColoredGraph& g, int r,
                                             const std::function<void(const std::vector<Vertex>&, long long)>& visit,
                                             int cap = 10) {
  detail::require_power_size(g, r);
  require(g.n() <= cap, ErrorKind::InvalidArgument,
          "oracle enumeration capped at n=" + std::to_string(cap) + " (n=" + std::to_string(g.n()) + ")");
  const int n = g.n();
  std::vector<Vertex> ord(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ord[i] = i;
  std::size_t count = 0;
  do {
    if (ord[1] > ord[n - 1]) continue;
    const Cycle c(ord);
    if (!is_power_subgraph(g, c, r)) continue;
    visit(ord, power_discrepancy(g, c, r));
    ++count;
  } while (std::next_permutation(ord.begin() + 1, ord.end()));
  return count;
}

/// Branch and bound for the maximum |f(H^r)|. Admissible bound: |partial| plus
/// the number of slots not yet fixed. Subtrees are independent, so the answer
/// does not depend on the worker count.
inline SearchResult max_abs_discrepancy_power(const ColoredGraph& g, int r, const SearchBudget& budget = {}) {
  validate(budget);
  detail::require_power_size(g, r);
  detail::require_small(g, "power search");
  const detail::BitGraph bg(g);
  detail::BudgetGuard guard(budget);
  const auto tasks = detail::power_tasks(g.n());
  std::vector<std::optional<std::pair<long long, std::vector<Vertex>>>> partial(tasks.size());
  detail::run_parallel(tasks.size(), budget.workers, [&](std::size_t i) {
    detail::PowerDfs dfs(bg, r, guard, true);
    dfs.run(tasks[i], false);
    if (dfs.found) partial[i] = std::make_pair(dfs.best_value, dfs.best);
  });

  SearchResult res;
  res.nodes = guard.nodes();
  for (const auto& p : partial) {
    if (!p) continue;
    if (res.ordering.empty() || better_candidate(p->first, p->second, res.value, res.ordering)) {
      res.value = p->first;
      res.ordering = p->second;
    }
  }
  if (guard.stopped())
    res.outcome = SearchOutcome::BudgetExhausted;
  else
    res.outcome = res.ordering.empty() ? SearchOutcome::NoneExists : SearchOutcome::Optimal;
  return res;
}

/// Labels ignored; stops at the first contained power. Throws BudgetExhausted
/// when the budget runs out before an answer.
inline bool exists_hamilton_power(const ColoredGraph& g, int r, const SearchBudget& budget = {}) {
  validate(budget);
  detail::require_power_size(g, r);
  detail::require_small(g, "power search");
  const detail::BitGraph bg(g);
  detail::BudgetGuard guard(budget);
  detail::PowerDfs dfs(bg, r, guard, false);
  dfs.run({0}, true);
  if (dfs.found) return true;
  require(!guard.stopped(), ErrorKind::BudgetExhausted, "budget exhausted before deciding existence");
  return false;
}

namespace detail {

/// Perfect K_{r+1}-tilings, always covering the lowest uncovered vertex next.
/// Tiles are emitted as increasing vertex lists.
class TilingDfs {
 public:
  TilingDfs(const BitGraph& g, int r, BudgetGuard& guard) : g_(g), r_(r), guard_(guard) {}

  using Visitor = std::function<bool(const std::vector<std::vector<Vertex>>&, long long)>;

  /// visitor returns false to stop. `bound_prune` enables max-|value| pruning
  /// against the best value reported back through `set_best`.
  void run(const Visitor& visit, bool maximize) {
    visit_ = visit;
    maximize_ = maximize;
    const std::uint64_t all = g_.n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g_.n) - 1);
    cover(all, 0);
  }

  bool have_best = false;
  long long best_value = 0;

 private:
  long long tile_value(const std::vector<Vertex>& t) const {
    long long s = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) s += g_.sign(t[i], t[j]);
    return 2 * s;
  }

  bool worth_exploring(std::uint64_t uncovered, long long partial) const {
    if (!maximize_ || !have_best) return true;
    const long long tiles = std::popcount(uncovered) / (r_ + 1);
    const long long remaining = tiles * r_ * (r_ + 1);
    const long long best_abs = best_value < 0 ? -best_value : best_value;
    const long long need_pos = best_value < 0 ? best_abs : best_abs + 1;
    return partial + remaining >= need_pos || remaining - partial >= best_abs + 1;
  }

  // returns false to abort
  bool cover(std::uint64_t uncovered, long long partial) {
    if (uncovered == 0) return visit_(tiles_, partial);
    if (!worth_exploring(uncovered, partial)) return true;
    const Vertex v = std::countr_zero(uncovered);
    tile_.assign(1, v);
    return extend(uncovered & ~(std::uint64_t{1} << v), g_.adj[v] & uncovered, partial);
  }

  bool extend(std::uint64_t uncovered, std::uint64_t cand, long long partial) {
    if (static_cast<int>(tile_.size()) == r_ + 1) {
      if (!guard_.tick()) return false;
      tiles_.push_back(tile_);
      const std::vector<Vertex> saved = tile_;
      const bool go = cover(uncovered, partial + tile_value(saved));
      tiles_.pop_back();
      tile_ = saved;
      return go;
    }
    while (cand) {
      if (std::popcount(cand) < r_ + 1 - static_cast<int>(tile_.size())) return true;
      const Vertex u = std::countr_zero(cand);
      cand &= cand - 1;
      tile_.push_back(u);
      const bool go = extend(uncovered & ~(std::uint64_t{1} << u), cand & g_.adj[u], partial);
      tile_.pop_back();
      if (!go) return false;
    }
    return true;
  }

  const BitGraph& g_;
  int r_;
  BudgetGuard& guard_;
  Visitor visit_;
  bool maximize_ = false;
  std::vector<Vertex> tile_;
  std::vector<std::vector<Vertex>> tiles_;
};

inline void require_tiling_size(const ColoredGraph& g, int r) {
  require(r >= 1, ErrorKind::InvalidArgument, "r must be at least 1");
  require(g.n() % (r + 1) == 0, ErrorKind::InvalidArgument,
          "perfect K_{r+1}-tiling needs (r+1) | n (n=" + std::to_string(g.n()) + ", r=" + std::to_string(r) + ")");
  require_small(g, "tiling search");
}

inline Tiling to_tiling(const std::vector<std::vector<Vertex>>& tiles, int r) {
  Tiling t{r, {}};
  for (const auto& tile : tiles) t.cycles.emplace_back(tile);
  return t;
}

}  // namespace detail

/// First perfect K_{r+1}-tiling in search order, or nullopt when none exists.
inline std::optional<Tiling> perfect_clique_tiling(const ColoredGraph& g, int r, const SearchBudget& budget = {}) {
  validate(budget);
  detail::require_tiling_size(g, r);
  const detail::BitGraph bg(g);
  detail::BudgetGuard guard(budget);
  detail::TilingDfs dfs(bg, r, guard);
  std::optional<Tiling> out;
  dfs.run(
      [&](const std::vector<std::vector<Vertex>>& tiles, long long) {
        out = detail::to_tiling(tiles, r);
        return false;
      },
      false);
  if (out) return out;
  require(!guard.stopped(), ErrorKind::BudgetExhausted, "budget exhausted before a tiling was found");
  return std::nullopt;
}

/// Every perfect K_{r+1}-tiling with its discrepancy (each tile edge counted twice).
inline std::size_t enumerate_perfect_tilings(
    const ColoredGraph& g, int r, const std::function<void(const Tiling&, long long)>& visit) {
  detail::require_tiling_size(g, r);
  const detail::BitGraph bg(g);
  SearchBudget unlimited;
  unlimited.node_limit = ~std::uint64_t{0};
  unlimited.time_limit_seconds = 1e9;
  detail::BudgetGuard guard(unlimited);
  detail::TilingDfs dfs(bg, r, guard);
  std::size_t count = 0;
  dfs.run(
      [&](const std::vector<std::vector<Vertex>>& tiles, long long v) {
        visit(detail::to_tiling(tiles, r), v);
        ++count;
        return true;
      },
      false);
  return count;
}

/// Exact max |f(T)| over perfect K_{r+1}-tilings.
inline SearchResult max_abs_discrepancy_tiling(const ColoredGraph& g, int r, const SearchBudget& budget = {}) {
  validate(budget);
  detail::require_tiling_size(g, r);
  const detail::BitGraph bg(g);
  detail::BudgetGuard guard(budget);
  detail::TilingDfs dfs(bg, r, guard);
  std::vector<std::vector<Vertex>> best;
  dfs.run(
      [&](const std::vector<std::vector<Vertex>>& tiles, long long v) {
        if (!dfs.have_best || better_candidate(v, tiles, dfs.best_value, best)) {
          dfs.have_best = true;
          dfs.best_value = v;
          best = tiles;
        }
        return true;
      },
      true);
  SearchResult res;
  res.nodes = guard.nodes();
  if (dfs.have_best) {
    res.tiling = detail::to_tiling(best, r);
    res.value = dfs.best_value;
  }
  if (guard.stopped())
    res.outcome = SearchOutcome::BudgetExhausted;
  else
    res.outcome = dfs.have_best ? SearchOutcome::Optimal : SearchOutcome::NoneExists;
  return res;
}

}  // namespace posadisc
