#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "posadisc/cycle_power.hpp"
#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/pipeline/clique_sequence.hpp"
#include "posadisc/pipeline/fill.hpp"
#include "posadisc/pipeline/model.hpp"
#include "posadisc/pipeline/params.hpp"
#include "posadisc/pipeline/path_vertices.hpp"
#include "posadisc/templates.hpp"

namespace posadisc {

struct TraceEvent {
  std::string stage;
  int index = 0;
  Vertex vertex = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct PipelineReport {
  int n = 0;
  int r = 0;
  int m = 0;
  std::vector<Vertex> ordering;
  long long discrepancy = 0;
  long long prediction = 0;  // m * f_R(T)
  long long deviation = 0;
  double alpha_n = 0;
  bool within_alpha = false;
  bool regular = false;      // simple and 2r-regular
  std::uint64_t digest = 0;
  std::vector<int> path_lengths;
  int exceptional_inserted = 0;
  int moved_to_exceptional = 0;
  std::uint64_t fill_iterations = 0;
  std::vector<SurvivalViolation> survival_violations;
  bool endpoints_extensible = true;
  std::vector<TraceEvent> trace;
  std::vector<std::string> stages;  // completed, in order
  std::vector<std::string> warnings;
};

inline std::uint64_t ordering_digest(const std::vector<Vertex>& ordering) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Vertex v : ordering)
    for (int i = 0; i < 4; ++i) {
      h ^= (static_cast<std::uint32_t>(v) >> (8 * i)) & 0xFFU;
      h *= 1099511628211ULL;
    }
  return h;
}

/// Every vertex has 2r distinct neighbours and no pair repeats.
inline bool is_simple_regular_power(const PowerMultigraph& p, int n, int r) {
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (const auto& [pair, k] : p.mul) {
    if (k != 1) return false;
    ++deg[static_cast<std::size_t>(pair.first)];
    ++deg[static_cast<std::size_t>(pair.second)];
  }
  return std::all_of(deg.begin(), deg.end(), [&](int x) { return x == 2 * r; });
}

namespace detail {

inline std::vector<Vertex> free_members(const ClusterModel& model, int cluster, const std::vector<char>& used) {
  std::vector<Vertex> out;
  for (Vertex v : model.members(cluster))
    if (!used[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

[[noreturn]] inline void stage_fail(const std::string& stage, const Error& e) {
  fail(e.kind() == ErrorKind::BudgetExhausted ? ErrorKind::BudgetExhausted : ErrorKind::Stage,
       "stage " + stage + ": " + e.what());
}

}  // namespace detail

/// Extends `path` (ending with a round through `target`) by q_1..q_{2(r+1)}, v,
/// q_{2(r+1)+1}..q_{3(r+1)}: two rounds through the clique, then v, then one more.
/// The current last r vertices enter as singleton buffer sets, so every q is
/// adjacent to them as required.
inline PathState insert_exceptional(const ClusterModel& model, std::vector<Vertex>& path, std::vector<char>& used,
                                    Vertex v, const std::vector<Vertex>& target, int r) {
  require(static_cast<int>(target.size()) == r + 1, ErrorKind::InvalidArgument, "target clique must have r+1 clusters");
  require(static_cast<int>(path.size()) >= r, ErrorKind::InvalidArgument, "path shorter than r");
  for (int c : target)
    require(model.degree_into(v, c) >= (model.d - model.eps) * model.m, ErrorKind::InvalidArgument,
            "exceptional vertex " + std::to_string(v) + " has too few neighbours in cluster " + std::to_string(c));
  used[static_cast<std::size_t>(v)] = 1;

  const int rounds = 3;
  std::vector<int> clusters;
  std::vector<std::vector<Vertex>> cand;
  for (int k = 0; k < r; ++k) {
    const Vertex p = path[path.size() - static_cast<std::size_t>(r) + static_cast<std::size_t>(k)];
    clusters.push_back(model.cluster_of[static_cast<std::size_t>(p)]);
    cand.push_back({p});
  }
  for (int pos = 1; pos <= rounds * (r + 1) + r; ++pos) {
    const int c = target[static_cast<std::size_t>((pos - 1) % (r + 1))];
    clusters.push_back(c);
    std::vector<Vertex> u;
    const bool near_v = pos > (r + 1) && pos <= rounds * (r + 1);
    for (Vertex x : model.members(c))
      if (!used[static_cast<std::size_t>(x)] && (!near_v || model.ground.has_edge(v, x))) u.push_back(x);
    cand.push_back(std::move(u));
  }
  PathState st = find_path_vertices(model, clusters, cand, r);
  for (int k = 0; k < rounds * (r + 1); ++k) {
    if (k == 2 * (r + 1)) path.push_back(v);
    path.push_back(st.vertices[static_cast<std::size_t>(k)]);
    used[static_cast<std::size_t>(st.vertices[static_cast<std::size_t>(k)])] = 1;
  }
  return st;
}

/// Cluster-model embedding of a C^r-tiling of the reduced graph into an r-th
/// power of a Hamilton cycle of the ground graph.
///
/// Stages: connect consecutive tiles (P_i runs from tile i to tile i+1), move
/// bad and surplus vertices to the exceptional set, attach exceptional vertices
/// to paths, fill every tile between P_{i-1} and P_i.
inline PipelineReport assemble_hamilton_power(const ClusterModel& model, const Tiling& tiling,
                                              const PipelineParams& params) {
  PipelineReport rep;
  rep.warnings = check_params(params);
  const int r = params.r;
  const int m = model.m;
  const ColoredGraph& R = model.reduced;
  const ColoredGraph& G = model.ground;
  require(tiling.r == r, ErrorKind::InvalidArgument, "tiling power order differs from params.r");
  validate_tiling(R, tiling);
  const int T = static_cast<int>(tiling.cycles.size());
  require(T >= 2, ErrorKind::InvalidArgument, "pipeline needs at least two tiles");
  const int s = params.shared < 0 ? T : params.shared;
  require(s >= 1 && s <= T, ErrorKind::InvalidArgument, "shared tile count out of range");
  for (int i = 0; i < s; ++i)
    require(static_cast<int>(tiling.cycles[static_cast<std::size_t>(i)].length()) == r + 1, ErrorKind::InvalidArgument,
            "shared tiles must be (r+1)-cycles");
  rep.n = G.n();
  rep.r = r;
  rep.m = m;

  auto tile = [&](int i) { return tiling.cycles[static_cast<std::size_t>(i)].vertices(); };
  auto head = [&](int i) {
    auto c = tile(i);
    return std::vector<Vertex>(c.begin(), c.begin() + r + 1);
  };

  std::vector<char> used(static_cast<std::size_t>(G.n()), 0);
  for (Vertex v : model.exceptional_vertices()) used[static_cast<std::size_t>(v)] = 1;
  std::vector<std::vector<Vertex>> paths(static_cast<std::size_t>(T));

  // connecting paths, in order; P_0..P_{s-2} only see the shared tiles
  for (int i = 0; i < T; ++i) {
    try {
      const int j = (i + 1) % T;
      const auto k1 = head(i);
      const auto k2 = head(j);
      const auto route = connecting_clusters(R, k1, k2, r);
      std::vector<int> clusters(k1.begin() + 1, k1.end());
      clusters.insert(clusters.end(), route.begin(), route.end());
      clusters.insert(clusters.end(), k2.begin(), k2.begin() + r);
      std::vector<std::vector<Vertex>> cand;
      for (int c : clusters) cand.push_back(detail::free_members(model, c, used));
      PathState st = find_path_vertices(model, clusters, cand, r);
      rep.survival_violations.insert(rep.survival_violations.end(), st.violations.begin(), st.violations.end());
      rep.endpoints_extensible = rep.endpoints_extensible && st.endpoints_extensible();
      for (Vertex v : st.vertices) {
        used[static_cast<std::size_t>(v)] = 1;
        rep.trace.push_back({"connect", i, v});
      }
      paths[static_cast<std::size_t>(i)] = st.vertices;
    } catch (const Error& e) {
      detail::stage_fail("connect[" + std::to_string(i) + "]", e);
    }
  }

  rep.stages.push_back("connect");

  // bad vertices (too few neighbours towards a tile neighbour) and surplus go to V_0
  std::vector<Vertex> exceptional = model.exceptional_vertices();
  std::vector<int> fill_rounds(static_cast<std::size_t>(T), 0);
  for (int i = 0; i < T; ++i) {
    const auto c = tile(i);
    const int L = static_cast<int>(c.size());
    const PowerMultigraph pm = power_multiplicities(tiling.cycles[static_cast<std::size_t>(i)], r);
    for (int a = 0; a < L; ++a)
      for (Vertex v : detail::free_members(model, c[static_cast<std::size_t>(a)], used))
        for (int b = 0; b < L; ++b)
          if (pm.multiplicity(c[static_cast<std::size_t>(a)], c[static_cast<std::size_t>(b)]) > 0 &&
              model.degree_into(v, c[static_cast<std::size_t>(b)]) < (model.d - model.eps) * m) {
            used[static_cast<std::size_t>(v)] = 1;
            exceptional.push_back(v);
            ++rep.moved_to_exceptional;
            break;
          }
    int w = m;
    for (int a = 0; a < L; ++a) {
      const int f = static_cast<int>(detail::free_members(model, c[static_cast<std::size_t>(a)], used).size());
      w = std::min(w, a <= r ? f : f - 1);
    }
    require(w >= 0, ErrorKind::Stage, "stage balance: tile " + std::to_string(i) + " has no room left");
    for (int a = 0; a < L; ++a) {
      auto fr = detail::free_members(model, c[static_cast<std::size_t>(a)], used);
      const int keep = a <= r ? w : w + 1;
      for (std::size_t k = static_cast<std::size_t>(keep); k < fr.size(); ++k) {
        used[static_cast<std::size_t>(fr[k])] = 1;
        exceptional.push_back(fr[k]);
        ++rep.moved_to_exceptional;
      }
    }
    fill_rounds[static_cast<std::size_t>(i)] = w;
  }
  std::sort(exceptional.begin(), exceptional.end());
  rep.stages.push_back("balance");

  // smallest-set assignment over eligible paths
  std::vector<std::vector<Vertex>> assigned(static_cast<std::size_t>(T));
  for (Vertex v : exceptional) {
    int pick = -1;
    for (int i = 0; i < T; ++i) {
      const int tau = (i + 1) % T;
      if (s < T && !(tau >= 1 && tau <= s - 1)) continue;
      if (static_cast<int>(tiling.cycles[static_cast<std::size_t>(tau)].length()) != r + 1) continue;
      bool ok = true;
      for (int c : head(tau)) ok = ok && model.degree_into(v, c) >= (model.d - model.eps) * m;
      if (!ok) continue;
      if (pick < 0 || assigned[static_cast<std::size_t>(i)].size() < assigned[static_cast<std::size_t>(pick)].size()) pick = i;
    }
    require(pick >= 0, ErrorKind::Stage, "stage assign: exceptional vertex " + std::to_string(v) + " fits no path");
    assigned[static_cast<std::size_t>(pick)].push_back(v);
  }
  rep.stages.push_back("assign");
  for (int i = 0; i < T; ++i) {
    const int tau = (i + 1) % T;
    auto& A = assigned[static_cast<std::size_t>(i)];
    fill_rounds[static_cast<std::size_t>(tau)] -= 3 * static_cast<int>(A.size());
    require(fill_rounds[static_cast<std::size_t>(tau)] >= 0, ErrorKind::Stage,
            "stage assign: tile " + std::to_string(tau) + " cannot absorb its exceptional vertices");
    try {
      for (Vertex v : A) {
        const std::size_t before = paths[static_cast<std::size_t>(i)].size();
        PathState st = insert_exceptional(model, paths[static_cast<std::size_t>(i)], used, v, head(tau), r);
        rep.survival_violations.insert(rep.survival_violations.end(), st.violations.begin(), st.violations.end());
        rep.endpoints_extensible = rep.endpoints_extensible && st.endpoints_extensible();
        for (std::size_t k = before; k < paths[static_cast<std::size_t>(i)].size(); ++k)
          rep.trace.push_back({"exceptional", i, paths[static_cast<std::size_t>(i)][k]});
        ++rep.exceptional_inserted;
      }
    } catch (const Error& e) {
      detail::stage_fail("exceptional[" + std::to_string(i) + "]", e);
    }
  }

  rep.stages.push_back("exceptional");

  // fill: tile i sits between the end of P_{i-1} and the start of P_i
  std::vector<std::vector<Vertex>> fills(static_cast<std::size_t>(T));
  for (int i = 0; i < T; ++i) {
    try {
      const auto c = tile(i);
      const int L = static_cast<int>(c.size());
      const auto& prev = paths[static_cast<std::size_t>((i + T - 1) % T)];
      const auto& next = paths[static_cast<std::size_t>(i)];
      std::vector<Vertex> left(prev.end() - r, prev.end());
      std::vector<Vertex> right(next.begin(), next.begin() + r);
      std::vector<int> route(c.begin() + r + 1, c.end());
      for (int k = 0; k < fill_rounds[static_cast<std::size_t>(i)]; ++k) route.insert(route.end(), c.begin(), c.end());
      std::map<int, std::vector<Vertex>> pools;
      for (int a = 0; a < L; ++a) pools[c[static_cast<std::size_t>(a)]] = detail::free_members(model, c[static_cast<std::size_t>(a)], used);
      auto rng = stream(params.seed, Stream::Fill, static_cast<std::uint64_t>(i));
      FillStats fs;
      fills[static_cast<std::size_t>(i)] = fill_route(G, left, route, pools, right, r, rng, params.fill_iterations, &fs);
      rep.fill_iterations += fs.iterations;
      for (Vertex v : fills[static_cast<std::size_t>(i)]) {
        used[static_cast<std::size_t>(v)] = 1;
        rep.trace.push_back({"fill", i, v});
      }
    } catch (const Error& e) {
      detail::stage_fail("fill[" + std::to_string(i) + "]", e);
    }
  }

  rep.stages.push_back("fill");
  for (int i = 0; i < T; ++i) {
    const auto& f = fills[static_cast<std::size_t>(i)];
    const auto& p = paths[static_cast<std::size_t>(i)];
    rep.ordering.insert(rep.ordering.end(), f.begin(), f.end());
    rep.ordering.insert(rep.ordering.end(), p.begin(), p.end());
    rep.path_lengths.push_back(static_cast<int>(p.size()));
  }
  try {
    const HamiltonPower hp = hamilton_power(G, rep.ordering, r);
    rep.discrepancy = hp.discrepancy;
    rep.regular = is_simple_regular_power(hp.power, G.n(), r);
  } catch (const Error& e) {
    detail::stage_fail("verify", e);
  }
  rep.stages.push_back("verify");
  rep.prediction = static_cast<long long>(m) * tiling_discrepancy(R, tiling);
  rep.deviation = std::llabs(rep.discrepancy - rep.prediction);
  rep.alpha_n = params.alpha * G.n();
  rep.within_alpha = static_cast<double>(rep.deviation) <= rep.alpha_n;
  rep.digest = ordering_digest(rep.ordering);
  return rep;
}

}  // namespace posadisc
