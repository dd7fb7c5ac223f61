#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"

namespace posadisc {

struct LowerBoundSpec {
  int r = 3;
  int t = 2;  // cluster size, even
  int m = 0;  // |V_0|, 0 <= m <= t
  std::uint64_t seed = 0;

  int n() const noexcept { return (r + 1) * t + m; }
};

inline void validate(const LowerBoundSpec& s) {
  require(s.r >= 3, ErrorKind::InvalidArgument, "lower-bound construction needs r >= 3");
  require(s.t >= 2 && s.t % 2 == 0, ErrorKind::InvalidArgument, "cluster size t must be even and at least 2");
  require(s.m >= 0 && s.m <= s.t, ErrorKind::InvalidArgument, "m must satisfy 0 <= m <= t");
}

/// Cluster of a vertex: 1..r+1 for V_1..V_{r+1} (ids [(i-1)t, it)), 0 for V_0 (the last m ids).
inline int lower_bound_cluster(const LowerBoundSpec& s, Vertex v) {
  return v >= (s.r + 1) * s.t ? 0 : v / s.t + 1;
}

/// The first t/2 ids of each V_i are positive.
inline bool lower_bound_positive(const LowerBoundSpec& s, Vertex v) {
  return lower_bound_cluster(s, v) != 0 && v % s.t < s.t / 2;
}

/// Complete (r+1)-partite graph on V_1..V_{r+1} plus a dominating clique V_0.
/// An edge from v in V_i down to V_j (j < i) takes v's sign; V_0 edges are
/// seeded coin flips.
inline ColoredGraph build_lower_bound(const LowerBoundSpec& s) {
  validate(s);
  const int n = s.n();
  std::mt19937_64 rng(s.seed);
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      const int cu = lower_bound_cluster(s, u);
      const int cv = lower_bound_cluster(s, v);
      if (cu == 0 || cv == 0) {
        b.add_edge(u, v, (rng() & 1U) ? Sign::Plus : Sign::Minus);
      } else if (cu != cv) {
        // u < v and both outside V_0, so v sits in the higher-indexed cluster
        b.add_edge(u, v, lower_bound_positive(s, v) ? Sign::Plus : Sign::Minus);
      }
    }
  return b.build();
}

/// Balanced complete 4-partite graph on 4k vertices; edges touching part 0 are -1.
inline ColoredGraph build_turan_square(int k) {
  require(k >= 2, ErrorKind::InvalidArgument, "Turan square construction needs k >= 2");
  GraphBuilder b(4 * k);
  for (Vertex u = 0; u < 4 * k; ++u)
    for (Vertex v = u + 1; v < 4 * k; ++v)
      if (u / k != v / k) b.add_edge(u, v, (u / k == 0 || v / k == 0) ? Sign::Minus : Sign::Plus);
  return b.build();
}

/// 5r(r+1)m, the two-sided bound on f(H^r) for build_lower_bound outputs.
inline long long predicted_bound(int r, int m) {
  require(r >= 3 && m >= 0, ErrorKind::InvalidArgument, "predicted bound needs r >= 3 and m >= 0");
  return 5LL * r * (r + 1) * m;
}

}  // namespace posadisc
