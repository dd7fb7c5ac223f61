#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/pipeline/params.hpp"

namespace posadisc {

struct PairStat {
  Vertex x = 0;  // cluster ids, x < y
  Vertex y = 0;
  double density = 0;
  int min_degree = 0;
  int attempts = 0;
};

/// Clusters V_0..V_{l-1} of m vertices each (cluster c holds ids [cm, (c+1)m)),
/// followed by the synthetic exceptional vertices. Every reduced edge XY is
/// realised as a random bipartite graph whose edges all carry f_R(X, Y).
struct ClusterModel {
  ColoredGraph reduced;
  ColoredGraph ground;
  int m = 0;
  double d = 0;
  double eps = 0;
  std::vector<int> cluster_of;  // -1 for exceptional vertices
  std::vector<PairStat> pairs;

  int clusters() const noexcept { return reduced.n(); }
  int exceptional_count() const noexcept { return ground.n() - reduced.n() * m; }
  Vertex vertex(int cluster, int index) const noexcept { return cluster * m + index; }

  std::vector<Vertex> members(int cluster) const {
    std::vector<Vertex> out(static_cast<std::size_t>(m));
    std::iota(out.begin(), out.end(), cluster * m);
    return out;
  }

  std::vector<Vertex> exceptional_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = reduced.n() * m; v < ground.n(); ++v) out.push_back(v);
    return out;
  }

  int degree_into(Vertex v, int cluster) const {
    int k = 0;
    for (int i = 0; i < m; ++i) k += ground.has_edge(v, vertex(cluster, i));
    return k;
  }
};

namespace detail {

inline int ceil_tol(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

}  // namespace detail

/// Seeded binomial pairs at density d, repaired so every vertex has at least
/// ceil((d-eps)m) neighbours across each realised pair (super-regular by
/// construction) and regenerated until the density is within eps of d.
inline ClusterModel synthesize_model(const ColoredGraph& reduced, const PipelineParams& p) {
  check_params(p);
  require(p.m * p.d >= 1.0, ErrorKind::InvalidArgument, "cluster size too small for density: m*d < 1");
  const int l = reduced.n();
  const int m = p.m;
  const int n = l * m + p.exceptional;
  const int need = detail::ceil_tol((p.d - p.eps) * m);

  ClusterModel model;
  model.reduced = reduced;
  model.m = m;
  model.d = p.d;
  model.eps = p.eps;
  model.cluster_of.assign(static_cast<std::size_t>(n), -1);
  for (Vertex v = 0; v < l * m; ++v) model.cluster_of[static_cast<std::size_t>(v)] = v / m;

  GraphBuilder b(n);
  for (const auto& e : reduced.edges()) {
    auto rng = stream(p.seed, Stream::Pair, static_cast<std::uint64_t>(e.u) * static_cast<std::uint64_t>(l) + e.v);
    std::vector<char> adj(static_cast<std::size_t>(m) * m);
    PairStat stat{e.u, e.v, 0, 0, 0};
    for (;;) {
      require(++stat.attempts <= 200, ErrorKind::Stage,
              "model: could not realise pair (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
      for (auto& a : adj) a = unit(rng) < p.d;
      auto repair = [&](bool rows) {
        for (int i = 0; i < m; ++i) {
          auto at = [&](int j) -> char& {
            return rows ? adj[static_cast<std::size_t>(i) * m + j] : adj[static_cast<std::size_t>(j) * m + i];
          };
          int deg = 0;
          for (int j = 0; j < m; ++j) deg += at(j);
          while (deg < need) {
            const int j = static_cast<int>(below(rng, static_cast<std::uint64_t>(m)));
            if (!at(j)) {
              at(j) = 1;
              ++deg;
            }
          }
        }
      };
      repair(true);
      repair(false);
      const long long edges = std::count(adj.begin(), adj.end(), 1);
      stat.density = static_cast<double>(edges) / (static_cast<double>(m) * m);
      if (std::abs(stat.density - p.d) <= p.eps) break;
    }
    stat.min_degree = m;
    for (int i = 0; i < m; ++i) {
      int row = 0, col = 0;
      for (int j = 0; j < m; ++j) {
        row += adj[static_cast<std::size_t>(i) * m + j];
        col += adj[static_cast<std::size_t>(j) * m + i];
      }
      stat.min_degree = std::min({stat.min_degree, row, col});
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (adj[static_cast<std::size_t>(i) * m + j]) b.add_edge(e.u * m + i, e.v * m + j, e.label);
    model.pairs.push_back(stat);
  }

  // exceptional vertices: ceil(d m) neighbours in every cluster, labels are coin flips
  const int ex_deg = std::min(m, detail::ceil_tol(p.d * m));
  for (int k = 0; k < p.exceptional; ++k) {
    auto rng = stream(p.seed, Stream::Exceptional, static_cast<std::uint64_t>(k));
    const Vertex v = l * m + k;
    for (int c = 0; c < l; ++c) {
      std::vector<int> idx(static_cast<std::size_t>(m));
      std::iota(idx.begin(), idx.end(), 0);
      for (int i = 0; i < ex_deg; ++i) {
        const auto j = i + static_cast<int>(below(rng, static_cast<std::uint64_t>(m - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        b.add_edge(v, c * m + idx[static_cast<std::size_t>(i)], (rng() & 1U) ? Sign::Plus : Sign::Minus);
      }
    }
  }
  model.ground = b.build();
  return model;
}

/// min_degree(R) >= (c - 2d - 2eps)|R|, exactly.
inline bool verify_reduced_degree(const ColoredGraph& reduced, const Rational& c, const Rational& d,
                                  const Rational& eps) {
  return Rational(min_degree(reduced)) >= (c - Rational(2) * d - Rational(2) * eps) * Rational(reduced.n());
}

/// Each cluster i becomes ids i*k .. i*k+k-1; copies of adjacent clusters are
/// completely joined in colour f_R, copies of one cluster are independent.
inline ColoredGraph blow_up_reduced(const ColoredGraph& reduced, int k) {
  require(k >= 1, ErrorKind::InvalidArgument, "blow-up factor must be at least 1");
  GraphBuilder b(reduced.n() * k);
  for (const auto& e : reduced.edges())
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c) b.add_edge(e.u * k + a, e.v * k + c, e.label);
  return b.build();
}

struct SliceReport {
  int samples = 0;
  int within = 0;
  double fraction() const noexcept { return samples == 0 ? 1.0 : static_cast<double>(within) / samples; }
};

/// Random half-slices of realised pairs; counts those whose density stays
/// within 2 eps of the full pair density.
inline SliceReport slicing_check(const ClusterModel& model, int samples, std::uint64_t seed) {
  require(samples >= 0, ErrorKind::InvalidArgument, "sample count must be non-negative");
  SliceReport rep;
  if (model.pairs.empty()) return rep;
  auto rng = stream(seed, Stream::Slice, 0);
  const int half = std::max(1, model.m / 2);
  for (int s = 0; s < samples; ++s) {
    const PairStat& pr = model.pairs[below(rng, model.pairs.size())];
    auto pick = [&](int cluster) {
      std::vector<Vertex> v = model.members(cluster);
      for (int i = 0; i < half; ++i)
        std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i + static_cast<int>(below(rng, static_cast<std::uint64_t>(model.m - i))))]);
      v.resize(static_cast<std::size_t>(half));
      return v;
    };
    const auto xs = pick(pr.x);
    const auto ys = pick(pr.y);
    long long e = 0;
    for (Vertex a : xs)
      for (Vertex c : ys) e += model.ground.has_edge(a, c);
    const double dens = static_cast<double>(e) / (static_cast<double>(half) * half);
    ++rep.samples;
    if (std::abs(dens - pr.density) <= 2 * model.eps) ++rep.within;
  }
  return rep;
}

}  // namespace posadisc
