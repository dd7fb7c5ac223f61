#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/pipeline/model.hpp"
#include "posadisc/pipeline/params.hpp"

namespace posadisc {

/// A tracked set dropped below (d-eps)^{2r}|U_j|/2.
struct SurvivalViolation {
  int step = 0;      // index i of the vertex just chosen
  int position = 0;  // j
  std::size_t size = 0;
  double floor = 0;
};

/// Positions run from -r+1 to t+r. Positions 1..t receive the chosen vertices;
/// the r positions on either side are the buffer sets whose final state
/// certifies the endpoints can be extended.
struct PathState {
  int r = 0;
  int t = 0;
  std::vector<Vertex> vertices;                 // p_1..p_t
  std::vector<std::vector<Vertex>> head_sets;   // H_{t,j}, j = -r+1..0
  std::vector<std::vector<Vertex>> tail_sets;   // H_{t,j}, j = t+1..t+r
  std::vector<double> head_floor, tail_floor;   // (d-eps)^{2r}|U_j|/2
  std::vector<SurvivalViolation> violations;
  double min_survival_ratio = 1e300;            // min |H_{i,j}| / floor over the run

  bool endpoints_extensible() const {
    for (std::size_t i = 0; i < head_sets.size(); ++i)
      if (static_cast<double>(head_sets[i].size()) < head_floor[i]) return false;
    for (std::size_t i = 0; i < tail_sets.size(); ++i)
      if (static_cast<double>(tail_sets[i].size()) < tail_floor[i]) return false;
    return true;
  }
};

/// Greedy vertex selection in regular pairs. `clusters[k]` and `candidates[k]`
/// describe position k - r + 1. p_i is taken from H_{i-1,i} with
/// deg(p_i, H_{i-1,j}) > (d-eps)|H_{i-1,j}| for every unfilled j within distance r;
/// candidates are tried by the smallest ratio, then the ratio sum, then the
/// lowest id. A dead end backtracks to the previous position's next candidate
/// (at most `node_limit` placements); exhaustion is a Stage error naming the
/// deepest position reached.
inline PathState find_path_vertices(const ClusterModel& model, const std::vector<int>& clusters,
                                    const std::vector<std::vector<Vertex>>& candidates, int r,
                                    long long node_limit = 200000) {
  require(r >= 1, ErrorKind::InvalidArgument, "r must be at least 1");
  require(clusters.size() == candidates.size() && clusters.size() >= static_cast<std::size_t>(2 * r),
          ErrorKind::InvalidArgument, "need one candidate set per position and 2r buffer positions");
  const int total = static_cast<int>(clusters.size());
  const int t = total - 2 * r;
  const double de = model.d - model.eps;
  const double shrink = std::pow(de, 2 * r) / 2.0;
  auto idx = [&](int pos) { return static_cast<std::size_t>(pos + r - 1); };
  for (int k = 0; k + 1 < total; ++k)
    for (int q = k + 1; q < total && q <= k + r; ++q)
      require(clusters[k] != clusters[q] && model.reduced.has_edge(clusters[k], clusters[q]), ErrorKind::InvalidArgument,
              "cluster route is not the r-th power of a path at position " + std::to_string(k - r + 1));

  std::vector<double> floor(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) floor[k] = shrink * static_cast<double>(candidates[k].size());
  const auto& g = model.ground;

  // qualifying candidates for position i, best first
  auto options = [&](const std::vector<std::vector<Vertex>>& h, int i) {
    std::vector<int> watch;
    for (int j = i - r; j <= i + r; ++j)
      if (j != i && j >= -r + 1 && j <= t + r && (j <= 0 || j > i)) watch.push_back(j);
    struct Scored {
      double mn, sum;
      Vertex v;
    };
    std::vector<Scored> out;
    for (Vertex c : h[idx(i)]) {
      double mn = 1e300, sum = 0;
      bool ok = true;
      for (int j : watch) {
        const auto& hj = h[idx(j)];
        int deg = 0;
        for (Vertex x : hj) deg += g.has_edge(c, x);
        if (hj.empty() || !(deg > de * static_cast<double>(hj.size()))) {
          ok = false;
          break;
        }
        const double ratio = static_cast<double>(deg) / static_cast<double>(hj.size());
        mn = std::min(mn, ratio);
        sum += ratio;
      }
      if (ok) out.push_back({mn, sum, c});
    }
    std::stable_sort(out.begin(), out.end(), [](const Scored& a, const Scored& b) {
      if (a.mn != b.mn) return a.mn > b.mn;
      if (a.sum != b.sum) return a.sum > b.sum;
      return a.v < b.v;
    });
    std::vector<Vertex> vs;
    for (const auto& x : out) vs.push_back(x.v);
    return vs;
  };

  struct Level {
    std::vector<std::vector<Vertex>> h;  // sets before the choice at this level
    std::vector<Vertex> opts;
    std::size_t next = 0;
    std::vector<SurvivalViolation> violations;
    double min_ratio = 1e300;
  };
  std::vector<Level> stack;
  std::vector<std::vector<Vertex>> h = candidates;
  long long nodes = 0;
  int deepest = 1;
  int i = 1;
  if (t > 0) stack.push_back({h, options(h, 1), 0, {}, 1e300});
  while (i <= t) {
    Level& lv = stack.back();
    if (lv.next >= lv.opts.size() || nodes >= node_limit) {
      require(stack.size() > 1 && nodes < node_limit, ErrorKind::Stage,
              "path vertices: no qualifying candidate at position " + std::to_string(deepest) + " of " +
                  std::to_string(t));
      stack.pop_back();
      --i;
      continue;
    }
    ++nodes;
    const Vertex best = lv.opts[lv.next++];
    h = lv.h;
    lv.violations.clear();
    lv.min_ratio = 1e300;
    for (int j = -r + 1; j <= t + r; ++j) {
      if (j == i) continue;
      auto& hj = h[idx(j)];
      if (std::abs(j - i) <= r)
        std::erase_if(hj, [&](Vertex x) { return !g.has_edge(best, x); });
      else
        std::erase(hj, best);
      if (j > i || j <= 0) {
        const double fl = floor[idx(j)];
        if (fl > 0) lv.min_ratio = std::min(lv.min_ratio, static_cast<double>(hj.size()) / fl);
        if (static_cast<double>(hj.size()) < fl) lv.violations.push_back({i, j, hj.size(), fl});
      }
    }
    h[idx(i)] = {best};
    ++i;
    deepest = std::max(deepest, i);
    if (i <= t) stack.push_back({h, options(h, i), 0, {}, 1e300});
  }

  PathState st;
  st.r = r;
  st.t = t;
  for (const Level& lv : stack) {
    st.vertices.push_back(lv.opts[lv.next - 1]);
    st.violations.insert(st.violations.end(), lv.violations.begin(), lv.violations.end());
    st.min_survival_ratio = std::min(st.min_survival_ratio, lv.min_ratio);
  }
  for (int j = -r + 1; j <= 0; ++j) {
    st.head_sets.push_back(h[idx(j)]);
    st.head_floor.push_back(floor[idx(j)]);
  }
  for (int j = t + 1; j <= t + r; ++j) {
    st.tail_sets.push_back(h[idx(j)]);
    st.tail_floor.push_back(floor[idx(j)]);
  }
  return st;
}

}  // namespace posadisc
