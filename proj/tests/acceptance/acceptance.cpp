// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Reference values come from oracle.hpp (brute force) or, for the claim
// identities, from closed forms written out below.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "posadisc/posadisc.hpp"
#include "oracle.hpp"

using namespace posadisc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (sec > limit_seconds) {
    out.pass = false;
    out.detail += " [over the " + std::to_string(static_cast<int>(limit_seconds)) + " s limit]";
  }
  if (!out.pass) ++failures;
  std::printf("%s criterion %d: %s (%s; %.1f s)\n", out.pass ? "PASS" : "FAIL", id, name.c_str(), out.detail.c_str(), sec);
  std::fflush(stdout);
}

std::string str(long long v) { return std::to_string(v); }

// ---- 1: template identities ----

struct Forms {
  long long c1, c2, c3, c4, diff;
};

// closed forms from the case analysis, with a = f(x',x_1), b = f(y',y_1), c = f(x_1,y_1)
std::optional<Forms> closed_forms(const ClaimConfig& cfg, long long a, long long b, long long c) {
  const long long r = cfg.r;
  const GadgetLayout L{cfg.r};
  // the claims are about the tiles X, Y; a star headed at x' or y' is uniform on the tile
  auto on_tile = [](CliqueType t, Vertex prime) {
    if (t.is_star() && *t.head == prime)
      return t.kind == CliqueKind::PlusStar ? CliqueType::minus_clique() : CliqueType::plus_clique();
    return t;
  };
  const auto x = on_tile(cfg.x_type, L.x_prime());
  const auto y = on_tile(cfg.y_type, L.y_prime());
  const bool y_plus_star = y.kind == CliqueKind::PlusStar;
  const bool head_last = y_plus_star && *y.head == L.y(cfg.r + 1);
  if (x.kind == CliqueKind::PlusClique && y.kind == CliqueKind::MinusClique)
    return Forms{r * r - r + 2 * r * a, r * r + 2 * r * a, -r * r + 2 * r * b,
                 -r * r * r - r * r + r + 2 * r * c + 2 * r * (r + 1) * b, -2 * r * c};
  if (x.kind == CliqueKind::PlusClique && y_plus_star) {
    if (head_last)
      return Forms{r * r - r + 2 * r * a, r * r + 2 * r * a, -r * (r - 2), -r * r * r + r * r + 3 * r + 2 * r * c,
                   -2 * r * c};
    return Forms{r * r - r + 2 * r * a, r * r + 2 * r * a, -r * (r - 2), -r * r * r + r * r + r, 2 * r};
  }
  if (x.kind == CliqueKind::MinusStar && *x.head == L.x(1) && y_plus_star) {
    if (head_last)
      return Forms{r * (r + 1), r * (r - 2), -r * (r - 2), -r * r * r + r * r + 3 * r + 2 * r * c, -4 * r - 2 * r * c};
    return Forms{r * (r + 1), r * (r - 2), -r * (r - 2), -r * r * r + r * r + r, -2 * r};
  }
  if (x.kind == CliqueKind::PlusStar && *x.head == L.x(1) && y_plus_star && *y.head == L.y(1))
    return Forms{-r * (r + 1), -r * (r - 2), -r * (r - 2), -r * r * r + r * r + r, 4 * r};
  return std::nullopt;
}

Outcome template_identities() {
  int configs = 0, mismatches = 0;
  std::ostringstream bad;
  for (int r = 3; r <= 5; ++r) {
    const auto cyc = claim_cycles(r);
    const GadgetLayout L{r};
    std::set<std::string> cases;
    for (const auto& cfg : enumerate_claim_configs(r)) {
      ++configs;
      const auto g = build_claim_gadget(cfg);
      const auto want = closed_forms(cfg, g.sign(L.x_prime(), L.x(1)), g.sign(L.y_prime(), L.y(1)), g.sign(L.x(1), L.y(1)));
      if (!want) {
        ++mismatches;
        bad << " r=" << r << " unexpected config " << cfg.x_type.describe() << "/" << cfg.y_type.describe();
        continue;
      }
      const long long o1 = *oracle::power_value(g, cyc.c1.vertices(), r);
      const long long o2 = *oracle::power_value(g, cyc.c2.vertices(), r);
      const long long o3 = *oracle::power_value(g, cyc.c3.vertices(), r);
      const long long o4 = *oracle::power_value(g, cyc.c4.vertices(), r);
      const long long odiff = (r + 1) * (o2 + o3) - (o1 + r * o2 + o4);
      const bool ok = o1 == want->c1 && o2 == want->c2 && o3 == want->c3 && o4 == want->c4 && odiff == want->diff &&
                      power_discrepancy(g, cyc.c1, r) == want->c1 && power_discrepancy(g, cyc.c2, r) == want->c2 &&
                      power_discrepancy(g, cyc.c3, r) == want->c3 && power_discrepancy(g, cyc.c4, r) == want->c4 &&
                      template_difference(g, cfg) == want->diff;
      if (!ok) {
        ++mismatches;
        bad << " r=" << r << " " << cfg.x_type.describe() << "/" << cfg.y_type.describe();
      }
      cases.insert(to_string(identify_claim(cfg).claim) + ":" + to_string(identify_claim(cfg).kase));
    }
    if (cases.size() != 6) {
      ++mismatches;
      bad << " r=" << r << " covers " << cases.size() << " of 6 claim cases";
    }
  }
  return {mismatches == 0 && configs > 0,
          str(configs) + " configurations over r=3..5, " + str(mismatches) + " mismatches" + bad.str()};
}

// ---- 2: C4 length and template coverage ----

Outcome c4_and_coverage() {
  std::ostringstream bad;
  for (int r = 2; r <= 8; ++r) {
    const auto c = claim_cycles(r);
    if (static_cast<long long>(c.c4.length()) != r * r + 3 * r + 3) bad << " |C4| r=" << r;
    const auto t = claim_templates(r);
    for (const Template* f : {&t.first, &t.second}) {
      // count occurrences directly
      std::map<Vertex, int> occ;
      for (const auto& [cy, k] : f->entries)
        for (Vertex v : cy.vertices()) occ[v] += k;
      bool even = occ.size() == static_cast<std::size_t>(2 * (r + 2));
      for (const auto& [_, k] : occ) even = even && k == r + 1;
      if (!even || validate_template(*f) != r + 1) bad << " coverage r=" << r;
    }
  }
  return {bad.str().empty(), "r=2..8" + bad.str()};
}

// ---- 3: classification iff square equation ----

bool square_oracle(const ColoredGraph& g, int k) {
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      for (int c = b + 1; c < k; ++c)
        for (int d = c + 1; d < k; ++d) {
          const int p1 = oracle::sign_of(g, a, b) + oracle::sign_of(g, c, d);
          const int p2 = oracle::sign_of(g, a, c) + oracle::sign_of(g, b, d);
          const int p3 = oracle::sign_of(g, a, d) + oracle::sign_of(g, b, c);
          if (p1 != p2 || p2 != p3) return false;
        }
  return true;
}

ColoredGraph coloring(int k, std::uint32_t mask) {
  GraphBuilder b(k);
  int bit = 0;
  for (Vertex u = 0; u < k; ++u)
    for (Vertex v = u + 1; v < k; ++v, ++bit) b.add_edge(u, v, (mask >> bit) & 1U ? Sign::Plus : Sign::Minus);
  return b.build();
}

Outcome classification() {
  long long checked = 0, bad = 0, typed = 0;
  for (int k = 4; k <= 6; ++k) {
    std::vector<Vertex> ids(static_cast<std::size_t>(k));
    std::iota(ids.begin(), ids.end(), 0);
    const VertexSet s(ids);
    const std::uint32_t pairs = static_cast<std::uint32_t>(k * (k - 1) / 2);
    for (std::uint32_t mask = 0; mask < (1U << pairs); ++mask) {
      const auto g = coloring(k, mask);
      const bool sq = square_oracle(g, k);
      const bool has_type = classify_clique(g, s).has_value();
      bad += (sq != has_type) || (square_equation_holds(g, s) != sq);
      typed += has_type;
      ++checked;
    }
  }
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    bad += !classify_clique(coloring(3, mask), VertexSet{0, 1, 2}).has_value();
    ++checked;
  }
  return {bad == 0, str(checked) + " colourings of K3..K6, " + str(typed) + " typed K4..K6, " + str(bad) + " disagreements"};
}

// ---- 4: tightness at m = 0 ----

Outcome tightness() {
  const auto lb = build_lower_bound({3, 2, 0, 0});
  long long count = 0, nonzero = 0;
  oracle::each_power(lb, 3, [&](const std::vector<Vertex>&, long long v) {
    ++count;
    nonzero += v != 0;
  });
  std::size_t lib = enumerate_hamilton_powers(lb, 3, [&](const std::vector<Vertex>&, long long v) { nonzero += v != 0; });

  const auto sq = build_turan_square(2);
  long long count2 = 0;
  oracle::each_power(sq, 2, [&](const std::vector<Vertex>&, long long v) {
    ++count2;
    nonzero += v != 0;
  });
  const bool ok = nonzero == 0 && count > 0 && count2 > 0 && static_cast<long long>(lib) * 2 == count;
  return {ok, str(count) + " directed H^3 orderings of the lower-bound graph, " + str(count2) +
                  " H^2 orderings of the Turan square, " + str(nonzero) + " nonzero"};
}

// ---- 5: bound with m = 1 ----

Outcome bound_m1() {
  long long worst = 0;
  int bad = 0;
  const long long bound = 5LL * 3 * 4 * 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = build_lower_bound({3, 2, 1, seed});
    const auto want = oracle::max_abs_power(g, 3);
    const auto got = max_abs_discrepancy_power(g, 3);
    if (!want || !got.optimal() || got.abs_value() != *want) ++bad;
    if (want) worst = std::max(worst, *want);
    if (!want || *want > bound) ++bad;
  }
  return {bad == 0, "max |f(H^3)| over 20 seeds = " + str(worst) + " <= " + str(bound) + ", " + str(bad) + " failures"};
}

// ---- 6: branch and bound against brute force ----

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  int bad = 0, optimal = 0, none = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 7 + i % 2;
    const int r = 2 + (i / 2) % 2;
    const double density = r == 2 ? 0.88 : 0.96;
    const auto g = oracle::random_graph(n, density, rng);
    const auto want = oracle::max_abs_power(g, r);
    const auto got = max_abs_discrepancy_power(g, r);
    if (want) {
      ++optimal;
      bad += !(got.optimal() && got.abs_value() == *want && oracle::power_value(g, got.ordering, r) == got.value);
    } else {
      ++none;
      bad += got.outcome != SearchOutcome::NoneExists;
    }
  }
  return {bad == 0, "100 graphs: " + str(optimal) + " optimal, " + str(none) + " without a power, " + str(bad) +
                        " disagreements"};
}

// ---- 7: triangle factors on 6 vertices ----

Outcome triangle_factors() {
  int graphs = 0, bad = 0;
  for (std::uint32_t mask = 0; mask < (1U << 15); ++mask) {
    const auto g = coloring(6, mask);  // all pairs present; drop the zero bits
    GraphBuilder b(6);
    for (const auto& e : g.edges())
      if (e.label == Sign::Plus) b.add_edge(e.u, e.v, Sign::Plus);
    const auto h = b.build();
    if (min_degree(h) < 4) continue;
    ++graphs;
    const auto t = perfect_clique_tiling(h, 2);
    bool ok = t.has_value() && t->cycles.size() == 2;
    if (ok) {
      std::set<Vertex> cover;
      for (const auto& c : t->cycles) {
        ok = ok && c.length() == 3 && oracle::is_clique(h, c.vertices());
        cover.insert(c.begin(), c.end());
      }
      ok = ok && cover.size() == 6;
    }
    bad += !ok;
  }
  return {bad == 0 && graphs > 0, str(graphs) + " graphs with min degree >= 4, " + str(bad) + " without a triangle factor"};
}

// ---- 8: pipeline contracts ----

ColoredGraph varied_k8(std::uint64_t seed) {
  // even seeds keep the all-plus colouring; odd seeds draw f_R at random
  std::mt19937_64 rng(seed + 1000);
  GraphBuilder b(8);
  for (Vertex u = 0; u < 8; ++u)
    for (Vertex v = u + 1; v < 8; ++v)
      b.add_edge(u, v, seed % 2 ? ((rng() & 1) ? Sign::Plus : Sign::Minus) : Sign::Plus);
  return b.build();
}

Outcome pipeline_contracts() {
  int good = 0, survival_fired = 0;
  std::ostringstream fails;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PipelineParams p;
    p.r = 3;
    p.m = 64;
    p.d = 0.5;
    p.eps = 0.05;
    p.alpha = 0.1;
    p.seed = seed;
    const auto R = varied_k8(seed);
    const Tiling tiling{3, {Cycle{0, 1, 2, 3}, Cycle{4, 5, 6, 7}}};
    try {
      const auto model = synthesize_model(R, p);
      const auto rep = assemble_hamilton_power(model, tiling, p);
      const int n = model.ground.n();
      // permutation, simple 2r-regular power, contained, discrepancy recomputed
      std::vector<Vertex> sorted = rep.ordering;
      std::sort(sorted.begin(), sorted.end());
      bool ok = static_cast<int>(sorted.size()) == n;
      for (int i = 0; ok && i < n; ++i) ok = sorted[static_cast<std::size_t>(i)] == i;
      const auto mul = oracle::power_mul(rep.ordering, 3);
      std::vector<int> partners(static_cast<std::size_t>(n), 0);
      for (const auto& [e, k] : mul) {
        ok = ok && k == 1;
        ++partners[static_cast<std::size_t>(e.first)];
        ++partners[static_cast<std::size_t>(e.second)];
      }
      for (int x : partners) ok = ok && x == 6;
      const auto f = oracle::power_value(model.ground, rep.ordering, 3);
      ok = ok && f.has_value() && *f == rep.discrepancy;
      long long fr = 0;
      for (const auto& c : tiling.cycles) fr += *oracle::power_value(R, c.vertices(), 3);
      ok = ok && f && std::llabs(*f - 64 * fr) <= 0.1 * n;
      if (!rep.survival_violations.empty()) ++survival_fired;
      if (ok) ++good;
      else fails << " seed " << seed << " dev " << (f ? std::llabs(*f - 64 * fr) : -1);
    } catch (const Error& e) {
      fails << " seed " << seed << " " << to_string(e.kind());
    }
  }
  return {good >= 95 && survival_fired == 0,
          str(good) + "/100 seeds valid and within 0.1 n, survival floor fired on " + str(survival_fired) + " runs" +
              fails.str()};
}

// ---- 9: shared-prefix determinism ----

Outcome shared_prefix() {
  const std::string dir = POSADISC_SAMPLES;
  const auto R = load_graph(dir + "/k13_reduced.json");
  const auto j1 = read_json_file(dir + "/k13_tiling_c1.json");
  const auto j2 = read_json_file(dir + "/k13_tiling_c2.json");
  const auto t1 = tiling_from_json(j1);
  const auto t2 = tiling_from_json(j2);
  const int shared = j1.at("shared").get<int>();
  // first tile where the two tilings differ
  int first_diff = 0;
  while (first_diff < static_cast<int>(t1.cycles.size()) && t1.cycles[first_diff] == t2.cycles[first_diff]) ++first_diff;
  int bad = 0, events = 0;
  std::ostringstream info;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    PipelineParams p;
    p.r = t1.r;
    p.m = 64;
    p.seed = seed;
    p.shared = shared;
    const auto model = synthesize_model(R, p);
    const auto a = assemble_hamilton_power(model, t1, p);
    const auto b = assemble_hamilton_power(model, t2, p);
    // P_i runs from tile i to tile i+1, so P_0..P_{first_diff-2} are fixed before the first differing tile
    std::vector<TraceEvent> ea, eb;
    for (const auto& e : a.trace)
      if (e.stage == "connect" && e.index + 1 < first_diff) ea.push_back(e);
    for (const auto& e : b.trace)
      if (e.stage == "connect" && e.index + 1 < first_diff) eb.push_back(e);
    std::size_t prefix = 0;
    while (prefix < a.trace.size() && prefix < b.trace.size() && a.trace[prefix] == b.trace[prefix]) ++prefix;
    bad += ea.empty() || ea != eb || prefix < ea.size();
    events += static_cast<int>(ea.size());
    info << " seed " << seed << ": common prefix " << prefix << "/" << a.trace.size();
  }
  return {bad == 0, "tilings differ from tile " + str(first_diff) + ", " + str(events) + " shared vertex choices compared;" +
                        info.str()};
}

// ---- 10: negation equivariance ----

Outcome negation() {
  std::mt19937_64 rng(77);
  int bad = 0;
  for (int i = 0; i < 50; ++i) {
    const int r = 2 + static_cast<int>(rng() % 3);
    const int tiles = 2 + static_cast<int>(rng() % 2);
    const int n = tiles * (r + 1) + static_cast<int>(rng() % 3);
    const auto g = oracle::random_graph(n, 1.0, rng);
    const auto neg = g.negated();

    std::vector<Vertex> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const int len = r + 1 + static_cast<int>(rng() % (n - r));
    const Cycle c(std::vector<Vertex>(perm.begin(), perm.begin() + len));
    bad += power_discrepancy(neg, c, r) != -power_discrepancy(g, c, r);

    Template t{r, {}};
    t.add(c, 2);
    bad += template_discrepancy(neg, t) != -template_discrepancy(g, t);

    // cut a shuffled vertex list into simple cycles of length >= r+1
    std::shuffle(perm.begin(), perm.end(), rng);
    Tiling tl{r, {}};
    std::size_t at = 0;
    for (int k = 0; k < tiles; ++k) {
      const std::size_t size = k + 1 == tiles ? perm.size() - at : static_cast<std::size_t>(r + 1);
      tl.cycles.emplace_back(std::vector<Vertex>(perm.begin() + at, perm.begin() + at + size));
      at += size;
    }
    const long long f = tiling_discrepancy(g, tl);
    long long o = 0;
    for (const auto& cy : tl.cycles) o += *oracle::power_value(g, cy.vertices(), r);
    bad += tiling_discrepancy(neg, tl) != -f || f != o;
  }
  return {bad == 0, "50 triples, " + str(bad) + " violations"};
}

}  // namespace

int main() {
  run(1, "template identities match the closed forms", 10, template_identities);
  run(2, "|C4| = r^2+3r+3 and both templates cover each vertex r+1 times", 1, c4_and_coverage);
  run(3, "clique types are exactly the square-equation colourings", 30, classification);
  run(4, "every contained power of the m=0 construction has discrepancy 0", 120, tightness);
  run(5, "m=1 construction stays within 5r(r+1)m", 600, bound_m1);
  run(6, "branch and bound equals brute force", 300, oracle_equivalence);
  run(7, "6-vertex graphs with min degree 4 have a triangle factor", 120, triangle_factors);
  run(8, "pipeline output is a simple 2r-regular power within alpha n", 600, pipeline_contracts);
  run(9, "shared-prefix determinism", 120, shared_prefix);
  run(10, "negation flips every discrepancy", 10, negation);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
