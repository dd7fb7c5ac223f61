#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "posadisc/cliques.hpp"
#include "posadisc/cycle_power.hpp"
#include "posadisc/error.hpp"
#include "posadisc/graph.hpp"
#include "posadisc/templates.hpp"

namespace posadisc {

/// Vertex layout of the 2(r+2)-vertex gadget built on two (r+2)-cliques
/// X' = {x_1..x_{r+1}, x'} and Y' = {y_1..y_{r+1}, y'}. Indices are 1-based.
struct GadgetLayout {
  int r = 0;

  int size() const noexcept { return 2 * (r + 2); }
  Vertex x(int i) const noexcept { return i - 1; }
  Vertex x_prime() const noexcept { return r + 1; }
  Vertex y(int i) const noexcept { return r + 2 + (i - 1); }
  Vertex y_prime() const noexcept { return 2 * r + 3; }

  VertexSet x_side() const {
    std::vector<Vertex> v;
    for (int i = 1; i <= r + 1; ++i) v.push_back(x(i));
    return VertexSet(std::move(v));
  }
  VertexSet y_side() const {
    std::vector<Vertex> v;
    for (int i = 1; i <= r + 1; ++i) v.push_back(y(i));
    return VertexSet(std::move(v));
  }
  VertexSet x_clique() const {
    auto v = x_side().ids();
    v.push_back(x_prime());
    return VertexSet(std::move(v));
  }
  VertexSet y_clique() const {
    auto v = y_side().ids();
    v.push_back(y_prime());
    return VertexSet(std::move(v));
  }
};

/// Types of the two (r+2)-cliques plus the colour of x_1 y_1. Star heads are
/// gadget vertex ids.
struct ClaimConfig {
  int r = 3;
  CliqueType x_type;
  CliqueType y_type;
  Sign cross_sign = Sign::Plus;

  GadgetLayout layout() const { return {r}; }
};

/// The four edge-distribution claims between tiles of different types.
enum class Claim { PlusToMinus, PlusToPlusStar, MinusStarHeadToPlusStar, PlusStarHeadToPlusStar };
enum class ClaimCase { Single, HeadIsLast, HeadNotLast };

inline std::string to_string(Claim c) {
  switch (c) {
    case Claim::PlusToMinus: return "plus-clique-to-minus-clique";
    case Claim::PlusToPlusStar: return "plus-clique-to-plus-star";
    case Claim::MinusStarHeadToPlusStar: return "minus-star-head-to-plus-star";
    case Claim::PlusStarHeadToPlusStar: return "plus-star-head-to-plus-star";
  }
  return "unknown";
}

inline std::string to_string(ClaimCase c) {
  switch (c) {
    case ClaimCase::Single: return "single";
    case ClaimCase::HeadIsLast: return "head-is-y_{r+1}";
    case ClaimCase::HeadNotLast: return "head-not-y_{r+1}";
  }
  return "unknown";
}

struct ClaimIdentity {
  Claim claim;
  ClaimCase kase;
};

namespace detail {

inline void label_clique(GraphBuilder& b, const VertexSet& s, const CliqueType& type) {
  if (type.is_star())
    require(type.head && s.contains(*type.head), ErrorKind::Unrealizable, "star head must lie in its clique");
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) b.add_edge(s[i], s[j], type.expected_label(s[i], s[j]));
}

/// Labels from x_1 to `targets` (which must start with y_1) making {x_1} u targets
/// one of the four clique types with f(x_1, y_1) fixed. Must be unique.
inline std::vector<Sign> solve_cross_labels(const ColoredGraph& partial, Vertex x1,
                                            const std::vector<Vertex>& targets, Sign cross) {
  const std::size_t k = targets.size();
  std::optional<std::vector<Sign>> found;
  int solutions = 0;
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    std::vector<Sign> labels(k);
    for (std::size_t i = 0; i < k; ++i) labels[i] = ((mask >> i) & 1U) ? Sign::Plus : Sign::Minus;
    if (labels[0] != cross) continue;
    GraphBuilder b(partial);
    for (std::size_t i = 0; i < k; ++i) b.add_edge(x1, targets[i], labels[i]);
    std::vector<Vertex> members = targets;
    members.push_back(x1);
    if (classify_clique(b.build(), VertexSet(members))) {
      ++solutions;
      found = labels;
    }
  }
  require(solutions == 1, ErrorKind::Unrealizable,
          solutions == 0 ? "no structured colouring of the cross edges exists"
                         : "cross-edge colouring is not determined by the configuration");
  return *found;
}

inline ColoredGraph clique_pair_graph(const ClaimConfig& cfg) {
  const GadgetLayout L = cfg.layout();
  GraphBuilder b(L.size());
  label_clique(b, L.x_clique(), cfg.x_type);
  label_clique(b, L.y_clique(), cfg.y_type);
  return b.build();
}

}  // namespace detail

/// Which claim (and sub-case) the configuration instantiates; throws Unrealizable otherwise.
inline ClaimIdentity identify_claim(const ClaimConfig& cfg) {
  require(cfg.r >= 3, ErrorKind::InvalidArgument, "claim configurations need r >= 3");
  const GadgetLayout L = cfg.layout();
  const ColoredGraph g = detail::clique_pair_graph(cfg);
  const auto x = classify_clique(g, L.x_side());
  const auto y = classify_clique(g, L.y_side());
  require(x && y, ErrorKind::Unrealizable, "tile colourings are not structured");

  auto is = [](const std::optional<CliqueType>& t, CliqueKind k) { return t->kind == k; };
  std::optional<ClaimIdentity> id;
  if (is(x, CliqueKind::PlusClique) && is(y, CliqueKind::MinusClique)) {
    id = ClaimIdentity{Claim::PlusToMinus, ClaimCase::Single};
  } else if (is(x, CliqueKind::PlusClique) && is(y, CliqueKind::PlusStar)) {
    id = ClaimIdentity{Claim::PlusToPlusStar,
                       *y->head == L.y(cfg.r + 1) ? ClaimCase::HeadIsLast : ClaimCase::HeadNotLast};
  } else if (is(x, CliqueKind::MinusStar) && *x->head == L.x(1) && is(y, CliqueKind::PlusStar)) {
    id = ClaimIdentity{Claim::MinusStarHeadToPlusStar,
                       *y->head == L.y(cfg.r + 1) ? ClaimCase::HeadIsLast : ClaimCase::HeadNotLast};
  } else if (is(x, CliqueKind::PlusStar) && *x->head == L.x(1) && is(y, CliqueKind::PlusStar) &&
             *y->head == L.y(1)) {
    id = ClaimIdentity{Claim::PlusStarHeadToPlusStar, ClaimCase::Single};
  }
  require(id.has_value(), ErrorKind::Unrealizable, "configuration matches none of the tile-pair claims");

  // The (r+2)-cliques must themselves be structured; for star tiles the head stays in the tile.
  if (y->kind == CliqueKind::PlusStar)
    require(cfg.y_type.kind == CliqueKind::PlusStar && cfg.y_type.head == y->head, ErrorKind::Unrealizable,
            "extension of a plus-star tile must be a plus-star with the same head");
  return *id;
}

/// Gadget graph on X' u Y' with the cross edges the claims use:
/// x_1 to y_1..y_r, and additionally x_1 y_{r+1} when x_1 sees all of Y.
inline ColoredGraph build_claim_gadget(const ClaimConfig& cfg) {
  const ClaimIdentity id = identify_claim(cfg);
  const GadgetLayout L = cfg.layout();
  const ColoredGraph base = detail::clique_pair_graph(cfg);
  std::vector<Vertex> targets;
  const int reach = id.claim == Claim::PlusStarHeadToPlusStar ? cfg.r + 1 : cfg.r;
  for (int i = 1; i <= reach; ++i) targets.push_back(L.y(i));
  const auto labels = detail::solve_cross_labels(base, L.x(1), targets, cfg.cross_sign);
  GraphBuilder b(base);
  for (std::size_t i = 0; i < targets.size(); ++i) b.add_edge(L.x(1), targets[i], labels[i]);
  return b.build();
}

struct ClaimCycles {
  Cycle c1, c2, c3, c4;
};

/// C1 = (x_2..x_{r+1}, x'), C2 = (x_1..x_{r+1}, x'), C3 = (y_1..y_{r+1}, y'),
/// C4 = x_1, y_1..y_r, then for k = r..1 the row y_{r+1}, y', (y_1..y_r without y_k),
/// then a final row y_{r+1}, y', y_1..y_r.
inline ClaimCycles claim_cycles(int r) {
  require(r >= 2, ErrorKind::InvalidArgument, "claim cycles need r >= 2");
  const GadgetLayout L{r};
  std::vector<Vertex> c1, c2, c3, c4;
  for (int i = 2; i <= r + 1; ++i) c1.push_back(L.x(i));
  c1.push_back(L.x_prime());
  for (int i = 1; i <= r + 1; ++i) c2.push_back(L.x(i));
  c2.push_back(L.x_prime());
  for (int i = 1; i <= r + 1; ++i) c3.push_back(L.y(i));
  c3.push_back(L.y_prime());

  c4.push_back(L.x(1));
  for (int i = 1; i <= r; ++i) c4.push_back(L.y(i));
  for (int skip = r; skip >= 0; --skip) {
    c4.push_back(L.y(r + 1));
    c4.push_back(L.y_prime());
    for (int i = 1; i <= r; ++i)
      if (i != skip) c4.push_back(L.y(i));
  }
  return {Cycle(c1), Cycle(c2), Cycle(c3), Cycle(c4)};
}

inline ClaimCycles build_claim_cycles(const ClaimConfig& cfg) {
  identify_claim(cfg);
  return claim_cycles(cfg.r);
}

struct ClaimTemplates {
  Template first;   // (r+1) x C2, (r+1) x C3
  Template second;  // C1, r x C2, C4
};

inline ClaimTemplates claim_templates(int r) {
  const ClaimCycles c = claim_cycles(r);
  ClaimTemplates t{{r, {}}, {r, {}}};
  t.first.add(c.c2, r + 1).add(c.c3, r + 1);
  t.second.add(c.c1).add(c.c2, r).add(c.c4);
  return t;
}

inline ClaimTemplates build_claim_templates(const ClaimConfig& cfg) {
  identify_claim(cfg);
  return claim_templates(cfg.r);
}

/// f(F1) - f(F2) by direct enumeration over a graph using the gadget layout.
inline long long template_difference(const ColoredGraph& g, const ClaimConfig& cfg) {
  const ClaimTemplates t = build_claim_templates(cfg);
  return template_discrepancy(g, t.first) - template_discrepancy(g, t.second);
}

inline long long template_difference(const ClaimConfig& cfg) {
  return template_difference(build_claim_gadget(cfg), cfg);
}

/// Every clique type of a vertex set: two uniform colourings and one star per head per sign.
inline std::vector<CliqueType> all_clique_types(const VertexSet& s) {
  std::vector<CliqueType> out{CliqueType::plus_clique(), CliqueType::minus_clique()};
  for (Vertex h : s) out.push_back(CliqueType::plus_star(h));
  for (Vertex h : s) out.push_back(CliqueType::minus_star(h));
  return out;
}

/// Realizable configurations in a fixed serialization order: X' type, Y' type, cross sign.
inline std::vector<ClaimConfig> enumerate_claim_configs(int r) {
  require(r >= 3, ErrorKind::InvalidArgument, "claim configurations need r >= 3");
  const GadgetLayout L{r};
  std::vector<ClaimConfig> out;
  for (const auto& xt : all_clique_types(L.x_clique()))
    for (const auto& yt : all_clique_types(L.y_clique()))
      for (Sign cross : {Sign::Plus, Sign::Minus}) {
        ClaimConfig cfg{r, xt, yt, cross};
        try {
          build_claim_gadget(cfg);
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::Unrealizable) continue;
          throw;
        }
        out.push_back(cfg);
      }
  return out;
}

/// Closed forms from the case analysis, as functions of a = f(x', x_1),
/// b = f(y', y_1) and c = f(x_1, y_1).
struct ClaimClosedForms {
  long long c1, c2, c3, c4, difference;
};

inline ClaimClosedForms claim_closed_forms(const ClaimConfig& cfg, const ColoredGraph& gadget) {
  const ClaimIdentity id = identify_claim(cfg);
  const GadgetLayout L = cfg.layout();
  const long long r = cfg.r;
  const long long a = gadget.sign(L.x_prime(), L.x(1));
  const long long b = gadget.sign(L.y_prime(), L.y(1));
  const long long c = gadget.sign(L.x(1), L.y(1));
  const long long r2 = r * r;
  const long long r3 = r2 * r;
  ClaimClosedForms f{};
  switch (id.claim) {
    case Claim::PlusToMinus:
      f.c1 = r2 - r + 2 * r * a;
      f.c2 = r2 + 2 * r * a;
      f.c3 = -r2 + 2 * r * b;
      f.c4 = -r3 - r2 + r + 2 * r * c + 2 * r * (r + 1) * b;
      f.difference = -2 * r * c;
      break;
    case Claim::PlusToPlusStar:
      f.c1 = r2 - r + 2 * r * a;
      f.c2 = r2 + 2 * r * a;
      f.c3 = -r * (r - 2);
      if (id.kase == ClaimCase::HeadIsLast) {
        f.c4 = -r3 + r2 + 3 * r + 2 * r * c;
        f.difference = -2 * r * c;
      } else {
        f.c4 = -r3 + r2 + r;
        f.difference = 2 * r;
      }
      break;
    case Claim::MinusStarHeadToPlusStar:
      f.c1 = r * (r + 1);
      f.c2 = r * (r - 2);
      f.c3 = -r * (r - 2);
      if (id.kase == ClaimCase::HeadIsLast) {
        f.c4 = -r3 + r2 + 3 * r + 2 * r * c;
        f.difference = -4 * r - 2 * r * c;
      } else {
        f.c4 = -r3 + r2 + r;
        f.difference = -2 * r;
      }
      break;
    case Claim::PlusStarHeadToPlusStar:
      f.c1 = -r * (r + 1);
      f.c2 = -r * (r - 2);
      f.c3 = -r * (r - 2);
      f.c4 = -r3 + r2 + r;
      f.difference = 4 * r;
      break;
  }
  return f;
}

struct IdentityCheck {
  std::string name;
  long long enumerated = 0;
  long long closed_form = 0;
  bool pass() const noexcept { return enumerated == closed_form; }
};

struct ConfigCheck {
  ClaimConfig config;
  ClaimIdentity identity;
  std::vector<IdentityCheck> identities;
  bool pass() const {
    for (const auto& i : identities)
      if (!i.pass()) return false;
    return true;
  }
};

struct ClaimReport {
  int r = 0;
  std::vector<ConfigCheck> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass()) return false;
    return !checks.empty();
  }
};

/// Recomputes every f(C_i^r) and f(F1) - f(F2) by enumeration for every
/// realizable configuration and compares against the closed forms.
inline ClaimReport verify_claim_formulas(int r) {
  require(r >= 3, ErrorKind::InvalidArgument, "claim verification needs r >= 3");
  ClaimReport report{r, {}};
  const ClaimCycles cyc = claim_cycles(r);
  for (const auto& cfg : enumerate_claim_configs(r)) {
    const ColoredGraph g = build_claim_gadget(cfg);
    const ClaimClosedForms f = claim_closed_forms(cfg, g);
    ConfigCheck check{cfg, identify_claim(cfg), {}};
    check.identities.push_back({"f(C1)", power_discrepancy(g, cyc.c1, r), f.c1});
    check.identities.push_back({"f(C2)", power_discrepancy(g, cyc.c2, r), f.c2});
    check.identities.push_back({"f(C3)", power_discrepancy(g, cyc.c3, r), f.c3});
    check.identities.push_back({"f(C4)", power_discrepancy(g, cyc.c4, r), f.c4});
    check.identities.push_back({"f(F1)-f(F2)", template_difference(g, cfg), f.difference});
    report.checks.push_back(std::move(check));
  }
  return report;
}

/// Two singleton templates on an (r+2)-clique differing by swapping the 2nd and
/// 3rd vertices: (v1, v2, v3, v4, ...) versus (v1, v3, v2, v4, ...).
inline std::pair<Template, Template> swap_template_pair(const std::vector<Vertex>& clique, int r) {
  require(static_cast<int>(clique.size()) == r + 2, ErrorKind::InvalidArgument,
          "swap templates need exactly r+2 vertices");
  std::vector<Vertex> swapped = clique;
  std::swap(swapped[1], swapped[2]);
  Template a{r, {}};
  Template b{r, {}};
  a.add(Cycle(clique));
  b.add(Cycle(swapped));
  return {a, b};
}

}  // namespace posadisc
