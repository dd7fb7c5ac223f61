#include <gtest/gtest.h>

#include <random>
#include <set>

#include "posadisc/claims.hpp"
#include "posadisc/constructions.hpp"
#include "posadisc/templates.hpp"
#include "oracle.hpp"

using namespace posadisc;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Stage;
}

ClaimConfig plus_to_minus(int r, Sign cross) {
  return {r, CliqueType::plus_clique(), CliqueType::minus_clique(), cross};
}

}  // namespace

TEST(Template, Validate) {
  Template single{3, {}};
  single.add(Cycle{0, 1, 2, 3});
  EXPECT_EQ(validate_template(single), 1);

  Template uneven{3, {}};
  uneven.add(Cycle{0, 1, 2, 3}, 2).add(Cycle{0, 1, 2, 4});
  EXPECT_EQ(kind_of([&] { validate_template(uneven); }), ErrorKind::InvalidArgument);

  Template too_short{3, {}};
  too_short.add(Cycle{0, 1, 2});
  EXPECT_EQ(kind_of([&] { validate_template(too_short); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { Template{3, {}}.add(Cycle{0, 1, 2, 3}, 0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { validate_template(Template{3, {}}); }), ErrorKind::InvalidArgument);
}

TEST(Template, Discrepancy) {
  Template t{3, {}};
  t.add(Cycle{0, 1, 2, 3});
  EXPECT_EQ(template_discrepancy(complete_graph(4), t), 12);
  t.add(Cycle{0, 1, 2, 3}, 2);
  EXPECT_EQ(template_discrepancy(complete_graph(4), t), 36);
}

TEST(Tiling, ValidateAndDiscrepancy) {
  const auto k8 = complete_graph(8);
  Tiling good{3, {Cycle{0, 1, 2, 3}, Cycle{4, 5, 6, 7}}};
  EXPECT_TRUE(validate_tiling(k8, good));
  EXPECT_EQ(tiling_discrepancy(k8, good), 24);

  Tiling overlap{3, {Cycle{0, 1, 2, 3}, Cycle{4, 5, 6, 0}}};
  EXPECT_EQ(kind_of([&] { validate_tiling(k8, overlap); }), ErrorKind::InvalidArgument);
  Tiling partial{3, {Cycle{0, 1, 2, 3}}};
  EXPECT_EQ(kind_of([&] { validate_tiling(k8, partial); }), ErrorKind::InvalidArgument);

  const auto lb = build_lower_bound({3, 2, 0, 0});
  Tiling anti{3, {Cycle{0, 2, 4, 6}, Cycle{1, 3, 5, 7}}};
  EXPECT_EQ(tiling_discrepancy(lb, anti), 0);
  Tiling bad{3, {Cycle{0, 1, 2, 3}, Cycle{4, 5, 6, 7}}};
  EXPECT_EQ(kind_of([&] { validate_tiling(lb, bad); }), ErrorKind::Containment);
}

TEST(ClaimCycles, Lengths) {
  for (int r = 2; r <= 8; ++r) {
    const auto c = claim_cycles(r);
    EXPECT_EQ(c.c1.length(), static_cast<std::size_t>(r + 1));
    EXPECT_EQ(c.c2.length(), static_cast<std::size_t>(r + 2));
    EXPECT_EQ(c.c3.length(), static_cast<std::size_t>(r + 2));
    EXPECT_EQ(c.c4.length(), static_cast<std::size_t>(r * r + 3 * r + 3));
  }
  EXPECT_EQ(claim_cycles(3).c4.length(), 21u);
  EXPECT_EQ(claim_cycles(4).c4.length(), 31u);
}

// both templates cover x_1..x_{r+1}, x', y_1..y_{r+1}, y' exactly r+1 times
TEST(ClaimTemplates, EqualCoverage) {
  for (int r = 2; r <= 8; ++r) {
    const auto t = claim_templates(r);
    EXPECT_EQ(validate_template(t.first), r + 1);
    EXPECT_EQ(validate_template(t.second), r + 1);
    EXPECT_EQ(t.first.support(), t.second.support());
    EXPECT_EQ(t.first.support().size(), static_cast<std::size_t>(2 * (r + 2)));
  }
}

TEST(ClaimTemplates, FirstTemplateIsScaledSum) {
  const ClaimConfig cfg = plus_to_minus(3, Sign::Plus);
  const auto g = build_claim_gadget(cfg);
  const auto c = claim_cycles(3);
  const auto t = claim_templates(3);
  EXPECT_EQ(template_discrepancy(g, t.first), 4 * (power_discrepancy(g, c.c2, 3) + power_discrepancy(g, c.c3, 3)));
}

TEST(ClaimDifference, Examples) {
  const int r = 3;
  const GadgetLayout L{r};
  EXPECT_EQ(template_difference(plus_to_minus(r, Sign::Plus)), -6);
  EXPECT_EQ(template_difference(plus_to_minus(r, Sign::Minus)), 6);
  // plus-star Y with head y_1, which is not y_{r+1}
  const ClaimConfig b_case{r, CliqueType::plus_clique(), CliqueType::plus_star(L.y(1)), Sign::Plus};
  EXPECT_EQ(identify_claim(b_case).kase, ClaimCase::HeadNotLast);
  EXPECT_EQ(template_difference(b_case), 6);
  const ClaimConfig both_stars{r, CliqueType::plus_star(L.x(1)), CliqueType::plus_star(L.y(1)), Sign::Plus};
  EXPECT_EQ(identify_claim(both_stars).claim, Claim::PlusStarHeadToPlusStar);
  EXPECT_EQ(template_difference(both_stars), 12);
}

TEST(ClaimFormulas, CycleValueExamples) {
  const int r = 3;
  const GadgetLayout L{r};
  const auto c = claim_cycles(r);
  const auto g = build_claim_gadget(plus_to_minus(r, Sign::Plus));
  ASSERT_EQ(g.sign(L.x_prime(), L.x(1)), 1);
  EXPECT_EQ(*oracle::power_value(g, c.c1.vertices(), r), 12);

  const ClaimConfig dstar{r, CliqueType::minus_star(L.x(1)), CliqueType::plus_star(L.y(1)), Sign::Plus};
  const auto gd = build_claim_gadget(dstar);
  EXPECT_EQ(*oracle::power_value(gd, c.c1.vertices(), r), 12);
  EXPECT_EQ(*oracle::power_value(gd, c.c2.vertices(), r), 3);

  const ClaimConfig cc{r, CliqueType::plus_star(L.x(1)), CliqueType::plus_star(L.y(1)), Sign::Plus};
  EXPECT_EQ(*oracle::power_value(build_claim_gadget(cc), c.c4.vertices(), r), -15);
}

TEST(ClaimConfigs, UnrealizableRejected) {
  const int r = 3;
  const GadgetLayout L{r};
  // minus clique to plus clique is not one of the claims
  const ClaimConfig swapped{r, CliqueType::minus_clique(), CliqueType::plus_clique(), Sign::Plus};
  EXPECT_EQ(kind_of([&] { identify_claim(swapped); }), ErrorKind::Unrealizable);
  // star head outside its clique
  const ClaimConfig stray{r, CliqueType::plus_clique(), CliqueType::plus_star(L.x(1)), Sign::Plus};
  EXPECT_EQ(kind_of([&] { build_claim_gadget(stray); }), ErrorKind::Unrealizable);
  EXPECT_EQ(kind_of([] { enumerate_claim_configs(2); }), ErrorKind::InvalidArgument);
}

TEST(ClaimConfigs, VerifyReportPasses) {
  for (int r = 3; r <= 5; ++r) {
    const auto rep = verify_claim_formulas(r);
    EXPECT_TRUE(rep.pass()) << "r=" << r;
    // every claim and sub-case shows up
    std::set<std::pair<int, int>> seen;
    for (const auto& c : rep.checks)
      seen.insert({static_cast<int>(c.identity.claim), static_cast<int>(c.identity.kase)});
    EXPECT_EQ(seen.size(), 6u) << "r=" << r;
  }
  EXPECT_EQ(enumerate_claim_configs(3).size(), 24u);
}

TEST(SwapTemplates, PairOnCliqueDiffers) {
  // {0,1} sits at cyclic distance 1 before the swap and 2 after it
  GraphBuilder b(complete_graph(5));
  b.set_edge(0, 1, Sign::Minus);
  const auto g = b.build();
  const auto [a, c] = swap_template_pair({0, 1, 2, 3, 4}, 3);
  EXPECT_EQ(validate_template(a), validate_template(c));
  EXPECT_EQ(template_discrepancy(g, a), *oracle::power_value(g, {0, 1, 2, 3, 4}, 3));
  EXPECT_EQ(template_discrepancy(g, c), *oracle::power_value(g, {0, 2, 1, 3, 4}, 3));
  EXPECT_NE(template_discrepancy(g, a), template_discrepancy(g, c));
}

TEST(TemplateProperty, NegationFlipsSign) {
  std::mt19937_64 rng(21);
  for (int it = 0; it < 30; ++it) {
    const auto g = oracle::random_graph(8, 1.0, rng);
    Template t{3, {}};
    std::vector<Vertex> a{0, 1, 2, 3, 4}, b{5, 6, 7, 0, 1};
    std::shuffle(a.begin(), a.end(), rng);
    t.add(Cycle(a), 2).add(Cycle(b));
    EXPECT_EQ(template_discrepancy(g.negated(), t), -template_discrepancy(g, t));
    EXPECT_EQ(template_discrepancy(g, t), 2 * *oracle::power_value(g, a, 3) + *oracle::power_value(g, b, 3));
  }
}
