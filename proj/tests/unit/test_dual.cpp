#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "jtlab/dual.hpp"
#include "jtlab/errors.hpp"
#include "test_support.hpp"

namespace jtlab {
namespace {

using testing::chain;
using testing::star;
using testing::v_tree;

const NodeId r{0}, a{1}, b{2};

TEST(Functionals, ChiSegment) {
  EXPECT_EQ(chi_segment(chain(1), Segment{r, r}), (JTFunctional{{r, 1}}));
  EXPECT_EQ(chi_segment(chain(2), Segment{r, a}), (JTFunctional{{r, 1}, {a, 1}}));
  EXPECT_EQ(chi_segment(v_tree(), Segment{a, a}), (JTFunctional{{a, 1}}));
}

TEST(Functionals, Pairing) {
  EXPECT_EQ(pair(JTFunctional{{r, 1}, {a, 1}}, JTVector{{r, 1}, {a, 1}}), 2);
  EXPECT_EQ(pair(JTFunctional{}, JTVector{{r, 1}}), 0);
  EXPECT_EQ(pair(JTFunctional{{a, 1}}, JTVector{{r, 5}, {a, -3}}), -3);
}

TEST(DualNorm, ZeroFunctional) {
  auto br = dual_norm(v_tree(), JTFunctional{});
  EXPECT_EQ(br.lower, 0.0);
  EXPECT_EQ(br.upper, 0.0);
  EXPECT_TRUE(br.tolerance_met);
}

TEST(DualNorm, AnalyticChainDifference) {
  // max x_a - x_r subject to |x_r + x_a| <= 1, x_r^2 + x_a^2 <= 1 is sqrt(2).
  Tree c = chain(2);
  JTFunctional x{{a, 1}, {r, -1}};
  auto br = dual_norm(c, x);
  EXPECT_TRUE(br.contains(std::sqrt(2.0)));
  EXPECT_LE(br.width(), 1e-6);
  EXPECT_EQ(verify_bracket(c, x, br), "");
}

TEST(DualNorm, SegmentFunctionalsHaveNormOne) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 10; ++iter) {
    Tree tree = testing::random_tree(rng, 1 + rng() % 7);
    for (const auto& s : enumerate_segments(tree)) {
      JTFunctional x = chi_segment(tree, s);
      auto br = dual_norm(tree, x);
      ASSERT_TRUE(br.contains(1.0)) << br.lower << " " << br.upper;
      EXPECT_LE(br.width(), 1e-6);
      EXPECT_EQ(verify_bracket(tree, x, br), "");
    }
  }
}

TEST(DualNorm, L2LawOnAntichainCones) {
  Tree v = v_tree();
  auto root2 = l2_combination_check(v, {Segment{a, a}, Segment{b, b}}, {1, 1}, 1e-6);
  EXPECT_TRUE(root2.holds);
  EXPECT_DOUBLE_EQ(root2.expected, std::sqrt(2.0));
  auto one = l2_combination_check(v, {Segment{a, a}, Segment{b, b}}, {1, 0}, 1e-6);
  EXPECT_TRUE(one.holds);
  auto five = l2_combination_check(v, {Segment{a, a}, Segment{b, b}}, {3, 4}, 1e-6);
  EXPECT_TRUE(five.holds);
  EXPECT_TRUE(five.bracket.contains(5.0, 1e-6));
  EXPECT_THROW(l2_combination_check(chain(2), {Segment{r, r}, Segment{a, a}}, {1, 1}, 1e-6), PreconditionError);
}

TEST(DualNorm, L2LawOnRandomCones) {
  std::mt19937_64 rng(42);
  for (int iter = 0; iter < 20; ++iter) {
    Tree tree = testing::random_tree(rng, 10);
    NodeSet bottoms = testing::random_antichain(rng, tree, 2 + rng() % 2);
    if (bottoms.size() < 2) continue;
    std::vector<Segment> segs;
    std::vector<Rational> weights;
    for (NodeId t : bottoms) {
      auto up = testing::cone(tree, t);
      segs.push_back(make_segment(tree, t, up[rng() % up.size()]));
      weights.push_back(testing::random_rational(rng, 4, 3));
    }
    EXPECT_TRUE(l2_combination_check(tree, segs, weights, 1e-6).holds);
  }
}

TEST(DualNorm, ExhaustiveConstraintsLandInsideBracket) {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 15; ++iter) {
    const std::size_t n = 2 + rng() % 5;
    Tree tree = testing::random_tree(rng, n);
    JTFunctional x = testing::random_functional(rng, n);
    if (x.is_zero()) continue;
    auto br = dual_norm(tree, x);
    auto all = restricted_optimum(tree, x, enumerate_disjoint_families(tree, 1 << 16), 1e-10);
    EXPECT_GE(all.value, br.lower - 1e-7);
    EXPECT_LE(all.value, br.upper + 1e-7);
  }
}

TEST(DualNorm, AddingConstraintsNeverIncreasesOptimum) {
  std::mt19937_64 rng(44);
  for (int iter = 0; iter < 15; ++iter) {
    Tree tree = testing::random_tree(rng, 6);
    JTFunctional x = testing::random_functional(rng, 6);
    if (x.is_zero()) continue;
    auto families = enumerate_disjoint_families(tree, 1 << 16);
    std::shuffle(families.begin(), families.end(), rng);
    std::vector<SegmentFamily> few(families.begin(), families.begin() + 3);
    std::vector<SegmentFamily> more(families.begin(), families.begin() + 10);
    EXPECT_LE(restricted_optimum(tree, x, more).value, restricted_optimum(tree, x, few).value + 1e-7);
  }
}

TEST(DualNorm, RandomBracketsVerifyAndScale) {
  std::mt19937_64 rng(45);
  for (int iter = 0; iter < 15; ++iter) {
    Tree tree = testing::random_tree(rng, 12);
    JTFunctional x = testing::random_functional(rng, 12);
    auto br = dual_norm(tree, x);
    EXPECT_EQ(verify_bracket(tree, x, br), "");
    EXPECT_LE(br.lower, br.upper);
    Rational lambda = -3;
    auto scaled = dual_norm(tree, x.scaled(lambda));
    // Both brackets hold the same true value, so they must overlap.
    EXPECT_LE(scaled.lower, 3 * br.upper + 1e-12);
    EXPECT_LE(3 * br.lower, scaled.upper + 1e-12);
    EXPECT_TRUE(scaled.tolerance_met);
  }
}

TEST(DualNorm, TinyBudgetStillSound) {
  std::mt19937_64 rng(46);
  Tree tree = testing::random_tree(rng, 20);
  JTFunctional x = testing::random_functional(rng, 20);
  auto br = dual_norm(tree, x, DualOptions{1e-12, 1});
  EXPECT_EQ(br.iterations, 1);
  EXPECT_FALSE(br.tolerance_met);
  EXPECT_EQ(verify_bracket(tree, x, br), "");
}

TEST(DualNorm, VerifierRejectsTamperedBrackets) {
  Tree c = chain(2);
  JTFunctional x{{a, 1}, {r, -1}};
  auto br = dual_norm(c, x);

  auto low = br;
  low.upper = 1.0;
  EXPECT_NE(verify_bracket(c, x, low), "");

  auto fat = br;
  fat.witness = fat.witness.scaled(2);
  EXPECT_NE(verify_bracket(c, x, fat), "");

  auto broken = br;
  broken.residual.add(a, 1);
  EXPECT_NE(verify_bracket(c, x, broken), "");
}

TEST(DualNorm, RejectsBadOptions) {
  EXPECT_THROW(dual_norm(chain(1), JTFunctional{{r, 1}}, DualOptions{0.0, 10}), PreconditionError);
  EXPECT_THROW(dual_norm(chain(1), JTFunctional{{r, 1}}, DualOptions{1e-6, 0}), PreconditionError);
}

TEST(SupportHull, BetweenSupportNodes) {
  Tree c = chain(5);
  EXPECT_EQ(support_hull(c, NodeSet{NodeId(1), NodeId(3)}), (NodeSet{NodeId(1), NodeId(2), NodeId(3)}));
  Tree s = star(3);
  EXPECT_EQ(support_hull(s, NodeSet{NodeId(1), NodeId(2)}), (NodeSet{NodeId(1), NodeId(2)}));
}

}  // namespace
}  // namespace jtlab
