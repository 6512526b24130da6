#include <gtest/gtest.h>

#include <random>

#include "jtlab/completion.hpp"
#include "jtlab/dual.hpp"
#include "test_support.hpp"

namespace jtlab {
namespace {

using testing::chain;
using testing::v_tree;

const NodeId r{0}, a{1}, b{2};
constexpr NodeId kEmpty = CompletedTree::empty_segment();

TEST(Completion, Sizes) {
  EXPECT_EQ(complete(chain(1)).size(), 2U);
  EXPECT_EQ(complete(chain(2)).size(), 3U);
  EXPECT_EQ(complete(v_tree()).size(), 4U);
  EXPECT_EQ(complete(Tree{}).size(), 1U);
}

TEST(Completion, VTreeShape) {
  auto c = complete(v_tree());
  const Tree& t = c.tree();
  EXPECT_EQ(t.roots().size(), 1U);
  EXPECT_EQ(t.roots()[0], kEmpty);
  EXPECT_EQ(t.parent(c.embed(r)), kEmpty);
  EXPECT_EQ(t.parent(c.embed(a)), c.embed(r));
  EXPECT_EQ(t.parent(c.embed(b)), c.embed(r));
  EXPECT_EQ(c.members(c.embed(a)), (NodeSet{r, a}));
  EXPECT_TRUE(c.members(kEmpty).empty());
}

TEST(Completion, EmbeddingPreservesOrder) {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 50; ++iter) {
    Tree base = testing::random_tree(rng, 9);
    auto c = complete(base);
    for (std::uint32_t x = 0; x < 9; ++x) {
      for (std::uint32_t y = 0; y < 9; ++y) {
        EXPECT_EQ(c.tree().is_ancestor(c.embed(NodeId(x)), c.embed(NodeId(y))),
                  base.is_ancestor(NodeId(x), NodeId(y)));
      }
      EXPECT_TRUE(is_initial_segment(base, c.members(c.embed(NodeId(x)))));
    }
  }
}

TEST(Completion, IdempotentUpToTheNewEmptySegment) {
  std::mt19937_64 rng(62);
  for (int iter = 0; iter < 20; ++iter) {
    auto once = complete(testing::random_tree(rng, 8));
    auto twice = complete(once.tree());
    ASSERT_EQ(twice.size(), once.size() + 1);
    // Only the fresh ∅ is new; below it sits a copy of the first completion.
    EXPECT_EQ(twice.tree().children(kEmpty).size(), 1U);
    for (std::uint32_t s = 0; s < once.size(); ++s) {
      auto p = once.tree().parent(NodeId(s));
      auto q = twice.tree().parent(twice.embed(NodeId(s)));
      ASSERT_TRUE(q.has_value());
      EXPECT_EQ(*q, p ? twice.embed(*p) : kEmpty);
    }
  }
}

TEST(InitialSegments, Recognition) {
  Tree c = chain(3);
  EXPECT_TRUE(is_initial_segment(c, NodeSet{}));
  EXPECT_TRUE(is_initial_segment(c, NodeSet{r, a}));
  EXPECT_FALSE(is_initial_segment(c, NodeSet{a, b}));
  EXPECT_FALSE(is_initial_segment(v_tree(), NodeSet{r, a, b}));
}

TEST(EFunctional, Examples) {
  auto c = complete(chain(2));
  JTFunctional chi{{r, 1}, {a, 1}};
  EXPECT_EQ(e_functional(c, c.embed(a), chi), 1);
  EXPECT_EQ(e_functional(c, kEmpty, chi), 0);
  EXPECT_EQ(e_functional(c, c.embed(a), JTFunctional{{r, 1}}), 0);
}

TEST(OperatorF, Examples) {
  auto c = complete(chain(2));
  auto f = operator_F(c, JTFunctional{{r, 1}, {a, 1}});
  EXPECT_EQ(f.values, (std::vector<Rational>{0, 1, 1}));
  EXPECT_EQ(f.sup_norm, 1);

  auto zero = operator_F(c, JTFunctional{});
  EXPECT_EQ(zero.values, (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(zero.sup_norm, 0);

  JTFunctional diff{{a, 1}, {r, -1}};
  auto d = operator_F(c, diff);
  EXPECT_EQ(d.values, (std::vector<Rational>{0, -1, 1}));
  EXPECT_LE(d.sup_norm.get_d(), dual_norm(chain(2), diff).upper);
}

TEST(OperatorF, NormOneInjectiveAndPointMassPairing) {
  std::mt19937_64 rng(63);
  for (int iter = 0; iter < 25; ++iter) {
    Tree base = testing::random_tree(rng, 8);
    auto c = complete(base);
    JTFunctional x = testing::random_functional(rng, 8, 0.5);
    auto f = operator_F(c, x);
    EXPECT_LE(f.sup_norm.get_d(), dual_norm(base, x).upper);
    bool all_zero = std::all_of(f.values.begin(), f.values.end(), [](const Rational& v) { return sgn(v) == 0; });
    EXPECT_EQ(all_zero, x.is_zero());
    for (std::uint32_t s = 0; s < c.size(); ++s) {
      EXPECT_EQ(pair_with_point_mass(f, NodeId(s)), e_functional(c, NodeId(s), x));
    }
  }
}

}  // namespace
}  // namespace jtlab
