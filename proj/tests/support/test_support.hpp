#pragma once

// Random instance generators and oracles that share no code with the library's
// own algorithms. Trees are handled here as plain parent arrays.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "jtlab/norm.hpp"
#include "jtlab/tree.hpp"

namespace jtlab::testing {

using Parents = std::vector<std::optional<NodeId>>;

/// Random forest on n nodes with shuffled ids. Each node hangs below a random
/// earlier node, or starts a new root with probability `root_prob`.
inline Parents random_parents(std::mt19937_64& rng, std::size_t n, double root_prob = 0.15) {
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0U);
  std::shuffle(label.begin(), label.end(), rng);
  Parents parents(n);
  std::bernoulli_distribution new_root(root_prob);
  for (std::size_t i = 1; i < n; ++i) {
    if (new_root(rng)) continue;
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    parents[label[i]] = NodeId(label[pick(rng)]);
  }
  return parents;
}

inline Tree random_tree(std::mt19937_64& rng, std::size_t n, double root_prob = 0.15) {
  return Tree::from_parents(random_parents(rng, n, root_prob));
}

inline Rational random_rational(std::mt19937_64& rng, int num_range = 5, int den_max = 4) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

/// Each node carries a nonzero entry with probability `density`.
template <class C>
C random_coefficients(std::mt19937_64& rng, std::size_t n, double density = 0.7, int num_range = 5, int den_max = 4) {
  C out;
  std::bernoulli_distribution keep(density);
  for (std::size_t i = 0; i < n; ++i) {
    if (keep(rng)) out.set(NodeId(static_cast<std::uint32_t>(i)), random_rational(rng, num_range, den_max));
  }
  return out;
}

inline JTVector random_vector(std::mt19937_64& rng, std::size_t n, double density = 0.7) {
  return random_coefficients<JTVector>(rng, n, density);
}

inline JTFunctional random_functional(std::mt19937_64& rng, std::size_t n, double density = 0.7) {
  return random_coefficients<JTFunctional>(rng, n, density);
}

/// Nodes on the path from v up to its root, as a bitmask.
inline std::uint64_t path_mask(const Parents& parents, std::uint32_t bottom, std::uint32_t top) {
  std::uint64_t mask = 0;
  std::optional<NodeId> cur = NodeId(bottom);
  while (cur) {
    mask |= std::uint64_t{1} << cur->value;
    if (cur->value == top) return mask;
    cur = parents[cur->index()];
  }
  return 0;  // top is not below bottom's root path
}

/// JT norm squared by exhaustive search over bitmask segments. Independent of
/// the library: segments are found by walking parent pointers, disjointness is
/// a mask test. Intended for n <= 10.
inline Rational oracle_norm_sq(const Parents& parents, const JTVector& f) {
  const std::size_t n = parents.size();
  std::vector<std::uint64_t> masks;
  std::vector<Rational> sums;
  for (std::uint32_t top = 0; top < n; ++top) {
    for (std::uint32_t bottom = 0; bottom < n; ++bottom) {
      std::uint64_t m = path_mask(parents, bottom, top);
      if (m == 0) continue;
      Rational s = 0;
      for (std::uint32_t v = 0; v < n; ++v) {
        if (m >> v & 1U) s += f.at(NodeId(v));
      }
      masks.push_back(m);
      sums.push_back(s * s);
    }
  }
  Rational best = 0;
  auto rec = [&](auto&& self, std::size_t from, std::uint64_t used, const Rational& acc) -> void {
    if (acc > best) best = acc;
    for (std::size_t i = from; i < masks.size(); ++i) {
      if ((masks[i] & used) == 0 && sgn(sums[i]) != 0) self(self, i + 1, used | masks[i], acc + sums[i]);
    }
  };
  rec(rec, 0, 0, Rational(0));
  return best;
}

/// Number of bitmask segments; independent count for enumerate_segments.
inline std::size_t oracle_segment_count(const Parents& parents) {
  std::size_t count = 0;
  for (std::uint32_t top = 0; top < parents.size(); ++top) {
    for (std::uint32_t bottom = 0; bottom < parents.size(); ++bottom) {
      if (path_mask(parents, bottom, top) != 0) ++count;
    }
  }
  return count;
}

/// t ⪯ u by walking parents.
inline bool oracle_ancestor(const Parents& parents, std::uint32_t t, std::uint32_t u) {
  std::optional<NodeId> cur = NodeId(u);
  while (cur) {
    if (cur->value == t) return true;
    cur = parents[cur->index()];
  }
  return false;
}

/// k pairwise incomparable nodes of `tree`, or fewer when none remain.
inline NodeSet random_antichain(std::mt19937_64& rng, const Tree& tree, std::size_t k) {
  std::vector<NodeId> order(tree.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = NodeId(static_cast<std::uint32_t>(i));
  std::shuffle(order.begin(), order.end(), rng);
  NodeSet out;
  for (NodeId v : order) {
    if (out.size() == k) break;
    bool free = std::none_of(out.begin(), out.end(), [&](NodeId w) { return tree.comparable(v, w); });
    if (free) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Nodes in the upward cone of `t`.
inline NodeSet cone(const Tree& tree, NodeId t) {
  NodeSet out;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    NodeId v(static_cast<std::uint32_t>(i));
    if (tree.is_ancestor(t, v)) out.push_back(v);
  }
  return out;
}

inline std::vector<Segment> all_segments_naive(const Tree& tree) {
  std::vector<Segment> out;
  for (std::uint32_t b = 0; b < tree.size(); ++b) {
    for (std::uint32_t t = 0; t < tree.size(); ++t) {
      if (tree.is_ancestor(NodeId(b), NodeId(t))) out.push_back(Segment{NodeId(b), NodeId(t)});
    }
  }
  return out;
}

inline Tree chain(std::size_t n) {
  Parents p(n);
  for (std::size_t i = 1; i < n; ++i) p[i] = NodeId(static_cast<std::uint32_t>(i - 1));
  return Tree::from_parents(p);
}

inline Tree star(std::size_t leaves) {
  Parents p(leaves + 1);
  for (std::size_t i = 1; i <= leaves; ++i) p[i] = NodeId(0);
  return Tree::from_parents(p);
}

/// r = 0 with children a = 1, b = 2.
inline Tree v_tree() { return star(2); }

}  // namespace jtlab::testing
