#pragma once

// σ′Q helpers for tests: random supports and the ambient prefix-closed
// truncation, built by listing every prefix of every support node.

#include <map>
#include <random>
#include <set>
#include <vector>

#include "jtlab/sigma_q.hpp"
#include "test_support.hpp"

namespace jtlab::testing {

/// Up to `max_size` distinct nodes with entries from a small pool of rationals,
/// so that prefixes are frequently shared.
inline SqSupport random_sq_support(std::mt19937_64& rng, std::size_t max_size, std::size_t max_len = 3) {
  static const std::vector<Rational> pool = {Rational(1, 3), Rational(1, 2), Rational(2, 3), Rational(3, 4),
                                             Rational(1)};
  SqSupport out;
  const std::size_t target = 1 + rng() % max_size;
  while (out.size() < target) {
    std::vector<Rational> entries;
    std::size_t idx = rng() % 2;  // start low so longer sequences fit
    const std::size_t len = 1 + rng() % max_len;
    while (entries.size() < len && idx < pool.size()) {
      entries.push_back(pool[idx]);
      idx += 1 + rng() % 2;
    }
    out[RationalSeq(std::move(entries))] = random_rational(rng, 4, 3);  // zero values allowed
  }
  return out;
}

struct Ambient {
  Parents parents;
  Tree tree;
  JTVector values;
};

inline Ambient ambient_truncation(const SqSupport& support) {
  std::set<RationalSeq> nodes;
  for (const auto& [seq, _] : support) {
    for (std::size_t n = 1; n <= seq.length(); ++n) nodes.insert(seq.prefix(n));
  }
  std::map<RationalSeq, std::uint32_t> id;
  for (const auto& s : nodes) id.emplace(s, static_cast<std::uint32_t>(id.size()));
  Ambient out;
  out.parents.resize(nodes.size());
  for (const auto& [s, i] : id) {
    if (s.length() > 1) out.parents[i] = NodeId(id.at(s.prefix(s.length() - 1)));
  }
  out.tree = Tree::from_parents(out.parents);
  for (const auto& [s, v] : support) out.values.set(NodeId(id.at(s)), v);
  return out;
}

}  // namespace jtlab::testing
