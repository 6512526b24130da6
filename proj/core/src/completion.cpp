#include "jtlab/completion.hpp"

#include <algorithm>

#include "jtlab/errors.hpp"

namespace jtlab {

bool is_initial_segment(const Tree& tree, const NodeSet& nodes) {
  NodeSet s = normalize(nodes);
  for (NodeId v : s) {
    if (!tree.contains(v)) return false;
  }
  if (!is_chain(tree, s)) return false;
  return std::all_of(s.begin(), s.end(), [&](NodeId v) {
    auto p = tree.parent(v);
    return !p || std::binary_search(s.begin(), s.end(), *p);
  });
}

CompletedTree CompletedTree::build(const Tree& base) {
  CompletedTree out;
  out.base_ = base;
  const std::size_t n = base.size();
  std::vector<std::optional<NodeId>> parents(n + 1);
  out.max_of_.assign(n + 1, std::nullopt);
  out.embed_.resize(n);
  // A finite downward-closed chain is ∅ or has a maximum t, and is then [0,t].
  for (std::size_t i = 0; i < n; ++i) {
    NodeId t(static_cast<std::uint32_t>(i));
    NodeId s(static_cast<std::uint32_t>(i + 1));
    out.embed_[i] = s;
    out.max_of_[s.index()] = t;
    auto p = base.parent(t);
    parents[s.index()] = p ? NodeId(p->value + 1) : empty_segment();
  }
  out.tree_ = Tree::from_parents(parents);
  return out;
}

NodeId CompletedTree::embed(NodeId t) const {
  base_.check(t);
  return embed_[t.index()];
}

std::optional<NodeId> CompletedTree::maximum(NodeId s) const {
  tree_.check(s);
  return max_of_[s.index()];
}

NodeSet CompletedTree::members(NodeId s) const {
  auto m = maximum(s);
  if (!m) return {};
  return normalize(base_.ancestors(*m));
}

CompletedTree complete(const Tree& base) { return CompletedTree::build(base); }

Rational e_functional(const CompletedTree& completed, NodeId s, const JTFunctional& functional) {
  auto m = completed.maximum(s);
  if (!m) return Rational(0);
  return functional.at(*m);
}

FunctionOnCompletion operator_F(const CompletedTree& completed, const JTFunctional& functional) {
  functional.check(completed.base());
  FunctionOnCompletion out;
  out.values.reserve(completed.size());
  out.sup_norm = 0;
  for (std::size_t i = 0; i < completed.size(); ++i) {
    Rational v = e_functional(completed, NodeId(static_cast<std::uint32_t>(i)), functional);
    if (abs(v) > out.sup_norm) out.sup_norm = abs(v);
    out.values.push_back(std::move(v));
  }
  return out;
}

Rational pair_with_point_mass(const FunctionOnCompletion& function, NodeId s) {
  if (s.index() >= function.values.size()) throw InvalidNode("point mass outside the completed tree");
  return function.values[s.index()];
}

}  // namespace jtlab
