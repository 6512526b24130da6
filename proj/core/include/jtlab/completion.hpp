#pragma once

#include <optional>
#include <vector>

#include "jtlab/norm.hpp"

namespace jtlab {

/// The tree T̄ of initial segments (downward-closed chains) of a base tree,
/// ordered by inclusion.
///
/// Node 0 of `tree()` is the empty segment; every other node is stored by its
/// maximal element in the base tree. For a finite base these are exactly
/// [0,t] for t ∈ T, and t ↦ [0,t] is the order embedding T ⊂ T̄.
class CompletedTree {
 public:
  static CompletedTree build(const Tree& base);

  const Tree& base() const { return base_; }
  const Tree& tree() const { return tree_; }
  std::size_t size() const { return tree_.size(); }

  static constexpr NodeId empty_segment() { return NodeId(0); }
  /// The node [0,t].
  NodeId embed(NodeId t) const;
  /// max(s), or nullopt for the empty segment.
  std::optional<NodeId> maximum(NodeId s) const;
  /// The initial segment as a node set of the base tree.
  NodeSet members(NodeId s) const;

 private:
  Tree base_;
  Tree tree_;
  std::vector<std::optional<NodeId>> max_of_;
  std::vector<NodeId> embed_;
};

/// T̄ of `base`.
CompletedTree complete(const Tree& base);

/// True if `nodes` is a downward-closed chain of `tree`.
bool is_initial_segment(const Tree& tree, const NodeSet& nodes);

/// e_s(x*) = lim_{t∈s} x*(χ_{{t}}): the coefficient at max(s), and 0 for ∅.
Rational e_functional(const CompletedTree& completed, NodeId s, const JTFunctional& functional);

/// F(x*) = (s ↦ e_s(x*)) on T̄, with its sup-norm.
struct FunctionOnCompletion {
  std::vector<Rational> values;  // indexed by completed-tree node
  Rational sup_norm;
};
FunctionOnCompletion operator_F(const CompletedTree& completed, const JTFunctional& functional);

/// ⟨F(x*), δ_s⟩, the pairing with the point mass at s.
Rational pair_with_point_mass(const FunctionOnCompletion& function, NodeId s);

}  // namespace jtlab
