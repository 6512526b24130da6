#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <vector>

namespace jtlab {

/// Dense node index in [0, n) of the tree it belongs to.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}
  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value; }

/// Sorted (by id), duplicate-free set of nodes.
using NodeSet = std::vector<NodeId>;

/// Sorts and deduplicates in place; returns the argument for chaining.
NodeSet normalize(NodeSet s);

/// Finite rooted forest, ordered so that roots are minimal: s ≺ t when s is a
/// strict ancestor of t. Immutable after construction.
class Tree {
 public:
  Tree() = default;

  /// Builds a forest from a parent array (nullopt marks a root). Throws
  /// PreconditionError on out-of-range parents or cycles.
  static Tree from_parents(std::span<const std::optional<NodeId>> parents);
  static Tree from_parents(std::initializer_list<std::optional<NodeId>> parents) {
    return from_parents(std::span<const std::optional<NodeId>>(parents.begin(), parents.size()));
  }

  std::size_t size() const { return parent_.size(); }
  bool empty() const { return parent_.empty(); }
  bool contains(NodeId v) const { return v.index() < size(); }

  /// Throws InvalidNode unless v is a node of this tree.
  void check(NodeId v) const;

  std::optional<NodeId> parent(NodeId v) const;
  std::span<const NodeId> children(NodeId v) const;
  std::size_t depth(NodeId v) const;
  std::span<const NodeId> roots() const { return roots_; }
  /// The root of v's component.
  NodeId root_of(NodeId v) const;
  bool is_leaf(NodeId v) const { return children(v).empty(); }

  /// t ⪯ u (reflexive ancestor test), O(1).
  bool is_ancestor(NodeId t, NodeId u) const;
  bool comparable(NodeId t, NodeId u) const { return is_ancestor(t, u) || is_ancestor(u, t); }
  /// Deepest common ancestor, or nullopt for different components.
  std::optional<NodeId> meet(NodeId t, NodeId u) const;

  /// Length of the longest chain (max depth + 1; 0 for the empty tree).
  std::size_t height() const;

  /// All nodes ordered by (depth, id).
  std::vector<NodeId> canonical_order() const;
  /// Children always after their parent.
  const std::vector<NodeId>& preorder() const { return preorder_; }

  /// Every ancestor of v including v, from v down to its root.
  std::vector<NodeId> ancestors(NodeId v) const;

  friend bool operator==(const Tree& a, const Tree& b) { return a.parent_ == b.parent_; }

 private:
  std::vector<std::optional<NodeId>> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::size_t> depth_;
  std::vector<NodeId> roots_;
  std::vector<NodeId> root_of_;
  std::vector<std::size_t> enter_;
  std::vector<std::size_t> exit_;
  std::vector<NodeId> preorder_;
};

/// Contiguous vertical path {t : bottom ⪯ t ⪯ top}; bottom is the end nearer
/// the root.
struct Segment {
  NodeId bottom;
  NodeId top;

  friend constexpr auto operator<=>(const Segment&, const Segment&) = default;
};

/// Validates bottom ⪯ top.
Segment make_segment(const Tree& tree, NodeId bottom, NodeId top);
bool segment_contains(const Tree& tree, const Segment& s, NodeId v);
/// Nodes of the segment from bottom to top.
std::vector<NodeId> segment_nodes(const Tree& tree, const Segment& s);
bool segments_overlap(const Tree& tree, const Segment& a, const Segment& b);
/// Canonical order: (depth(bottom), bottom, depth(top), top).
bool segment_less(const Tree& tree, const Segment& a, const Segment& b);

/// Pairwise node-disjoint segments kept in canonical order.
class SegmentFamily {
 public:
  SegmentFamily() = default;

  /// Sorts canonically; throws PreconditionError if two segments overlap.
  static SegmentFamily make(const Tree& tree, std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }

  friend bool operator==(const SegmentFamily&, const SegmentFamily&) = default;

 private:
  std::vector<Segment> segments_;
};

/// Lexicographic comparison in canonical segment order.
bool family_less(const Tree& tree, const SegmentFamily& a, const SegmentFamily& b);

/// Partition of the nodes into antichains.
struct AntichainCover {
  std::vector<NodeSet> classes;
};

bool is_antichain(const Tree& tree, std::span<const NodeId> nodes);
bool is_chain(const Tree& tree, std::span<const NodeId> nodes);
/// True if the classes partition the node set and each is an antichain.
bool verify_cover(const Tree& tree, const AntichainCover& cover);

/// Ŝ = {t : t ⪯ s for some s ∈ S}.
NodeSet downward_closure(const Tree& tree, std::span<const NodeId> s);

/// All segments in canonical order.
std::vector<Segment> enumerate_segments(const Tree& tree);

/// All pairwise-disjoint families, the empty family included, ordered by size
/// and then lexicographically. Throws CapExceeded once more than `cap`
/// families exist.
std::vector<SegmentFamily> enumerate_disjoint_families(const Tree& tree, std::size_t cap);

/// Level decomposition: class k holds the nodes of depth k. Its size equals
/// the longest chain, which is the minimum number of antichains.
AntichainCover mirsky_cover(const Tree& tree);

/// Length of the longest chain contained in `nodes`.
std::size_t longest_chain_within(const Tree& tree, std::span<const NodeId> nodes);

/// Input to build_snA. `partition` assigns each node its class n, `successors`
/// is the finite set F(σ) of immediate successors of σ, `cover` is a cover of
/// the tree by antichains R_m, and `allowed` is the index set A.
struct SnAInput {
  std::vector<int> partition;
  std::vector<NodeSet> successors;
  AntichainCover cover;
  std::set<int> allowed;
  std::optional<std::size_t> chain_bound;
};

struct SnAResult {
  /// S_{n,A} for every n in the range of the partition.
  std::map<int, NodeSet> sets;
  std::map<int, std::size_t> longest_chain;
  /// Some S_{n,A} contains a chain longer than chain_bound.
  bool exceeds_bound = false;
};

/// S_{n,A} = {σ : σ ∈ T_n and F(σ) ⊂ ∪_{m∈A} R_m}.
SnAResult build_snA(const Tree& tree, const SnAInput& input);

}  // namespace jtlab

template <>
struct std::hash<jtlab::NodeId> {
  std::size_t operator()(jtlab::NodeId v) const noexcept { return std::hash<std::uint32_t>{}(v.value); }
};
