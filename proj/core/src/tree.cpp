#include "jtlab/tree.hpp"

#include <algorithm>
#include <string>

#include "jtlab/errors.hpp"

namespace jtlab {

NodeSet normalize(NodeSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

Tree Tree::from_parents(std::span<const std::optional<NodeId>> parents) {
  Tree t;
  const std::size_t n = parents.size();
  t.parent_.assign(parents.begin(), parents.end());
  t.children_.assign(n, {});
  t.depth_.assign(n, 0);
  t.root_of_.assign(n, NodeId{});
  t.enter_.assign(n, 0);
  t.exit_.assign(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = parents[i];
    if (!p) {
      t.roots_.push_back(NodeId(static_cast<std::uint32_t>(i)));
      continue;
    }
    if (p->index() >= n) {
      throw PreconditionError("node " + std::to_string(i) + " has out-of-range parent " +
                              std::to_string(p->value));
    }
    if (p->index() == i) throw PreconditionError("node " + std::to_string(i) + " is its own parent");
    t.children_[p->index()].push_back(NodeId(static_cast<std::uint32_t>(i)));
  }

  // Iterative DFS from each root; nodes never reached sit on a cycle.
  std::size_t clock = 0;
  std::vector<std::pair<NodeId, std::size_t>> stack;
  t.preorder_.reserve(n);
  for (NodeId r : t.roots_) {
    t.depth_[r.index()] = 0;
    t.root_of_[r.index()] = r;
    t.enter_[r.index()] = clock++;
    t.preorder_.push_back(r);
    stack.emplace_back(r, 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& kids = t.children_[v.index()];
      if (next < kids.size()) {
        NodeId c = kids[next++];
        t.depth_[c.index()] = t.depth_[v.index()] + 1;
        t.root_of_[c.index()] = r;
        t.enter_[c.index()] = clock++;
        t.preorder_.push_back(c);
        stack.emplace_back(c, 0);
      } else {
        t.exit_[v.index()] = clock++;
        stack.pop_back();
      }
    }
  }
  if (t.preorder_.size() != n) throw PreconditionError("parent relation contains a cycle");
  return t;
}

void Tree::check(NodeId v) const {
  if (!contains(v)) {
    throw InvalidNode("node " + std::to_string(v.value) + " not in tree of size " + std::to_string(size()));
  }
}

std::optional<NodeId> Tree::parent(NodeId v) const {
  check(v);
  return parent_[v.index()];
}

std::span<const NodeId> Tree::children(NodeId v) const {
  check(v);
  return children_[v.index()];
}

std::size_t Tree::depth(NodeId v) const {
  check(v);
  return depth_[v.index()];
}

NodeId Tree::root_of(NodeId v) const {
  check(v);
  return root_of_[v.index()];
}

bool Tree::is_ancestor(NodeId t, NodeId u) const {
  check(t);
  check(u);
  return enter_[t.index()] <= enter_[u.index()] && exit_[u.index()] <= exit_[t.index()];
}

std::optional<NodeId> Tree::meet(NodeId t, NodeId u) const {
  check(t);
  check(u);
  if (root_of_[t.index()] != root_of_[u.index()]) return std::nullopt;
  while (depth_[t.index()] > depth_[u.index()]) t = *parent_[t.index()];
  while (depth_[u.index()] > depth_[t.index()]) u = *parent_[u.index()];
  while (t != u) {
    t = *parent_[t.index()];
    u = *parent_[u.index()];
  }
  return t;
}

std::size_t Tree::height() const {
  if (empty()) return 0;
  return *std::max_element(depth_.begin(), depth_.end()) + 1;
}

std::vector<NodeId> Tree::canonical_order() const {
  std::vector<NodeId> out(preorder_);
  std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    return std::pair(depth_[a.index()], a) < std::pair(depth_[b.index()], b);
  });
  return out;
}

std::vector<NodeId> Tree::ancestors(NodeId v) const {
  check(v);
  std::vector<NodeId> out{v};
  while (auto p = parent_[out.back().index()]) out.push_back(*p);
  return out;
}

Segment make_segment(const Tree& tree, NodeId bottom, NodeId top) {
  if (!tree.is_ancestor(bottom, top)) {
    throw PreconditionError("segment [" + std::to_string(bottom.value) + "," + std::to_string(top.value) +
                            "]: bottom is not below top");
  }
  return Segment{bottom, top};
}

bool segment_contains(const Tree& tree, const Segment& s, NodeId v) {
  return tree.is_ancestor(s.bottom, v) && tree.is_ancestor(v, s.top);
}

std::vector<NodeId> segment_nodes(const Tree& tree, const Segment& s) {
  std::vector<NodeId> out;
  NodeId v = s.top;
  out.push_back(v);
  while (v != s.bottom) {
    auto p = tree.parent(v);
    if (!p) throw PreconditionError("segment bottom is not an ancestor of its top");
    v = *p;
    out.push_back(v);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool segments_overlap(const Tree& tree, const Segment& a, const Segment& b) {
  // A shared node lies above both bottoms, so the deeper bottom is in the other segment.
  if (tree.depth(a.bottom) >= tree.depth(b.bottom)) return segment_contains(tree, b, a.bottom);
  return segment_contains(tree, a, b.bottom);
}

bool segment_less(const Tree& tree, const Segment& a, const Segment& b) {
  auto key = [&](const Segment& s) {
    return std::tuple(tree.depth(s.bottom), s.bottom, tree.depth(s.top), s.top);
  };
  return key(a) < key(b);
}

SegmentFamily SegmentFamily::make(const Tree& tree, std::vector<Segment> segments) {
  for (const auto& s : segments) make_segment(tree, s.bottom, s.top);
  std::sort(segments.begin(), segments.end(),
            [&](const Segment& a, const Segment& b) { return segment_less(tree, a, b); });
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (std::size_t j = i + 1; j < segments.size(); ++j) {
      if (segments_overlap(tree, segments[i], segments[j])) {
        throw PreconditionError("segment family is not pairwise disjoint");
      }
    }
  }
  SegmentFamily f;
  f.segments_ = std::move(segments);
  return f;
}

bool family_less(const Tree& tree, const SegmentFamily& a, const SegmentFamily& b) {
  return std::lexicographical_compare(
      a.segments().begin(), a.segments().end(), b.segments().begin(), b.segments().end(),
      [&](const Segment& x, const Segment& y) { return segment_less(tree, x, y); });
}

bool is_antichain(const Tree& tree, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (nodes[i] == nodes[j] || tree.comparable(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

bool is_chain(const Tree& tree, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      if (!tree.comparable(nodes[i], nodes[j])) return false;
    }
  }
  return true;
}

bool verify_cover(const Tree& tree, const AntichainCover& cover) {
  std::vector<int> seen(tree.size(), 0);
  for (const auto& cls : cover.classes) {
    for (NodeId v : cls) {
      if (!tree.contains(v) || seen[v.index()]++ != 0) return false;
    }
    if (!is_antichain(tree, cls)) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

NodeSet downward_closure(const Tree& tree, std::span<const NodeId> s) {
  std::vector<char> mark(tree.size(), 0);
  NodeSet out;
  for (NodeId v : s) {
    tree.check(v);
    for (std::optional<NodeId> u = v; u && !mark[u->index()]; u = tree.parent(*u)) {
      mark[u->index()] = 1;
      out.push_back(*u);
    }
  }
  return normalize(std::move(out));
}

std::vector<Segment> enumerate_segments(const Tree& tree) {
  std::vector<Segment> out;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    NodeId top(static_cast<std::uint32_t>(i));
    for (NodeId bottom : tree.ancestors(top)) out.push_back(Segment{bottom, top});
  }
  std::sort(out.begin(), out.end(), [&](const Segment& a, const Segment& b) { return segment_less(tree, a, b); });
  return out;
}

std::vector<SegmentFamily> enumerate_disjoint_families(const Tree& tree, std::size_t cap) {
  const auto segments = enumerate_segments(tree);
  const std::size_t m = segments.size();

  std::vector<std::vector<NodeId>> nodes(m);
  for (std::size_t i = 0; i < m; ++i) nodes[i] = segment_nodes(tree, segments[i]);

  std::vector<std::vector<std::size_t>> found;
  std::vector<std::size_t> current;
  std::vector<int> used(tree.size(), 0);

  auto emit = [&] {
    if (found.size() >= cap) {
      throw CapExceeded("more than " + std::to_string(cap) + " disjoint segment families");
    }
    found.push_back(current);
  };

  // Depth-first over segment indices in increasing order, so each family is
  // produced once with its segments already canonical.
  auto recurse = [&](auto&& self, std::size_t from) -> void {
    emit();
    for (std::size_t i = from; i < m; ++i) {
      bool free = std::none_of(nodes[i].begin(), nodes[i].end(), [&](NodeId v) { return used[v.index()]; });
      if (!free) continue;
      for (NodeId v : nodes[i]) used[v.index()] = 1;
      current.push_back(i);
      self(self, i + 1);
      current.pop_back();
      for (NodeId v : nodes[i]) used[v.index()] = 0;
    }
  };
  recurse(recurse, 0);

  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });

  std::vector<SegmentFamily> out;
  out.reserve(found.size());
  for (const auto& idx : found) {
    std::vector<Segment> segs;
    segs.reserve(idx.size());
    for (std::size_t i : idx) segs.push_back(segments[i]);
    out.push_back(SegmentFamily::make(tree, std::move(segs)));
  }
  return out;
}

AntichainCover mirsky_cover(const Tree& tree) {
  AntichainCover cover;
  cover.classes.resize(tree.height());
  for (NodeId v : tree.canonical_order()) cover.classes[tree.depth(v)].push_back(v);
  for (auto& cls : cover.classes) cls = normalize(std::move(cls));
  return cover;
}

std::size_t longest_chain_within(const Tree& tree, std::span<const NodeId> nodes) {
  std::vector<char> in(tree.size(), 0);
  for (NodeId v : nodes) {
    tree.check(v);
    in[v.index()] = 1;
  }
  // Preorder visits ancestors first, so the best chain ending at v is known
  // from the nearest marked ancestor.
  std::vector<std::size_t> best(tree.size(), 0);
  std::size_t answer = 0;
  for (NodeId v : tree.preorder()) {
    std::size_t inherited = 0;
    if (auto p = tree.parent(v)) inherited = best[p->index()];
    best[v.index()] = inherited + (in[v.index()] ? 1 : 0);
    answer = std::max(answer, best[v.index()]);
  }
  return answer;
}

SnAResult build_snA(const Tree& tree, const SnAInput& input) {
  const std::size_t n = tree.size();
  if (input.partition.size() != n || input.successors.size() != n) {
    throw PreconditionError("partition and successor maps must cover every node");
  }
  std::vector<int> cover_class(n, -1);
  for (std::size_t m = 0; m < input.cover.classes.size(); ++m) {
    for (NodeId v : input.cover.classes[m]) {
      tree.check(v);
      cover_class[v.index()] = static_cast<int>(m);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (cover_class[i] < 0) throw PreconditionError("node " + std::to_string(i) + " is not covered by R");
  }

  SnAResult result;
  for (int cls : input.partition) result.sets[cls];

  for (std::size_t i = 0; i < n; ++i) {
    NodeId sigma(static_cast<std::uint32_t>(i));
    bool inside = true;
    for (NodeId s : input.successors[i]) {
      tree.check(s);
      if (tree.parent(s) != sigma) {
        throw PreconditionError("F(" + std::to_string(i) + ") contains " + std::to_string(s.value) +
                                ", which is not an immediate successor");
      }
      if (!input.allowed.contains(cover_class[s.index()])) inside = false;
    }
    if (inside) result.sets[input.partition[i]].push_back(sigma);
  }

  for (auto& [cls, members] : result.sets) {
    members = normalize(std::move(members));
    std::size_t len = longest_chain_within(tree, members);
    result.longest_chain[cls] = len;
    if (input.chain_bound && len > *input.chain_bound) result.exceeds_bound = true;
  }
  return result;
}

}  // namespace jtlab
