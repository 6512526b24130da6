#include "jtlab/norm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jtlab/errors.hpp"

namespace jtlab {

Rational segment_sum(const Tree& tree, const JTVector& f, const Segment& s) {
  Rational sum = 0;
  const std::size_t len = tree.depth(s.top) - tree.depth(s.bottom) + 1;
  if (len <= f.support_size()) {
    for (NodeId v : segment_nodes(tree, s)) sum += f.at(v);
  } else {
    for (const auto& [v, value] : f.entries()) {
      if (segment_contains(tree, s, v)) sum += value;
    }
  }
  return sum;
}

Rational family_value(const Tree& tree, const JTVector& f, const SegmentFamily& family) {
  const auto& segs = family.segments();
  for (const auto& s : segs) make_segment(tree, s.bottom, s.top);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      if (segments_overlap(tree, segs[i], segs[j])) throw PreconditionError("overlapping segments in family");
    }
  }
  Rational total = 0;
  for (const auto& s : segs) {
    Rational sum = segment_sum(tree, f, s);
    total += sum * sum;
  }
  return total;
}

namespace {

SegmentFamily drop_zero_sum(const Tree& tree, const JTVector& f, const SegmentFamily& family) {
  std::vector<Segment> kept;
  for (const auto& s : family.segments()) {
    if (sgn(segment_sum(tree, f, s)) != 0) kept.push_back(s);
  }
  return SegmentFamily::make(tree, std::move(kept));
}

NormCertificate finish(const Tree& tree, const JTVector& f, Rational norm_sq, SegmentFamily family) {
  if (family_value(tree, f, family) != norm_sq) {
    throw InvariantViolation("norm certificate does not reproduce its value");
  }
  NormCertificate cert;
  cert.norm = std::sqrt(norm_sq.get_d());
  cert.norm_sq = std::move(norm_sq);
  cert.family = std::move(family);
  return cert;
}

}  // namespace

NormCertificate norm_bruteforce(const Tree& tree, const JTVector& f, std::size_t cap) {
  f.check(tree);
  Rational best = 0;
  SegmentFamily best_family;
  for (const auto& family : enumerate_disjoint_families(tree, cap)) {
    Rational value = family_value(tree, f, family);
    if (value < best) continue;
    SegmentFamily trimmed = drop_zero_sum(tree, f, family);
    if (value > best || family_less(tree, trimmed, best_family)) {
      best = value;
      best_family = std::move(trimmed);
    }
  }
  return finish(tree, f, std::move(best), std::move(best_family));
}

namespace {

// A partial solution at node v: `banked` is the exact value of segments already
// closed inside v's subtree, `open` the running sum of the segment through v
// that may still grow towards the root.
struct State {
  Rational banked;
  Rational open;
  int child = -1;        // child position the open segment descends into; -1 if v is its top
  int child_state = -1;  // index into that child's state list
};

struct NodeTable {
  std::vector<State> states;
  Rational best_closed;
  int best_choice = -1;  // -1: v lies in no segment; otherwise the state closed at v
};

// Value of a state once its segment has collected a further ancestor sum A is
// banked + (open + A)², i.e. the line 2·open·A + (banked + open²) plus the
// state-independent A². Keeps the states on the upper envelope over [-bound, bound].
std::vector<State> prune(std::vector<State> states, const Rational& bound) {
  if (states.size() <= 1) return states;
  std::vector<Rational> slope(states.size()), intercept(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    slope[i] = 2 * states[i].open;
    intercept[i] = states[i].banked + states[i].open * states[i].open;
  }
  std::vector<std::size_t> order(states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (slope[a] != slope[b]) return slope[a] < slope[b];
    return intercept[a] > intercept[b];
  });

  std::vector<std::size_t> hull;
  for (std::size_t idx : order) {
    if (!hull.empty() && slope[hull.back()] == slope[idx]) continue;  // dominated by an earlier equal slope
    while (hull.size() >= 2) {
      std::size_t l1 = hull[hull.size() - 2], l2 = hull.back();
      // l2 is never strictly above max(l1, idx).
      if ((intercept[l2] - intercept[l1]) * (slope[idx] - slope[l1]) <=
          (intercept[idx] - intercept[l1]) * (slope[l2] - slope[l1])) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(idx);
  }

  auto crossing = [&](std::size_t a, std::size_t b) {
    return Rational((intercept[a] - intercept[b]) / (slope[b] - slope[a]));
  };
  std::size_t lo = 0, hi = hull.size();
  while (hi - lo >= 2 && crossing(hull[lo], hull[lo + 1]) <= -bound) ++lo;
  while (hi - lo >= 2 && crossing(hull[hi - 2], hull[hi - 1]) >= bound) --hi;

  std::vector<std::size_t> keep(hull.begin() + static_cast<std::ptrdiff_t>(lo),
                                hull.begin() + static_cast<std::ptrdiff_t>(hi));
  std::sort(keep.begin(), keep.end());
  std::vector<State> out;
  out.reserve(keep.size());
  for (std::size_t i : keep) out.push_back(std::move(states[i]));
  return out;
}

}  // namespace

NormCertificate norm_dp(const Tree& tree, const JTVector& f) {
  f.check(tree);
  if (f.is_zero()) return finish(tree, f, Rational(0), SegmentFamily{});

  Rational bound = 0;
  for (const auto& [_, value] : f.entries()) bound += abs(value);

  const auto& pre = tree.preorder();
  std::vector<NodeTable> table(tree.size());

  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const NodeId v = *it;
    const auto kids = tree.children(v);
    const Rational fv = f.at(v);
    NodeTable& node = table[v.index()];

    Rational children_closed = 0;
    for (NodeId c : kids) children_closed += table[c.index()].best_closed;

    std::vector<State> states;
    states.push_back(State{children_closed, fv, -1, -1});
    for (std::size_t j = 0; j < kids.size(); ++j) {
      const NodeTable& child = table[kids[j].index()];
      const Rational others = children_closed - child.best_closed;
      for (std::size_t k = 0; k < child.states.size(); ++k) {
        const State& s = child.states[k];
        states.push_back(State{others + s.banked, fv + s.open, static_cast<int>(j), static_cast<int>(k)});
      }
    }
    node.states = prune(std::move(states), bound);

    node.best_closed = children_closed;
    node.best_choice = -1;
    for (std::size_t k = 0; k < node.states.size(); ++k) {
      const State& s = node.states[k];
      Rational value = s.banked + s.open * s.open;
      if (value > node.best_closed) {
        node.best_closed = std::move(value);
        node.best_choice = static_cast<int>(k);
      }
    }
  }

  Rational total = 0;
  for (NodeId r : tree.roots()) total += table[r.index()].best_closed;

  // Walk the back-pointers from every root.
  struct Task {
    NodeId v;
    int state;  // -1: closed subtree of v; otherwise open state index at v
    NodeId bottom;
  };
  std::vector<Segment> segments;
  std::vector<Task> work;
  for (NodeId r : tree.roots()) work.push_back(Task{r, -1, r});
  while (!work.empty()) {
    Task task = work.back();
    work.pop_back();
    const NodeTable& node = table[task.v.index()];
    const auto kids = tree.children(task.v);
    if (task.state < 0) {
      if (node.best_choice < 0) {
        for (NodeId c : kids) work.push_back(Task{c, -1, c});
      } else {
        work.push_back(Task{task.v, node.best_choice, task.v});
      }
      continue;
    }
    const State& s = node.states[static_cast<std::size_t>(task.state)];
    if (s.child < 0) {
      segments.push_back(Segment{task.bottom, task.v});
      for (NodeId c : kids) work.push_back(Task{c, -1, c});
    } else {
      for (std::size_t j = 0; j < kids.size(); ++j) {
        if (static_cast<int>(j) == s.child) {
          work.push_back(Task{kids[j], s.child_state, task.bottom});
        } else {
          work.push_back(Task{kids[j], -1, kids[j]});
        }
      }
    }
  }

  SegmentFamily family = drop_zero_sum(tree, f, SegmentFamily::make(tree, std::move(segments)));
  return finish(tree, f, std::move(total), std::move(family));
}

JTVector project_onto_cones(const Tree& tree, const JTVector& f, std::span<const NodeId> antichain) {
  f.check(tree);
  for (NodeId s : antichain) tree.check(s);
  if (!is_antichain(tree, antichain)) throw PreconditionError("projection set is not an antichain");
  JTVector out;
  for (const auto& [v, value] : f.entries()) {
    bool above = std::any_of(antichain.begin(), antichain.end(), [&](NodeId s) { return tree.is_ancestor(s, v); });
    if (above) out.set(v, value);
  }
  return out;
}

}  // namespace jtlab
