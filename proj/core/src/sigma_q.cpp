#include "jtlab/sigma_q.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "jtlab/errors.hpp"

namespace jtlab {

RationalSeq::RationalSeq(std::vector<Rational> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw PreconditionError("σ′Q nodes are nonempty sequences");
  for (auto& q : entries_) q.canonicalize();
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (!(entries_[i - 1] < entries_[i])) throw PreconditionError("σ′Q sequence must be strictly increasing");
  }
}

RationalSeq RationalSeq::parse(std::string_view text) {
  std::vector<Rational> entries;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    entries.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return RationalSeq(std::move(entries));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("invalid σ′Q node '") + std::string(text) + "': " + e.what());
  }
}

RationalSeq RationalSeq::extended(const Rational& q) const {
  auto e = entries_;
  e.push_back(q);
  return RationalSeq(std::move(e));
}

RationalSeq RationalSeq::prefix(std::size_t n) const {
  if (n == 0 || n > entries_.size()) throw PreconditionError("prefix length out of range");
  return RationalSeq(std::vector<Rational>(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string RationalSeq::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += to_string(entries_[i]);
  }
  return out;
}

bool operator<(const RationalSeq& a, const RationalSeq& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.entries_ < b.entries_;
}

bool sq_is_prefix(const RationalSeq& t, const RationalSeq& u) {
  if (t.length() >= u.length()) return false;
  return std::equal(t.entries().begin(), t.entries().end(), u.entries().begin());
}

std::optional<RationalSeq> sq_meet(const RationalSeq& t, const RationalSeq& u) {
  std::size_t n = 0;
  const std::size_t limit = std::min(t.length(), u.length());
  while (n < limit && t.entries()[n] == u.entries()[n]) ++n;
  if (n == 0) return std::nullopt;
  return t.prefix(n);
}

Rational sq_label(const RationalSeq& t) { return t.max(); }

std::optional<NodeId> ReducedInstance::find(const RationalSeq& seq) const {
  auto it = std::lower_bound(node_map.begin(), node_map.end(), seq);
  if (it == node_map.end() || !(*it == seq)) return std::nullopt;
  return NodeId(static_cast<std::uint32_t>(it - node_map.begin()));
}

ReducedInstance meet_closure(const SqSupport& support) {
  std::set<RationalSeq> nodes;
  for (const auto& [seq, _] : support) nodes.insert(seq);
  // In a tree the pairwise meets of a set are already closed under meets.
  std::vector<RationalSeq> base(nodes.begin(), nodes.end());
  for (std::size_t i = 0; i < base.size(); ++i) {
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      if (auto m = sq_meet(base[i], base[j])) nodes.insert(*m);
    }
  }

  ReducedInstance out;
  out.node_map.assign(nodes.begin(), nodes.end());  // prefixes sort before extensions
  std::vector<std::optional<NodeId>> parents(out.node_map.size());
  for (std::size_t i = 0; i < out.node_map.size(); ++i) {
    const RationalSeq& seq = out.node_map[i];
    for (std::size_t len = seq.length() - 1; len >= 1; --len) {
      if (auto p = out.find(seq.prefix(len))) {
        parents[i] = *p;
        break;
      }
    }
  }
  out.tree = Tree::from_parents(parents);
  for (const auto& [seq, value] : support) out.values.set(*out.find(seq), value);
  return out;
}

SqNormResult reduce_and_norm(const SqSupport& support) {
  SqNormResult out;
  out.instance = meet_closure(support);
  out.certificate = norm_dp(out.instance.tree, out.instance.values);
  for (const auto& s : out.certificate.family.segments()) {
    out.segments.push_back(SqSegment{out.instance.node_map[s.bottom.index()], out.instance.node_map[s.top.index()]});
  }
  return out;
}

std::vector<Rational> mediant_grid(const Rational& a, const Rational& b, std::size_t count) {
  std::vector<Rational> out;
  if (!(a < b)) return out;
  std::deque<std::pair<Rational, Rational>> queue{{a, b}};
  while (out.size() < count && !queue.empty()) {
    auto [lo, hi] = queue.front();
    queue.pop_front();
    Rational m(lo.get_num() + hi.get_num(), lo.get_den() + hi.get_den());
    m.canonicalize();
    out.push_back(m);
    queue.emplace_back(lo, m);
    queue.emplace_back(m, hi);
  }
  return out;
}

namespace {

Rational mediant(const Rational& lo, const Rational& hi) {
  Rational m(lo.get_num() + hi.get_num(), lo.get_den() + hi.get_den());
  m.canonicalize();
  return m;
}

}  // namespace

DescentReport kurepa_descent(const Labeling& labeling, std::size_t depth, const RationalWindow& window,
                             std::size_t budget) {
  if (depth == 0) throw PreconditionError("descent depth must be at least 1");
  DescentReport report;
  report.budget = budget;
  {
    std::ostringstream os;
    os << "bounded sample: each step minimizes the label over at most " << budget
       << " one- and two-entry mediant-grid extensions, not over all extensions";
    report.semantics = os.str();
  }

  std::optional<RationalSeq> current;
  Rational bound = window.hi;
  for (std::size_t step = 0; step < depth; ++step) {
    const Rational floor = current ? current->max() : window.lo;
    const auto grid = mediant_grid(floor, bound, budget);
    if (grid.empty() || budget == 0) {
      throw PreconditionError("no extension found below bound " + to_string(bound) + " within the window and budget");
    }
    auto extend = [&](const std::vector<Rational>& tail) {
      std::vector<Rational> e = current ? current->entries() : std::vector<Rational>{};
      e.insert(e.end(), tail.begin(), tail.end());
      return RationalSeq(std::move(e));
    };

    std::vector<RationalSeq> candidates;
    for (const auto& q : grid) {
      if (candidates.size() >= budget) break;
      candidates.push_back(extend({q}));
    }
    for (std::size_t i = 0; i < grid.size() && candidates.size() < budget; ++i) {
      for (std::size_t j = 0; j < grid.size() && candidates.size() < budget; ++j) {
        if (grid[i] < grid[j]) candidates.push_back(extend({grid[i], grid[j]}));
      }
    }

    std::size_t best = 0;
    long best_label = labeling(candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      long l = labeling(candidates[i]);
      if (l < best_label) {
        best = i;
        best_label = l;
      }
    }
    current = candidates[best];
    bound = mediant(current->max(), bound);
    report.chain.push_back(*current);
    report.labels.push_back(best_label);
    report.bounds.push_back(bound);
  }
  return report;
}

}  // namespace jtlab
