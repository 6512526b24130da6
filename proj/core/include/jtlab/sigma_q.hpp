#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jtlab/norm.hpp"

namespace jtlab {

/// A node of σ′Q: a nonempty, strictly increasing finite sequence of
/// rationals, ordered by proper-prefix.
class RationalSeq {
 public:
  /// Throws PreconditionError unless `entries` is nonempty and strictly increasing.
  explicit RationalSeq(std::vector<Rational> entries);

  /// Parses the comma-separated form "1/2,2/3".
  static RationalSeq parse(std::string_view text);

  const std::vector<Rational>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }
  const Rational& max() const { return entries_.back(); }
  /// This sequence with one more entry appended (must exceed max()).
  RationalSeq extended(const Rational& q) const;
  /// The first `n` entries (1 <= n <= length()).
  RationalSeq prefix(std::size_t n) const;

  std::string str() const;

  /// Length first, then entrywise.
  friend bool operator<(const RationalSeq& a, const RationalSeq& b);
  friend bool operator==(const RationalSeq& a, const RationalSeq& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Rational> entries_;
};

/// t ≺ u: t is a proper prefix of u.
bool sq_is_prefix(const RationalSeq& t, const RationalSeq& u);

/// Longest common prefix, or nullopt when the first entries differ.
std::optional<RationalSeq> sq_meet(const RationalSeq& t, const RationalSeq& u);

/// max(t). Each fibre S_q = {t : max(t) = q} is an antichain.
Rational sq_label(const RationalSeq& t);

using SqSupport = std::map<RationalSeq, Rational>;

/// A finite vector on σ′Q carried to the finite tree of its support nodes and
/// their pairwise meets. The parent of a node is its nearest strict prefix in
/// the node set; synthesized meets carry value 0.
struct ReducedInstance {
  Tree tree;
  std::vector<RationalSeq> node_map;
  JTVector values;

  /// Tree node holding `seq`, if any.
  std::optional<NodeId> find(const RationalSeq& seq) const;
};

ReducedInstance meet_closure(const SqSupport& support);

struct SqSegment {
  RationalSeq bottom;
  RationalSeq top;
};

struct SqNormResult {
  NormCertificate certificate;
  ReducedInstance instance;
  /// The certificate family as segments of σ′Q.
  std::vector<SqSegment> segments;
};

/// JT norm of a finitely supported vector on σ′Q via the meet-closure reduction.
SqNormResult reduce_and_norm(const SqSupport& support);

struct RationalWindow {
  Rational lo;
  Rational hi;
};

/// Rationals strictly between a and b, produced breadth-first by taking
/// mediants; at most `count` of them. Empty when a >= b.
std::vector<Rational> mediant_grid(const Rational& a, const Rational& b, std::size_t count);

using Labeling = std::function<long(const RationalSeq&)>;

struct DescentReport {
  std::vector<RationalSeq> chain;
  std::vector<Rational> bounds;  // q_1 > q_2 > ... with q_i > max(t_i)
  std::vector<long> labels;
  std::size_t budget = 0;
  std::string semantics;
};

/// Greedy descent t_1 ≺ t_2 ≺ ... ≺ t_depth with bounds q_1 > q_2 > ...: each
/// t_{n+1} minimizes the label among at most `budget` sampled extensions of t_n
/// whose entries stay below q_n. Candidates are one- and then two-entry
/// extensions drawn from a mediant grid. Throws PreconditionError when no
/// candidate exists.
DescentReport kurepa_descent(const Labeling& labeling, std::size_t depth, const RationalWindow& window,
                             std::size_t budget);

}  // namespace jtlab
