#include "jtlab/dual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

#include "ball_barrier.hpp"
#include "jtlab/errors.hpp"

namespace jtlab {

JTFunctional chi_segment(const Tree& tree, const Segment& sigma) {
  make_segment(tree, sigma.bottom, sigma.top);
  JTFunctional out;
  for (NodeId v : segment_nodes(tree, sigma)) out.set(v, Rational(1));
  return out;
}

Rational pair(const JTFunctional& functional, const JTVector& x) {
  Rational sum = 0;
  const auto& a = functional.entries();
  const auto& b = x.entries();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

JTFunctional segment_adjoint(const Tree& tree, const SegmentFamily& family, const std::vector<Rational>& weights) {
  if (weights.size() != family.size()) throw PreconditionError("one weight per segment required");
  std::map<NodeId, Rational> acc;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (sgn(weights[i]) == 0) continue;
    for (NodeId v : segment_nodes(tree, family.segments()[i])) acc[v] += weights[i];
  }
  return JTFunctional(acc);
}

NodeSet support_hull(const Tree& tree, const NodeSet& support) {
  std::vector<char> in_support(tree.size(), 0);
  for (NodeId v : support) {
    tree.check(v);
    in_support[v.index()] = 1;
  }
  NodeSet out;
  for (NodeId u : support) {
    auto chain = tree.ancestors(u);
    std::size_t last = 0;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (in_support[chain[i].index()]) last = i;
    }
    out.insert(out.end(), chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(last + 1));
  }
  return normalize(std::move(out));
}

namespace {

// The variables of the inner problem: the hull nodes, in id order.
struct Workspace {
  const Tree& tree;
  NodeSet hull;
  std::vector<int> var_of;  // node index -> variable index or -1
  std::vector<double> c;

  Workspace(const Tree& t, const JTFunctional& functional) : tree(t) {
    hull = support_hull(t, functional.support());
    var_of.assign(t.size(), -1);
    for (std::size_t i = 0; i < hull.size(); ++i) var_of[hull[i].index()] = static_cast<int>(i);
    c.reserve(hull.size());
    for (NodeId v : hull) c.push_back(functional.at(v).get_d());
  }

  bool in_hull(NodeId v) const { return var_of[v.index()] >= 0; }

  // σ ∩ hull is again a segment because the hull is order-convex.
  std::optional<Segment> restrict(const Segment& s) const {
    std::optional<NodeId> lo, hi;
    for (NodeId v : segment_nodes(tree, s)) {
      if (!in_hull(v)) continue;
      if (!lo) lo = v;
      hi = v;
    }
    if (!lo) return std::nullopt;
    return Segment{*lo, *hi};
  }

  SegmentFamily restrict(const SegmentFamily& f) const {
    std::vector<Segment> segs;
    for (const auto& s : f.segments()) {
      if (auto r = restrict(s)) segs.push_back(*r);
    }
    return SegmentFamily::make(tree, std::move(segs));
  }

  detail::BallConstraint constraint(const SegmentFamily& f) const {
    detail::BallConstraint con;
    for (const auto& s : f.segments()) {
      std::vector<std::size_t> row;
      for (NodeId v : segment_nodes(tree, s)) {
        if (in_hull(v)) row.push_back(static_cast<std::size_t>(var_of[v.index()]));
      }
      if (!row.empty()) con.rows.push_back(std::move(row));
    }
    return con;
  }

  JTVector to_vector(const std::vector<double>& x) const {
    JTVector out;
    for (std::size_t i = 0; i < hull.size(); ++i) out.set(hull[i], from_double(x[i]));
    return out;
  }
};

std::vector<SegmentFamily> initial_families(const Workspace& ws) {
  std::vector<SegmentFamily> out;
  for (NodeId v : ws.hull) out.push_back(SegmentFamily::make(ws.tree, {Segment{v, v}}));
  // One single-segment family per maximal path through the hull.
  for (NodeId top : ws.hull) {
    bool maximal = true;
    for (NodeId c : ws.tree.children(top)) {
      if (ws.in_hull(c)) maximal = false;
    }
    if (!maximal) continue;
    NodeId bottom = top;
    while (auto p = ws.tree.parent(bottom)) {
      if (!ws.in_hull(*p)) break;
      bottom = *p;
    }
    if (bottom != top) out.push_back(SegmentFamily::make(ws.tree, {Segment{bottom, top}}));
  }
  return out;
}

// Upper bound Σ_j ‖y_j‖₂ + ‖r‖₁ rounded up, from exact ingredients.
double certified_upper(const std::vector<DecompositionTerm>& terms, const JTFunctional& residual) {
  Rational total = 0;
  for (const auto& term : terms) {
    Rational sq = 0;
    for (const auto& w : term.weights) sq += w * w;
    total += from_double(sqrt_up(sq));
  }
  for (const auto& [_, value] : residual.entries()) total += abs(value);
  return to_double_up(total);
}

struct Candidate {
  double lower = 0.0;
  JTVector witness;
};

// Scales x onto the unit ball of JT exactly and reports ⟨x*, λx⟩ rounded down.
Candidate lower_candidate(const Tree& tree, const JTFunctional& functional, const JTVector& x,
                          const Rational& norm_sq) {
  Candidate out;
  if (sgn(norm_sq) == 0) return out;
  Rational value = pair(functional, x);
  JTVector direction = sgn(value) < 0 ? x.scaled(Rational(-1)) : x;
  value = abs(value);
  double lambda = 1.0 / std::sqrt(norm_sq.get_d());
  Rational lam = from_double(lambda);
  while (lam * lam * norm_sq > 1) {
    lambda = std::nextafter(lambda, 0.0);
    lam = from_double(lambda);
  }
  out.witness = direction.scaled(lam);
  out.lower = to_double_down(lam * value);
  (void)tree;
  return out;
}

std::vector<DecompositionTerm> decomposition_from(const std::vector<SegmentFamily>& families,
                                                  const detail::BarrierResult& solved) {
  std::vector<DecompositionTerm> terms;
  for (std::size_t j = 0; j < families.size(); ++j) {
    DecompositionTerm term;
    term.family = families[j];
    bool nonzero = false;
    for (double w : solved.y[j]) {
      term.weights.push_back(from_double(w));
      nonzero = nonzero || w != 0.0;
    }
    if (nonzero && term.weights.size() == term.family.size()) terms.push_back(std::move(term));
  }
  return terms;
}

JTFunctional residual_of(const Tree& tree, const JTFunctional& functional, const std::vector<DecompositionTerm>& terms) {
  JTFunctional r = functional;
  for (const auto& term : terms) r = r - segment_adjoint(tree, term.family, term.weights);
  return r;
}

}  // namespace

DualBracket dual_norm(const Tree& tree, const JTFunctional& functional, const DualOptions& options) {
  if (!(options.tol > 0)) throw PreconditionError("dual_norm: tol must be positive");
  if (options.budget <= 0) throw PreconditionError("dual_norm: budget must be positive");
  functional.check(tree);

  DualBracket best;
  best.residual = functional;
  if (functional.is_zero()) {
    best.tolerance_met = true;
    return best;
  }
  // The trivial decomposition x* = 0 + x* already certifies ‖x*‖ ≤ ‖x*‖₁.
  best.upper = certified_upper({}, functional);
  best.lower = 0.0;

  Workspace ws(tree, functional);
  std::vector<SegmentFamily> families = initial_families(ws);
  std::set<std::vector<Segment>> known;
  for (const auto& f : families) known.insert(f.segments());

  detail::BarrierOptions barrier;
  barrier.gap = options.tol / 8.0;

  for (int round = 1; round <= options.budget; ++round) {
    best.iterations = round;
    std::vector<detail::BallConstraint> cons;
    cons.reserve(families.size());
    for (const auto& f : families) cons.push_back(ws.constraint(f));
    const auto solved = detail::maximize_over_balls(ws.c, cons, barrier);

    auto terms = decomposition_from(families, solved);
    JTFunctional residual = residual_of(tree, functional, terms);
    double upper = certified_upper(terms, residual);
    if (upper < best.upper) {
      best.upper = upper;
      best.decomposition = std::move(terms);
      best.residual = std::move(residual);
    }

    JTVector x = ws.to_vector(solved.x);
    NormCertificate cert = norm_dp(tree, x);
    Candidate cand = lower_candidate(tree, functional, x, cert.norm_sq);
    if (cand.lower > best.lower) {
      best.lower = cand.lower;
      best.witness = std::move(cand.witness);
    }

    if (best.upper - best.lower <= options.tol) {
      best.tolerance_met = true;
      break;
    }

    SegmentFamily cut = ws.restrict(cert.family);
    if (cert.norm_sq > 1 && !cut.empty() && known.insert(cut.segments()).second) {
      families.push_back(std::move(cut));
    } else {
      // The active families are all present; only solver accuracy is missing.
      if (barrier.gap < 1e-14) break;
      barrier.gap /= 16.0;
    }
  }
  return best;
}

std::string verify_bracket(const Tree& tree, const JTFunctional& functional, const DualBracket& bracket) {
  try {
    functional.check(tree);
    bracket.witness.check(tree);
    bracket.residual.check(tree);
    if (!(bracket.lower <= bracket.upper)) return "lower exceeds upper";

    NormCertificate cert = norm_dp(tree, bracket.witness);
    if (cert.norm_sq > 1) return "witness has norm greater than one";
    if (from_double(bracket.lower) > pair(functional, bracket.witness)) {
      return "lower bound exceeds the witness pairing";
    }

    JTFunctional rebuilt = bracket.residual;
    Rational total = 0;
    for (const auto& term : bracket.decomposition) {
      // Rebuilding validates disjointness of every stored family.
      SegmentFamily::make(tree, term.family.segments());
      rebuilt = rebuilt + segment_adjoint(tree, term.family, term.weights);
      Rational sq = 0;
      for (const auto& w : term.weights) sq += w * w;
      // ‖y‖₂ ≤ s is certified by s ≥ 0 and s² ≥ ‖y‖₂².
      total += from_double(sqrt_up(sq));
    }
    if (!(rebuilt == functional)) return "decomposition does not reproduce the functional";
    for (const auto& [_, value] : bracket.residual.entries()) total += abs(value);
    if (total > from_double(bracket.upper)) return "upper bound below the decomposition bound";
  } catch (const std::exception& e) {
    return std::string("verification raised: ") + e.what();
  }
  return {};
}

RestrictedOptimum restricted_optimum(const Tree& tree, const JTFunctional& functional,
                                     const std::vector<SegmentFamily>& families, double gap) {
  functional.check(tree);
  RestrictedOptimum out;
  if (functional.is_zero()) return out;
  Workspace ws(tree, functional);
  std::vector<detail::BallConstraint> cons;
  // Singletons keep the problem bounded in every hull coordinate.
  for (NodeId v : ws.hull) cons.push_back(ws.constraint(SegmentFamily::make(tree, {Segment{v, v}})));
  for (const auto& f : families) {
    auto con = ws.constraint(f);
    if (!con.rows.empty()) cons.push_back(std::move(con));
  }
  detail::BarrierOptions opts;
  opts.gap = gap;
  auto solved = detail::maximize_over_balls(ws.c, cons, opts);
  out.value = solved.objective;
  out.x = ws.to_vector(solved.x);
  return out;
}

L2CombinationCheck l2_combination_check(const Tree& tree, const std::vector<Segment>& segments,
                                        const std::vector<Rational>& weights, double tol) {
  if (segments.size() != weights.size()) throw PreconditionError("one weight per segment required");
  std::vector<NodeId> bottoms;
  for (const auto& s : segments) {
    make_segment(tree, s.bottom, s.top);
    bottoms.push_back(s.bottom);
  }
  if (!is_antichain(tree, bottoms)) throw PreconditionError("segment bottoms must be pairwise incomparable");

  JTFunctional combo;
  Rational sq = 0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    combo = combo + chi_segment(tree, segments[i]).scaled(weights[i]);
    sq += weights[i] * weights[i];
  }
  L2CombinationCheck out;
  out.expected = std::sqrt(sq.get_d());
  out.bracket = dual_norm(tree, combo, DualOptions{tol, 100});
  out.holds = out.bracket.contains(out.expected, tol);
  return out;
}

}  // namespace jtlab
