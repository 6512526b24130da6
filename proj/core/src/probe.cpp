#include "jtlab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "jtlab/errors.hpp"

namespace jtlab {
namespace {

double down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
double up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

JTFunctional initial_chi(const Tree& tree, NodeId t) { return chi_segment(tree, Segment{tree.root_of(t), t}); }

}  // namespace

Interval CanonicalOracle::eval(const Tree& tree, const JTFunctional& functional) const {
  DualBracket b = dual_norm(tree, functional, options_);
  return Interval{b.lower, b.upper};
}

PerturbedOracle::PerturbedOracle(double epsilon, DualOptions options) : epsilon_(epsilon), options_(options) {
  if (!(epsilon >= 0) || !std::isfinite(epsilon)) throw PreconditionError("perturbation must be finite and >= 0");
}

Interval PerturbedOracle::eval(const Tree& tree, const JTFunctional& functional) const {
  DualBracket b = dual_norm(tree, functional, options_);
  Rational sq = 0;
  for (const auto& [_, value] : functional.entries()) sq += value * value;
  return Interval{down(b.lower + epsilon_ * sqrt_down(sq)), up(b.upper + epsilon_ * sqrt_up(sq))};
}

std::string PerturbedOracle::description() const {
  std::ostringstream os;
  os << "perturbed:" << epsilon_;
  return os.str();
}

std::pair<double, double> PerturbedOracle::equivalence(std::size_t n) const {
  // |x*(t)| ≤ ‖x*‖ for every t, so the ℓ₂ term is at most √n·‖x*‖.
  return {1.0, 1.0 + epsilon_ * std::sqrt(static_cast<double>(n))};
}

std::unique_ptr<NormOracle> make_oracle(const std::string& name, DualOptions options) {
  if (name == "canonical") return std::make_unique<CanonicalOracle>(options);
  const std::string prefix = "perturbed:";
  if (name.rfind(prefix, 0) == 0) {
    std::string rest = name.substr(prefix.size());
    std::size_t used = 0;
    double eps = 0;
    try {
      eps = std::stod(rest, &used);
    } catch (const std::exception&) {
      throw ParseError("bad perturbation in oracle '" + name + "'");
    }
    if (used != rest.size()) throw ParseError("bad perturbation in oracle '" + name + "'");
    return std::make_unique<PerturbedOracle>(eps, options);
  }
  throw ParseError("unknown oracle '" + name + "' (expected canonical or perturbed:<eps>)");
}

OracleSanity check_oracle(const NormOracle& oracle, const Tree& tree, std::uint64_t seed, int samples, double tol) {
  OracleSanity out;
  std::tie(out.c1, out.c2) = oracle.equivalence(tree.size());
  if (tree.empty()) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> scale(-6, 6);
  std::bernoulli_distribution keep(0.5);

  auto random_functional = [&] {
    JTFunctional f;
    for (std::size_t i = 0; i < tree.size(); ++i) {
      if (keep(rng)) f.set(NodeId(static_cast<std::uint32_t>(i)), Rational(coeff(rng), 2));
    }
    return f;
  };

  for (int i = 0; i < samples; ++i) {
    JTFunctional x = random_functional();
    JTFunctional y = random_functional();
    Rational lambda(scale(rng), 3);
    lambda.canonicalize();
    const double l = std::abs(lambda.get_d());

    Interval ix = oracle.eval(tree, x);
    Interval iy = oracle.eval(tree, y);
    Interval ilx = oracle.eval(tree, x.scaled(lambda));
    Interval ixy = oracle.eval(tree, x + y);

    const double slack = tol * (1.0 + l);
    if (ilx.lo > l * ix.hi + slack || ilx.hi < l * ix.lo - slack) out.homogeneous = false;
    if (ixy.lo > ix.hi + iy.hi + tol) out.triangle = false;
    ++out.samples;
  }
  return out;
}

std::string to_string(Verdict v) { return v == Verdict::Flat ? "FLAT" : "INCONCLUSIVE"; }

FlatWitness flat_segment_witness(const Tree& tree, NodeId t, const NormOracle& oracle, double tol) {
  const auto kids = tree.children(t);
  if (kids.size() < 2) {
    throw PreconditionError("node " + std::to_string(t.value) + " has fewer than two immediate successors");
  }
  FlatWitness w;
  w.t = t;
  w.t1 = kids[0];
  w.t2 = kids[1];
  w.first_functional = initial_chi(tree, w.t1);
  w.second_functional = initial_chi(tree, w.t2);
  JTFunctional mid = (w.first_functional + w.second_functional).scaled(Rational(1, 2));

  w.first = oracle.eval(tree, w.first_functional);
  w.second = oracle.eval(tree, w.second_functional);
  w.midpoint = oracle.eval(tree, mid);

  const double common_lo = std::max({w.first.lo, w.second.lo, w.midpoint.lo});
  const double common_hi = std::min({w.first.hi, w.second.hi, w.midpoint.hi});
  w.verdict = common_lo - common_hi <= tol ? Verdict::Flat : Verdict::Inconclusive;
  return w;
}

KadecReport kadec_pattern_witness(const Tree& tree, NodeId t, std::size_t k, double tol,
                                  std::vector<std::vector<Rational>> weights) {
  const auto kids = tree.children(t);
  if (k == 0 || kids.size() < k) {
    throw PreconditionError("node " + std::to_string(t.value) + " has fewer than " + std::to_string(k) +
                            " immediate successors");
  }
  KadecReport report;
  report.t = t;
  report.tol = tol;
  report.successors.assign(kids.begin(), kids.begin() + static_cast<std::ptrdiff_t>(k));

  if (weights.empty() && k >= 2) {
    weights.push_back(std::vector<Rational>(k, Rational(1)));
    std::vector<Rational> ramp, unit(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) ramp.push_back(Rational(static_cast<long>(i + 1)));
    unit[0] = 1;
    weights.push_back(std::move(ramp));
    weights.push_back(std::move(unit));
  }

  const DualOptions options{tol, 100};
  report.isometry_certified = true;
  if (k >= 2) {
    for (auto& lambda : weights) {
      if (lambda.size() != k) throw PreconditionError("weight vector length must equal k");
      KadecCombination combo;
      Rational sq = 0;
      for (std::size_t i = 0; i < k; ++i) {
        combo.functional.add(report.successors[i], lambda[i]);
        sq += lambda[i] * lambda[i];
      }
      combo.weights = std::move(lambda);
      combo.expected = std::sqrt(sq.get_d());
      combo.bracket = dual_norm(tree, combo.functional, options);
      combo.holds = combo.bracket.contains(combo.expected, tol);
      report.isometry_certified = report.isometry_certified && combo.holds;
      report.combinations.push_back(std::move(combo));
    }
  }

  report.unit_distance_certified = true;
  const JTFunctional base = initial_chi(tree, t);
  for (NodeId s : report.successors) {
    KadecDistance d;
    d.successor = s;
    d.functional = initial_chi(tree, s) - base;
    d.bracket = dual_norm(tree, d.functional, options);
    d.holds = d.bracket.contains(1.0, tol);
    report.unit_distance_certified = report.unit_distance_certified && d.holds;
    report.distances.push_back(std::move(d));
  }
  return report;
}

RhoResult rho(const Tree& tree, const NodeSet& initial_segment, const NormOracle& oracle) {
  NodeSet s = normalize(initial_segment);
  for (NodeId v : s) tree.check(v);
  if (!is_chain(tree, s)) throw PreconditionError("rho: argument is not a chain");
  for (NodeId v : s) {
    auto p = tree.parent(v);
    if (p && !std::binary_search(s.begin(), s.end(), *p)) {
      throw PreconditionError("rho: argument is not downward closed");
    }
  }

  std::vector<Segment> candidates;
  if (s.empty()) {
    candidates = enumerate_segments(tree);
  } else {
    NodeId top = *std::max_element(s.begin(), s.end(), [&](NodeId a, NodeId b) { return tree.depth(a) < tree.depth(b); });
    NodeId root = tree.root_of(top);
    for (const auto& seg : enumerate_segments(tree)) {
      if (seg.bottom == root && tree.is_ancestor(top, seg.top)) candidates.push_back(seg);
    }
  }
  if (candidates.empty()) throw PreconditionError("rho: no segment contains the argument");

  RhoResult out;
  out.value = Interval{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  out.candidates = candidates.size();
  for (const auto& seg : candidates) {
    Interval iv = oracle.eval(tree, chi_segment(tree, seg));
    out.value.lo = std::min(out.value.lo, iv.lo);
    if (iv.hi < out.value.hi) {
      out.value.hi = iv.hi;
      out.argmin = seg;
    }
  }
  return out;
}

}  // namespace jtlab
