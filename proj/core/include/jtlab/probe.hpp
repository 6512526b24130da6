#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jtlab/dual.hpp"

namespace jtlab {

/// Closed interval of reals known to contain a value.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v, double slack = 0.0) const { return lo - slack <= v && v <= hi + slack; }
  double width() const { return hi - lo; }
};

/// An equivalent norm |||·||| on JT*, evaluated as certified intervals.
class NormOracle {
 public:
  virtual ~NormOracle() = default;
  virtual Interval eval(const Tree& tree, const JTFunctional& functional) const = 0;
  virtual std::string description() const = 0;
  /// Constants with c1·‖x*‖ ≤ |||x*||| ≤ c2·‖x*‖ on a tree with n nodes.
  virtual std::pair<double, double> equivalence(std::size_t n) const = 0;
};

/// The dual norm itself, via dual_norm.
class CanonicalOracle : public NormOracle {
 public:
  explicit CanonicalOracle(DualOptions options = {}) : options_(options) {}
  Interval eval(const Tree& tree, const JTFunctional& functional) const override;
  std::string description() const override { return "canonical"; }
  std::pair<double, double> equivalence(std::size_t) const override { return {1.0, 1.0}; }

 private:
  DualOptions options_;
};

/// |||x*||| = ‖x*‖ + ε·(Σ_t x*(t)²)^{1/2}, a strictly convex perturbation.
class PerturbedOracle : public NormOracle {
 public:
  explicit PerturbedOracle(double epsilon, DualOptions options = {});
  Interval eval(const Tree& tree, const JTFunctional& functional) const override;
  std::string description() const override;
  std::pair<double, double> equivalence(std::size_t n) const override;
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
  DualOptions options_;
};

/// Parses "canonical" or "perturbed:<eps>".
std::unique_ptr<NormOracle> make_oracle(const std::string& name, DualOptions options = {});

struct OracleSanity {
  bool homogeneous = true;
  bool triangle = true;
  double c1 = 1.0;
  double c2 = 1.0;
  int samples = 0;

  bool ok() const { return homogeneous && triangle; }
};

/// Samples positive homogeneity and the triangle inequality on random
/// functionals supported on the tree, with interval slack `tol`.
OracleSanity check_oracle(const NormOracle& oracle, const Tree& tree, std::uint64_t seed, int samples, double tol);

enum class Verdict { Flat, Inconclusive };
std::string to_string(Verdict v);

/// χ*_{[0,t₁]}, χ*_{[0,t₂]} and their midpoint on the oracle sphere.
struct FlatWitness {
  NodeId t;
  NodeId t1;
  NodeId t2;
  Interval first;
  Interval second;
  Interval midpoint;
  JTFunctional first_functional;
  JTFunctional second_functional;
  Verdict verdict = Verdict::Inconclusive;
};

/// Uses the first two children of t. Reports Flat when the three intervals
/// share a common value up to tol. Throws PreconditionError if t has fewer than
/// two immediate successors.
FlatWitness flat_segment_witness(const Tree& tree, NodeId t, const NormOracle& oracle, double tol);

struct KadecCombination {
  std::vector<Rational> weights;
  JTFunctional functional;
  double expected = 0.0;
  DualBracket bracket;
  bool holds = false;
};

struct KadecDistance {
  NodeId successor;
  JTFunctional functional;  // χ*_{[0,t_n]} - χ*_{[0,t]}
  DualBracket bracket;
  bool holds = false;
};

struct KadecReport {
  NodeId t;
  std::vector<NodeId> successors;
  std::vector<KadecCombination> combinations;
  std::vector<KadecDistance> distances;
  double tol = 0.0;
  bool isometry_certified = false;
  bool unit_distance_certified = false;

  bool pattern_certified() const { return isometry_certified && unit_distance_certified; }
};

/// Checks on the first k children t_n of t that (Σ λ_n χ*_{{t_n}}) has norm
/// ‖λ‖₂ for each supplied weight vector, and that every χ*_{[0,t_n]} - χ*_{[0,t]}
/// has norm 1. With no weights a default sample is used. k = 1 skips the
/// combination part.
KadecReport kadec_pattern_witness(const Tree& tree, NodeId t, std::size_t k, double tol,
                                  std::vector<std::vector<Rational>> weights = {});

struct RhoResult {
  Interval value;
  /// Segment attaining the smallest upper end.
  Segment argmin;
  std::size_t candidates = 0;
};

/// ρ(s) = inf{|||χ*_σ||| : s ⊂ σ} over the segments containing the initial
/// segment s (given as its node set; empty means ∅). Throws PreconditionError
/// unless s is a downward-closed chain.
RhoResult rho(const Tree& tree, const NodeSet& initial_segment, const NormOracle& oracle);

}  // namespace jtlab
