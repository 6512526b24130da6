#pragma once

#include <string>
#include <vector>

#include "jtlab/norm.hpp"

namespace jtlab {

/// χ*_σ: coefficient 1 on every node of σ.
JTFunctional chi_segment(const Tree& tree, const Segment& sigma);

/// ⟨x*, x⟩ = Σ_t x*(t)·x(t), exact.
Rational pair(const JTFunctional& functional, const JTVector& x);

/// A_Fᵀ y: puts weight y_i on every node of the i-th segment of F.
JTFunctional segment_adjoint(const Tree& tree, const SegmentFamily& family, const std::vector<Rational>& weights);

struct DecompositionTerm {
  SegmentFamily family;
  std::vector<Rational> weights;  // one per segment of family
};

/// Certified interval for ‖x*‖ = sup{⟨x*, x⟩ : ‖x‖ ≤ 1}.
///
/// The lower end is attained by `witness` (exact ‖witness‖² ≤ 1). The upper end
/// comes from x* = Σ_j A_{F_j}ᵀ y_j + residual, which bounds ⟨x*, x⟩ by
/// Σ_j ‖y_j‖₂ + ‖residual‖₁ for every x in the unit ball, since each family
/// gives ‖A_F x‖₂ ≤ ‖x‖ and each singleton gives |x_t| ≤ ‖x‖.
struct DualBracket {
  double lower = 0.0;
  double upper = 0.0;
  JTVector witness;
  std::vector<DecompositionTerm> decomposition;
  JTFunctional residual;
  bool tolerance_met = false;
  int iterations = 0;

  double width() const { return upper - lower; }
  bool contains(double value, double slack = 0.0) const {
    return lower - slack <= value && value <= upper + slack;
  }
};

struct DualOptions {
  double tol = 1e-6;
  /// Cutting-plane rounds before giving up with tolerance_met = false.
  int budget = 100;
};

/// Cutting-plane computation of the dual norm with the exact primal norm as
/// separation oracle. Always returns a sound bracket; tolerance_met reports
/// whether upper - lower <= tol was reached within the budget.
DualBracket dual_norm(const Tree& tree, const JTFunctional& functional, const DualOptions& options = {});

/// Re-verifies every certified claim of a bracket in exact arithmetic,
/// independently of the solver. Returns an empty string when sound, else a
/// description of the first failure.
std::string verify_bracket(const Tree& tree, const JTFunctional& functional, const DualBracket& bracket);

/// Optimum of max ⟨x*, x⟩ s.t. ‖A_F x‖₂ ≤ 1 for the given families only, with
/// x ranging over the nodes between support points of x*. `value` is accurate
/// to about `gap`.
struct RestrictedOptimum {
  double value = 0.0;
  JTVector x;
};
RestrictedOptimum restricted_optimum(const Tree& tree, const JTFunctional& functional,
                                     const std::vector<SegmentFamily>& families, double gap = 1e-9);

/// Nodes lying between two support points: {t : s ⪯ t ⪯ u, s, u ∈ supp}.
NodeSet support_hull(const Tree& tree, const NodeSet& support);

struct L2CombinationCheck {
  bool holds = false;
  double expected = 0.0;
  DualBracket bracket;
};

/// Checks ‖Σ λ_i χ*_{σ_i}‖ = (Σ λ_i²)^{1/2} for segments whose bottoms are
/// pairwise incomparable. Throws PreconditionError otherwise.
L2CombinationCheck l2_combination_check(const Tree& tree, const std::vector<Segment>& segments,
                                        const std::vector<Rational>& weights, double tol);

}  // namespace jtlab
