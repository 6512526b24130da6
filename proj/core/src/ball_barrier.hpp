#pragma once

#include <cstddef>
#include <vector>

namespace jtlab::detail {

/// One block constraint ‖A x‖₂ ≤ 1 where every row of A is the 0/1 indicator
/// of a set of variables.
struct BallConstraint {
  std::vector<std::vector<std::size_t>> rows;
};

struct BarrierOptions {
  /// Stop once the barrier duality gap 2m/t drops below this value.
  double gap = 1e-8;
  int max_newton_steps = 200;
  double t_growth = 8.0;
};

struct BarrierResult {
  /// Strictly feasible for every constraint.
  std::vector<double> x;
  /// Multipliers per constraint (one entry per row), with Σ_j A_jᵀ y_j ≈ c;
  /// the iterate along the path with the smallest weak-duality bound.
  std::vector<std::vector<double>> y;
  double objective = 0.0;
  double gap_bound = 0.0;
  bool converged = false;
};

/// Maximizes ⟨c, x⟩ subject to ‖A_j x‖₂ ≤ 1 for every j, by a log-barrier
/// path-following Newton method. Every variable must appear in at least one
/// row of some constraint.
BarrierResult maximize_over_balls(const std::vector<double>& c, const std::vector<BallConstraint>& constraints,
                                  const BarrierOptions& options);

}  // namespace jtlab::detail
