#include "ball_barrier.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jtlab::detail {
namespace {

// Extended precision: near the optimum the active slacks 1 - ‖A x‖² are tiny
// and lose most of their digits to cancellation in double.
using Real = long double;
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

struct Evaluated {
  std::vector<Vec> z;     // A_j x
  std::vector<Real> s;  // 1 - ‖A_j x‖²
  bool feasible = true;
};

Vec apply(const BallConstraint& con, const Vec& x) {
  Vec z(static_cast<Eigen::Index>(con.rows.size()));
  for (std::size_t r = 0; r < con.rows.size(); ++r) {
    Real sum = 0.0;
    for (std::size_t i : con.rows[r]) sum += x[static_cast<Eigen::Index>(i)];
    z[static_cast<Eigen::Index>(r)] = sum;
  }
  return z;
}

Vec apply_transpose(const BallConstraint& con, const Vec& z, Eigen::Index n) {
  Vec out = Vec::Zero(n);
  for (std::size_t r = 0; r < con.rows.size(); ++r) {
    for (std::size_t i : con.rows[r]) out[static_cast<Eigen::Index>(i)] += z[static_cast<Eigen::Index>(r)];
  }
  return out;
}

Evaluated evaluate(const std::vector<BallConstraint>& cons, const Vec& x) {
  Evaluated e;
  e.z.reserve(cons.size());
  e.s.reserve(cons.size());
  for (const auto& con : cons) {
    Vec z = apply(con, x);
    Real s = 1.0L - z.squaredNorm();
    if (!(s > 0.0)) e.feasible = false;
    e.z.push_back(std::move(z));
    e.s.push_back(s);
  }
  return e;
}

Real barrier_value(const Vec& c, Real t, const Vec& x, const Evaluated& e) {
  Real value = -t * c.dot(x);
  for (Real s : e.s) value -= std::log(s);
  return value;
}

}  // namespace

BarrierResult maximize_over_balls(const std::vector<double>& c_in, const std::vector<BallConstraint>& cons,
                                  const BarrierOptions& options) {
  const auto n = static_cast<Eigen::Index>(c_in.size());
  Vec c = Eigen::Map<const Eigen::VectorXd>(c_in.data(), n).cast<Real>();
  BarrierResult result;
  result.x.assign(c_in.size(), 0.0);
  result.y.resize(cons.size());
  if (n == 0 || cons.empty()) {
    for (std::size_t j = 0; j < cons.size(); ++j) result.y[j].assign(cons[j].rows.size(), 0.0);
    result.converged = true;
    return result;
  }

  const double m = static_cast<double>(cons.size());
  const Real scale = std::max<Real>(c.lpNorm<Eigen::Infinity>(), 1e-300L);
  Vec x = Vec::Zero(n);
  Real t = 1.0L / scale;
  Evaluated e = evaluate(cons, x);
  bool converged = false;

  // Centering degrades once the active slacks approach rounding level, so the
  // multipliers of the last iterate are not always the best ones. Keep the
  // set with the smallest weak-duality bound seen along the path.
  Real best_bound = std::numeric_limits<Real>::infinity();
  auto consider_multipliers = [&](Real t_now) {
    std::vector<std::vector<double>> y(cons.size());
    Vec covered = Vec::Zero(n);
    Real bound = 0.0;
    for (std::size_t j = 0; j < cons.size(); ++j) {
      const Real factor = 2.0L / (t_now * e.s[j]);
      Vec yj = factor * e.z[j];
      bound += yj.norm();
      covered += apply_transpose(cons[j], yj, n);
      y[j].resize(static_cast<std::size_t>(yj.size()));
      for (Eigen::Index r = 0; r < yj.size(); ++r) y[j][static_cast<std::size_t>(r)] = static_cast<double>(yj[r]);
    }
    bound += (c - covered).lpNorm<1>();
    if (bound < best_bound) {
      best_bound = bound;
      result.y = std::move(y);
    }
  };

  for (int outer = 0; outer < 200; ++outer) {
    // Centering: Newton on -t⟨c,x⟩ - Σ log(1 - ‖A_j x‖²).
    for (int step = 0; step < options.max_newton_steps; ++step) {
      Vec grad = -t * c;
      Mat hess = Mat::Zero(n, n);
      for (std::size_t j = 0; j < cons.size(); ++j) {
        const auto& con = cons[j];
        const Real s = e.s[j];
        Vec w = apply_transpose(con, e.z[j], n);  // A_jᵀ z_j
        grad += (2.0 / s) * w;
        // A_jᵀ A_j, accumulated row by row.
        for (const auto& row : con.rows) {
          for (std::size_t a : row) {
            for (std::size_t b : row) hess(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) += 2.0 / s;
          }
        }
        hess.noalias() += (4.0 / (s * s)) * w * w.transpose();
      }
      Eigen::LDLT<Mat> ldlt(hess);
      Vec dx = ldlt.solve(-grad);
      if (!dx.allFinite()) break;
      const Real decrement = -grad.dot(dx);
      if (decrement / 2.0 <= 1e-12) break;

      Real alpha = 1.0;
      const Real f0 = barrier_value(c, t, x, e);
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        Vec trial = x + alpha * dx;
        Evaluated et = evaluate(cons, trial);
        if (et.feasible && barrier_value(c, t, trial, et) <= f0 - 0.25 * alpha * decrement) {
          x = std::move(trial);
          e = std::move(et);
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }

    consider_multipliers(t);
    const double gap = static_cast<double>(2.0L * m / t);
    if (gap <= options.gap) {
      converged = true;
      break;
    }
    t *= options.t_growth;
  }

  for (Eigen::Index i = 0; i < n; ++i) result.x[static_cast<std::size_t>(i)] = static_cast<double>(x[i]);
  result.objective = static_cast<double>(c.dot(x));
  result.gap_bound = static_cast<double>(2.0L * m / t);
  result.converged = converged;
  return result;
}

}  // namespace jtlab::detail
