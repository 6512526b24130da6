#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>

#include "jtlab/rational.hpp"
#include "jtlab/tree.hpp"

namespace jtlab {

/// Finitely supported exact coefficients on tree nodes. Zero entries are
/// never stored, so two vectors are equal iff their maps are equal.
template <class Tag>
class Coefficients {
 public:
  using Map = std::map<NodeId, Rational>;

  Coefficients() = default;
  Coefficients(std::initializer_list<std::pair<const NodeId, Rational>> init) {
    for (const auto& [k, v] : init) set(k, v);
  }
  explicit Coefficients(const Map& m) {
    for (const auto& [k, v] : m) set(k, v);
  }

  /// Coefficient at v (0 when absent).
  Rational at(NodeId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }
  void set(NodeId v, Rational value) {
    value.canonicalize();
    if (sgn(value) == 0) {
      coeffs_.erase(v);
    } else {
      coeffs_[v] = std::move(value);
    }
  }
  void add(NodeId v, const Rational& value) { set(v, at(v) + value); }

  const Map& entries() const { return coeffs_; }
  std::size_t support_size() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  NodeSet support() const {
    NodeSet out;
    for (const auto& [k, _] : coeffs_) out.push_back(k);
    return out;
  }

  /// Throws InvalidNode if the support leaves the tree.
  void check(const Tree& tree) const {
    for (const auto& [k, _] : coeffs_) tree.check(k);
  }

  Coefficients scaled(const Rational& lambda) const {
    Coefficients out;
    if (sgn(lambda) == 0) return out;
    for (const auto& [k, v] : coeffs_) out.coeffs_.emplace(k, v * lambda);
    return out;
  }

  friend Coefficients operator+(const Coefficients& a, const Coefficients& b) {
    Coefficients out = a;
    for (const auto& [k, v] : b.coeffs_) out.add(k, v);
    return out;
  }
  friend Coefficients operator-(const Coefficients& a, const Coefficients& b) {
    return a + b.scaled(Rational(-1));
  }
  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  Map coeffs_;
};

struct PrimalTag {};
struct DualTag {};

/// Element of c₀₀(T) ⊂ JT.
using JTVector = Coefficients<PrimalTag>;
/// Functional x* acting by ⟨x*, x⟩ = Σ_t x*(t)·x(t).
using JTFunctional = Coefficients<DualTag>;

/// Exact norm² together with a family attaining it.
struct NormCertificate {
  Rational norm_sq;
  SegmentFamily family;
  double norm = 0.0;
};

/// Sum of f over the nodes of s.
Rational segment_sum(const Tree& tree, const JTVector& f, const Segment& s);

/// Σ_i (Σ_{t∈σ_i} f(t))² over the family. Throws PreconditionError when the
/// segments overlap.
Rational family_value(const Tree& tree, const JTVector& f, const SegmentFamily& family);

/// Default enumeration cap for norm_bruteforce.
inline constexpr std::size_t kBruteforceCap = std::size_t{1} << 22;

/// Exact norm by enumerating every disjoint family. Among maximizers the
/// certificate drops zero-sum segments and is the lexicographically least.
NormCertificate norm_bruteforce(const Tree& tree, const JTVector& f, std::size_t cap = kBruteforceCap);

/// Exact norm by dynamic programming over the forest with upper-envelope
/// pruning of the (banked, open-sum) states.
NormCertificate norm_dp(const Tree& tree, const JTVector& f);

/// π_S: keeps the coefficients on ∪_{s∈S}[s,∞). S must be an antichain.
JTVector project_onto_cones(const Tree& tree, const JTVector& f, std::span<const NodeId> antichain);

}  // namespace jtlab
