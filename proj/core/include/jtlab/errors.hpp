#pragma once

#include <stdexcept>
#include <string>

namespace jtlab {

/// Malformed text or JSON input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A node id outside [0, n) for the tree it is used with.
class InvalidNode : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// An argument violates a documented precondition (overlapping segments,
/// a node set that is not an antichain, too few successors, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive enumeration would exceed the caller's cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed certificate failed its exact re-verification.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jtlab
