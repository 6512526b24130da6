#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "jtlab/completion.hpp"
#include "jtlab/dual.hpp"
#include "jtlab/probe.hpp"
#include "jtlab/sigma_q.hpp"

namespace jtlab {

using Json = nlohmann::ordered_json;

// Tree text format: one "id parent" line per node, parent "-" for roots, ids
// dense from 0 in any order. Blank lines and lines starting with '#' are
// skipped.
Tree read_tree(std::istream& in);
Tree parse_tree(const std::string& text);
std::string format_tree(const Tree& tree);

/// Completed tree in the tree text format, preceded by a marker line naming the
/// node that stands for the empty segment.
std::string format_completed_tree(const CompletedTree& completed);

Json tree_to_json(const Tree& tree);
Tree tree_from_json(const Json& j);

// Vector and functional text format: "nodeId p/q" per line. A node may not
// repeat.
JTVector read_vector(std::istream& in);
JTFunctional read_functional(std::istream& in);
std::string format_coefficients(const JTVector& v);
std::string format_coefficients(const JTFunctional& v);

Json to_json(const JTVector& v);
Json to_json(const JTFunctional& v);
JTVector vector_from_json(const Json& j);
JTFunctional functional_from_json(const Json& j);

Json to_json(const SegmentFamily& family);
SegmentFamily family_from_json(const Tree& tree, const Json& j);

/// { "normSq": "p/q", "norm": 2.0, "family": [[bottom, top], ...] }
Json to_json(const NormCertificate& cert);
NormCertificate certificate_from_json(const Tree& tree, const Json& j);

/// Full bracket including the decomposition, for offline re-verification.
Json to_json(const DualBracket& bracket);
DualBracket bracket_from_json(const Tree& tree, const Json& j);

Json to_json(const Interval& iv);
Json to_json(const FlatWitness& w);
Json to_json(const KadecReport& r);
Json to_json(const RhoResult& r);
Json to_json(const OracleSanity& s);

// σ′Q support format: "q1,q2,...,qk value" per line.
SqSupport read_sq_support(std::istream& in);
Json to_json(const SqNormResult& r);
Json to_json(const DescentReport& r);

}  // namespace jtlab
