#include "jtlab/io.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "jtlab/errors.hpp"

namespace jtlab {
namespace {

// Splits a line into whitespace-separated fields; nullopt for blanks and comments.
std::optional<std::vector<std::string>> fields_of(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  if (out.empty() || out[0][0] == '#') return std::nullopt;
  return out;
}

std::uint32_t parse_id(const std::string& s, std::size_t line_no) {
  if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("line " + std::to_string(line_no) + ": bad node id '" + s + "'");
  }
  return static_cast<std::uint32_t>(std::stoul(s));
}

template <class Tag>
Coefficients<Tag> read_coefficients(std::istream& in) {
  Coefficients<Tag> out;
  std::set<std::uint32_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto f = fields_of(line);
    if (!f) continue;
    if (f->size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'nodeId p/q'");
    std::uint32_t id = parse_id((*f)[0], line_no);
    if (!seen.insert(id).second) throw ParseError("line " + std::to_string(line_no) + ": node repeated");
    Rational value;
    try {
      value = parse_rational((*f)[1]);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    out.set(NodeId(id), value);
  }
  return out;
}

template <class Tag>
std::string format_coeffs(const Coefficients<Tag>& v) {
  std::string out;
  for (const auto& [k, value] : v.entries()) out += std::to_string(k.value) + " " + to_string(value) + "\n";
  return out;
}

template <class Tag>
Json coeffs_to_json(const Coefficients<Tag>& v) {
  Json j = Json::object();
  for (const auto& [k, value] : v.entries()) j[std::to_string(k.value)] = to_string(value);
  return j;
}

template <class Tag>
Coefficients<Tag> coeffs_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("coefficient map must be a JSON object");
  Coefficients<Tag> out;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_string()) throw ParseError("coefficient of node " + key + " must be a \"p/q\" string");
    out.set(NodeId(parse_id(key, 0)), parse_rational(value.template get<std::string>()));
  }
  return out;
}

Json segment_json(const Segment& s) { return Json::array({s.bottom.value, s.top.value}); }

Segment segment_from(const Tree& tree, const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("segment must be [bottom, top]");
  return make_segment(tree, NodeId(j[0].get<std::uint32_t>()), NodeId(j[1].get<std::uint32_t>()));
}

Json rationals_json(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& q : v) j.push_back(to_string(q));
  return j;
}

Json bracket_summary(const DualBracket& b) {
  return Json{{"lower", b.lower}, {"upper", b.upper}, {"toleranceMet", b.tolerance_met}, {"iterations", b.iterations}};
}

}  // namespace

Tree read_tree(std::istream& in) {
  std::map<std::uint32_t, std::optional<NodeId>> parents;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto f = fields_of(line);
    if (!f) continue;
    if (f->size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'id parent'");
    std::uint32_t id = parse_id((*f)[0], line_no);
    std::optional<NodeId> parent;
    if ((*f)[1] != "-") parent = NodeId(parse_id((*f)[1], line_no));
    if (!parents.emplace(id, parent).second) {
      throw ParseError("line " + std::to_string(line_no) + ": node " + std::to_string(id) + " listed twice");
    }
  }
  std::vector<std::optional<NodeId>> dense;
  for (const auto& [id, parent] : parents) {
    if (id != dense.size()) throw ParseError("node ids must be dense from 0; missing " + std::to_string(dense.size()));
    dense.push_back(parent);
  }
  try {
    return Tree::from_parents(dense);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

Tree parse_tree(const std::string& text) {
  std::istringstream is(text);
  return read_tree(is);
}

std::string format_tree(const Tree& tree) {
  std::string out;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    auto p = tree.parent(NodeId(static_cast<std::uint32_t>(i)));
    out += std::to_string(i) + " " + (p ? std::to_string(p->value) : std::string("-")) + "\n";
  }
  return out;
}

std::string format_completed_tree(const CompletedTree& completed) {
  return "# empty-segment " + std::to_string(CompletedTree::empty_segment().value) + "\n" +
         format_tree(completed.tree());
}

Json tree_to_json(const Tree& tree) {
  Json parent = Json::array(), children = Json::array(), depth = Json::array();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    NodeId v(static_cast<std::uint32_t>(i));
    auto p = tree.parent(v);
    parent.push_back(p ? Json(p->value) : Json(nullptr));
    Json kids = Json::array();
    for (NodeId c : tree.children(v)) kids.push_back(c.value);
    children.push_back(std::move(kids));
    depth.push_back(tree.depth(v));
  }
  return Json{{"n", tree.size()}, {"parent", parent}, {"children", children}, {"depth", depth}};
}

Tree tree_from_json(const Json& j) {
  try {
    std::vector<std::optional<NodeId>> parents;
    for (const auto& p : j.at("parent")) {
      parents.push_back(p.is_null() ? std::nullopt : std::optional<NodeId>(NodeId(p.get<std::uint32_t>())));
    }
    if (j.at("n").get<std::size_t>() != parents.size()) throw ParseError("tree JSON: n does not match parent array");
    Tree t = Tree::from_parents(parents);
    if (!(tree_to_json(t) == j)) throw ParseError("tree JSON: children or depth inconsistent with parent");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }
}

JTVector read_vector(std::istream& in) { return read_coefficients<PrimalTag>(in); }
JTFunctional read_functional(std::istream& in) { return read_coefficients<DualTag>(in); }
std::string format_coefficients(const JTVector& v) { return format_coeffs(v); }
std::string format_coefficients(const JTFunctional& v) { return format_coeffs(v); }

Json to_json(const JTVector& v) { return coeffs_to_json(v); }
Json to_json(const JTFunctional& v) { return coeffs_to_json(v); }
JTVector vector_from_json(const Json& j) { return coeffs_from_json<PrimalTag>(j); }
JTFunctional functional_from_json(const Json& j) { return coeffs_from_json<DualTag>(j); }

Json to_json(const SegmentFamily& family) {
  Json j = Json::array();
  for (const auto& s : family.segments()) j.push_back(segment_json(s));
  return j;
}

SegmentFamily family_from_json(const Tree& tree, const Json& j) {
  if (!j.is_array()) throw ParseError("family must be an array of segments");
  std::vector<Segment> segs;
  for (const auto& s : j) segs.push_back(segment_from(tree, s));
  return SegmentFamily::make(tree, std::move(segs));
}

Json to_json(const NormCertificate& cert) {
  return Json{{"normSq", to_string(cert.norm_sq)}, {"norm", cert.norm}, {"family", to_json(cert.family)}};
}

NormCertificate certificate_from_json(const Tree& tree, const Json& j) {
  try {
    NormCertificate cert;
    cert.norm_sq = parse_rational(j.at("normSq").get<std::string>());
    cert.family = family_from_json(tree, j.at("family"));
    cert.norm = j.value("norm", std::sqrt(cert.norm_sq.get_d()));
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("certificate JSON: ") + e.what());
  }
}

Json to_json(const DualBracket& b) {
  Json terms = Json::array();
  for (const auto& t : b.decomposition) {
    terms.push_back(Json{{"family", to_json(t.family)}, {"weights", rationals_json(t.weights)}});
  }
  Json j = bracket_summary(b);
  j["witness"] = to_json(b.witness);
  j["decomposition"] = std::move(terms);
  j["residual"] = to_json(b.residual);
  return j;
}

DualBracket bracket_from_json(const Tree& tree, const Json& j) {
  try {
    DualBracket b;
    b.lower = j.at("lower").get<double>();
    b.upper = j.at("upper").get<double>();
    b.tolerance_met = j.at("toleranceMet").get<bool>();
    b.iterations = j.at("iterations").get<int>();
    b.witness = vector_from_json(j.at("witness"));
    b.residual = functional_from_json(j.at("residual"));
    for (const auto& t : j.at("decomposition")) {
      DecompositionTerm term;
      term.family = family_from_json(tree, t.at("family"));
      for (const auto& w : t.at("weights")) term.weights.push_back(parse_rational(w.get<std::string>()));
      b.decomposition.push_back(std::move(term));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bracket JSON: ") + e.what());
  }
}

Json to_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

Json to_json(const FlatWitness& w) {
  return Json{{"kind", "flat"},
              {"node", w.t.value},
              {"successors", Json::array({w.t1.value, w.t2.value})},
              {"verdict", to_string(w.verdict)},
              {"first", to_json(w.first)},
              {"second", to_json(w.second)},
              {"midpoint", to_json(w.midpoint)},
              {"functionals", Json{{"first", to_json(w.first_functional)}, {"second", to_json(w.second_functional)}}}};
}

Json to_json(const KadecReport& r) {
  Json succ = Json::array();
  for (NodeId s : r.successors) succ.push_back(s.value);
  Json combos = Json::array();
  for (const auto& c : r.combinations) {
    combos.push_back(Json{{"weights", rationals_json(c.weights)},
                          {"functional", to_json(c.functional)},
                          {"expected", c.expected},
                          {"bracket", bracket_summary(c.bracket)},
                          {"holds", c.holds}});
  }
  Json dists = Json::array();
  for (const auto& d : r.distances) {
    dists.push_back(Json{{"successor", d.successor.value},
                         {"functional", to_json(d.functional)},
                         {"bracket", bracket_summary(d.bracket)},
                         {"holds", d.holds}});
  }
  return Json{{"kind", "kadec"},
              {"node", r.t.value},
              {"successors", succ},
              {"tol", r.tol},
              {"combinations", combos},
              {"distances", dists},
              {"isometryCertified", r.isometry_certified},
              {"unitDistanceCertified", r.unit_distance_certified},
              {"verdict", r.pattern_certified() ? "pattern certified" : "pattern not certified"}};
}

Json to_json(const RhoResult& r) {
  return Json{{"kind", "rho"},
              {"value", to_json(r.value)},
              {"argmin", segment_json(r.argmin)},
              {"candidates", r.candidates}};
}

Json to_json(const OracleSanity& s) {
  return Json{{"homogeneous", s.homogeneous}, {"triangle", s.triangle}, {"c1", s.c1}, {"c2", s.c2}, {"samples", s.samples}};
}

SqSupport read_sq_support(std::istream& in) {
  SqSupport out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto f = fields_of(line);
    if (!f) continue;
    if (f->size() != 2) throw ParseError("line " + std::to_string(line_no) + ": expected 'q1,...,qk value'");
    try {
      auto seq = RationalSeq::parse((*f)[0]);
      if (out.contains(seq)) throw ParseError("node repeated");
      out.emplace(std::move(seq), parse_rational((*f)[1]));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

Json to_json(const SqNormResult& r) {
  Json nodes = Json::array();
  for (std::size_t i = 0; i < r.instance.node_map.size(); ++i) {
    NodeId v(static_cast<std::uint32_t>(i));
    auto p = r.instance.tree.parent(v);
    nodes.push_back(Json{{"id", i},
                         {"seq", r.instance.node_map[i].str()},
                         {"parent", p ? Json(p->value) : Json(nullptr)},
                         {"value", to_string(r.instance.values.at(v))}});
  }
  Json segs = Json::array();
  for (const auto& s : r.segments) segs.push_back(Json::array({s.bottom.str(), s.top.str()}));
  return Json{{"normSq", to_string(r.certificate.norm_sq)},
              {"norm", r.certificate.norm},
              {"family", to_json(r.certificate.family)},
              {"segments", segs},
              {"reduced", nodes}};
}

Json to_json(const DescentReport& r) {
  Json chain = Json::array();
  for (const auto& t : r.chain) chain.push_back(t.str());
  return Json{{"chain", chain},
              {"bounds", rationals_json(r.bounds)},
              {"labels", r.labels},
              {"budget", r.budget},
              {"semantics", r.semantics}};
}

}  // namespace jtlab
