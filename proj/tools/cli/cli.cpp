#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "jtlab/completion.hpp"
#include "jtlab/dual.hpp"
#include "jtlab/errors.hpp"
#include "jtlab/io.hpp"
#include "jtlab/norm.hpp"
#include "jtlab/probe.hpp"
#include "jtlab/sigma_q.hpp"

namespace jtlab::cli {
namespace {

constexpr std::size_t kCrossCheckLimit = 10;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

Tree load_tree(const std::string& path) {
  auto in = open_input(path);
  try {
    return read_tree(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <class Reader>
auto load_with(const std::string& path, Reader reader) {
  auto in = open_input(path);
  try {
    return reader(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string decimal(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string family_text(const SegmentFamily& family) {
  std::string out = "family";
  for (const auto& s : family.segments()) {
    out += " [" + std::to_string(s.bottom.value) + "," + std::to_string(s.top.value) + "]";
  }
  return out;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_norm(const RunConfig& cfg, std::ostream& out) {
  Tree tree = load_tree(cfg.inputs.at(0));
  JTVector f = load_with(cfg.inputs.at(1), [](std::istream& in) { return read_vector(in); });
  f.check(tree);
  NormCertificate cert = norm_dp(tree, f);
  bool cross_checked = false;
  if (tree.size() <= kCrossCheckLimit) {
    if (norm_bruteforce(tree, f).norm_sq != cert.norm_sq) {
      throw InvariantViolation("dynamic program disagrees with exhaustive enumeration");
    }
    cross_checked = true;
  }
  if (cfg.format == Format::Json) {
    Json j = to_json(cert);
    j["crossChecked"] = cross_checked;
    emit_json(out, j);
  } else {
    out << "normSq " << to_string(cert.norm_sq) << "\n";
    out << "norm " << decimal(cert.norm) << "\n";
    out << family_text(cert.family) << "\n";
    out << "crossChecked " << (cross_checked ? "true" : "false") << "\n";
  }
  return kOk;
}

int cmd_dualnorm(const RunConfig& cfg, std::ostream& out) {
  Tree tree = load_tree(cfg.inputs.at(0));
  JTFunctional x = load_with(cfg.inputs.at(1), [](std::istream& in) { return read_functional(in); });
  x.check(tree);
  DualBracket b = dual_norm(tree, x, DualOptions{cfg.tol, cfg.budget});
  if (auto problem = verify_bracket(tree, x, b); !problem.empty()) {
    throw InvariantViolation("bracket failed verification: " + problem);
  }
  if (cfg.format == Format::Json) {
    emit_json(out, to_json(b));
  } else {
    Rational residual = 0;
    for (const auto& [_, v] : b.residual.entries()) residual += abs(v);
    out << "lower " << decimal(b.lower) << "\n";
    out << "upper " << decimal(b.upper) << "\n";
    out << "width " << decimal(b.width()) << "\n";
    out << "toleranceMet " << (b.tolerance_met ? "true" : "false") << "\n";
    out << "iterations " << b.iterations << "\n";
    out << "witness";
    for (const auto& [k, v] : b.witness.entries()) out << " " << k.value << ":" << to_string(v);
    out << "\n";
    out << "decompositionTerms " << b.decomposition.size() << "\n";
    out << "residualL1 " << decimal(residual.get_d()) << "\n";
  }
  return b.tolerance_met ? kOk : kToleranceUnmet;
}

std::optional<NodeId> parse_node_arg(const std::string& s) {
  if (s == "-") return std::nullopt;
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("bad --node '" + s + "'");
  }
  return NodeId(static_cast<std::uint32_t>(std::stoul(s)));
}

struct ProbeArgs {
  std::string node;
  std::string kind = "flat";
  std::string oracle = "canonical";
  std::size_t k = 0;
  int sanity_samples = 3;
};

int cmd_probe(const RunConfig& cfg, const ProbeArgs& args, std::ostream& out) {
  Tree tree = load_tree(cfg.inputs.at(0));
  const DualOptions options{cfg.tol, cfg.budget};
  auto oracle = make_oracle(args.oracle, options);
  auto node = parse_node_arg(args.node);
  if (node) tree.check(*node);

  Json report = Json::object();
  report["oracle"] = oracle->description();
  report["seed"] = cfg.seed;
  report["sanity"] = to_json(check_oracle(*oracle, tree, cfg.seed, args.sanity_samples, cfg.tol));

  if (args.kind == "flat") {
    if (!node) throw ParseError("flat probe needs a node");
    report["report"] = to_json(flat_segment_witness(tree, *node, *oracle, cfg.tol));
  } else if (args.kind == "kadec") {
    if (!node) throw ParseError("kadec probe needs a node");
    std::size_t k = args.k == 0 ? tree.children(*node).size() : args.k;
    report["report"] = to_json(kadec_pattern_witness(tree, *node, k, cfg.tol));
  } else if (args.kind == "rho") {
    NodeSet s;
    if (node) s = normalize(tree.ancestors(*node));
    report["report"] = to_json(rho(tree, s, *oracle));
  } else {
    throw ParseError("unknown probe kind '" + args.kind + "' (expected flat, kadec or rho)");
  }
  emit_json(out, report);
  return kOk;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  Tree tree = load_tree(cfg.inputs.at(0));
  AntichainCover cover = mirsky_cover(tree);
  if (!verify_cover(tree, cover)) throw InvariantViolation("level decomposition is not an antichain cover");
  const std::size_t segments = enumerate_segments(tree).size();
  const std::size_t completion = complete(tree).size();
  if (cfg.format == Format::Json) {
    Json classes = Json::array();
    for (const auto& cls : cover.classes) {
      Json c = Json::array();
      for (NodeId v : cls) c.push_back(v.value);
      classes.push_back(std::move(c));
    }
    emit_json(out, Json{{"nodes", tree.size()},
                        {"height", tree.height()},
                        {"antichains", cover.classes.size()},
                        {"cover", classes},
                        {"segments", segments},
                        {"completion", completion}});
  } else {
    out << "nodes " << tree.size() << "\n";
    out << "height " << tree.height() << "\n";
    out << "antichains " << cover.classes.size() << "\n";
    for (std::size_t i = 0; i < cover.classes.size(); ++i) {
      out << "class " << i << ":";
      for (NodeId v : cover.classes[i]) out << " " << v.value;
      out << "\n";
    }
    out << "segments " << segments << "\n";
    out << "completion " << completion << "\n";
  }
  return kOk;
}

int cmd_complete(const RunConfig& cfg, std::ostream& out) {
  Tree tree = load_tree(cfg.inputs.at(0));
  CompletedTree completed = complete(tree);
  if (cfg.format == Format::Json) {
    Json max = Json::array();
    for (std::size_t i = 0; i < completed.size(); ++i) {
      auto m = completed.maximum(NodeId(static_cast<std::uint32_t>(i)));
      max.push_back(m ? Json(m->value) : Json(nullptr));
    }
    Json j = tree_to_json(completed.tree());
    j["emptySegment"] = CompletedTree::empty_segment().value;
    j["maximum"] = std::move(max);
    emit_json(out, j);
  } else {
    out << format_completed_tree(completed);
  }
  return kOk;
}

struct SigmaqArgs {
  std::string support;
  bool descent = false;
  std::size_t depth = 4;
  std::string window = "0:1";
  std::size_t budget = 64;
  std::string labeling = "length";
};

Labeling labeling_named(const std::string& name) {
  if (name == "length") return [](const RationalSeq& t) { return static_cast<long>(t.length()); };
  if (name == "denominator") return [](const RationalSeq& t) { return t.max().get_den().get_si(); };
  throw ParseError("unknown labeling '" + name + "' (expected length or denominator)");
}

int cmd_sigmaq(const RunConfig& cfg, const SigmaqArgs& args, std::ostream& out) {
  if (args.descent == !args.support.empty()) throw ParseError("sigmaq needs exactly one of --support or --descent");
  if (!args.support.empty()) {
    SqSupport support = load_with(args.support, [](std::istream& in) { return read_sq_support(in); });
    SqNormResult r = reduce_and_norm(support);
    if (cfg.format == Format::Json) {
      emit_json(out, to_json(r));
    } else {
      out << "normSq " << to_string(r.certificate.norm_sq) << "\n";
      out << "norm " << decimal(r.certificate.norm) << "\n";
      out << "reducedNodes " << r.instance.tree.size() << "\n";
      out << "family";
      for (const auto& s : r.segments) out << " [" << s.bottom.str() << ";" << s.top.str() << "]";
      out << "\n";
    }
    return kOk;
  }
  auto colon = args.window.find(':');
  if (colon == std::string::npos) throw ParseError("--window must be lo:hi");
  RationalWindow window{parse_rational(args.window.substr(0, colon)), parse_rational(args.window.substr(colon + 1))};
  DescentReport r = kurepa_descent(labeling_named(args.labeling), args.depth, window, args.budget);
  if (cfg.format == Format::Json) {
    emit_json(out, to_json(r));
  } else {
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
      out << "t" << i + 1 << " " << r.chain[i].str() << " label " << r.labels[i] << " q " << to_string(r.bounds[i])
          << "\n";
    }
    out << "labels";
    for (long l : r.labels) out << " " << l;
    out << "\n";
    out << "semantics " << r.semantics << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and certified computation in James tree spaces"};
  app.name("jtlab");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "Bracket tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--budget", cfg.budget, "Cutting-plane round budget")->check(CLI::PositiveNumber);
  };

  std::string tree_path, data_path;

  auto* norm = app.add_subcommand("norm", "Exact JT norm of a vector, with certificate");
  norm->add_option("tree", tree_path, "Tree file")->required();
  norm->add_option("vector", data_path, "Vector file")->required();
  add_common(norm);

  auto* dual = app.add_subcommand("dualnorm", "Certified bracket for the dual norm of a functional");
  dual->add_option("tree", tree_path, "Tree file")->required();
  dual->add_option("functional", data_path, "Functional file")->required();
  add_common(dual);
  add_solver(dual);

  ProbeArgs probe_args;
  auto* probe = app.add_subcommand("probe", "Flat-segment, Kadec-pattern and rho probes");
  probe->add_option("tree", tree_path, "Tree file")->required();
  probe->add_option("--node", probe_args.node, "Node id ('-' for the empty initial segment)")->required();
  probe->add_option("--kind", probe_args.kind, "flat | kadec | rho");
  probe->add_option("--oracle", probe_args.oracle, "canonical | perturbed:<eps>");
  probe->add_option("--k", probe_args.k, "Successors used by the kadec probe (default: all)");
  probe->add_option("--sanity-samples", probe_args.sanity_samples, "Oracle sanity samples");
  probe->add_option("--seed", cfg.seed, "Seed for oracle sanity sampling");
  add_solver(probe);

  auto* analyze = app.add_subcommand("analyze", "Height, antichain cover, segment count, completion size");
  analyze->add_option("tree", tree_path, "Tree file")->required();
  add_common(analyze);

  auto* completion = app.add_subcommand("complete", "Completed tree of initial segments");
  completion->add_option("tree", tree_path, "Tree file")->required();
  add_common(completion);

  SigmaqArgs sq_args;
  auto* sigmaq = app.add_subcommand("sigmaq", "Norms on the rational-sequence tree and the bounded descent");
  sigmaq->add_option("--support", sq_args.support, "Support file: 'q1,...,qk value' per line");
  sigmaq->add_flag("--descent", sq_args.descent, "Run the bounded greedy descent");
  sigmaq->add_option("--depth", sq_args.depth, "Descent depth")->check(CLI::PositiveNumber);
  sigmaq->add_option("--window", sq_args.window, "Rational window lo:hi");
  sigmaq->add_option("--budget", sq_args.budget, "Candidates per descent step")->check(CLI::PositiveNumber);
  sigmaq->add_option("--labeling", sq_args.labeling, "length | denominator");
  add_common(sigmaq);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  if (const char* env = std::getenv("JTLAB_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "jtlab: JTLAB_SEED must be a non-negative integer\n";
      return kParseError;
    }
  }
  cfg.format = format == "json" ? Format::Json : Format::Text;
  cfg.inputs = {tree_path, data_path};

  try {
    if (norm->parsed()) return cmd_norm(cfg, out);
    if (dual->parsed()) return cmd_dualnorm(cfg, out);
    if (probe->parsed()) return cmd_probe(cfg, probe_args, out);
    if (analyze->parsed()) return cmd_analyze(cfg, out);
    if (completion->parsed()) return cmd_complete(cfg, out);
    if (sigmaq->parsed()) return cmd_sigmaq(cfg, sq_args, out);
  } catch (const ParseError& e) {
    err << "jtlab: " << e.what() << "\n";
    return kParseError;
  } catch (const InvalidNode& e) {
    err << "jtlab: " << e.what() << "\n";
    return kParseError;
  } catch (const PreconditionError& e) {
    err << "jtlab: " << e.what() << "\n";
    return kParseError;
  } catch (const InvariantViolation& e) {
    err << "jtlab: invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "jtlab: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace jtlab::cli
