#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "jtlab/io.hpp"

namespace jtlab::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(JTLAB_TEST_DATA_DIR) + "/" + name; }

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "jtlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

TEST(CliNorm, ChainOfTwo) {
  auto r = run_cli({"norm", data("chain2.txt"), data("ones2.txt")});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_TRUE(has_line(r.out, "normSq 4"));
  EXPECT_TRUE(has_line(r.out, "family [0,1]"));
  EXPECT_TRUE(has_line(r.out, "crossChecked true"));
}

TEST(CliNorm, EmptyVector) {
  auto r = run_cli({"norm", data("vtree.txt"), data("empty.txt")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "normSq 0"));
  EXPECT_TRUE(has_line(r.out, "family"));
}

TEST(CliNorm, JsonRoundTrips) {
  auto r = run_cli({"norm", data("vtree.txt"), data("mixed.txt"), "--format", "json"});
  ASSERT_EQ(r.code, kOk);
  Json j = Json::parse(r.out);
  Tree tree = parse_tree("0 -\n1 0\n2 0\n");
  NormCertificate cert = certificate_from_json(tree, j);
  EXPECT_EQ(cert.norm_sq, norm_dp(tree, JTVector{{NodeId(0), -1}, {NodeId(1), 1}, {NodeId(2), Rational(1, 2)}}).norm_sq);
}

TEST(CliErrors, ParseFailuresExitTwo) {
  EXPECT_EQ(run_cli({"norm", data("vtree.txt"), data("malformed.txt")}).code, kParseError);
  EXPECT_EQ(run_cli({"norm", data("vtree.txt"), data("missing.txt")}).code, kParseError);
  EXPECT_EQ(run_cli({"norm", data("malformed.txt"), data("empty.txt")}).code, kParseError);
  EXPECT_EQ(run_cli({"bogus"}).code, kParseError);
  EXPECT_EQ(run_cli({}).code, kParseError);
  EXPECT_EQ(run_cli({"dualnorm", data("vtree.txt"), data("ones2.txt"), "--tol", "-1"}).code, kParseError);
  // node 5 is outside the tree
  EXPECT_EQ(run_cli({"probe", data("vtree.txt"), "--node", "5"}).code, kParseError);
  EXPECT_EQ(run_cli({"probe", data("vtree.txt"), "--node", "1", "--kind", "flat"}).code, kParseError);
  EXPECT_EQ(run_cli({"probe", data("vtree.txt"), "--node", "0", "--oracle", "lur"}).code, kParseError);
}

TEST(CliErrors, HelpIsSuccess) { EXPECT_EQ(run_cli({"--help"}).code, kOk); }

TEST(CliDual, SegmentFunctionalBracketsOne) {
  auto r = run_cli({"dualnorm", data("chain2.txt"), data("chi_root_a.txt"), "--format", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_LE(j["lower"].get<double>(), 1.0);
  EXPECT_GE(j["upper"].get<double>(), 1.0);
  EXPECT_TRUE(j["toleranceMet"].get<bool>());
  Tree tree = parse_tree("0 -\n1 0\n");
  JTFunctional x{{NodeId(0), 1}, {NodeId(1), 1}};
  EXPECT_EQ(verify_bracket(tree, x, bracket_from_json(tree, j)), "");
}

TEST(CliDual, ZeroFunctional) {
  auto r = run_cli({"dualnorm", data("vtree.txt"), data("empty.txt")});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "lower 0"));
  EXPECT_TRUE(has_line(r.out, "upper 0"));
}

TEST(CliDual, TinyBudgetExitsFourWithBracket) {
  auto r = run_cli({"dualnorm", data("vtree.txt"), data("mixed.txt"), "--tol", "1e-14", "--budget", "1"});
  EXPECT_EQ(r.code, kToleranceUnmet);
  EXPECT_TRUE(has_line(r.out, "toleranceMet false"));
  EXPECT_NE(r.out.find("lower "), std::string::npos);
}

TEST(CliProbe, FlatAndPerturbed) {
  auto flat = run_cli({"probe", data("vtree.txt"), "--node", "0", "--kind", "flat"});
  ASSERT_EQ(flat.code, kOk) << flat.err;
  Json j = Json::parse(flat.out);
  EXPECT_EQ(j["report"]["verdict"], "FLAT");
  EXPECT_TRUE(j["sanity"]["homogeneous"].get<bool>());

  auto pert = run_cli({"probe", data("vtree.txt"), "--node", "0", "--kind", "flat", "--oracle", "perturbed:0.1"});
  ASSERT_EQ(pert.code, kOk);
  EXPECT_EQ(Json::parse(pert.out)["report"]["verdict"], "INCONCLUSIVE");
}

TEST(CliProbe, KadecAtStarRoot) {
  auto r = run_cli({"probe", data("star3.txt"), "--node", "0", "--kind", "kadec"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["report"]["verdict"], "pattern certified");
}

TEST(CliProbe, RhoOnEmptySegment) {
  auto r = run_cli({"probe", data("chain2.txt"), "--node", "-", "--kind", "rho"});
  ASSERT_EQ(r.code, kOk) << r.err;
  Json v = Json::parse(r.out)["report"]["value"];
  EXPECT_LE(v[0].get<double>(), 1.0 + 1e-6);
  EXPECT_GE(v[1].get<double>(), 1.0 - 1e-6);
}

TEST(CliProbe, SeedFromEnvironmentIsDeterministic) {
  ::setenv("JTLAB_SEED", "17", 1);
  auto a = run_cli({"probe", data("vtree.txt"), "--node", "0", "--seed", "3"});
  auto b = run_cli({"probe", data("vtree.txt"), "--node", "0"});
  ::unsetenv("JTLAB_SEED");
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 17);
}

TEST(CliAnalyze, Shapes) {
  auto chain = run_cli({"analyze", data("chain3.txt")});
  EXPECT_TRUE(has_line(chain.out, "height 3"));
  EXPECT_TRUE(has_line(chain.out, "antichains 3"));
  auto star = run_cli({"analyze", data("star3.txt")});
  EXPECT_TRUE(has_line(star.out, "height 2"));
  EXPECT_TRUE(has_line(star.out, "antichains 2"));
  auto vee = run_cli({"analyze", data("vtree.txt")});
  EXPECT_TRUE(has_line(vee.out, "segments 5"));
  EXPECT_TRUE(has_line(vee.out, "completion 4"));
}

TEST(CliComplete, TextIsATree) {
  auto r = run_cli({"complete", data("vtree.txt")});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(has_line(r.out, "# empty-segment 0"));
  EXPECT_EQ(parse_tree(r.out).size(), 4U);
}

TEST(CliSigmaQ, SupportAndDescent) {
  auto s = run_cli({"sigmaq", "--support", data("sq_vee.txt")});
  ASSERT_EQ(s.code, kOk) << s.err;
  EXPECT_TRUE(has_line(s.out, "normSq 5"));

  auto e = run_cli({"sigmaq", "--support", data("empty.txt")});
  EXPECT_TRUE(has_line(e.out, "normSq 0"));

  auto d = run_cli({"sigmaq", "--descent", "--depth", "4", "--labeling", "length"});
  ASSERT_EQ(d.code, kOk) << d.err;
  EXPECT_TRUE(has_line(d.out, "labels 1 2 3 4"));

  EXPECT_EQ(run_cli({"sigmaq"}).code, kParseError);
  EXPECT_EQ(run_cli({"sigmaq", "--descent", "--window", "1:1"}).code, kParseError);
}

TEST(CliDeterminism, ByteIdenticalOutput) {
  const std::vector<std::string> args = {"dualnorm", data("vtree.txt"), data("mixed.txt"), "--format", "json"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

}  // namespace
}  // namespace jtlab::cli
