#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "support/fixtures.hpp"
#include "wcdsc/cli_io.hpp"
#include "wcdsc/errors.hpp"

using namespace wcdsc;
using namespace wcdsc::cli;

namespace {

std::string fixture_path(const std::string& name) { return std::string(WCDSC_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "wcdsc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Tab-separated key/value lines.
std::map<std::string, std::string> keys(const std::string& text) {
  std::map<std::string, std::string> m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab != std::string::npos) m[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return m;
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents)
      : path_(std::filesystem::temp_directory_path() /
              ("wcdsc_test_" + std::to_string(::getpid()) + "_" +
               std::to_string(counter_++) + ".dsc")) {
    std::ofstream(path_) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string str() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

}  // namespace

TEST(Parse, FixtureA) {
  const ParsedSupport p = parse_support(slurp(fixture_path("fixtureA.dsc")));
  EXPECT_EQ(p.set.informants(), 2u);
  EXPECT_EQ(p.set.size(), 8u);
  EXPECT_EQ(p.set.marginal_size(0), 5u);
  EXPECT_EQ(p.set.marginal_size(1), 4u);
}

TEST(Parse, ZeroWeightTupleIsDropped) {
  const std::string text = slurp(fixture_path("fixtureA.dsc"));
  const ParsedSupport base = parse_support(text);
  const ParsedSupport extra = parse_support(text + "tuple 9 9 0.0\n");
  EXPECT_EQ(extra.set, base.set);
  EXPECT_EQ(extra.set.marginal_size(0), 5u);
}

TEST(Parse, WrongArityReportsLine) {
  try {
    parse_support("informants 2\ntuple 1 1\n  tuple 7\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
  }
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_support("tuple 1 1\n"), ParseError);
  EXPECT_THROW(parse_support("informants 0\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\ninformants 2\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\nalphabet 3: a b\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\nalphabet 1: a a\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\nalphabet 1: a b\ntuple c 1\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\ntuple 1 1 heavy\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\ntuple 1 1 -1\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\nedge 1 1\n"), ParseError);
  EXPECT_THROW(parse_support("informants 2\n"), DegenerateError);
  EXPECT_THROW(parse_support("informants 2\ntuple 1 1 0\n"), DegenerateError);
  EXPECT_THROW(parse_support_file(fixture_path("missing.dsc")), IoError);
}

TEST(Parse, CommentsAndSpacedAlphabet) {
  const ParsedSupport p = parse_support("# header\ninformants 2\r\nalphabet 2 : x y z  # three\ntuple a x\ntuple b y 2.5\n");
  EXPECT_EQ(p.set.size(), 2u);
  // The declared alphabet fixes rank order; unused labels are dropped.
  EXPECT_EQ(p.set.marginal(1), (std::vector<Label>{Label("x"), Label("y")}));
}

TEST(Emit, RoundTrip) {
  for (const char* name : {"fixtureA.dsc", "fixtureB.dsc"}) {
    const SupportSet s = testkit::load_fixture(name);
    const std::string text = emit_support(s);
    EXPECT_EQ(parse_support(text).set, s) << name;
    EXPECT_EQ(emit_support(parse_support(text).set), text);
  }
}

TEST(DataVectorText, PlainAndNested) {
  EXPECT_EQ(parse_data_vector("1,3"), testkit::vec({"1", "3"}));
  EXPECT_EQ(parse_data_vector("(1,1),(1,3)").values.size(), 2u);
  EXPECT_THROW(parse_data_vector("(1,1"), DomainError);
}

TEST(Cli, MeasureFixtureA) {
  const Outcome r = invoke({"measure", fixture_path("fixtureA.dsc")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = keys(r.out);
  EXPECT_EQ(m.at("joint_ambiguity"), "8");
  EXPECT_EQ(m.at("marginal_ambiguity.1"), "5");
  EXPECT_EQ(m.at("marginal_ambiguity.2"), "4");
  EXPECT_EQ(m.at("conditional_ambiguity.1|2=1"), "5");
  EXPECT_EQ(m.at("conditional_ambiguity.1|2=2"), "1");
  EXPECT_EQ(m.at("conditional_ambiguity.2|1=1"), "2");
  EXPECT_EQ(m.at("conditional_ambiguity.2|1=5"), "1");
  EXPECT_EQ(m.at("max_conditional_ambiguity.1|2"), "5");
  EXPECT_EQ(m.at("max_conditional_ambiguity.2|1"), "2");
  EXPECT_EQ(m.at("chain_cost.1,2"), "4");
  EXPECT_EQ(m.at("chain_cost.2,1"), "5");
  EXPECT_EQ(m.at("chain_bound"), "4");
}

TEST(Cli, SimulateTraceFixtureB) {
  const Outcome r = invoke({"simulate", fixture_path("fixtureB.dsc"), "--x", "1,3", "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("round 1 | query 1.2 | response 0 | 10 -> 5 | sink_bits +3\n"), std::string::npos);
  EXPECT_NE(r.out.find("round 4 | query 2.2 | response 1 | 2 -> 1 | sink_bits +3\n"), std::string::npos);
  EXPECT_NE(r.out.find("decoded (1,3)\n"), std::string::npos);
  const auto m = keys(r.out);
  EXPECT_EQ(m.at("informant_bits"), "4");
  EXPECT_EQ(m.at("informant_bits.1"), "3");
  EXPECT_EQ(m.at("informant_bits.2"), "1");
}

TEST(Cli, SimulateSweepAndAdversary) {
  const Outcome sweep = invoke({"simulate", fixture_path("fixtureB.dsc"), "--sweep"});
  ASSERT_EQ(sweep.code, 0) << sweep.err;
  EXPECT_EQ(keys(sweep.out).at("max_informant_bits"), "4");
  EXPECT_EQ(keys(sweep.out).at("runs"), "10");
  const Outcome adv = invoke({"simulate", fixture_path("fixtureB.dsc"), "--adversary", "--protocol", "round-parallel"});
  ASSERT_EQ(adv.code, 0) << adv.err;
  EXPECT_EQ(keys(adv.out).at("protocol"), "round-parallel");
}

TEST(Cli, KBitSerialSamples) {
  const Outcome r = invoke({"simulate", fixture_path("fixtureB.dsc"), "--protocol", "k-bit-serial", "--k", "2",
                        "--x", "1,3;5,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(keys(r.out).at("block_length"), "2");
  EXPECT_EQ(keys(r.out).at("initial_ambiguity"), "100");
}

TEST(Cli, CompressibilityWithOracle) {
  const Outcome r = invoke({"compressibility", fixture_path("fixtureA.dsc"), "--oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = keys(r.out);
  EXPECT_EQ(m.at("oracle_agrees"), "yes");
  EXPECT_EQ(m.at("bounds_hold"), "yes");
}

TEST(Cli, RateRegionBlock) {
  const Outcome r = invoke({"rate-region", fixture_path("fixtureA.dsc"), "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("cb 3.5\n"), std::string::npos) << r.out;
  const Outcome single = invoke({"rate-region", fixture_path("fixtureB.dsc"), "--oracle"});
  ASSERT_EQ(single.code, 0) << single.err;
  EXPECT_NE(single.out.find("corner 2 2\n"), std::string::npos);
  EXPECT_NE(single.out.find("cb 4\n"), std::string::npos);
  EXPECT_NE(single.out.find("oracle_agrees yes\n"), std::string::npos);
}

TEST(Cli, BlockCompareHeader) {
  const Outcome r = invoke({"block-compare", fixture_path("fixtureB.dsc"), "--k-max", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("k\tcb_k\tcb_k_per_block\tgap", 0), 0u);
  EXPECT_NE(r.out.find("\n1\t4\t4\t0"), std::string::npos);
}

TEST(Cli, CheckPropertiesReportsAndExitsZero) {
  const Outcome r = invoke({"check-properties", fixture_path("fixtureB.dsc")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(keys(r.out).count("all_passed"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", fixture_path("fixtureB.dsc")}).code, kExitUsage);
  EXPECT_EQ(invoke({"simulate", fixture_path("fixtureB.dsc"), "--x", "1,2"}).code, kExitUsage);
  EXPECT_EQ(invoke({"measure", fixture_path("fixtureB.dsc"), "--trace"}).code, kExitUsage);
  EXPECT_EQ(invoke({"measure", fixture_path("fixtureB.dsc"), "--k", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"measure", fixture_path("missing.dsc")}).code, kExitParse);

  TempFile bad("informants 2\ntuple 1\n");
  const Outcome parse = invoke({"measure", bad.str()});
  EXPECT_EQ(parse.code, kExitParse);
  EXPECT_NE(parse.err.find(":2:1:"), std::string::npos) << parse.err;

  TempFile empty("informants 3\n");
  EXPECT_EQ(invoke({"measure", empty.str()}).code, kExitDegenerate);
}

TEST(Cli, OutputFile) {
  TempFile target("");
  const Outcome r = invoke({"measure", fixture_path("fixtureB.dsc"), "--output", target.str()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(keys(slurp(target.str())).at("joint_ambiguity"), "10");
}
