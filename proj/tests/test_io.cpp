#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "topcorr/catalog.hpp"
#include "topcorr/suite.hpp"

using namespace topcorr;
namespace fs = std::filesystem;

namespace {

const fs::path instance_dir = TOPCORR_INSTANCE_DIR;

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  auto pos = s.find(from);
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + TOPCORR_CLI + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("topcorr_test_" + name);
  std::ofstream(p) << text;
  return p;
}

bool has_check(const Report& r, const std::string& check, Status s) {
  for (const auto& c : r.checks)
    if (c.check == check && c.status == s) return true;
  return false;
}

}  // namespace

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(to_string(Rational(6, 8)), "3/4");
  EXPECT_EQ(to_string(Rational(5)), "5");
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("a"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
}

TEST(Rational, ExactSquareRoots) {
  EXPECT_EQ(exact_sqrt(Rational(9, 4)), Rational(3, 2));
  EXPECT_FALSE(exact_sqrt(Rational(2)).has_value());
}

TEST(Instance, BundledFilesAreCanonical) {
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(instance_dir)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    std::string text = read_file(entry.path());
    io::Instance inst = io::parse_instance(text);
    EXPECT_EQ(io::dump_instance(inst), text) << entry.path();
    EXPECT_TRUE(io::same_instance(io::parse_instance(io::dump_instance(inst)), inst));
  }
  EXPECT_GE(count, 10u);
}

TEST(Instance, GeneratorsRoundTrip) {
  for (const auto& [name, make] : catalog::generators()) {
    io::Instance inst = make({});
    io::Instance back = io::parse_instance(io::dump_instance(inst));
    EXPECT_TRUE(io::same_instance(inst, back)) << name;
    if (name == "broken-haar") continue;
    auto a = inst.all_correspondences(), b = back.all_correspondences();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(same_correspondence(a[i], b[i])) << a[i].name();
  }
}

TEST(Instance, ZeroDenominatorIsParseError) {
  std::string text = read_file(instance_dir / "swap.json");
  std::string bad = replace_once(text, "\"1/2\"", "\"1/0\"");
  ASSERT_NE(bad, text);
  EXPECT_THROW(io::parse_instance(bad), ParseError);
}

TEST(Instance, NonPositiveWeightIsSchemaError) {
  std::string text = read_file(instance_dir / "swap.json");
  std::string bad = replace_once(text, "\"1/2\"", "\"-1/2\"");
  try {
    io::parse_instance(bad);
    FAIL() << "accepted a negative weight";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("weights."), std::string::npos) << e.what();
  }
}

TEST(Instance, SyntaxErrorReportsLineAndColumn) {
  std::string text = "{\n  \"groupoids\": {\n    \"Z1\": [1, 2,\n}\n";
  try {
    io::parse_instance(text);
    FAIL() << "accepted malformed JSON";
  } catch (const ParseError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("line 4"), std::string::npos) << what;
    EXPECT_NE(what.find("column"), std::string::npos) << what;
  }
}

TEST(Instance, DanglingReferenceNamesPath) {
  io::Json j = io::to_json(catalog::gen("swap"));
  j["correspondences"]["swap"]["space"] = "nowhere";
  try {
    io::from_json(j);
    FAIL() << "accepted a dangling bispace";
  } catch (const SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("nowhere"), std::string::npos) << e.what();
  }
}

TEST(Instance, PointCapIsEnforced) {
  std::vector<std::string> names;
  for (int i = 0; i < 13; ++i) names.push_back("x" + std::to_string(i));
  HaarGroupoid big = space_object(names, "X");
  EXPECT_THROW(io::from_json(io::to_json(io::instance_from("big", {identity_correspondence(big)}, {}))),
               CapExceeded);
  EXPECT_THROW(catalog::gen("space-map", {{"X", "13"}}), SchemaError);
}

TEST(Instance, ArrowCapIsEnforced) {
  HaarGroupoid s5 = make_object(cyclic_group(17));
  io::Instance inst;
  inst.objects.push_back({"Z17", s5});
  EXPECT_THROW(io::from_json(io::to_json(inst)), CapExceeded);
}

TEST(Instance, GeneratorParameters) {
  io::Instance id = catalog::gen("identity", {{"group", "Z2"}});
  EXPECT_EQ(id.correspondences.size(), 1u);
  io::Instance sm = catalog::gen("space-map", {{"X", "2"}, {"Y", "1"}});
  for (const Correspondence& c : sm.all_correspondences()) EXPECT_TRUE(validate_correspondence(c).ok());
  EXPECT_THROW(catalog::gen("identity", {{"group", "Q8"}}), SchemaError);
  EXPECT_THROW(catalog::gen("nope"), SchemaError);
}

TEST(Suites, IdentityZ2PassesEverything) {
  Report r = run_suite(catalog::gen("identity", {{"group", "Z2"}}), Suite::all);
  EXPECT_TRUE(r.ok()) << render_text(r);
  EXPECT_GT(r.checks.size(), 10u);
}

TEST(Suites, SwapDefinitionShowsAdjoiningTable) {
  Report r = run_suite(catalog::gen("swap"), Suite::definition);
  ASSERT_TRUE(r.ok());
  bool found = false;
  for (const auto& c : r.checks)
    if (c.check == "adjoining_certified" && c.subject == "swap") {
      found = true;
      EXPECT_NE(c.detail.find("(g,p)=1/2"), std::string::npos) << c.detail;
      EXPECT_NE(c.detail.find("(g,q)=2"), std::string::npos) << c.detail;
    }
  EXPECT_TRUE(found);
}

TEST(Suites, BrokenHaarFailsWithWitness) {
  Report r = run_suite(catalog::gen("broken-haar"), Suite::all);
  EXPECT_FALSE(r.ok());
  bool witness = false;
  for (const auto& c : r.checks)
    if (c.check == "haar_system" && c.status == Status::fail && c.detail.find("left_invariance") != std::string::npos)
      witness = true;
  EXPECT_TRUE(witness) << render_text(r);
  EXPECT_TRUE(has_check(r, "prerequisites", Status::skip));
}

TEST(Suites, ReportsAreDeterministic) {
  io::Instance inst = catalog::gen("sign");
  SuiteOptions serial;
  serial.parallel = false;
  std::string a = render_text(run_suite(inst, Suite::all));
  std::string b = render_text(run_suite(inst, Suite::all));
  std::string c = render_text(run_suite(inst, Suite::all, serial));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_EQ(render_json(run_suite(inst, Suite::definition)).dump(), render_json(run_suite(inst, Suite::definition)).dump());
}

TEST(Suites, SingleSuiteOnBrokenInstanceFlagsPrerequisites) {
  Report r = run_suite(catalog::gen("broken-haar"), Suite::functor);
  EXPECT_FALSE(r.ok());
}

TEST(Suites, MeasuresSuiteHonoursCountAndSeed) {
  SuiteOptions opt;
  opt.random_instances = 7;
  opt.seed = 40;
  Report r = run_suite(io::Instance{}, Suite::measures, opt);
  EXPECT_TRUE(r.ok());
  ASSERT_EQ(r.checks.size(), 7u);
  EXPECT_EQ(r.checks.front().subject, "seed 40");
}

TEST(Suites, SuiteNames) {
  EXPECT_EQ(parse_suite("bicategory"), Suite::bicategory);
  EXPECT_FALSE(parse_suite("everything").has_value());
}

TEST(Cli, ExitCodes) {
  const std::string swap = "\"" + (instance_dir / "swap.json").string() + "\"";
  const std::string broken = "\"" + (instance_dir / "broken_haar.json").string() + "\"";
  EXPECT_EQ(run_cli("validate " + swap), 0);
  EXPECT_EQ(run_cli("verify " + swap + " --suite functor --json"), 0);
  EXPECT_EQ(run_cli("verify " + broken), 1);
  EXPECT_EQ(run_cli("validate " + broken), 1);
  EXPECT_EQ(run_cli("verify --suite measures --count 5 --seed 3"), 0);
  EXPECT_EQ(run_cli("compose " + swap + " id_Z2 swap"), 0);
  EXPECT_EQ(run_cli("iso " + swap + " swap id_Z2*swap"), 0);
  EXPECT_EQ(run_cli("gen identity -p group=Z2"), 0);
  EXPECT_EQ(run_cli("validate /nonexistent/file.json"), 2);
  EXPECT_EQ(run_cli("verify " + swap + " --suite nonsense"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("compose " + swap + " swap swap"), 2);
  fs::path bad = temp_file("bad.json", "{ \"groupoids\": { \"Z1\": ");
  EXPECT_EQ(run_cli("validate \"" + bad.string() + "\""), 2);
  fs::remove(bad);
}

TEST(Cli, GeneratedInstanceValidates) {
  fs::path out = fs::temp_directory_path() / "topcorr_test_space_map.json";
  ASSERT_EQ(run_cli("gen space-map -p X=2 -p Y=1 -o \"" + out.string() + "\""), 0);
  EXPECT_EQ(run_cli("validate \"" + out.string() + "\""), 0);
  EXPECT_EQ(run_cli("verify \"" + out.string() + "\" --suite all"), 0);
  fs::remove(out);
}
