#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "support.hpp"

namespace tiltkit::test {
namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(TILTKIT_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string alg(const std::string& name) { return fixture(name + ".alg"); }
std::string mod(const std::string& name) { return fixture(name + ".mod"); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("tiltkit-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
  void SetUp() override { std::filesystem::create_directories(dir); }
  void TearDown() override { std::filesystem::remove_all(dir); }
};

TEST_F(CliTest, ExtAndGlobalDimension) {
  Outcome e = run("ext -k 1 " + alg("cycle2") + " " + mod("cycle2/I1") + " " + mod("cycle2/S2"));
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("dim Ext^1 = 1"), std::string::npos) << e.out;
  Outcome g = run("gldim " + alg("triple3"));
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("gldim 4"), std::string::npos) << g.out;
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("tilting-check " + alg("cycle2") + " " + mod("cycle2/S2")).code, 1);
  EXPECT_EQ(run("tilting-check " + alg("cycle2") + " " + mod("cycle2/P2") + " " + mod("cycle2/S2")).code, 0);
  EXPECT_EQ(run("gldim " + (dir / "missing.alg").string()).code, 2);
  EXPECT_EQ(run("resolve --max 1 " + alg("triple3") + " " + mod("triple3/S1")).code, 3);
  EXPECT_EQ(run("--field 'GF(4)' gldim " + alg("a2")).code, 2);
  EXPECT_EQ(run("--no-such-option gldim " + alg("a2")).code, 2);
  EXPECT_EQ(run("bongartz " + alg("triple3") + " " + mod("triple3/S1")).code, 2);
}

TEST_F(CliTest, FieldOverride) {
  Outcome g = run("--field 'GF(101)' gldim " + alg("cycle2"));
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("gldim 2"), std::string::npos) << g.out;
}

TEST_F(CliTest, VerifyExampleCycleJson) {
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  Outcome r = run("--json " + a.string() + " verify-example cycle2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  ASSERT_EQ(run("--json " + b.string() + " verify-example cycle2").code, 0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  auto doc = nlohmann::json::parse(text);
  EXPECT_EQ(doc["verb"], "verify-example");
  EXPECT_EQ(doc["ok"], true);
  EXPECT_EQ(doc["exit_code"], 0);
  for (const auto& c : doc["checks"]) EXPECT_EQ(c["passed"], true) << c["name"];
}

TEST_F(CliTest, VerifyExampleBongartz) {
  Outcome r = run("verify-example a2-bongartz");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS a2-bongartz"), std::string::npos);
}

TEST_F(CliTest, HomologicalEpimorphismReportsExt) {
  const auto out = dir / "h.json";
  Outcome r = run("--json " + out.string() + " homepi " + alg("triple3") + " " + mod("triple3/P1") + " " + mod("triple3/P2") + " " +
              mod("triple3/T1"));
  EXPECT_EQ(r.code, 1) << r.out;
  auto doc = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(doc["ok"], false);
  EXPECT_EQ(doc.dump().find("\"ext_dims\":[0,6,0,0,0,0]") != std::string::npos, true) << doc.dump();
}

TEST_F(CliTest, StratifyVerdicts) {
  EXPECT_EQ(run("stratify " + alg("a2") + " --vertices 2").code, 0);
  EXPECT_EQ(run("stratify " + alg("cycle2") + " --vertices 2").code, 1);
  EXPECT_EQ(run("stratify " + alg("a2") + " --vertices 7").code, 2);
}

}  // namespace
}  // namespace tiltkit::test
