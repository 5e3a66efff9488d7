#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ttap/io.hpp"

using namespace ttap;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
};

CliResult run(const std::string& args) {
  const std::string cmd = std::string(TTAP_CLI) + " " + args + " 2>/dev/null";
  FILE* p = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int rc = ::pclose(p);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("ttap_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, DecideForced) {
  const CliResult r = run("decide --height 4 --width 36 --len 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "FORCED\n");
}

TEST_F(Cli, DecideAvoidableWritesCertificate) {
  const std::string cert = path("c.ttiling");
  const CliResult r = run("decide --height 4 --width 32 --len 3 --out " + cert);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 10), "AVOIDABLE\n");
  EXPECT_NE(r.out.find("certificate " + cert), std::string::npos);
  const Tiling t = read_tiling(slurp(cert));
  EXPECT_EQ(t.rect(), (Rect{4, 32}));
  EXPECT_LT(longest_ap(t).length, 3);
  const CliResult v = run("verify --in " + cert + " --len 3");
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(run("verify --in " + cert + " --len 2").code, 1);
}

TEST_F(Cli, Vdw) {
  const CliResult r = run("vdw --len 3");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "9\n");
  const std::string col = path("w.tcolor");
  EXPECT_EQ(run("vdw --len 3 --out " + col).code, 0);
  EXPECT_EQ(read_coloring(slurp(col)).width, 8);
}

TEST_F(Cli, Vdw2dAndValues) {
  EXPECT_EQ(run("vdw2d --height 3 --width 5").out, "3\n");
  EXPECT_EQ(run("lvalue --height 4 --width 4").out, "1\n");
  EXPECT_EQ(run("tvalue --width 4 --len 2").out, "8\n");
}

TEST_F(Cli, SymmetricApFree) {
  const std::string cert = path("s.ttiling");
  const CliResult r = run("apfree --height 8 --width 16 --len 3 --symmetry rot180 --out " + cert);
  EXPECT_EQ(r.code, 0);
  const Tiling t = read_tiling(slurp(cert));
  EXPECT_EQ(rotate180(t), t);
}

TEST_F(Cli, TileChainRenderRoundTrip) {
  const std::string til = path("t.ttiling"), ch = path("t.chain"), svg = path("t.svg");
  ASSERT_EQ(run("tile --height 8 --width 12 --seed 3 --out " + til).code, 0);
  const Tiling t = read_tiling(slurp(til));
  ASSERT_EQ(run("chaingraph --in " + til + " --out " + ch).code, 0);
  const ChainGraph g = read_chain(slurp(ch));
  EXPECT_EQ(chain_to_tiling(g), t);
  EXPECT_EQ(run("verify --in " + ch).code, 0);
  const CliResult a = run("render --in " + til + " --format ascii");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 8);
  ASSERT_EQ(run("render --in " + til + " --format svg --highlight-ap --out " + svg).code, 0);
  const std::string s = slurp(svg);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_EQ(run("render --in " + til + " --format svg").out, run("render --in " + til + " --format svg").out);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("decide --height 4 --width 6 --len 3").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("decide --height 4 --width 32 --len 3 --solver /nonexistent/solver").code, 3);
  EXPECT_EQ(run("decide --height 12 --width 40 --len 3 --solver \"sh -c 'echo s UNKNOWN' --\"").code, 4);
  EXPECT_EQ(run("tile --height 4 --width 6").out, "UNTILEABLE\n");
  std::ofstream(path("bad.ttiling")) << "TTILING 1\n4 4\n0 0 0 0\n";
  EXPECT_EQ(run("verify --in " + path("bad.ttiling")).code, 1);
}

TEST_F(Cli, ExternalSolverContract) {
  // the built-in solver behind the DIMACS-file interface
  const std::string solver = std::string(TTAP_CLI) + " solve-dimacs";
  EXPECT_EQ(run("decide --height 4 --width 36 --len 3 --solver \"" + solver + "\"").out, "FORCED\n");
  const CliResult r = run("decide --height 4 --width 32 --len 3 --out " + path("x.ttiling") + " --solver \"" + solver + "\"");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 10), "AVOIDABLE\n");
  ::setenv("TTR_SOLVER", "/nonexistent/solver", 1);
  EXPECT_EQ(run("decide --height 4 --width 32 --len 3").code, 3);
  // --solver wins over the environment
  EXPECT_EQ(run("decide --height 4 --width 36 --len 3 --solver \"" + solver + "\"").code, 0);
  ::unsetenv("TTR_SOLVER");
}
