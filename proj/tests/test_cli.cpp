#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pgds_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  /// Runs the CLI; stdout goes to out.txt and stderr to err.txt.
  int run(const std::string& args) const {
    const std::string cmd = std::string(PGDS_CLI) + " " + args + " > " + path("out.txt") + " 2> " + path("err.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  Json json(const std::string& name) const { return Json::parse(read(name)); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ConstructVerifyOrderSwapped) {
  ASSERT_EQ(run("construct th33 --l 1 -o " + path("f.json")), 0);
  EXPECT_EQ(run("verify " + path("f.json")), 3);
  const Json r = json("out.txt");
  EXPECT_EQ(r["verdict"], "ORDER-SWAPPED");
  EXPECT_EQ(r["in_value"], 10);
  EXPECT_EQ(r["off_value"], 6);
}

TEST_F(Cli, VerifyPassAndMismatch) {
  ASSERT_EQ(run("construct th32 --p 3 --s 2 -o " + path("p.json")), 0);
  EXPECT_EQ(run("verify " + path("p.json")), 0);
  ASSERT_EQ(run("construct th42 -o " + path("h.json")), 0);
  EXPECT_EQ(run("verify " + path("h.json")), 4);
  EXPECT_EQ(json("out.txt")["verdict"], "VALUE-MISMATCH");
}

TEST_F(Cli, ParameterRejection) {
  EXPECT_EQ(run("construct th30 --m 3 --p 3"), 2);
  EXPECT_EQ(run("construct th30 --m 2 --p 9"), 2);
  EXPECT_EQ(run("construct th99"), 2);
  EXPECT_EQ(run("construct th33 --l 1 --no-such-flag"), 2);
  EXPECT_NE(read("err.txt").size(), 0u);
}

TEST_F(Cli, MalformedInput) {
  std::ofstream(path("bad.json")) << "{ not json";
  EXPECT_EQ(run("verify " + path("bad.json")), 1);
  std::ofstream(path("empty.json")) << "{}";
  EXPECT_EQ(run("verify " + path("empty.json")), 1);
  EXPECT_EQ(run("verify " + path("missing.json")), 1);
}

TEST_F(Cli, SearchBudget) {
  EXPECT_EQ(run("search --group 30 --k 15"), 6);
  EXPECT_EQ(run("search --group 2,4 --k 4"), 0);
  const Json r = json("out.txt");
  EXPECT_EQ(r["candidates"], 35);
  EXPECT_EQ(r["hits"].size(), 19u);
}

TEST_F(Cli, DevelopAndCheckDesign) {
  ASSERT_EQ(run("construct th32 --p 3 --s 2 -o " + path("p.json")), 0);
  ASSERT_EQ(run("develop " + path("p.json")), 0);
  const Json r = json("out.txt");
  EXPECT_EQ(r["b"], 9);
  ASSERT_EQ(run("develop --grid " + path("p.json") + " -o " + path("grid.txt")), 0);
  EXPECT_EQ(run("check-design " + path("grid.txt")), 0);
  std::ofstream(path("cut.txt")) << "3 2 2 *\n1 0\n1 1\n0 1\n";
  EXPECT_EQ(run("check-design " + path("cut.txt")), 5);
}

TEST_F(Cli, DsrgExport) {
  ASSERT_EQ(run("construct th33 --l 1 -o " + path("f.json")), 0);
  ASSERT_EQ(run("dsrg " + path("f.json") + " --graph flag --export edge-list -o " + path("g.txt")), 0);
  const std::string g = read("g.txt");
  EXPECT_EQ(g.substr(0, g.find('\n')), "# dsrg v=32 k=15 t=9 lambda=8 mu=6");
  ASSERT_EQ(run("dsrg " + path("f.json") + " --graph anti-flag --export dot"), 0);
  EXPECT_NE(read("out.txt").find("->"), std::string::npos);
}

TEST_F(Cli, AtlasMatchesVerify) {
  ASSERT_EQ(run("atlas --range \"ids=th33;l=1\" -o " + path("atlas")), 0);
  EXPECT_TRUE(fs::exists(path("atlas/summary.tsv")));
  const Json a = json("out.txt");
  ASSERT_EQ(a["entries"], 1);
  ASSERT_EQ(run("construct th33 --l 1 -o " + path("f.json")), 0);
  EXPECT_EQ(run("verify " + path("f.json")), 3);
  EXPECT_EQ(a["records"][0]["fidelity"], json("out.txt"));
}

TEST_F(Cli, EmptyAtlas) {
  EXPECT_EQ(run("atlas --range \"\""), 0);
  EXPECT_EQ(json("out.txt")["entries"], 0);
}
