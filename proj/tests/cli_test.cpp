#include <gtest/gtest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vne/cli.hpp"

using namespace vne;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vne_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateEmbedEvaluateBarbell) {
  auto r = run({"generate", "barbell", "--out", path("bb")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["nodes"], 27);
  ASSERT_TRUE(fs::exists(path("bb.edges")));
  ASSERT_TRUE(fs::exists(path("bb.labels")));
  const json manifest = json::parse(std::ifstream(path("bb.manifest.json")));
  EXPECT_EQ(manifest["command"], "generate barbell");
  EXPECT_EQ(manifest["version"], kVersion);

  r = run({"embed", "--input", path("bb.edges"), "--mode", "exact", "--out", path("bb.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream csv(path("bb.csv"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "node,h1,h2,h3");

  r = run({"eval-roles", "--embeddings", path("bb.csv"), "--labels", path("bb.labels"), "--runs", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json m = json::parse(r.out);
  EXPECT_EQ(m["runs"], 3);
  EXPECT_TRUE(m.contains("stddev"));
  EXPECT_GT(m["homogeneity"].get<double>(), 0.8);
}

TEST_F(CliTest, EntropyReportsBothModes) {
  {
    std::ofstream f(path("k3.edges"));
    f << "0 1\n1 2\n0 2\n";
  }
  const auto r = run({"entropy", "--input", path("k3.edges")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["exact"].get<double>(), std::log(2.0), 1e-12);
  EXPECT_NEAR(j["approx"].get<double>(), 0.346574, 1e-6);
  EXPECT_NEAR(j["q"].get<double>(), 0.5, 1e-12);
}

TEST_F(CliTest, GenerateShapesWritesRoleNames) {
  const auto r = run({"generate", "shapes", "--basic", "--shape", "fan", "--seed", "3", "--out", path("s")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream labels(path("s.labels"));
  std::string line;
  std::getline(labels, line);
  EXPECT_EQ(line, "0 cycle-attach");
  const json manifest = json::parse(std::ifstream(path("s.manifest.json")));
  EXPECT_EQ(manifest["seed"], 3);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"pipeline"}).code, 2);
  EXPECT_EQ(run({"generate", "shapes", "--rewire", "5000", "--out", path("x")}).code, 2);
  EXPECT_EQ(run({"generate", "shapes", "--shape", "hexagon", "--out", path("x")}).code, 2);
  EXPECT_EQ(run({"bench", "--sizes", "2k,1k"}).code, 2);
  EXPECT_EQ(run({"embed", "--input", path("missing.edges"), "--out", path("o.csv")}).code, 2);
}

TEST_F(CliTest, RuntimeErrorsExitOne) {
  {
    std::ofstream f(path("bad.edges"));
    f << "0 1\n2 2\n";
  }
  const auto r = run({"embed", "--input", path("bad.edges"), "--out", path("o.csv")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST_F(CliTest, HelpAndVersionExitZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto r = run({"--version"});
  EXPECT_EQ(r.code, 0);
}

TEST_F(CliTest, BenchTableHasRatios) {
  const auto r = run({"bench", "--sizes", "200,400", "--repeats", "1", "--no-embed", "--csv", path("b.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_TRUE(j["rows"][0]["approx_ratio"].is_null());
  EXPECT_TRUE(j["rows"][1]["approx_ratio"].is_number());
  EXPECT_TRUE(fs::exists(path("b.csv")));
}

TEST_F(CliTest, PipelineBasicRuns) {
  const auto r = run({"pipeline", "--basic", "--graphs", "2", "--runs", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["runs"], 2);
  EXPECT_GE(j["accuracy"].get<double>(), 0.85);
}

TEST_F(CliTest, ClassifyFixture) {
  const auto r = run({"classify", "--data", std::string(VNE_FIXTURE_DIR) + "/TOY", "--folds", "2", "--epochs", "5"});
  // Two graphs cannot fill two stratified folds with both classes in training.
  EXPECT_EQ(r.code, 2);
}
