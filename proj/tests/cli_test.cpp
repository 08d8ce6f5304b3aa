#include "covgrid/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace covgrid {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("covgrid_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("worked.json",
          R"({"polygon": [[0,0],[10,0],[12,5],[8,8.5],[2,8.5]], "r": 1.4142135623730951, "v": 12})");
    write("rect.wkt", "POLYGON((0 0, 400 0, 400 200, 0 200, 0 0))");
    write("flat.json", R"({"polygon": [[0,0],[1,1],[2,2]]})");
    write("badr.json", R"({"polygon": [[0,0],[1,0],[0,1]], "r": 0})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "covgrid");
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, DecomposeWorkedExample) {
  ASSERT_EQ(run({"decompose", "--input", path("worked.json"), "--output", path("d.json")}), 0)
      << err_.str();
  const std::string text = out_.str();
  EXPECT_EQ(text.rfind("23 cells, 4 channels\n", 0), 0u) << text;
  EXPECT_NE(text.find("1,0.000,2.182,10.800,6,1.200,0.200"), std::string::npos) << text;
  EXPECT_TRUE(fs::exists(dir_ / "d.json"));
}

TEST_F(CliTest, DecomposeOverrides) {
  ASSERT_EQ(run({"decompose", "--input", path("rect.wkt"), "--method", "sgd"}), 0);
  EXPECT_EQ(out_.str().rfind("8 cells, 2 channels\n", 0), 0u) << out_.str();
  ASSERT_EQ(run({"decompose", "--input", path("worked.json"), "--method", "sgd"}), 0);
  EXPECT_EQ(out_.str().rfind("29 cells", 0), 0u);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"decompose", "--input", path("missing.json")}), kExitInputError);
  EXPECT_EQ(run({"decompose", "--input", path("flat.json")}), kExitDegenerate);
  EXPECT_EQ(run({"decompose", "--input", path("badr.json")}), kExitInputError);
  EXPECT_EQ(run({"decompose", "--input", path("worked.json"), "--r", "-1"}), kExitInputError);
  EXPECT_EQ(run({"plan", "--input", path("worked.json"), "--exact-cap", "5"}), kExitSizeLimit);
  EXPECT_EQ(run({"frobnicate"}), kExitInputError);
  EXPECT_EQ(run({"decompose"}), kExitInputError);
}

TEST_F(CliTest, PlanModesAndFallback) {
  ASSERT_EQ(run({"plan", "--input", path("worked.json"), "--output", path("p.json")}), 0)
      << err_.str();
  EXPECT_NE(out_.str().find("valid,23,"), std::string::npos) << out_.str();
  EXPECT_NE(out_.str().find(",true"), std::string::npos);
  ASSERT_EQ(run({"plan", "--input", path("worked.json"), "--mode", "paper"}), 0);
  EXPECT_NE(out_.str().find("paper,23,"), std::string::npos);
  ASSERT_EQ(run({"plan", "--input", path("worked.json"), "--exact-cap", "5",
                 "--heuristic-fallback"}),
            0);
  EXPECT_NE(out_.str().find("heuristic,23,"), std::string::npos);
  EXPECT_NE(out_.str().find(",false"), std::string::npos);
}

TEST_F(CliTest, PlanFromDecompositionThenRender) {
  ASSERT_EQ(run({"decompose", "--input", path("worked.json"), "--output", path("d.json")}), 0);
  ASSERT_EQ(run({"plan", "--input", path("d.json"), "--output", path("p.json")}), 0)
      << err_.str();
  ASSERT_EQ(run({"render", "--input", path("d.json"), "--plan", path("p.json"), "--output",
                 path("d.svg")}),
            0)
      << err_.str();
  const std::string svg = read("d.svg");
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<polyline class=\"plan\""), std::string::npos);
  ASSERT_EQ(run({"render", "--input", path("d.json")}), 0);
  EXPECT_EQ(out_.str().find("polyline"), std::string::npos);
}

TEST_F(CliTest, CompareWorkedExampleAndRandomCases) {
  ASSERT_EQ(run({"compare", "--input", path("worked.json")}), 0) << err_.str();
  std::istringstream lines(out_.str());
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(row.rfind("worked,81.50,29,23,6,", 0), 0u) << row;

  ASSERT_EQ(run({"compare", "--cases", "3", "--seed", "7", "--output", path("c.csv")}), 0);
  EXPECT_NE(out_.str().find("random-7,"), std::string::npos);
  EXPECT_NE(out_.str().find("random-9,"), std::string::npos);
  EXPECT_NE(out_.str().find("\nmean,"), std::string::npos);
  EXPECT_EQ(read("c.csv"), out_.str());
  EXPECT_EQ(run({"compare"}), kExitInputError);
}

TEST_F(CliTest, CompareContinuesPastBadCase) {
  const int code = run({"compare", "--input", path("flat.json"), "--input", path("worked.json")});
  EXPECT_EQ(code, kExitDegenerate);
  EXPECT_NE(out_.str().find("worked,"), std::string::npos);
  EXPECT_NE(err_.str().find("flat.json"), std::string::npos);
}

}  // namespace
}  // namespace covgrid
