#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "eprlab/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "eprlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = eprlab::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("eprlab_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Decompose, PhiPlusPsiPlusIntoCrossed) {
  const auto r = run({"decompose", "--first", "phi+", "--second", "psi+", "--from", "seq", "--to",
                      "crossed"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("|phi+>_12 |psi+>_34 ="), std::string::npos);
  for (const auto* term : {"|phi+>_13 |psi+>_24", "|phi->_13 |psi->_24", "|psi+>_13 |phi+>_24",
                           "|psi->_13 |phi->_24"}) {
    EXPECT_NE(r.out.find(term), std::string::npos) << term;
  }
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
}

TEST(Decompose, SameLayoutIsASingleTerm) {
  const auto r = run({"decompose", "--first", "psi-", "--second", "phi-", "--from", "seq", "--to",
                      "seq"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_NE(r.out.find("+1  |psi->_12 |phi->_34"), std::string::npos);
}

TEST(Decompose, AllAsJson) {
  const auto r = run({"decompose", "--all", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j.size(), 16u);
}

TEST(Decompose, BadLabelIsAUsageError) {
  const auto r = run({"decompose", "--first", "chi+", "--second", "psi+"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Verify, CleanTablePasses) {
  const auto r = run({"verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("32/32 oracle cases pass"), std::string::npos);
}

TEST(Simulate, SeedIsRequired) {
  const auto dir = scratch("noseed");
  const auto r = run({"simulate", "--protocol", "p2", "--blocks", "100", "--out", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "report.json"));
}

TEST(Simulate, WritesReproducibleReport) {
  const auto a = scratch("sim_a");
  const auto b = scratch("sim_b");
  for (const auto& dir : {a, b}) {
    const auto r = run({"simulate", "--protocol", "p2", "--blocks", "2000", "--f", "1", "--seed",
                        "42", "--out", dir.string(), "--transcripts"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(slurp(a / "report.json"), slurp(b / "report.json"));
  const auto j = nlohmann::json::parse(slurp(a / "report.json"));
  for (const auto* key : {"config", "counts", "detection_rate", "eve_bit_accuracy", "empirical_qber",
                          "eve_outcome_histogram", "chi_square", "i_ae", "claimed_comparison"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }

  std::ifstream lines(a / "transcripts.jsonl");
  std::string first;
  std::getline(lines, first);
  const auto t = nlohmann::json::parse(first);
  EXPECT_EQ(t.at("block_index"), 0);
  EXPECT_TRUE(t.contains("eve_action"));
  EXPECT_TRUE(t.contains("detected"));
}

TEST(Simulate, RejectsInvalidConfig) {
  const auto dir = scratch("bad");
  EXPECT_EQ(run({"simulate", "--f", "2", "--seed", "1", "--out", dir.string()}).code, 2);
  EXPECT_EQ(run({"simulate", "--protocol", "bb84", "--f", "0.5", "--seed", "1", "--out",
                 dir.string()})
                .code,
            2);
}

TEST(Sweep, WritesCsv) {
  const auto dir = scratch("sweep");
  const auto r = run({"sweep", "--f-grid", "0,0.5,1", "--blocks", "2000", "--seed", "3", "--out",
                      dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(dir / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_EQ(csv.rfind("param,detection_rate", 0), 0u);
}

TEST(Analyze, WritesCurveAndThreshold) {
  const auto dir = scratch("analyze");
  const auto r = run({"analyze", "--points", "11", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("f* = 0.49387"), std::string::npos);
  const auto csv = slurp(dir / "curve.csv");
  EXPECT_EQ(csv.rfind("f,i_ab,i_ae,margin\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  const auto t = nlohmann::json::parse(slurp(dir / "threshold.json"));
  EXPECT_NEAR(t.at("f_star").get<double>(), 0.493875, 1e-5);
}

TEST(Report, RendersMarkdownFromCampaign) {
  const auto dir = scratch("report");
  ASSERT_EQ(run({"simulate", "--blocks", "4000", "--seed", "8", "--out", dir.string()}).code, 0);
  const auto r = run({"report", "--campaign", (dir / "report.json").string(), "--out",
                      dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto md = slurp(dir / "report.md");
  EXPECT_NE(md.find("Detection probability"), std::string::npos);
  EXPECT_NE(md.find("18.52%"), std::string::npos);
  EXPECT_NE(md.find("15/16"), std::string::npos);

  EXPECT_EQ(run({"report", "--campaign", (dir / "missing.json").string()}).code, 2);
}

TEST(Usage, UnknownSubcommandOrNone) {
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}
