#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nalin/cli.hpp"
#include "nalin/text.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = nalin::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "nalin_cli_test";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

std::vector<std::vector<std::string>> rows(const std::string& tsv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(tsv);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '\t')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

std::string lookup(const std::string& tsv, const std::string& key) {
  for (const auto& r : rows(tsv))
    if (r.size() == 2 && r[0] == key) return r[1];
  return "<missing>";
}

}  // namespace

TEST(Cli, GroupInfo) {
  const Outcome r = run({"group", "S3", "info"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lookup(r.out, "order"), "6");
  EXPECT_EQ(lookup(r.out, "commutator_size"), "3");
  EXPECT_EQ(lookup(r.out, "abelianization"), "2");
  EXPECT_EQ(lookup(r.out, "class_sizes"), "1,2,3");
  EXPECT_EQ(lookup(r.out, "irrep_dims"), "1,1,2");
  EXPECT_EQ(lookup(run({"group", "A5"}).out, "abelianization"), "1");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"group", "S3", "--bogus"}).code, 2);
  const Outcome bad = run({"--nope"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("Usage"), std::string::npos);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"lin"}).code, 2);
  EXPECT_EQ(run({"group", "S7"}).code, 1);
  EXPECT_EQ(run({"lin", "eval", "--instance", scratch("missing.lin"), "--assignment", "0"}).code, 1);
  const Outcome help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("dict-test"), std::string::npos);
}

TEST(Cli, LinRoundTrip) {
  const std::string path = scratch("planted.lin");
  ASSERT_EQ(run({"lin", "gen", "--group", "S3", "--seed", "11", "--out", path}).code, 0);
  const Outcome approx = run({"approx", "--instance", path});
  ASSERT_EQ(approx.code, 0) << approx.err;
  const auto t = rows(approx.out);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0][1], "value");
  EXPECT_GE(std::stod(t[1][1]), 1.0 / 3 - 1e-12);
  EXPECT_EQ(t[1][2], nalin::format_double(1.0 / 3));
  EXPECT_EQ(t[1][6], "-");
  EXPECT_EQ(run({"lin", "approx", "--instance", path}).out, approx.out);

  const Outcome solve = run({"lin", "solve", "--instance", path});
  EXPECT_EQ(rows(solve.out)[1][1], "1");
  EXPECT_EQ(run({"lin", "solve", "--instance", path, "--budget", "100"}).code, 1);

  const Outcome timed = run({"approx", "--instance", path, "--timing"});
  EXPECT_NE(rows(timed.out)[1][6], "-");
}

TEST(Cli, Reproducible) {
  const std::vector<std::vector<std::string>> cmds{
      {"lin", "gen", "--group", "Q8", "--seed", "3"},
      {"dict-test", "--group", "S3", "--function", "random", "--mode", "mc", "--samples", "2000", "--seed", "4"},
      {"fourier", "--group", "S3", "--n", "2", "--seed", "9"},
      {"reduce", "gen", "--seed", "2"},
  };
  for (const auto& c : cmds) {
    const Outcome a = run(c), b = run(c);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("seed"), std::string::npos);
  }
}

TEST(Cli, DictTest) {
  const Outcome r = run({"dict-test", "--group", "S3", "--n", "2", "--epsilon", "0.3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto t = rows(r.out);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (std::vector<std::string>{"function", "epsilon", "mode", "p", "ci", "T_0", "T_1", "T_2"}));
  EXPECT_NEAR(std::stod(t[1][3]), 0.75, 1e-12);
  EXPECT_EQ(run({"dict-test", "--mode", "fast"}).code, 2);
}

TEST(Cli, ReducePipeline) {
  const std::string lc = scratch("toy.lc"), lab = scratch("toy.lab");
  ASSERT_EQ(run({"reduce", "gen", "--seed", "7", "--out", lc, "--labeling-out", lab}).code, 0);
  const Outcome v = run({"reduce", "verify", "--lc", lc, "--labeling", lab});
  ASSERT_EQ(v.code, 0) << v.err;
  const auto t = rows(v.out);
  EXPECT_EQ(t[1][0], "1");
  EXPECT_EQ(t[1][1], "1");
  EXPECT_EQ(t[1][3], t[1][4]);
  const Outcome d = run({"reduce", "decode", "--lc", lc, "--labeling", lab, "--trials", "500"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(rows(d.out)[1][4], "1");
  const Outcome b = run({"reduce", "build", "--lc", lc});
  EXPECT_EQ(b.out.rfind("lin v1", 0), 0u);
}

TEST(Cli, Params) {
  const Outcome r = run({"params", "--delta", "0.1", "--order", "6", "--d0", "0.25"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lookup(r.out, "c_regime"), "true");
  EXPECT_EQ(run({"params", "--d0", "0.5"}).code, 1);
}
