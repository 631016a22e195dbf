#include "cli.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace mlnet::cli {
namespace {

struct Result {
  int code;
  std::vector<std::string> lines;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  Result r{code, {}, err.str()};
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) r.lines.push_back(line);
  return r;
}

double last_value(const std::string& row) { return std::stod(row.substr(row.rfind(',') + 1)); }

TEST(CliTest, ParsesLists) {
  EXPECT_EQ(parse_int_list("1..4"), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(parse_int_list("10..30:10"), (std::vector<int>{10, 20, 30}));
  EXPECT_EQ(parse_int_list("5,2,9"), (std::vector<int>{5, 2, 9}));
  EXPECT_EQ(parse_real_list("0.1..0.3:0.1").size(), 3u);
  EXPECT_EQ(parse_real_list("0.5"), (std::vector<double>{0.5}));
  EXPECT_THROW(parse_int_list("3..1"), std::exception);
  EXPECT_THROW(parse_int_list("a"), std::exception);
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

TEST(CliTest, LineMetricsRows) {
  const auto r = call({"line-metrics", "--n", "20", "--M", "1..3", "--q", "0.8", "--metric", "cluster"});
  ASSERT_EQ(r.code, kOk) << r.err;
  ASSERT_EQ(r.lines.size(), 5u);
  EXPECT_EQ(r.lines[0].rfind("# mlnet line-metrics", 0), 0u);
  EXPECT_EQ(r.lines[1], "sweep_var,value,metric");
  EXPECT_EQ(r.lines[2].rfind("M,1,", 0), 0u);
  EXPECT_NEAR(last_value(r.lines[2]), 4.1631065118525239, 1e-12);

  const auto links = call({"line-metrics", "--n", "20", "--M", "5", "--q-power", "0.5", "--d", "1", "--metric", "links"});
  ASSERT_EQ(links.code, kOk) << links.err;
  EXPECT_NEAR(last_value(links.lines.back()), 13.4464, 1e-6);

  const auto zero = call({"line-metrics", "--n", "4", "--M", "2", "--q", "1", "--metric", "allzero"});
  ASSERT_EQ(zero.code, kOk) << zero.err;
  EXPECT_EQ(last_value(zero.lines.back()), 0.0);
}

TEST(CliTest, TreeProbAndVerify) {
  const auto r = call({"tree-prob", "--topology", "star-fig7", "--q", "0.25", "--M", "50", "--config", "all-ones"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(last_value(r.lines.back()), 0.6283739, 5e-7);

  const auto v = call({"tree-prob", "--topology", "btree5", "--q", "0.5", "--M", "10", "--config", "all-ones",
                       "--verify", "--replications", "20000", "--seed", "4"});
  ASSERT_EQ(v.code, kOk) << v.err;
  bool found = false;
  for (const auto& line : v.lines) found = found || line.rfind("# verify", 0) == 0;
  EXPECT_TRUE(found);
}

TEST(CliTest, AsymptoticMetrics) {
  const auto cl = call({"asymptotic", "--topology", "line20", "--alpha", "0", "--beta", "1/2", "--metric", "cluster",
                        "--n", "1"});
  ASSERT_EQ(cl.code, kOk) << cl.err;
  EXPECT_NEAR(last_value(cl.lines.back()), 1.632120559, 1e-9);

  const auto regime = call({"asymptotic", "--topology", "line2", "--metric", "regime", "--alpha", "0", "--beta", "3/5"});
  ASSERT_EQ(regime.code, kOk) << regime.err;
  EXPECT_NE(regime.lines.back().find("empty"), std::string::npos);
}

TEST(CliTest, SimulateIsSeeded) {
  const std::vector<std::string> args{"simulate", "--topology", "clique4", "--M", "2", "--q", "0.5", "--p", "0.8",
                                      "--replications", "5000", "--seed", "12", "--stat", "marginals"};
  auto one = args;
  one.insert(one.end(), {"--threads", "1"});
  auto four = args;
  four.insert(four.end(), {"--threads", "4"});
  const auto a = call(one);
  const auto b = call(four);
  ASSERT_EQ(a.code, kOk) << a.err;
  ASSERT_EQ(a.lines.size(), b.lines.size());
  EXPECT_TRUE(std::equal(a.lines.begin() + 1, a.lines.end(), b.lines.begin() + 1));
  EXPECT_EQ(a.lines[1], "statistic,key,estimate,std_error");
  EXPECT_EQ(a.lines.size(), 2u + 6u);

  EXPECT_EQ(call({"simulate", "--topology", "line1", "--M", "1", "--q", "0.5"}).code, kValidationError);
}

TEST(CliTest, Feasible) {
  const auto yes = call({"feasible", "--topology", "clique3", "--config", "100", "--M", "1"});
  ASSERT_EQ(yes.code, kOk) << yes.err;
  EXPECT_EQ(yes.lines[1], "FEASIBLE");
  EXPECT_EQ(yes.lines[2], "min_cover_size,1");
  EXPECT_EQ(yes.lines[3], "clique,0 1");

  // 4-cycle in K4 needs four cliques.
  const auto no = call({"feasible", "--topology", "clique4", "--config", "110011", "--M", "2"});
  ASSERT_EQ(no.code, kOk) << no.err;
  EXPECT_EQ(no.lines[1], "INFEASIBLE");
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(call({}).code, kValidationError);
  EXPECT_EQ(call({"bogus"}).code, kValidationError);
  EXPECT_EQ(call({"line-metrics", "--n", "0", "--M", "1", "--q", "0.5"}).code, kValidationError);
  EXPECT_EQ(call({"feasible", "--topology", "line3", "--config", "100", "--M", "1"}).code, kValidationError);
  EXPECT_EQ(call({"simulate", "--topology", "line25", "--M", "1", "--q", "0.5", "--seed", "1", "--stat", "config"}).code,
            kValidationError);
  const auto cap = call({"feasible", "--topology", "clique8", "--config", std::string(28, '1'), "--M", "20"});
  EXPECT_EQ(cap.code, kSizeCapError) << cap.err;
  EXPECT_FALSE(cap.err.empty());
}

}  // namespace
}  // namespace mlnet::cli
