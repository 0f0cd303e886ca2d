#include <gtest/gtest.h>

#include <sstream>

#include "cli.hpp"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = satotate::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, EcScanClassifiesGenericCurve) {
  const auto doc = run_json({"ec-scan", "--curve", "x^3+x+1", "--bound", "100000", "--classify"});
  for (const char* key : {"curve", "bound", "n", "moments", "verdict"}) EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["verdict"], "SU2");
  EXPECT_EQ(doc["bound"], 100000);
  EXPECT_EQ(doc["n"], 9590);
  EXPECT_TRUE(doc["moments"].is_array());
}

TEST(Cli, CmRankExample) {
  const auto doc = run_json({"cm-rank", "--group", "cyclic:4", "--H", "trivial", "--c", "g2", "--S", "0,1"});
  EXPECT_EQ(doc["nu"], 2);
  EXPECT_EQ(doc["rank"], 3);
  EXPECT_EQ(doc["torus_dim"], 2);
  EXPECT_EQ(doc["D"], json::parse("[[1,1],[1,0]]"));
}

TEST(Cli, MomentsExample) {
  const auto doc = run_json({"moments", "--group", "USp4", "--k", "4"});
  EXPECT_NEAR(doc["value"].get<double>(), 3.0, 1e-6);
  EXPECT_EQ(doc["method"], "quadrature");
}

TEST(Cli, HeaderFields) {
  const auto doc = run_json({"moments", "--group", "SU2", "--k", "2", "--seed", "17"});
  EXPECT_EQ(doc["tool_version"], satotate::cli::kToolVersion);
  EXPECT_EQ(doc["seed"], 17);
  EXPECT_EQ(doc["argv"], json::parse(R"(["moments","--group","SU2","--k","2","--seed","17"])"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"ec-scan", "--curve", "x^3+x+1", "--bound", "100", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"ec-scan", "--bound", "100"}).code, 2);                        // no curve
  EXPECT_EQ(run({"ec-scan", "--ab", "0,0", "--bound", "100"}).code, 2);         // singular
  EXPECT_EQ(run({"ec-scan", "--ab", "1,1", "--bound", "4294967296"}).code, 2);  // above 2^31
  EXPECT_EQ(run({"power-seq", "--q", "5", "--aq", "5", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"euler", "--zeta", "--bound", "100", "--s", "1"}).code, 2);
  EXPECT_EQ(run({"cm-rank", "--group", "dihedral:3", "--H", "trivial", "--c", "3", "--S", "0,1,2"}).code, 2);
  const auto guard = run({"euler", "--zeta", "--bound", "3", "--irrep", "sym:60", "--s", "1.0001"});
  EXPECT_EQ(guard.code, 3);
  EXPECT_NE(guard.err.find("divergence"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, UnknownFlagPrintsUsage) {
  const auto r = run({"ec-scan", "--curve", "x^3+x+1", "--bound", "100", "--bogus"});
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, DiagnosticsGoToStandardError) {
  const auto r = run({"ec-scan", "--ab", "1,1", "--bound", "100"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("31"), std::string::npos);
  EXPECT_NO_THROW((void)json::parse(r.out));
}

TEST(Cli, HistogramCsvHeader) {
  const auto r = run({"histogram", "--ab", "1,1", "--bound", "1000", "--bins", "4", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "bin_left,bin_right,count,empirical_density,theoretical_density");
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first.back(), ',');  // no group, empty theoretical column
  int rows = 1;
  for (std::string line; std::getline(lines, line);) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"ec-scan", "--ab", "-1,0", "--bound", "20000", "--classify", "--threads", "3"},
      {"char-sums", "--haar", "5000", "--group", "USp4", "--irrep", "gamma:1,0", "--seed", "9"},
      {"g2-scan", "--curve", "x^5-x+1", "--bound", "200", "--format", "csv"},
      {"st3-audit"},
  };
  for (const auto& args : commands) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out) << args.front();
  }
  const auto s1 = run({"char-sums", "--haar", "500", "--group", "SU2", "--irrep", "sym:1", "--seed", "1"});
  const auto s2 = run({"char-sums", "--haar", "500", "--group", "SU2", "--irrep", "sym:1", "--seed", "2"});
  EXPECT_NE(json::parse(s1.out)["series"], json::parse(s2.out)["series"]);
}
