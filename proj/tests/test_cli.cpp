#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "padicprob/cli/app.hpp"
#include "padicprob/cli/report.hpp"
#include "padicprob/frequency.hpp"
#include "padicprob/limit_theorems.hpp"

using namespace padicprob;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) { return fs::temp_directory_path() / ("padicprob_cli_" + name); }

Rational cell_rational(const cli::Report& r, std::size_t row, const std::string& num, const std::string& den) {
  return Rational(Integer(r.cell(row, num)), Integer(r.cell(row, den)));
}

// Rebuilds the argument list from the config echo of a JSON-lines report.
std::vector<std::string> args_from_config(const cli::Report& r) {
  std::vector<std::string> args{r.schema};
  for (const auto& [k, v] : r.config) {
    if (k == "x") {
      args.push_back(v);
    } else {
      args.push_back("--" + k);
      args.push_back(v);
    }
  }
  return args;
}

}  // namespace

TEST(CliValuation, Examples) {
  auto r = run({"valuation", "--prime", "3", "12"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rep = cli::parse_csv(r.out, "valuation");
  EXPECT_EQ(rep.cell(0, "v"), "1");
  EXPECT_EQ(rep.cell(0, "abs"), "1/3");

  rep = cli::parse_csv(run({"valuation", "--prime", "2", "5/16"}).out, "valuation");
  EXPECT_EQ(rep.cell(0, "v"), "-4");
  EXPECT_EQ(rep.cell(0, "abs"), "16");

  rep = cli::parse_csv(run({"valuation", "--prime", "5", "0"}).out, "valuation");
  EXPECT_EQ(rep.cell(0, "v"), "inf");
  EXPECT_EQ(rep.cell(0, "abs"), "0");
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(run({"valuation", "--prime", "3", "1/x"}).code, 2);
  EXPECT_EQ(run({"valuation", "--prime", "4", "3"}).code, exit_code(ErrorKind::InvalidArgument));
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"thm31", "--prime", "3"}).code, 2);
  EXPECT_EQ(run({"thm31", "--prime", "3", "--m", "2", "--r", "3", "--kmax", "4"}).code, 3);
  EXPECT_EQ(run({"freq", "--generator", "alternating", "--length", "10", "--prime", "3", "--scheme", "p^k", "--kmax", "5"}).code,
            4);
  EXPECT_EQ(run({"clt", "--a", "3/2", "--prime", "3"}).code, 5);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliThm31, TraceMatchesModule) {
  auto r = run({"thm31", "--prime", "3", "--m", "2", "--r", "1", "--l", "1", "--t", "1", "--kmax", "6", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_csv(r.out, "thm31");
  ASSERT_EQ(rep.rows.size(), 6U);
  EXPECT_GE(std::stoll(rep.cell(5, "vp_to_limit")), 5);
  const auto trace = limits::verify_thm31(Prime(3), 2, 1, 1, frequency::SequenceSelector::affine(Prime(3), 2), 6);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    EXPECT_EQ(cell_rational(rep, i, "value_num", "value_den"), trace.rows[i].value);
    EXPECT_EQ(std::stoull(rep.cell(i, "N_k")), trace.rows[i].n);
    EXPECT_EQ(rep.cell(i, "vp_to_limit"), trace.rows[i].vp_to_limit.str());
  }
  EXPECT_NE(r.err.find("verdict: Converging"), std::string::npos);
  EXPECT_NE(r.err.find("# padicprob thm31"), std::string::npos);
}

TEST(CliThm31, JsonRoundTripAndReplay) {
  auto r = run({"thm31", "--prime", "3", "--m", "2", "--r", "0", "--l", "2", "--kmax", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_jsonl(r.out);
  EXPECT_EQ(rep.schema, "thm31");
  EXPECT_EQ(rep.rows.size(), 5U);
  EXPECT_EQ(rep.summary_value("limit"), "1/4");
  EXPECT_EQ(rep.summary_value("verdict"), "Converging");
  // Replaying the echoed config reproduces the report byte for byte.
  const auto again = run(args_from_config(rep));
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, r.out);
}

TEST(CliEq5, ComplementRowsSumToOne) {
  auto r = run({"eq5", "--prime", "5", "--kmax", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_csv(r.out, "eq5");
  ASSERT_EQ(rep.rows.size(), 8U);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(rep.cell(i, "series"), "eq5 divisible");
    EXPECT_EQ(rep.cell(i + 4, "series"), "eq5 complement");
    EXPECT_EQ(cell_rational(rep, i, "value_num", "value_den") + cell_rational(rep, i + 4, "value_num", "value_den"),
              Rational(1));
  }
}

TEST(CliThm32, LimitIsReported) {
  auto r = run({"thm32", "--prime", "3", "--r", "1", "--kmax", "6", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_jsonl(r.out);
  EXPECT_EQ(rep.summary_value("limit"), "3/8");
  EXPECT_EQ(rep.summary_value("verdict"), "Converging");
}

TEST(CliLln, TracesPerMoment) {
  auto r = run({"lln", "--prime", "3", "--a", "-1", "--mmax", "2", "--kmax", "5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_jsonl(r.out);
  EXPECT_EQ(rep.rows.size(), 15U);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.cell(i, "series") != "lln m=1") continue;
    const auto n = std::stoull(rep.cell(i, "N_k"));
    EXPECT_EQ(cell_rational(rep, i, "value_num", "value_den"), Rational(Integer(static_cast<unsigned long>(n)), Integer(2)));
    EXPECT_EQ(rep.cell(i, "vp_to_limit"), rep.cell(i, "k"));
  }
}

TEST(CliClt, CoshCoefficients) {
  auto r = run({"clt", "--a", "1", "--order", "8", "--prime", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_csv(r.out, "clt");
  const std::vector<std::string> expected{"1", "0", "1/2", "0", "1/24", "0", "1/720", "0", "1/40320"};
  ASSERT_EQ(rep.rows.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(rep.cell(i, "coefficient"), expected[i]);
}

TEST(CliMahler, CoshIsBounded) {
  auto r = run({"mahler", "--prime", "5", "--order", "30", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_jsonl(r.out);
  EXPECT_EQ(rep.rows.size(), 31U);
  EXPECT_EQ(rep.summary_value("bounded"), "yes");
  EXPECT_NE(rep.summary_value("note").find("not a proof"), std::string::npos);
}

TEST(CliIntegrate, DigitsFunction) {
  auto r = run({"integrate", "--depth-min", "4", "--depth-max", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_csv(r.out, "integrate");
  ASSERT_EQ(rep.rows.size(), 5U);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto depth = std::stoul(rep.cell(i, "depth"));
    const auto value = cell_rational(rep, i, "value_num", "value_den");
    EXPECT_EQ(value, (pow(Rational(3), static_cast<long>(depth)) - Rational(1)) / Rational(4));
    EXPECT_GE(std::stoul(rep.cell(i, "error_exponent")), depth);
    EXPECT_EQ(rep.cell(i, "norm_bound"), "holds");
  }
}

TEST(CliFreq, FileInputMatchesModule) {
  const auto path = scratch("bits.txt");
  {
    std::ofstream f(path);
    const auto c = frequency::generators::random_bits(11, 800);
    f << c.labels();
  }
  auto r = run({"freq", "--input", path.string(), "--prime", "3", "--scheme", "2+p^k", "--kmax", "6", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_jsonl(r.out);
  const auto c = frequency::Collective::from_file(path);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto n = std::stoull(rep.cell(i, "N_k"));
    EXPECT_EQ(cell_rational(rep, i, "nu_num", "nu_den"), frequency::relative_frequency(c, "1", n));
  }
  fs::remove(path);
}

TEST(CliTest, AdversarialFixtureIsRejected) {
  const auto path = scratch("checkpoint.txt");
  auto g = run({"generate", "--kind", "checkpoint", "--prime", "3", "--l", "1", "--r", "0", "--scheme", "1+p^k", "--kmax",
                "6", "-o", path.string()});
  ASSERT_EQ(g.code, 0) << g.err;
  auto r = run({"test", "--input", path.string(), "--prime", "3", "--l", "1", "--r", "0", "--scheme", "1+p^k", "--eps-exp",
                "2", "--kmax", "6", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_jsonl(r.out);
  EXPECT_EQ(rep.summary_value("verdict"), "Rejected");
  EXPECT_EQ(rep.summary_value("persistent_hit"), "yes");
  EXPECT_NE(r.err.find("verdict: Rejected"), std::string::npos);

  // Re-validate the table against the module.
  const auto omega = frequency::Collective::from_file(path);
  const limits::RandomnessConfig cfg{Prime(3), 1, 0, frequency::SequenceSelector::parse("1+p^k", Prime(3)), 2, 1, 6,
                                     limits::SphereMode::Sphere};
  const auto out = limits::randomness_test(omega, cfg);
  ASSERT_EQ(rep.rows.size(), out.rows.size());
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    EXPECT_EQ(cell_rational(rep, i, "prob_num", "prob_den"), out.rows[i].probability);
    EXPECT_EQ(std::stoull(rep.cell(i, "S")), out.rows[i].sum);
  }
  fs::remove(path);

  auto zeros = run({"test", "--generator", "zeros", "--length", "730", "--prime", "3", "--format", "json"});
  ASSERT_EQ(zeros.code, 0) << zeros.err;
  EXPECT_EQ(cli::parse_jsonl(zeros.out).summary_value("verdict"), "NotRejected");
}

TEST(CliGdist, ConditionalAndAxioms) {
  const auto path = scratch("g.json");
  {
    std::ofstream f(path);
    f << R"({"context":"padic:3","outcomes":["a","b"],"weights":["2","-1"]})";
  }
  auto r = run({"gdist", "--input", path.string(), "--given", "a,b", "--event", "a"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = cli::parse_csv(r.out, "gdist");
  bool saw_conditional = false;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.cell(i, "item") == "conditional") {
      EXPECT_EQ(rep.cell(i, "result"), "2");
      saw_conditional = true;
    }
    if (rep.cell(i, "item") == "unit_axiom") EXPECT_EQ(rep.cell(i, "result"), "holds");
  }
  EXPECT_TRUE(saw_conditional);
  fs::remove(path);
}

TEST(CliDeterminism, SeededRunsAreByteIdentical) {
  const std::vector<std::string> args{"freq", "--generator", "random", "--seed", "99", "--length", "3000",
                                      "--prime", "3", "--scheme", "p^k", "--kmax", "7", "--format", "json"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
  auto other = args;
  other[4] = "100";
  EXPECT_NE(run(other).out, a.out);
}

TEST(CliOutput, WritesToFile) {
  const auto path = scratch("out.csv");
  auto r = run({"clt", "--a", "2", "--order", "4", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  const auto rep = cli::parse_csv(text.str(), "clt");
  EXPECT_EQ(rep.cell(4, "coefficient"), "1/12");
  fs::remove(path);
}

TEST(ReportFormat, CsvQuotingRoundTrip) {
  cli::Report rep{"demo", {{"a", "1"}}, {"x", "y"}, {{"p^0 * (1,2) base 3", "say \"hi\""}, {"plain", ""}}, {{"k", "v"}}};
  std::ostringstream csv, json;
  cli::write_report(rep, cli::Format::Csv, csv);
  cli::write_report(rep, cli::Format::Json, json);
  const auto from_csv = cli::parse_csv(csv.str(), "demo");
  EXPECT_EQ(from_csv.rows, rep.rows);
  const auto from_json = cli::parse_jsonl(json.str());
  EXPECT_EQ(from_json.rows, rep.rows);
  EXPECT_EQ(from_json.config, rep.config);
  EXPECT_EQ(from_json.summary, rep.summary);
  EXPECT_THROW(cli::parse_jsonl("{\"record\":\"row\"}"), Error);
}
