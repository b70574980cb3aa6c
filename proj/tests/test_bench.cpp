#include "adares/bench.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

using namespace adares;
namespace fs = std::filesystem;

class BenchTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("adares_bench_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  BenchConfig tiny(const std::string& sub) const {
    BenchConfig cfg;
    cfg.synthetic_m = 40;
    cfg.synthetic_n = 15;
    cfg.seed = 3;
    cfg.lambda1 = {10.0};
    cfg.eps = 1e-8;
    cfg.max_prox_evals = 20000;
    cfg.out_dir = (dir_ / sub).string();
    return cfg;
  }

  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_F(BenchTest, EmptyTraceIsHeaderOnly) {
  const auto path = (dir_ / "empty.csv").string();
  emit_csv(RunTrace{}, path);
  EXPECT_EQ(slurp(path), std::string(kTraceCsvHeader) + "\n");
  EXPECT_TRUE(load_trace_csv(path).empty());
}

TEST_F(BenchTest, CsvRoundTripIsExact) {
  RunTrace t;
  t.records.push_back({1, 0.001, 12.5, 3.25, std::nan(""), -1, 0.1});
  t.records.push_back({42, 0.1 + 0.2, 1.0 / 3.0, 1e-300, 7e-9, 3, 0.1 / 8});
  const auto path = (dir_ / "t.csv").string();
  emit_csv(t, path);
  const auto back = load_trace_csv(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1], t.records[1]);
  EXPECT_TRUE(std::isnan(back[0].gap));
  EXPECT_EQ(back[0].prox_evals, 1);
  EXPECT_EQ(back[0].stage, -1);
  EXPECT_EQ(back[0].F, 12.5);
  std::istringstream bad("prox_evals,time_s\n1,2\n");
  EXPECT_THROW(parse_trace_csv(bad), std::runtime_error);
}

TEST_F(BenchTest, EmitCsvReportsPath) {
  try {
    emit_csv(RunTrace{}, (dir_ / "missing" / "sub" / "t.csv").string());
    FAIL() << "expected an error";
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("t.csv"), std::string::npos);
  }
}

TEST_F(BenchTest, GradientDescentOnlyGivesMonotoneTrace) {
  BenchConfig cfg = tiny("gd");
  cfg.solvers = {"gd"};
  cfg.eps = 1e-4;
  const BenchSummary s = run_bench(cfg);
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].status, "converged");
  std::size_t csvs = 0;
  for (const auto& e : fs::directory_iterator(cfg.out_dir)) csvs += e.path().extension() == ".csv";
  EXPECT_EQ(csvs, 1u);
  const auto rows = load_trace_csv((fs::path(cfg.out_dir) / s.cells[0].csv).string());
  ASSERT_GT(rows.size(), 1u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(rows[i].F, rows[i - 1].F);
    EXPECT_GT(rows[i].prox_evals, rows[i - 1].prox_evals);
    EXPECT_GE(rows[i].time_s, rows[i - 1].time_s);
  }
  EXPECT_LE(rows.back().grad_map_sq, cfg.eps);
}

TEST_F(BenchTest, GridShapeAndSummaries) {
  BenchConfig cfg = tiny("grid");
  cfg.lambda1 = {1e4, 1e5, 1e6};
  cfg.solvers = {"adares"};
  cfg.workers = 2;
  const BenchSummary s = run_bench(cfg);
  ASSERT_EQ(s.cells.size(), 15u);
  EXPECT_TRUE(s.all_ok());
  std::size_t i = 0;
  for (double l : cfg.lambda1)
    for (double m : cfg.mu0) {
      EXPECT_EQ(s.cells[i].lambda1, l);
      ASSERT_TRUE(s.cells[i].mu0.has_value());
      EXPECT_EQ(*s.cells[i].mu0, m);
      EXPECT_TRUE(fs::exists(fs::path(cfg.out_dir) / s.cells[i].csv));
      ++i;
    }
  EXPECT_EQ(s.cells[0].csv, "lasso_l10000_adares_mu0.1.csv");

  std::ifstream jsonl(fs::path(cfg.out_dir) / "summary.jsonl");
  std::string line;
  std::size_t n = 0;
  while (std::getline(jsonl, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_EQ(j.at("solver"), "adares");
    EXPECT_EQ(j.at("prox_evals").get<std::int64_t>(), s.cells[n].prox_evals);
    ++n;
  }
  EXPECT_EQ(n, 15u);
  std::ifstream tsv(fs::path(cfg.out_dir) / "summary.tsv");
  std::size_t rows = 0;
  while (std::getline(tsv, line)) ++rows;
  EXPECT_EQ(rows, 16u);
}

TEST_F(BenchTest, AdaresTraceCarriesStagesAndGaps) {
  BenchConfig cfg = tiny("trace");
  cfg.mu0 = {1e-3};
  const BenchSummary s = run_bench(cfg);
  ASSERT_EQ(s.cells.size(), 1u);
  const auto& c = s.cells[0];
  EXPECT_EQ(c.status, "converged");
  EXPECT_LE(c.final_grad_map_sq, cfg.eps);
  EXPECT_GE(c.final_gap, -1e-8);
  const auto rows = load_trace_csv((fs::path(cfg.out_dir) / c.csv).string());
  ASSERT_GE(rows.size(), 2u);
  EXPECT_EQ(rows.front().stage, -1);
  EXPECT_EQ(rows.front().prox_evals, 1);
  for (const auto& r : rows) {
    EXPECT_GE(r.gap, -1e-8);
    EXPECT_GT(r.mu_s, 0.0);
    EXPECT_LE(r.prox_evals, c.prox_evals);
  }
}

TEST_F(BenchTest, RunsAreReproducible) {
  BenchConfig a = tiny("a");
  BenchConfig b = tiny("b");
  a.solvers = b.solvers = {"gd", "fista", "adares"};
  a.mu0 = b.mu0 = {1e-2};
  a.problem = b.problem = ProblemKind::Logistic;
  b.workers = 3;
  const BenchSummary sa = run_bench(a);
  const BenchSummary sb = run_bench(b);
  ASSERT_EQ(sa.cells.size(), 3u);
  ASSERT_EQ(sb.cells.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(sa.cells[i].prox_evals, sb.cells[i].prox_evals);
    EXPECT_EQ(sa.cells[i].final_F, sb.cells[i].final_F);
    ASSERT_EQ(sa.cells[i].trace.records.size(), sb.cells[i].trace.records.size());
    for (std::size_t k = 0; k < sa.cells[i].trace.records.size(); ++k) {
      TraceRecord ra = sa.cells[i].trace.records[k];
      TraceRecord rb = sb.cells[i].trace.records[k];
      ra.time_s = rb.time_s = 0.0;
      EXPECT_TRUE(ra == rb || (std::isnan(ra.gap) && std::isnan(rb.gap)));
    }
  }
}

TEST_F(BenchTest, BudgetIsReportedNotFailed) {
  BenchConfig cfg = tiny("budget");
  cfg.solvers = {"fista", "adares"};
  cfg.mu0 = {1e-5};
  cfg.eps = 1e-30;
  cfg.max_prox_evals = 200;
  const BenchSummary s = run_bench(cfg);
  for (const auto& c : s.cells) {
    EXPECT_EQ(c.status, "budget");
    EXPECT_LE(c.prox_evals, 200);
  }
  EXPECT_TRUE(s.all_ok());
}

TEST_F(BenchTest, ValidationErrors) {
  BenchConfig cfg = tiny("v");
  cfg.solvers = {"newton"};
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = tiny("v");
  cfg.mu0.clear();
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = tiny("v");
  cfg.lambda1 = {-1.0};
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = tiny("v");
  cfg.synthetic_m = 0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg = tiny("v");
  cfg.data_path = (dir_ / "missing.txt").string();
  EXPECT_THROW(run_bench(cfg), std::runtime_error);
}

#ifdef ADARES_BENCH_EXE
int run_cli(const std::string& args) {
  const std::string cmd = std::string(ADARES_BENCH_EXE) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(BenchTest, CliExitCodes) {
  const std::string out = (dir_ / "cli").string();
  EXPECT_EQ(run_cli("--synthetic 30x10 --lambda1 10 --solvers gd,fista,adares --mu0 0.01 --eps 1e-6 --out " + out), 0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "summary.tsv"));
  EXPECT_TRUE(fs::exists(fs::path(out) / "lasso_l10_fista.csv"));
  EXPECT_EQ(run_cli("--synthetic 30x10 --lambda1 10 --solvers bogus --out " + out), 1);
  EXPECT_EQ(run_cli("--lambda1 10 --solvers gd --out " + out), 1);
  EXPECT_EQ(run_cli("--data " + (dir_ / "nope.txt").string() + " --lambda1 10 --solvers gd --out " + out), 1);
  EXPECT_EQ(run_cli("--synthetic 30x10 --solvers gd"), 106);  // CLI11 RequiredError

  std::ofstream(dir_ / "d.txt") << "1 1:1 2:0.5\n-1 1:-0.3 2:2\n1 2:1\n";
  EXPECT_EQ(run_cli("--problem logistic --data " + (dir_ / "d.txt").string() +
                    " --lambda1 2 --solvers adares --mu0 0.1 --mu0 0.01 --pretest --strict-test --scheme apg --out " +
                    out),
            0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "logistic_l2_adares_mu0.01.csv"));
}
#endif

}  // namespace
