// Benchmark harness: runs gd / fista / adares over a λ₁ × μ₀ grid on a
// LIBSVM dataset or a synthetic instance and writes per-run CSV traces plus
// summary.tsv / summary.jsonl.
//
// Worker threads: ADARES_BENCH_WORKERS (default 1).
// Exit code: 0 when every cell completed, 2 if any cell failed, 1 on usage
// or I/O errors.

#include "adares/bench.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t comma = item.find(',', start);
      const std::string tok = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!tok.empty()) out.push_back(tok);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Restarted accelerated proximal gradient benchmark"};
  adares::BenchConfig cfg;
  cfg.lambda1.clear();
  cfg.mu0.clear();

  std::string problem = "lasso";
  std::string scheme = "fista";
  std::string lambda2 = "auto";
  std::string synthetic;
  std::vector<std::string> solvers;

  app.add_option("--problem", problem, "lasso | logistic")->check(CLI::IsMember({"lasso", "logistic"}));
  app.add_option("--data", cfg.data_path, "LIBSVM dataset (.gz accepted)");
  app.add_option("--synthetic", synthetic, "synthetic shape MxN used when --data is absent");
  app.add_option("--lambda1", cfg.lambda1, "regularization parameter(s); repeatable")->required();
  app.add_option("--lambda2", lambda2, "logistic L2 weight, or 'auto' for L/(10n)");
  app.add_option("--solvers", solvers, "comma-separated subset of gd,fista,adares")->required();
  app.add_option("--mu0", cfg.mu0, "initial error-bound estimate(s); repeatable");
  app.add_option("--eps", cfg.eps, "tolerance on ||T(x)-x||_L^2")->capture_default_str();
  app.add_option("--max-prox-evals", cfg.max_prox_evals, "per-run proximal-gradient budget")->capture_default_str();
  app.add_option("--max-time", cfg.max_time_s, "per-run wall-time budget in seconds (0: none)");
  app.add_flag("--strict-test", cfg.strict_test, "use the tightened certificate constant");
  app.add_flag("--pretest", cfg.pretest, "re-test halved estimates before the next stage");
  app.add_option("--scheme", scheme, "inner scheme for adares")->check(CLI::IsMember({"fista", "apg"}));
  app.add_option("--seed", cfg.seed, "seed for synthetic data");
  app.add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
  app.add_option("--record-every", cfg.record_every, "gd/fista trace cadence in prox evals")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.problem = problem == "lasso" ? adares::ProblemKind::Lasso : adares::ProblemKind::Logistic;
    cfg.scheme = scheme == "apg" ? adares::SchemeKind::APG : adares::SchemeKind::FISTA;
    cfg.solvers = split_list(solvers);
    if (lambda2 != "auto") cfg.lambda2 = std::stod(lambda2);
    if (!synthetic.empty()) {
      const auto x = synthetic.find_first_of("xX");
      if (x == std::string::npos) throw std::invalid_argument("--synthetic expects MxN");
      cfg.synthetic_m = std::stol(synthetic.substr(0, x));
      cfg.synthetic_n = std::stol(synthetic.substr(x + 1));
    }
    if (const char* w = std::getenv("ADARES_BENCH_WORKERS")) cfg.workers = std::max(1, std::atoi(w));

    const adares::BenchSummary summary = adares::run_bench(cfg);
    for (const auto& c : summary.cells) {
      std::cout << c.problem << " lambda1=" << c.lambda1 << ' ' << c.solver;
      if (c.mu0) std::cout << " mu0=" << *c.mu0;
      std::cout << "  " << c.status << "  prox_evals=" << c.prox_evals << "  gap=" << c.final_gap;
      if (!c.error.empty()) std::cout << "  (" << c.error << ')';
      std::cout << '\n';
    }
    return summary.all_ok() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "adares_bench: " << e.what() << '\n';
    return 1;
  }
}
