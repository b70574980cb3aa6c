#pragma once

#include "adares/certificates.hpp"
#include "adares/restart.hpp"
#include "adares/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace adares {

enum class ProblemKind { Lasso, Logistic };

inline std::string_view to_string(ProblemKind k) { return k == ProblemKind::Lasso ? "lasso" : "logistic"; }

// One experiment grid: every λ₁ × (gd, fista, adares × μ₀).
struct BenchConfig {
  ProblemKind problem = ProblemKind::Lasso;
  std::string data_path;                // LIBSVM file (".gz" accepted)
  Index synthetic_m = 0;                // used when data_path is empty
  Index synthetic_n = 0;
  std::vector<double> lambda1{1e4};
  std::optional<double> lambda2;        // logistic only; unset means L/(10n)
  std::vector<std::string> solvers{"adares"};
  std::vector<double> mu0{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  double eps = 1e-10;
  std::int64_t max_prox_evals = 100000;
  double max_time_s = 0.0;
  bool strict_test = false;
  bool pretest = false;
  SchemeKind scheme = SchemeKind::FISTA;
  std::uint64_t seed = 0;
  std::string out_dir = "bench_out";
  std::int64_t record_every = 10;  // gd / fista trace cadence
  int workers = 1;
};

struct CellResult {
  std::string problem;
  double lambda1 = 0.0;
  std::string solver;
  std::optional<double> mu0;
  std::string status;  // converged | budget | failed
  std::int64_t prox_evals = 0;
  int stages = -1;
  double final_F = std::nan("");
  double final_grad_map_sq = std::nan("");
  double final_gap = std::nan("");
  double time_s = 0.0;
  std::string csv;
  std::string error;
  RunTrace trace;
};

struct BenchSummary {
  std::vector<CellResult> cells;
  bool all_ok() const {
    return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.status != "failed"; });
  }
};

inline void validate(const BenchConfig& cfg) {
  if (cfg.solvers.empty()) throw std::invalid_argument("bench: at least one solver is required");
  for (const auto& s : cfg.solvers)
    if (s != "gd" && s != "fista" && s != "adares") throw std::invalid_argument("bench: unknown solver '" + s + "'");
  const bool ada = std::find(cfg.solvers.begin(), cfg.solvers.end(), "adares") != cfg.solvers.end();
  if (ada && cfg.mu0.empty()) throw std::invalid_argument("bench: adares needs at least one mu0");
  for (double m : cfg.mu0)
    if (!(m > 0.0)) throw std::invalid_argument("bench: mu0 values must be positive");
  if (cfg.lambda1.empty()) throw std::invalid_argument("bench: at least one lambda1 is required");
  for (double l : cfg.lambda1)
    if (!(l > 0.0)) throw std::invalid_argument("bench: lambda1 values must be positive");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("bench: eps must be positive");
  if (cfg.max_prox_evals < 1) throw std::invalid_argument("bench: max prox evals must be positive");
  if (cfg.data_path.empty() && (cfg.synthetic_m < 1 || cfg.synthetic_n < 1))
    throw std::invalid_argument("bench: need a dataset path or a synthetic shape");
  if (cfg.scheme == SchemeKind::ProxGrad) throw std::invalid_argument("bench: inner scheme must be fista or apg");
}

inline Dataset load_bench_dataset(const BenchConfig& cfg) {
  if (!cfg.data_path.empty()) return load_libsvm(cfg.data_path);
  return cfg.problem == ProblemKind::Lasso ? synth_regression(cfg.synthetic_m, cfg.synthetic_n, cfg.seed)
                                           : synth_classification(cfg.synthetic_m, cfg.synthetic_n, cfg.seed);
}

namespace detail {

inline std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct CellSpec {
  double lambda1;
  std::string solver;
  std::optional<double> mu0;
};

template <SmoothFunction S>
void run_cell(const CompositeProblem<S>& p, const BenchConfig& cfg, CellResult& cell) {
  const Vector x0 = Vector::Zero(p.dimension());
  auto objective = [&p](const Vector& x) { return p.value(x); };
  auto gap = [&p](const Vector& x) { return dual_gap(p, x).gap; };
  TraceRecorder rec(cell.solver, objective, gap);
  rec.trace().config = {{"problem", cell.problem},
                        {"lambda1", fmt_param(cell.lambda1)},
                        {"solver", cell.solver},
                        {"mu0", cell.mu0 ? fmt_param(*cell.mu0) : "-"},
                        {"eps", fmt_param(cfg.eps)},
                        {"scheme", std::string(to_string(cfg.scheme))},
                        {"strict_test", cfg.strict_test ? "1" : "0"},
                        {"pretest", cfg.pretest ? "1" : "0"},
                        {"seed", std::to_string(cfg.seed)}};
  Vector x_final;
  try {
    if (cell.solver == "adares") {
      AdaResConfig ac;
      ac.mu0 = *cell.mu0;
      ac.eps = cfg.eps;
      ac.strict_test = cfg.strict_test;
      ac.pretest = cfg.pretest;
      ac.scheme = cfg.scheme;
      ac.max_prox_evals = cfg.max_prox_evals;
      ac.max_time_s = cfg.max_time_s;
      AdaResResult r = ada_res(p, x0, ac, &rec);
      x_final = std::move(r.x_hat);
      cell.prox_evals = r.n_hat;
      cell.stages = r.s_hat;
      cell.status = r.status == RunStatus::Converged ? "converged" : "budget";
    } else {
      const SchemeKind kind = cell.solver == "gd" ? SchemeKind::ProxGrad : SchemeKind::FISTA;
      bool converged = false;
      bool diverged = false;
      SchemeOptions opts;
      opts.recorder = &rec;
      opts.record_every = std::max<std::int64_t>(1, cfg.record_every);
      opts.on_step = [&](const AccelState& s) {
        if (s.prox_evals % opts.record_every != 0) return true;
        const TraceRecord& last = rec.trace().records.back();
        if (!std::isfinite(last.F) || !std::isfinite(last.grad_map_sq)) {
          diverged = true;
          return false;
        }
        if (last.grad_map_sq <= cfg.eps) {
          converged = true;
          return false;
        }
        return !(cfg.max_time_s > 0.0 && rec.elapsed() > cfg.max_time_s);
      };
      SchemeResult r = run_scheme(kind, p, accel_start(x0), cfg.max_prox_evals, opts);
      if (diverged) throw NumericalFailure("non-finite objective", rec.trace());
      x_final = std::move(r.x);
      cell.prox_evals = r.prox_evals;
      if (!converged) converged = rec.trace().records.back().grad_map_sq <= cfg.eps;
      cell.status = converged ? "converged" : "budget";
    }
    const GapReport rep = dual_gap(p, x_final);
    cell.final_F = rep.primal;
    cell.final_gap = rep.gap;
    cell.final_grad_map_sq = rep.grad_map_sq;
    if (!std::isfinite(cell.final_F)) throw NumericalFailure("non-finite objective", rec.trace());
    cell.trace = rec.take();
  } catch (const NumericalFailure& e) {
    cell.status = "failed";
    cell.error = e.what();
    cell.trace = e.trace();
  }
  cell.time_s = rec.elapsed();
}

}  // namespace detail

inline std::string cell_file_name(const CellResult& c) {
  std::string name = c.problem + "_l" + detail::fmt_param(c.lambda1) + "_" + c.solver;
  if (c.mu0) name += "_mu" + detail::fmt_param(*c.mu0);
  return name + ".csv";
}

inline nlohmann::json to_json(const CellResult& c) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  return nlohmann::json{{"problem", c.problem},
                        {"lambda1", c.lambda1},
                        {"solver", c.solver},
                        {"mu0", c.mu0 ? nlohmann::json(*c.mu0) : nlohmann::json(nullptr)},
                        {"status", c.status},
                        {"prox_evals", c.prox_evals},
                        {"stages", c.stages},
                        {"final_F", num(c.final_F)},
                        {"final_grad_map_sq", num(c.final_grad_map_sq)},
                        {"final_gap", num(c.final_gap)},
                        {"time_s", c.time_s},
                        {"csv", c.csv},
                        {"error", c.error}};
}

/// Runs the grid, writes one CSV per cell plus summary.tsv and summary.jsonl
/// into cfg.out_dir. Cells run on cfg.workers threads; files are written by
/// the worker that owns the cell, summaries after all cells finish.
inline BenchSummary run_bench(const BenchConfig& cfg) {
  validate(cfg);
  const Dataset data = load_bench_dataset(cfg);
  std::filesystem::create_directories(cfg.out_dir);

  std::vector<detail::CellSpec> specs;
  for (double l1 : cfg.lambda1)
    for (const auto& solver : cfg.solvers) {
      if (solver == "adares")
        for (double m : cfg.mu0) specs.push_back({l1, solver, m});
      else
        specs.push_back({l1, solver, std::nullopt});
    }

  BenchSummary summary;
  summary.cells.resize(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      CellResult& cell = summary.cells[i];
      cell.problem = std::string(to_string(cfg.problem));
      cell.lambda1 = specs[i].lambda1;
      cell.solver = specs[i].solver;
      cell.mu0 = specs[i].mu0;
      try {
        if (cfg.problem == ProblemKind::Lasso) {
          detail::run_cell(make_lasso(data.A, data.b, cell.lambda1), cfg, cell);
        } else {
          detail::run_cell(make_logistic(data.A, data.b, cell.lambda1, cfg.lambda2), cfg, cell);
        }
      } catch (const std::exception& e) {
        cell.status = "failed";
        cell.error = e.what();
      }
      cell.csv = cell_file_name(cell);
      emit_csv(cell.trace, (std::filesystem::path(cfg.out_dir) / cell.csv).string());
    }
  };
  const int nthreads = std::max(1, std::min<int>(cfg.workers, static_cast<int>(specs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::ofstream tsv(std::filesystem::path(cfg.out_dir) / "summary.tsv", std::ios::binary);
  std::ofstream jsonl(std::filesystem::path(cfg.out_dir) / "summary.jsonl", std::ios::binary);
  if (!tsv || !jsonl) throw std::runtime_error("cannot write summaries in " + cfg.out_dir);
  tsv << "problem\tlambda1\tsolver\tmu0\tstatus\tprox_evals\tstages\tfinal_F\tfinal_grad_map_sq\tfinal_gap\ttime_s\tcsv\n";
  for (const auto& c : summary.cells) {
    tsv << c.problem << '\t' << detail::fmt_param(c.lambda1) << '\t' << c.solver << '\t'
        << (c.mu0 ? detail::fmt_param(*c.mu0) : "-") << '\t' << c.status << '\t' << c.prox_evals << '\t'
        << c.stages << '\t' << format_g17(c.final_F) << '\t' << format_g17(c.final_grad_map_sq) << '\t'
        << format_g17(c.final_gap) << '\t' << format_g17(c.time_s) << '\t' << c.csv << '\n';
    jsonl << to_json(c).dump() << '\n';
  }
  return summary;
}

}  // namespace adares
