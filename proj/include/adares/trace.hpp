#pragma once

#include "adares/types.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace adares {

struct TraceRecord {
  std::int64_t prox_evals = 0;
  double time_s = 0.0;
  double F = 0.0;
  double grad_map_sq = 0.0;
  double gap = 0.0;  // NaN when no gap evaluator was supplied
  int stage = 0;
  double mu_s = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RunTrace {
  std::string solver_id;
  std::vector<TraceRecord> records;
  std::vector<std::pair<std::string, std::string>> config;
};

inline constexpr const char* kTraceCsvHeader = "prox_evals,time_s,F,grad_map_sq,gap,stage,mu_s";

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_trace_csv(const RunTrace& trace, std::ostream& out) {
  out << kTraceCsvHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.prox_evals << ',' << format_g17(r.time_s) << ',' << format_g17(r.F) << ','
        << format_g17(r.grad_map_sq) << ',' << format_g17(r.gap) << ',' << r.stage << ','
        << format_g17(r.mu_s) << '\n';
  }
}

inline void emit_csv(const RunTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_trace_csv(trace, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline std::vector<TraceRecord> parse_trace_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line) || line != kTraceCsvHeader) throw ParseError(1, "missing trace header");
  std::vector<TraceRecord> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cols.push_back(cell);
    if (cols.size() != 7) throw ParseError(lineno, "expected 7 columns");
    try {
      TraceRecord r;
      r.prox_evals = std::stoll(cols[0]);
      r.time_s = std::strtod(cols[1].c_str(), nullptr);
      r.F = std::strtod(cols[2].c_str(), nullptr);
      r.grad_map_sq = std::strtod(cols[3].c_str(), nullptr);
      r.gap = std::strtod(cols[4].c_str(), nullptr);
      r.stage = std::stoi(cols[5]);
      r.mu_s = std::strtod(cols[6].c_str(), nullptr);
      out.push_back(r);
    } catch (const std::exception&) {
      throw ParseError(lineno, "malformed record");
    }
  }
  return out;
}

inline std::vector<TraceRecord> load_trace_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_trace_csv(in);
}

// Collects trace records for one solver run. Objective and gap evaluations
// happen here so solvers only report the point and the certificate value.
class TraceRecorder {
 public:
  using Evaluator = std::function<double(const Vector&)>;

  TraceRecorder(std::string solver_id, Evaluator objective, Evaluator gap = {})
      : objective_(std::move(objective)), gap_(std::move(gap)), start_(std::chrono::steady_clock::now()) {
    trace_.solver_id = std::move(solver_id);
  }

  void record(std::int64_t prox_evals, const Vector& x, double grad_map_sq, int stage, double mu_s) {
    TraceRecord r;
    r.prox_evals = prox_evals;
    r.time_s = elapsed();
    r.F = objective_ ? objective_(x) : std::nan("");
    r.grad_map_sq = grad_map_sq;
    r.gap = gap_ ? gap_(x) : std::nan("");
    r.stage = stage;
    r.mu_s = mu_s;
    trace_.records.push_back(r);
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  const RunTrace& trace() const { return trace_; }
  RunTrace& trace() { return trace_; }
  RunTrace take() { return std::move(trace_); }

 private:
  Evaluator objective_;
  Evaluator gap_;
  std::chrono::steady_clock::time_point start_;
  RunTrace trace_;
};

}  // namespace adares
