#pragma once

#include "adares/schemes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace adares {

/// Raised when a run cannot continue: a non-finite certificate or objective,
/// or the error-bound estimate hitting its floor. Carries the trace so far.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, RunTrace trace) : std::runtime_error(what), trace_(std::move(trace)) {}
  const RunTrace& trace() const noexcept { return trace_; }

 private:
  RunTrace trace_;
};

/// Restart period K(μ) = ⌈2√(e/μ) − 1⌉, never below 1.
///
/// For μ ≤ μ_F this guarantees θ²_{K−1}/μ ≤ e⁻¹.
inline std::int64_t K_of_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::domain_error("K_of_mu: mu must be positive and finite");
  const double k = std::ceil(2.0 * std::sqrt(std::numbers::e / mu) - 1.0);
  if (k >= static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))
    throw std::domain_error("K_of_mu: restart period overflows");
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(k));
}

/// Per-restart contraction factor of dist²_L(·, X*) for period K under
/// growth constant μ: min(θ²_{K−1}/μ, 1/(1 + μ/(2θ²_{K−1}))).
inline double contraction_factor(double theta_sq, double mu) {
  return std::min(theta_sq / mu, 1.0 / (1.0 + mu / (2.0 * theta_sq)));
}

/// True when the observed gradient-mapping norm refutes the current
/// estimate: grad_map_sq > C · ratio^t. Ties do not refute.
inline bool certificate_test(double grad_map_sq, double C, double theta_ratio, std::int64_t t) {
  if (!std::isfinite(grad_map_sq) || !std::isfinite(C) || !std::isfinite(theta_ratio))
    throw std::domain_error("certificate_test: non-finite input");
  if (t < 1) throw std::domain_error("certificate_test: t must be >= 1");
  return grad_map_sq > C * std::pow(theta_ratio, static_cast<double>(t));
}

enum class StageEnd { Running, Refuted, Converged, Budget };

// Bookkeeping for one stage s of the adaptive scheme.
struct StageRecord {
  int s = 0;
  double mu = 0.0;
  std::int64_t K = 0;
  double theta_sq = 0.0;   // θ²_{K−1}
  Vector anchor;           // x_{s,0}
  double anchor_sq = 0.0;  // ‖x_{s,0} − x_{s−1,t_{s−1}}‖²_L
  double C_plain = 0.0;
  double C = 0.0;  // constant actually used by the test
  std::int64_t t = 0;
  std::vector<double> grad_map_sq;  // ‖T(x_{s,t}) − x_{s,t}‖²_L for t = 1..t_s
  StageEnd end = StageEnd::Running;
  int pretest_halvings = 0;
};

namespace detail {

// min over anchors s' ≤ s of Π_{j=s'}^{s−1} α_j(μ)^{t_j} · D_{s'}, where the
// last history entry is the current stage s.
inline double anchored_min(std::span<const StageRecord> history, double mu) {
  if (history.empty()) throw std::domain_error("restart history is empty");
  const std::size_t s = history.size() - 1;
  double best = history[s].anchor_sq;
  double product = 1.0;
  for (std::size_t back = s; back-- > 0;) {
    const StageRecord& j = history[back];
    product *= std::pow(contraction_factor(j.theta_sq, mu), static_cast<double>(j.t));
    best = std::min(best, product * j.anchor_sq);
  }
  return best;
}

}  // namespace detail

/// Tightened certificate constant: (16/μ_s) times the best anchored bound
/// over all previous stage anchors. Never exceeds 16·D_s/μ_s.
inline double strict_Cs(std::span<const StageRecord> history, double mu_s) {
  if (!(mu_s > 0.0)) throw std::domain_error("strict_Cs: mu must be positive");
  return 16.0 / mu_s * detail::anchored_min(history, mu_s);
}

/// After a refutation at (s, t), checks whether μ_next is still compatible
/// with the observed ‖T(x_{s,t}) − x_{s,t}‖²_L. `history.back()` is stage s.
/// Returns true when μ_next passes and can be used for the next stage.
inline bool mu_pretest(std::span<const StageRecord> history, double grad_map_sq, double mu_next, std::int64_t t) {
  if (!(mu_next > 0.0)) throw std::domain_error("mu_pretest: mu must be positive");
  if (t < 1) throw std::domain_error("mu_pretest: t must be >= 1");
  const StageRecord& cur = history.back();
  const double lead = 16.0 / mu_next * (cur.theta_sq / mu_next);
  const double own = std::pow(contraction_factor(cur.theta_sq, mu_next), static_cast<double>(t - 1));
  const double bound = lead * own * detail::anchored_min(history, mu_next);
  return grad_map_sq <= bound;
}

struct AdaResConfig {
  double mu0 = 0.1;
  double eps = 1e-10;  // target for ‖T(x) − x‖²_L
  bool strict_test = false;
  bool pretest = false;
  SchemeKind scheme = SchemeKind::FISTA;
  // Target F(x) − F* ≤ ε′ instead of a gradient-mapping tolerance. The
  // stage tolerance becomes ε′·μ_s/8 and only the inner test can stop the run.
  std::optional<double> eps_prime;
  std::int64_t max_prox_evals = 0;  // 0: unlimited
  double max_time_s = 0.0;          // 0: unlimited
  double mu_floor = 1e-15;
};

enum class RunStatus { Converged, BudgetExceeded };

struct AdaResResult {
  Vector x_hat;
  int s_hat = -1;
  std::int64_t n_hat = 0;
  RunTrace trace;
  RunStatus status = RunStatus::Converged;
  std::vector<StageRecord> stages;
  int halvings = 0;
  int refutations = 0;
  double final_grad_map_sq = 0.0;
};

/// Adaptively restarted accelerated proximal gradient.
///
/// Restarts the inner scheme every K(μ_s) steps and, after each restart,
/// compares ‖T(x_{s,t}) − x_{s,t}‖²_L with C_s(θ²_{K_s−1}/μ_s)^t. Exceeding it
/// proves μ_s is too large, so μ is halved and a new stage begins from
/// T(x_{s,t_s}). T(x_{s,t}) is reused as the first step of the next inner
/// call, which makes n_hat = 1 + Σ_s (t_s K_s + 1) exact.
///
/// The recorder, when given, receives x0 (stage −1) and every x_{s,t}.
template <SmoothFunction S>
AdaResResult ada_res(const CompositeProblem<S>& p, const Vector& x0, const AdaResConfig& cfg,
                     TraceRecorder* recorder = nullptr) {
  if (!(cfg.mu0 > 0.0) || !std::isfinite(cfg.mu0)) throw std::domain_error("ada_res: mu0 must be positive");
  if (!cfg.eps_prime && !(cfg.eps > 0.0)) throw std::domain_error("ada_res: eps must be positive");
  if (cfg.eps_prime && !(*cfg.eps_prime > 0.0)) throw std::domain_error("ada_res: eps_prime must be positive");
  if (cfg.scheme == SchemeKind::ProxGrad) throw std::domain_error("ada_res: inner scheme must be FISTA or APG");
  detail::require_same_size(x0.size(), p.dimension(), "ada_res start");

  const auto start_time = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_time).count(); };
  const Vector& lip = p.weights();
  const bool eps_prime_mode = cfg.eps_prime.has_value();
  auto stage_eps = [&](double mu) { return eps_prime_mode ? *cfg.eps_prime * mu / 8.0 : cfg.eps; };

  AdaResResult res;
  auto fail = [&](const std::string& why) -> NumericalFailure {
    return NumericalFailure(why, recorder != nullptr ? recorder->trace() : RunTrace{});
  };
  auto record = [&](const Vector& x, double g, int stage, double mu) {
    if (recorder == nullptr) return;
    recorder->record(res.n_hat, x, g, stage, mu);
    if (!std::isfinite(recorder->trace().records.back().F)) throw fail("non-finite objective value");
  };
  auto finish = [&](Vector x_hat, double g, RunStatus status) {
    res.x_hat = std::move(x_hat);
    res.final_grad_map_sq = g;
    res.status = status;
    res.s_hat = static_cast<int>(res.stages.size()) - 1;
    if (recorder != nullptr) res.trace = recorder->trace();
    return std::move(res);
  };

  ProxGradWorkspace pg;
  Vector tx(x0.size());
  t_map(p, x0, tx, pg);
  res.n_hat = 1;
  double g = weighted_sq_dist(tx, x0, lip);
  if (!std::isfinite(g)) throw fail("non-finite gradient mapping at x0");
  record(x0, g, -1, cfg.mu0);
  if (g == 0.0 || (!eps_prime_mode && g <= cfg.eps)) return finish(std::move(tx), g, RunStatus::Converged);

  double mu = cfg.mu0;
  Vector prev_end = x0;   // x_{s−1,t_{s−1}}
  Vector anchor = tx;     // x_{s,0}
  Vector x_cur;
  AccelWorkspace ws;

  for (int s = 0;; ++s) {
    StageRecord st;
    st.s = s;
    st.mu = mu;
    st.K = K_of_mu(mu);
    st.theta_sq = std::pow(theta_at(st.K - 1), 2);
    st.anchor_sq = weighted_sq_dist(anchor, prev_end, lip);
    st.anchor = anchor;
    st.C_plain = 16.0 / mu * st.anchor_sq;
    res.stages.push_back(std::move(st));
    StageRecord& cur = res.stages.back();
    cur.C = cfg.strict_test ? strict_Cs(res.stages, mu) : cur.C_plain;

    const double ratio = cur.theta_sq / mu;
    const double eps_s = stage_eps(mu);
    x_cur = anchor;
    bool have_cached = false;  // tx holds T(x_cur)
    bool refuted = false;

    for (;;) {
      const std::int64_t steps = have_cached ? cur.K - 1 : cur.K;
      const bool over_evals = cfg.max_prox_evals > 0 && res.n_hat + steps + 1 > cfg.max_prox_evals;
      const bool over_time = cfg.max_time_s > 0.0 && elapsed() > cfg.max_time_s;
      if (over_evals || over_time) {
        cur.end = StageEnd::Budget;
        // tx is T of the latest tested point, which has the lowest F seen so far.
        return finish(tx, g, RunStatus::BudgetExceeded);
      }

      AccelState state = have_cached ? accel_start_from_first_step(tx) : accel_start(x_cur);
      for (std::int64_t i = 0; i < steps; ++i) scheme_step(cfg.scheme, p, state, ws);
      res.n_hat += steps;
      x_cur = std::move(state.x);
      ++cur.t;

      t_map(p, x_cur, tx, pg);
      ++res.n_hat;
      g = weighted_sq_dist(tx, x_cur, lip);
      if (!std::isfinite(g)) throw fail("non-finite gradient mapping");
      cur.grad_map_sq.push_back(g);
      record(x_cur, g, s, mu);

      refuted = certificate_test(g, cur.C, ratio, cur.t);
      const bool small = g <= eps_s;
      if (eps_prime_mode) {
        if (small && !refuted) {
          cur.end = StageEnd::Converged;
          return finish(std::move(tx), g, RunStatus::Converged);
        }
        if (refuted) break;
      } else if (refuted || small) {
        break;
      }
      have_cached = true;
    }

    cur.end = refuted ? StageEnd::Refuted : StageEnd::Converged;
    if (refuted) ++res.refutations;
    // x_{s+1,0} = T(x_{s,t_s}); ‖x_{s+1,0} − x_{s,t_s}‖²_L is exactly g.
    if (!eps_prime_mode && g <= cfg.eps) return finish(std::move(tx), g, RunStatus::Converged);

    prev_end = x_cur;
    anchor = tx;
    mu /= 2.0;
    ++res.halvings;
    if (mu < cfg.mu_floor) throw fail("error-bound estimate fell below its floor");
    if (cfg.pretest && refuted) {
      while (!mu_pretest(res.stages, g, mu, cur.t)) {
        mu /= 2.0;
        ++res.halvings;
        ++cur.pretest_halvings;
        if (mu < cfg.mu_floor) throw fail("error-bound estimate fell below its floor");
      }
    }
  }
}

/// ada_res targeting F(x) − F* ≤ ε′; requires cfg.eps_prime.
template <SmoothFunction S>
AdaResResult eps_prime_mode(const CompositeProblem<S>& p, const Vector& x0, const AdaResConfig& cfg,
                            TraceRecorder* recorder = nullptr) {
  if (!cfg.eps_prime) throw std::domain_error("eps_prime_mode: eps_prime not set");
  return ada_res(p, x0, cfg, recorder);
}

/// n_hat predicted by the stage bookkeeping: 1 + Σ_s (t_s K_s + 1).
inline std::int64_t predicted_prox_evals(std::span<const StageRecord> stages) {
  std::int64_t n = 1;
  for (const auto& st : stages) n += st.t * st.K + 1;
  return n;
}

/// Restarts the chosen scheme every K steps, outer_T times, warm-starting
/// each call from the previous output. The recorder (if any) receives every
/// restart point; those diagnostic T evaluations are not charged.
template <SmoothFunction S>
SchemeResult fixed_restart(const CompositeProblem<S>& p, const Vector& x0, std::int64_t K, std::int64_t outer_T,
                           SchemeKind scheme, TraceRecorder* recorder = nullptr) {
  if (K < 1) throw std::domain_error("fixed_restart: K must be >= 1");
  if (outer_T < 1) throw std::domain_error("fixed_restart: outer_T must be >= 1");
  SchemeResult out;
  out.x = x0;
  AccelWorkspace ws;
  for (std::int64_t t = 0; t < outer_T; ++t) {
    AccelState state = accel_start(out.x);
    for (std::int64_t i = 0; i < K; ++i) scheme_step(scheme, p, state, ws);
    out.x = std::move(state.x);
    out.prox_evals += K;
    if (recorder != nullptr) detail::record_point(p, *recorder, out.prox_evals, out.x, ws);
  }
  out.iterations = out.prox_evals;
  if (recorder != nullptr) out.trace = recorder->trace();
  return out;
}

}  // namespace adares
