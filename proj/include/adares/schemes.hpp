#pragma once

#include "adares/gradient_map.hpp"
#include "adares/theta.hpp"
#include "adares/trace.hpp"

#include <cstdint>
#include <functional>
#include <string_view>

namespace adares {

enum class SchemeKind { FISTA, APG, ProxGrad };

inline std::string_view to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::FISTA: return "fista";
    case SchemeKind::APG: return "apg";
    case SchemeKind::ProxGrad: return "gd";
  }
  return "?";
}

// Iterate bundle of the accelerated inner loops. theta.k is the inner
// iteration count; theta.theta is θ_k for the *next* step.
struct AccelState {
  Vector x;
  Vector z;
  ThetaState theta;
  std::int64_t prox_evals = 0;

  std::int64_t k() const { return theta.k; }
};

inline AccelState accel_start(const Vector& x0) { return AccelState{x0, x0, ThetaState{}, 0}; }

/// State after the first step from x0 when T(x0) is already known.
///
/// With θ₀ = 1 both schemes give y₀ = x₀ and x₁ = z₁ = T(x₀), so the first
/// step can be replayed for free. The cached evaluation is not counted here.
inline AccelState accel_start_from_first_step(const Vector& t_of_x0) {
  AccelState s{t_of_x0, t_of_x0, ThetaState{}, 0};
  s.theta.advance();
  return s;
}

struct AccelWorkspace {
  Vector y;
  Vector next;
  ProxGradWorkspace pg;
};

/// One FISTA step:
///   y = (1−θ)x + θz;  x⁺ = T-step at y;  z⁺ = z + (x⁺ − y)/θ.
template <SmoothFunction S>
void fista_step(const CompositeProblem<S>& p, AccelState& s, AccelWorkspace& ws) {
  const double th = s.theta.theta;
  ws.y = (1.0 - th) * s.x + th * s.z;
  t_map(p, ws.y, ws.next, ws.pg);
  s.z += (ws.next - ws.y) / th;
  s.x.swap(ws.next);
  s.theta.advance();
  ++s.prox_evals;
}

/// One APG step:
///   y = (1−θ)x + θz;  z⁺ = prox_{θL,ψ}(z − ∇f(y)/(θL));  x⁺ = y + θ(z⁺ − z).
template <SmoothFunction S>
void apg_step(const CompositeProblem<S>& p, AccelState& s, AccelWorkspace& ws) {
  const double th = s.theta.theta;
  const Vector& lip = p.weights();
  ws.y = (1.0 - th) * s.x + th * s.z;
  ws.pg.grad.resize(ws.y.size());
  p.smooth().gradient(ws.y, ws.pg.grad);
  ws.pg.shifted = s.z - (ws.pg.grad.array() / (th * lip.array())).matrix();
  p.regularizer().prox(lip, th, ws.pg.shifted, ws.next);
  s.x = ws.y + th * (ws.next - s.z);
  s.z.swap(ws.next);
  s.theta.advance();
  ++s.prox_evals;
}

/// One plain proximal-gradient step x⁺ = T(x); z tracks x.
template <SmoothFunction S>
void prox_grad_step(const CompositeProblem<S>& p, AccelState& s, AccelWorkspace& ws) {
  t_map(p, s.x, ws.next, ws.pg);
  s.x.swap(ws.next);
  s.z = s.x;
  s.theta.k += 1;
  ++s.prox_evals;
}

template <SmoothFunction S>
void scheme_step(SchemeKind kind, const CompositeProblem<S>& p, AccelState& s, AccelWorkspace& ws) {
  switch (kind) {
    case SchemeKind::FISTA: fista_step(p, s, ws); return;
    case SchemeKind::APG: apg_step(p, s, ws); return;
    case SchemeKind::ProxGrad: prox_grad_step(p, s, ws); return;
  }
}

/// Called after every inner step with the updated state; return false to stop early.
using StepObserver = std::function<bool(const AccelState&)>;

struct SchemeOptions {
  StepObserver on_step;
  // Diagnostics. When set, the recorder receives the final iterate and, if
  // record_every > 0, every record_every-th iterate. Each record costs one
  // extra T evaluation that is not charged to prox_evals.
  TraceRecorder* recorder = nullptr;
  std::int64_t record_every = 0;
  std::int64_t prox_evals_offset = 0;
};

struct SchemeResult {
  Vector x;
  RunTrace trace;
  std::int64_t prox_evals = 0;
  std::int64_t iterations = 0;
};

namespace detail {

template <SmoothFunction S>
void record_point(const CompositeProblem<S>& p, TraceRecorder& rec, std::int64_t evals, const Vector& x,
                  AccelWorkspace& ws) {
  Vector tx(x.size());
  t_map(p, x, tx, ws.pg);
  rec.record(evals, x, weighted_sq_dist(tx, x, p.weights()), 0, 0.0);
}

}  // namespace detail

/// Runs `iterations` steps of the chosen scheme from `start`.
template <SmoothFunction S>
SchemeResult run_scheme(SchemeKind kind, const CompositeProblem<S>& p, AccelState start, std::int64_t iterations,
                        const SchemeOptions& opts = {}) {
  if (iterations < 1) throw std::domain_error("run_scheme: iteration budget must be >= 1");
  detail::require_same_size(start.x.size(), p.dimension(), "run_scheme start");
  AccelWorkspace ws;
  AccelState& s = start;
  std::int64_t last_recorded = -1;
  for (std::int64_t i = 0; i < iterations; ++i) {
    scheme_step(kind, p, s, ws);
    const std::int64_t evals = opts.prox_evals_offset + s.prox_evals;
    if (opts.recorder != nullptr && opts.record_every > 0 && s.prox_evals % opts.record_every == 0) {
      detail::record_point(p, *opts.recorder, evals, s.x, ws);
      last_recorded = evals;
    }
    if (opts.on_step && !opts.on_step(s)) break;
  }
  const std::int64_t evals = opts.prox_evals_offset + s.prox_evals;
  if (opts.recorder != nullptr && last_recorded != evals) detail::record_point(p, *opts.recorder, evals, s.x, ws);

  SchemeResult out;
  out.x = std::move(s.x);
  out.prox_evals = s.prox_evals;
  out.iterations = s.prox_evals;
  if (opts.recorder != nullptr) out.trace = opts.recorder->trace();
  return out;
}

/// Accelerated scheme with θ₀ = 1, z₀ = x₀ and exactly K steps.
template <SmoothFunction S>
SchemeResult fista(const CompositeProblem<S>& p, const Vector& x0, std::int64_t K, const SchemeOptions& opts = {}) {
  return run_scheme(SchemeKind::FISTA, p, accel_start(x0), K, opts);
}

template <SmoothFunction S>
SchemeResult apg(const CompositeProblem<S>& p, const Vector& x0, std::int64_t K, const SchemeOptions& opts = {}) {
  return run_scheme(SchemeKind::APG, p, accel_start(x0), K, opts);
}

/// K applications of T; the non-accelerated baseline.
template <SmoothFunction S>
SchemeResult prox_grad(const CompositeProblem<S>& p, const Vector& x0, std::int64_t K, const SchemeOptions& opts = {}) {
  return run_scheme(SchemeKind::ProxGrad, p, accel_start(x0), K, opts);
}

}  // namespace adares
