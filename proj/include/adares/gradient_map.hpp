#pragma once

#include "adares/problem.hpp"

namespace adares {

/// Scratch vectors for one proximal-gradient evaluation.
struct ProxGradWorkspace {
  Vector grad;
  Vector shifted;
};

/// out = T(x) = argmin_y ⟨∇f(x), y − x⟩ + ½‖y − x‖²_L + ψ(y)
///            = prox_{L,ψ}(x − ∇f(x)/L).
template <SmoothFunction S>
void t_map(const CompositeProblem<S>& p, const Vector& x, Vector& out, ProxGradWorkspace& ws) {
  detail::require_same_size(x.size(), p.dimension(), "t_map");
  ws.grad.resize(x.size());
  p.smooth().gradient(x, ws.grad);
  ws.shifted = x - (ws.grad.array() / p.weights().array()).matrix();
  p.regularizer().prox(p.weights(), 1.0, ws.shifted, out);
}

template <SmoothFunction S>
Vector t_map(const CompositeProblem<S>& p, const Vector& x) {
  ProxGradWorkspace ws;
  Vector out(x.size());
  t_map(p, x, out, ws);
  return out;
}

}  // namespace adares
