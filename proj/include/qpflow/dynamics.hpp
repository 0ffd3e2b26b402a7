#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qpflow/fexpr.hpp"
#include "qpflow/phase.hpp"

namespace qpflow {

enum class Method { ImplicitMidpoint, Rk4 };

struct IntegratorConfig {
  Method method = Method::ImplicitMidpoint;
  double h = 1e-3;
  double t_end = 1.0;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  int record_every = 1;
};

/// Time-stamped samples plus per-sample values of each requested observable
/// and the resulting relative drifts max_t |v(t)-v(0)| / max(1, |v(0)|).
struct Trajectory {
  std::vector<double> t;
  std::vector<CartesianState> states;
  std::vector<std::string> observable_names;
  std::vector<std::vector<double>> observables;  // [observable][sample]
  std::vector<double> drift;                     // [observable]
};

/// A conserved-quantity evaluator bound to a name; `gradient` returns the
/// phase-space gradient (d/dq, d/dp) via dual numbers. `prepare`, when set,
/// is called once with the initial state (plane-C1 fixes its basis there).
struct Observable {
  std::string name;
  bool needs_polar = false;
  std::function<void(const CartesianState&)> prepare;
  std::function<double(const CartesianState&)> value;
  std::function<VecX<double>(const CartesianState&)> gradient;
};

/// H = p^2 + F(q.p); agrees with the polar form p_r^2 + p_phi^2/r^2 + F(r p_r).
template <class S>
S hamiltonian(const CartesianStateT<S>& s, const FSpec& f) {
  return s.p.squaredNorm() + f(S(s.q.dot(s.p)));
}

/// Hamilton's equations: qdot = 2p + F'(q.p) q, pdot = -F'(q.p) p,
/// flattened as [qdot; pdot].
template <class S>
VecX<S> eom_rhs(const CartesianStateT<S>& s, const FSpec& f) {
  const Eigen::Index n = s.dim();
  const S fp = f_prime(f, S(s.q.dot(s.p)));
  VecX<S> out(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] = 2.0 * s.p[i] + fp * s.q[i];
    out[n + i] = -fp * s.p[i];
  }
  return out;
}

/// One implicit-midpoint step solved by damped Newton with a dual-number
/// Jacobian. `t` only labels the NewtonDivergence error.
CartesianState step_midpoint(const CartesianState& s, const FSpec& f, double h,
                             double newton_tol, int newton_max_iter, double t = 0.0);

/// One classic RK4 step (non-symplectic reference).
CartesianState step_rk4(const CartesianState& s, const FSpec& f, double h);

/// Integrates s0 for t in [0, t_end], recording every `record_every` steps
/// (plus the final step) and evaluating the observables at each record.
/// Throws NewtonDivergence or OriginCrossing as documented.
Trajectory integrate(const CartesianState& s0, const FSpec& f, const IntegratorConfig& cfg,
                     const std::vector<Observable>& observables);

}  // namespace qpflow
