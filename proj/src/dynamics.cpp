#include "qpflow/dynamics.hpp"

#include <cmath>

#include <Eigen/Dense>

namespace qpflow {

namespace {

VecX<double> flatten(const CartesianState& s) {
  const Eigen::Index n = s.dim();
  VecX<double> y(2 * n);
  y.head(n) = s.q;
  y.tail(n) = s.p;
  return y;
}

CartesianState unflatten(const VecX<double>& y) {
  const Eigen::Index n = y.size() / 2;
  CartesianState s;
  s.q = y.head(n);
  s.p = y.tail(n);
  return s;
}

VecX<double> rhs_flat(const VecX<double>& y, const FSpec& f) {
  return eom_rhs(unflatten(y), f);
}

// Jacobian of the flattened right-hand side at y, column by column via duals.
Eigen::MatrixXd rhs_jacobian(const VecX<double>& y, const FSpec& f) {
  const Eigen::Index m = y.size(), n = m / 2;
  CartesianStateT<Dual<double>> s;
  s.q.resize(n);
  s.p.resize(n);
  Eigen::MatrixXd J(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      s.q[i] = Dual<double>(y[i], i == j ? 1.0 : 0.0);
      s.p[i] = Dual<double>(y[n + i], n + i == j ? 1.0 : 0.0);
    }
    const VecX<Dual<double>> col = eom_rhs(s, f);
    for (Eigen::Index i = 0; i < m; ++i) J(i, j) = col[i].d;
  }
  return J;
}

// Componentwise scaled max-norm of the stage residual.
double residual_norm(const VecX<double>& res, const VecX<double>& y0, const VecX<double>& y1) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < res.size(); ++i) {
    const double scale = std::max({1.0, std::abs(y0[i]), std::abs(y1[i])});
    out = std::max(out, std::abs(res[i]) / scale);
  }
  return out;
}

}  // namespace

CartesianState step_midpoint(const CartesianState& s, const FSpec& f, double h,
                             double newton_tol, int newton_max_iter, double t) {
  const VecX<double> y0 = flatten(s);
  VecX<double> y1 = y0 + h * rhs_flat(y0, f);  // explicit Euler predictor

  auto residual = [&](const VecX<double>& y) -> VecX<double> {
    return y - y0 - h * rhs_flat(0.5 * (y0 + y), f);
  };

  VecX<double> res = residual(y1);
  double rnorm = residual_norm(res, y0, y1);
  for (int it = 0; it < newton_max_iter; ++it) {
    if (rnorm <= newton_tol) return unflatten(y1);
    const VecX<double> mid = 0.5 * (y0 + y1);
    Eigen::MatrixXd J = -0.5 * h * rhs_jacobian(mid, f);
    J.diagonal().array() += 1.0;
    const VecX<double> delta = J.partialPivLu().solve(-res);

    // Damping: halve the step up to 8 times while the residual grows; after
    // that take the most-damped candidate and let the iteration cap decide.
    double lambda = 1.0;
    VecX<double> y_next = y1 + delta;
    VecX<double> res_next = residual(y_next);
    double rnorm_next = residual_norm(res_next, y0, y_next);
    for (int half = 0; half < 8 && !(rnorm_next < rnorm); ++half) {
      lambda *= 0.5;
      y_next = y1 + lambda * delta;
      res_next = residual(y_next);
      rnorm_next = residual_norm(res_next, y0, y_next);
    }
    if (!std::isfinite(rnorm_next)) throw NewtonDivergence(t, "non-finite residual");
    y1 = y_next;
    res = res_next;
    rnorm = rnorm_next;
  }
  if (rnorm <= newton_tol) return unflatten(y1);
  throw NewtonDivergence(t, "iteration cap hit with residual " + std::to_string(rnorm));
}

CartesianState step_rk4(const CartesianState& s, const FSpec& f, double h) {
  const VecX<double> y = flatten(s);
  const VecX<double> k1 = rhs_flat(y, f);
  const VecX<double> k2 = rhs_flat(y + 0.5 * h * k1, f);
  const VecX<double> k3 = rhs_flat(y + 0.5 * h * k2, f);
  const VecX<double> k4 = rhs_flat(y + h * k3, f);
  return unflatten(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

Trajectory integrate(const CartesianState& s0, const FSpec& f, const IntegratorConfig& cfg,
                     const std::vector<Observable>& observables) {
  if (!(cfg.h > 0.0)) throw DomainError("integrate: h must be positive");
  if (!(cfg.t_end > cfg.h)) throw DomainError("integrate: t_end must exceed h");
  if (!(cfg.newton_tol > 0.0)) throw DomainError("integrate: newton_tol must be positive");
  if (cfg.record_every < 1) throw DomainError("integrate: record_every must be >= 1");
  if (s0.dim() < 2 || s0.q.size() != s0.p.size())
    throw DomainError("integrate: state must have q,p of equal length n >= 2");

  const long long nsteps = std::llround(cfg.t_end / cfg.h);
  bool any_polar = false;
  for (const auto& o : observables) {
    if (o.prepare) o.prepare(s0);
    any_polar = any_polar || o.needs_polar;
  }

  Trajectory traj;
  traj.observable_names.reserve(observables.size());
  for (const auto& o : observables) traj.observable_names.push_back(o.name);
  traj.observables.resize(observables.size());

  auto record = [&](double t, const CartesianState& s) {
    traj.t.push_back(t);
    traj.states.push_back(s);
    for (size_t k = 0; k < observables.size(); ++k)
      traj.observables[k].push_back(observables[k].value(s));
  };

  CartesianState s = s0;
  record(0.0, s);
  for (long long i = 1; i <= nsteps; ++i) {
    const double t = double(i) * cfg.h;
    s = cfg.method == Method::ImplicitMidpoint
            ? step_midpoint(s, f, cfg.h, cfg.newton_tol, cfg.newton_max_iter, t)
            : step_rk4(s, f, cfg.h);
    if (any_polar && s.q.squaredNorm() <= kOriginEps * kOriginEps) throw OriginCrossing(t);
    if (i % cfg.record_every == 0 || i == nsteps) record(t, s);
  }

  traj.drift.resize(observables.size());
  for (size_t k = 0; k < observables.size(); ++k) {
    const double v0 = traj.observables[k].front();
    double worst = 0.0;
    for (double v : traj.observables[k]) worst = std::max(worst, std::abs(v - v0));
    traj.drift[k] = worst / std::max(1.0, std::abs(v0));
  }
  return traj;
}

}  // namespace qpflow
