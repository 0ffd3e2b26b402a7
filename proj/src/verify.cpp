#include "qpflow/verify.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace qpflow {

CartesianState sample_box(Rng& rng, int n) {
  CartesianState s;
  s.q.resize(n);
  s.p.resize(n);
  for (int i = 0; i < n; ++i) s.q[i] = rng.uniform(-2.0, 2.0);
  for (int i = 0; i < n; ++i) s.p[i] = rng.uniform(-2.0, 2.0);
  return s;
}

bool nondegenerate(const CartesianState& s) {
  const double q2 = s.q.squaredNorm(), p2 = s.p.squaredNorm();
  if (q2 < 0.01 || p2 < 0.01) return false;
  if (std::abs(s.q.dot(s.p)) < 0.01) return false;
  const double L2 = angular_momentum(s).second;
  return L2 >= 1e-4;
}

CartesianState sample_nondegenerate(Rng& rng, int n) {
  while (true) {
    CartesianState s = sample_box(rng, n);
    if (nondegenerate(s)) return s;
  }
}

double fd_bracket(const Observable& f, const Observable& g, const CartesianState& s,
                  double h) {
  if (!(h > 0.0)) throw DomainError("fd_bracket: step must be positive");
  const Eigen::Index n = s.dim();
  VecX<double> fq(n), fp(n), gq(n), gp(n);
  CartesianState w = s;
  auto central = [&](double& coord, const Observable& obs) {
    const double x0 = coord;
    const double step = h * std::max(1.0, std::abs(x0));
    coord = x0 + step;
    const double plus = obs.value(w);
    coord = x0 - step;
    const double minus = obs.value(w);
    coord = x0;
    return (plus - minus) / (2.0 * step);
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    fq[i] = central(w.q[i], f);
    fp[i] = central(w.p[i], f);
    gq[i] = central(w.q[i], g);
    gp[i] = central(w.p[i], g);
  }
  return fq.dot(gp) - fp.dot(gq);
}

double ad_bracket(const Observable& f, const Observable& g, const CartesianState& s) {
  const Eigen::Index n = s.dim();
  const VecX<double> gf = f.gradient(s), gg = g.gradient(s);
  return gf.head(n).dot(gg.tail(n)) - gf.tail(n).dot(gg.head(n));
}

double identity8_lhs(const CartesianState& s, const FSpec& f, int axis) {
  if (s.dim() != 2) throw DomainError("identity8_lhs requires n = 2");
  if (axis != 1 && axis != 2) throw DomainError("identity8_lhs axis must be 1 or 2");
  const double p2 = s.p.squaredNorm();
  if (!(p2 > 1e-4)) throw DomainError("identity8_lhs requires p^2 > 1e-4");
  const double L = s.q[0] * s.p[1] - s.q[1] * s.p[0];
  double A, B;
  eval_AB_real(f, -L * L, A, B);
  const double H = hamiltonian(s, f);
  const double pa = axis == 2 ? s.p[1] : s.p[0];
  const double Lsigned = axis == 2 ? L : -L;
  return (pa * pa / p2) * H - (pa * pa / p2) * A - (s.p[0] * s.p[1] * Lsigned / p2) * B;
}

double identity8_residual(const CartesianState& s, const FSpec& f, int axis) {
  return std::abs(identity8_lhs(s, f, axis) - eval_k(s, f, axis));
}

int independence_rank(const CartesianState& s, const std::vector<Observable>& integrals,
                      double tol) {
  const Eigen::Index m = Eigen::Index(integrals.size()), n2 = 2 * s.dim();
  Eigen::MatrixXd J(m, n2);
  for (Eigen::Index r = 0; r < m; ++r) J.row(r) = integrals[size_t(r)].gradient(s).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol * sv[0]) ++rank;
  return rank;
}

BracketReport bracket_suite(const Observable& obs, const Observable& h_obs, Rng& rng,
                            int n_dim, int samples, double fd_step) {
  BracketReport report;
  report.integral = obs.name;
  report.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const CartesianState s = sample_nondegenerate(rng, n_dim);
    double res;
    try {
      res = std::abs(fd_bracket(obs, h_obs, s, fd_step));
    } catch (const Error&) {
      ++report.excluded;
      continue;
    }
    if (res > report.max_abs_residual) {
      report.max_abs_residual = res;
      report.worst_state = s;
    }
  }
  return report;
}

}  // namespace qpflow
