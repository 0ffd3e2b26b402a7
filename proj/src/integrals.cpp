#include "qpflow/integrals.hpp"

#include <cmath>

namespace qpflow {

PlaneBasis plane_basis(const CartesianState& s) {
  const double q2 = s.q.squaredNorm();
  if (!(q2 > kOriginEps * kOriginEps)) throw OriginSingularity("plane_basis: |q| <= 1e-9");
  const auto [L, L2] = angular_momentum(s);
  if (!(L2 > kDegenerateZ2)) throw CollinearState("plane_basis: L^2 <= 1e-18");
  VecX<double> e1 = s.q / std::sqrt(q2);
  VecX<double> u = s.p - s.p.dot(e1) * e1;
  VecX<double> e2 = u / u.norm();
  return {std::move(e1), std::move(e2)};
}

std::string IntegralSpec::name() const {
  switch (kind) {
    case Kind::Energy: return "E";
    case Kind::AngularMomentum:
      return (i == 1 && j == 2) ? "L" : "L" + std::to_string(i) + std::to_string(j);
    case Kind::AngularMomentumTotal: return "L2";
    case Kind::Cn: return "C" + std::to_string(n);
    case Kind::KAnalytic: return "K" + std::to_string(axis);
    case Kind::CTildeEven: return "Ct_even_k" + std::to_string(k);
    case Kind::CTildeOdd: return "Ct_odd_k" + std::to_string(k);
    case Kind::Zernike: return "C_zernike";
    case Kind::C3Explicit: return "C3";
    case Kind::PlaneC1: return "C1_plane";
  }
  return "?";
}

namespace {

/// Gradient (d/dq, d/dp) of a scalar-generic functor via dual seeding.
template <class Fn>
VecX<double> dual_gradient(const Fn& fn, const CartesianState& s) {
  const Eigen::Index n = s.dim();
  VecX<double> g(2 * n);
  CartesianStateT<Dual<double>> ds;
  ds.q.resize(n);
  ds.p.resize(n);
  for (Eigen::Index j = 0; j < 2 * n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      ds.q[i] = Dual<double>(s.q[i], i == j ? 1.0 : 0.0);
      ds.p[i] = Dual<double>(s.p[i], n + i == j ? 1.0 : 0.0);
    }
    g[j] = fn(ds).d;
  }
  return g;
}

template <class Fn>
Observable obs_from(std::string name, bool needs_polar, Fn fn) {
  Observable o;
  o.name = std::move(name);
  o.needs_polar = needs_polar;
  o.value = [fn](const CartesianState& s) { return fn(s); };
  o.gradient = [fn](const CartesianState& s) { return dual_gradient(fn, s); };
  return o;
}

bool f_is_monomial(const FSpec& f, int N, const BigRational& gamma) {
  if (!f.is_poly()) return false;
  const auto& g = f.gammas();
  if (gamma.is_zero()) return g.empty();
  if (int(g.size()) != N) return false;
  for (int i = 0; i + 1 < N; ++i)
    if (!g[size_t(i)].is_zero()) return false;
  return g[size_t(N - 1)] == gamma;
}

bool f_is_zernike(const FSpec& f, const BigRational& g1, const BigRational& g2) {
  if (!f.is_poly() || f.gammas().size() > 2) return false;
  const auto& g = f.gammas();
  const BigRational a = g.empty() ? BigRational(0) : g[0];
  const BigRational b = g.size() < 2 ? BigRational(0) : g[1];
  return a == g1 && b == g2;
}

void check_spec_matches_f(const IntegralSpec& spec, const FSpec& f) {
  using Kind = IntegralSpec::Kind;
  switch (spec.kind) {
    case Kind::CTildeEven:
      if (!f_is_monomial(f, 2 * spec.k, spec.gamma))
        throw SpecMismatch("F does not match the even monomial gamma s^" +
                           std::to_string(2 * spec.k));
      return;
    case Kind::CTildeOdd:
      if (!f_is_monomial(f, 2 * spec.k + 1, spec.gamma))
        throw SpecMismatch("F does not match the odd monomial gamma s^" +
                           std::to_string(2 * spec.k + 1));
      return;
    case Kind::C3Explicit:
      if (!f_is_monomial(f, 3, spec.gamma))
        throw SpecMismatch("F does not match gamma s^3");
      return;
    case Kind::Zernike:
      if (spec.gamma1.is_zero() && spec.gamma2.is_zero())
        throw SpecMismatch("Zernike construction undefined at gamma1 = gamma2 = 0");
      if (!f_is_zernike(f, spec.gamma1, spec.gamma2))
        throw SpecMismatch("F does not match gamma1 s + gamma2 s^2");
      return;
    default:
      return;
  }
}

}  // namespace

Observable make_observable(const IntegralSpec& spec, const FSpec& f) {
  using Kind = IntegralSpec::Kind;
  check_spec_matches_f(spec, f);
  switch (spec.kind) {
    case Kind::Energy:
      return obs_from(spec.name(), false,
                      [f](const auto& s) { return hamiltonian(s, f); });
    case Kind::AngularMomentum: {
      const int i = spec.i - 1, j = spec.j - 1;
      if (i < 0 || j <= i) throw DomainError("angular momentum needs 1 <= i < j");
      return obs_from(spec.name(), false, [i, j](const auto& s) {
        if (j >= s.dim()) throw DomainError("angular momentum index exceeds dimension");
        return s.q[i] * s.p[j] - s.q[j] * s.p[i];
      });
    }
    case Kind::AngularMomentumTotal:
      return obs_from(spec.name(), false,
                      [](const auto& s) { return angular_momentum(s).second; });
    case Kind::Cn: {
      const int n = spec.n;
      if (n < 1) throw DomainError("C_n requires n >= 1");
      return obs_from(spec.name(), true,
                      [n](const auto& s) { return eval_cn(to_polar(s), n); });
    }
    case Kind::KAnalytic: {
      const int axis = spec.axis;
      return obs_from(spec.name(), false,
                      [f, axis](const auto& s) { return eval_k(s, f, axis); });
    }
    case Kind::CTildeEven: {
      const int k = spec.k;
      const double g = spec.gamma.to_double();
      return obs_from(spec.name(), true,
                      [k, g](const auto& s) { return ctilde_even_closed(to_polar(s), k, g); });
    }
    case Kind::CTildeOdd: {
      const int k = spec.k;
      const double g = spec.gamma.to_double();
      return obs_from(spec.name(), true,
                      [k, g](const auto& s) { return ctilde_odd_closed(to_polar(s), k, g); });
    }
    case Kind::Zernike: {
      const double g1 = spec.gamma1.to_double(), g2 = spec.gamma2.to_double();
      return obs_from(spec.name(), true,
                      [g1, g2](const auto& s) { return zernike_closed(to_polar(s), g1, g2); });
    }
    case Kind::C3Explicit: {
      const double g = spec.gamma.to_double();
      return obs_from(spec.name(), true,
                      [g](const auto& s) { return c3_explicit(to_polar(s), g); });
    }
    case Kind::PlaneC1: {
      auto cache = std::make_shared<std::optional<PlaneBasis>>();
      Observable o = obs_from(spec.name(), true, [cache](const auto& s) {
        return eval_plane_c1(s, *cache);
      });
      o.prepare = [cache](const CartesianState& s0) { *cache = plane_basis(s0); };
      return o;
    }
  }
  throw DomainError("unknown integral kind");
}

double eval_construction(const PolarState& s, const IntegralSpec& spec, const FSpec& f) {
  using Kind = IntegralSpec::Kind;
  check_spec_matches_f(spec, f);
  switch (spec.kind) {
    case Kind::CTildeEven: return ctilde_even_closed(s, spec.k, spec.gamma.to_double());
    case Kind::CTildeOdd: return ctilde_odd_closed(s, spec.k, spec.gamma.to_double());
    case Kind::Zernike:
      return zernike_closed(s, spec.gamma1.to_double(), spec.gamma2.to_double());
    case Kind::C3Explicit: return c3_explicit(s, spec.gamma.to_double());
    default:
      throw DomainError("eval_construction requires a construction kind");
  }
}

}  // namespace qpflow
