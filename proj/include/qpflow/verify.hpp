#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qpflow/dynamics.hpp"
#include "qpflow/integrals.hpp"

namespace qpflow {

/// Deterministic uniform sampling on top of the (standard-pinned) mt19937_64
/// engine; avoids std::uniform_real_distribution, whose output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return double(eng_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 eng_;
};

/// Uniform state in the box [-2, 2]^{2n}.
CartesianState sample_box(Rng& rng, int n);

/// Rejection predicates for nondegenerate sampling (documented in the CLI
/// reference): |q| >= 0.1, p^2 >= 0.01, |L| >= 0.01 (total for n > 2),
/// |q.p| >= 0.01.
bool nondegenerate(const CartesianState& s);

/// Rejection-samples the box until `nondegenerate` holds.
CartesianState sample_nondegenerate(Rng& rng, int n);

/// Central-difference Poisson bracket, steps scaled per coordinate:
/// h_i = h max(1, |x_i|). Propagates evaluator domain errors.
double fd_bracket(const Observable& f, const Observable& g, const CartesianState& s,
                  double h = 1e-5);

/// Analytic bracket: dual-number gradients of both observables contracted
/// with the symplectic pairing.
double ad_bracket(const Observable& f, const Observable& g, const CartesianState& s);

/// Left-hand side of the two-path identity (literal form; divides by p^2):
/// (p_a^2/p^2) H - (p_a^2/p^2) A(-L^2) - (p_1 p_2 L / p^2) B(-L^2) for axis 2,
/// indices swapped (L -> -L) for axis 1. DomainError when p^2 <= 1e-4.
double identity8_lhs(const CartesianState& s, const FSpec& f, int axis = 2);

/// |LHS - eval_k|, the two-path residual.
double identity8_residual(const CartesianState& s, const FSpec& f, int axis = 2);

/// Numerical rank of the m x 2n Jacobian whose rows are the observables'
/// gradients; singular values below tol * sigma_max do not count.
int independence_rank(const CartesianState& s, const std::vector<Observable>& integrals,
                      double tol = 1e-8);

/// Worst-case bracket residual report over sampled states.
struct BracketReport {
  std::string integral;
  int samples = 0;
  int excluded = 0;  // states skipped due to evaluator domain errors
  double max_abs_residual = 0.0;
  CartesianState worst_state;
};

/// Runs |{obs, H}| over `samples` nondegenerate states.
BracketReport bracket_suite(const Observable& obs, const Observable& h_obs, Rng& rng,
                            int n_dim, int samples, double fd_step = 1e-5);

}  // namespace qpflow
