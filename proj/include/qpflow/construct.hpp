#pragma once

#include "qpflow/rational.hpp"
#include "qpflow/trigpoly.hpp"

namespace qpflow {

/// Polynomial integral for the even monomial F = gamma s^{2k}, k >= 1:
/// C~ = G C_1 with G = H - (-1)^k gamma p_phi^{2k}. The gamma part of G is
/// divisible by |z|^2 (the z^{2k}, zbar^{2k} terms cancel); division is
/// performed exactly and failure is an implementation bug. Result has u0 = 0
/// and momentum degree 2k.
TrigPoly construct_even(int k, const BigRational& gamma);

/// Polynomial integral for the odd monomial F = gamma s^{2k+1}, k >= 0, via
/// the choice G sin(chi) = E, G cos(chi) = (-1)^k gamma p_phi^{2k+1}:
/// A + iB = i zbar (G cos(chi) + i G sin(chi)) / z, C~ = A cos2phi - B sin2phi.
/// Result has u0 = 0 and momentum degree max(2, 2k+1).
TrigPoly construct_odd(int k, const BigRational& gamma);

/// Integral of the Zernike system F = gamma1 s + gamma2 s^2 via the choice
/// G cos(chi) = gamma1 p_phi, G sin(chi) = E + gamma2 p_phi^2. Momentum
/// degree 2. Throws DegenerateChoice when gamma1 = gamma2 = 0.
TrigPoly construct_zernike(const BigRational& gamma1, const BigRational& gamma2);

/// Dispatch on monomial degree N >= 1 (even -> construct_even(N/2),
/// odd -> construct_odd((N-1)/2)).
TrigPoly construct_for_monomial(int N, const BigRational& gamma);

}  // namespace qpflow
