#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "symcontract/blaschke.hpp"
#include "symcontract/conjugation.hpp"
#include "symcontract/types.hpp"

namespace symcontract {

/// 2x2 inner function data: Theta = [[a, -b], [C(b), C(a)]] with
/// a, b in K_{z phi} and |a|^2 + |b|^2 = 1 on the circle, where C is the
/// conjugation f -> conj(f) phi.
struct InnerPair {
  FiniteBlaschke phi;
  ModelSpace space;   // K_{z phi}
  CVector a;          // TM coefficients
  CVector b;
  Conjugation conj;   // model conjugation on K_{z phi}
};

InnerPair make_inner_pair(const FiniteBlaschke& phi, const CVector& a,
                          const CVector& b);

using MatrixEval = std::function<CMatrix(Complex)>;

MatrixEval build_theta(const InnerPair& pair);

struct InnerVerification {
  bool ok = false;
  double modulus_residual = 0.0;    // max | |a|^2 + |b|^2 - 1 |
  double unitarity_residual = 0.0;  // max ||Theta* Theta - I|| on the circle
  double det_residual = 0.0;        // max |det Theta - phi|
};

InnerVerification verify_inner(const InnerPair& pair);

/// Nontrivial (gamma, theta) with C(gamma a + theta b) = gamma a + theta b,
/// normalized to |gamma|^2 + |theta|^2 = 1; absent when the 4-real-unknown
/// system has only the trivial solution.
std::optional<std::pair<Complex, Complex>> symmetrizable_test(
    const InnerPair& pair);

struct Symmetrizer {
  Complex gamma;
  Complex theta;
  CMatrix U1;  // diag(-i, i)
  CMatrix U2;  // [[conj(theta), -gamma], [conj(gamma), theta]]
};

Symmetrizer make_symmetrizer(const InnerPair& pair, Complex gamma,
                             Complex theta);

/// z -> U1 Theta(z) U2, symmetric for every z.
MatrixEval symmetrized_theta(const InnerPair& pair, const Symmetrizer& s);

/// Symmetric inner function from a C-fixed b: [[0, ib], [ib, 0]] when b
/// is inner (then b^2 = phi up to a constant), otherwise
/// [[a, ib], [ib, C(a)]] with a built by spectral factorization of
/// 1 - |b|^2.  Returned as an InnerPair whose Theta is already symmetric.
InnerPair build_symmetric_inner(const ModelFunction& b,
                                const FiniteBlaschke& phi);

}  // namespace symcontract
