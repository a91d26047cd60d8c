#pragma once

#include <vector>

#include "symcontract/types.hpp"

namespace symcontract::numlin {

struct SvdResult {
  CMatrix U;   // unitary, m x m
  RVector S;   // nonincreasing, nonnegative
  CMatrix V;   // unitary, n x n
};

struct TakagiResult {
  CMatrix W;   // unitary, A = W diag(S) W^T
  RVector S;   // singular values of A, nonincreasing
};

SvdResult svd(const CMatrix& A);

/// Takagi factorization of a complex symmetric matrix.
/// Built on the SVD: the unitary Q = U^H conj(V) commutes with the
/// singular values and is symmetric on each equal-singular-value block,
/// so its principal square root glues U into the Takagi factor.
TakagiResult takagi(const CMatrix& A);

/// Hermitian PSD square root; eigenvalues slightly below zero are
/// clamped, genuinely negative ones raise NotPSD.
CMatrix psd_sqrt(const CMatrix& A);

/// Orthonormal basis of the common approximate nullspace of a family of
/// maps sharing a column count: right singular vectors of the vertical
/// stack with singular value <= threshold.
std::vector<CVector> joint_nullspace(const std::vector<CMatrix>& maps,
                                     double threshold);

/// Roots of sum_k coeffs[k] z^k via the companion matrix, Newton-polished.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

double op_norm(const CMatrix& A);

/// Unitary factor of the polar decomposition A = U P.
CMatrix polar_unitary(const CMatrix& A);

bool is_finite(const CMatrix& A);

}  // namespace symcontract::numlin
