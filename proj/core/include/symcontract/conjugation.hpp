#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symcontract/types.hpp"

namespace symcontract {

/// Antilinear map x -> U conj(x) in fixed coordinates; U unitary.
struct AntilinearMap {
  CMatrix U;
};

/// Conjugation: antilinear, isometric, involutive.  Involutivity of
/// x -> U conj(x) for unitary U is exactly symmetry of U.
struct Conjugation {
  CMatrix U;  // unitary and symmetric
};

CVector apply(const AntilinearMap& J, const CVector& x);
CVector apply(const Conjugation& C, const CVector& x);

bool is_conjugation(const AntilinearMap& C, double tol = 1e-8);

/// Orthonormal basis fixed pointwise by C (columns of the Takagi factor
/// of C.U).
std::vector<CVector> c_real_basis(const Conjugation& C);

struct CSymmetryCheck {
  bool symmetric;
  double residual;  // ||T U - U T^T||
};

/// T = C T* C in coordinates reads T U = U T^T.
CSymmetryCheck is_c_symmetric(const CMatrix& T, const Conjugation& C,
                              double tol = 1e-8);

struct ConjugationSearch {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<Conjugation> witness;
  int intertwiner_dim = 0;     // dim { X : T X = X T^T }
  int symmetric_dim = 0;       // dim of its symmetric part
  double best_residual = 0.0;  // best unitarity defect achieved in the span
};

/// Search for a conjugation C with T = C T* C: a symmetric unitary U
/// with T U = U T^T.  The Sylvester nullspace is computed exactly; the
/// unitary element is located by multi-start alternating projections.
ConjugationSearch find_conjugation(const CMatrix& T, double tol = 1e-8,
                                   std::uint64_t seed = 0);

/// Matrix <T e_n, e_m> in a C-real basis; symmetric when T is C-symmetric.
CMatrix matrix_in_c_real_basis(const CMatrix& T, const Conjugation& C,
                               double tol = 1e-8);

}  // namespace symcontract
