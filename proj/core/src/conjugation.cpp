#include "symcontract/conjugation.hpp"

#include <cmath>
#include <optional>

#include <unsupported/Eigen/KroneckerProduct>

#include "symcontract/detail/span_search.hpp"
#include "symcontract/errors.hpp"
#include "symcontract/numlin.hpp"

namespace symcontract {

namespace {

CMatrix unvec(const CVector& x, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(x.data(), rows, cols);
}

CVector vec(const CMatrix& M) {
  return Eigen::Map<const CVector>(M.data(), M.size());
}

// Closed-form witness candidate when T is diagonalizable with simple
// spectrum: every solution of T X = X T^T is X = P diag(e) P^T, and
// X^* X = I reduces to conj(e_i) H_ij e_j = (H^{-T})_ij for H = P^* P.
// The diagonal fixes |e_i|; one spanning set of off-diagonal entries
// fixes the relative phases.
std::optional<CMatrix> spectral_candidate(const CMatrix& T) {
  const Eigen::Index n = T.rows();
  Eigen::ComplexEigenSolver<CMatrix> es(T);
  if (es.info() != Eigen::Success) return std::nullopt;
  const CVector d = es.eigenvalues();
  const double scale = std::max(1.0, T.norm());
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(d(i) - d(j)) < 1e-8 * scale) return std::nullopt;

  const CMatrix P = es.eigenvectors();
  const CMatrix H = P.adjoint() * P;
  const CMatrix G = H.inverse().transpose();
  std::vector<double> r(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double hi = H(i, i).real(), gi = G(i, i).real();
    if (hi <= 0.0 || gi <= 0.0) return std::nullopt;
    r[static_cast<size_t>(i)] = std::sqrt(gi / hi);
  }

  std::vector<double> phase(static_cast<size_t>(n), 0.0);
  std::vector<bool> set(static_cast<size_t>(n), false);
  set[0] = true;
  for (Eigen::Index done = 1; done < n; ++done) {
    Eigen::Index bi = -1, bj = -1;
    double bw = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!set[static_cast<size_t>(i)]) continue;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (set[static_cast<size_t>(j)]) continue;
        const double w = std::abs(H(i, j));
        if (w > bw) {
          bw = w;
          bi = i;
          bj = j;
        }
      }
    }
    if (bj < 0) break;
    if (bw > 1e-10)
      phase[static_cast<size_t>(bj)] =
          phase[static_cast<size_t>(bi)] + std::arg(G(bi, bj) / H(bi, bj));
    set[static_cast<size_t>(bj)] = true;
  }

  CVector e(n);
  for (Eigen::Index i = 0; i < n; ++i)
    e(i) = std::polar(r[static_cast<size_t>(i)], phase[static_cast<size_t>(i)]);
  return CMatrix(P * e.asDiagonal() * P.transpose());
}

}  // namespace

CVector apply(const AntilinearMap& J, const CVector& x) {
  if (x.size() != J.U.cols())
    throw InvalidInput("apply: dimension mismatch");
  return J.U * x.conjugate();
}

CVector apply(const Conjugation& C, const CVector& x) {
  if (x.size() != C.U.cols())
    throw InvalidInput("apply: dimension mismatch");
  return C.U * x.conjugate();
}

bool is_conjugation(const AntilinearMap& C, double tol) {
  const CMatrix& U = C.U;
  if (U.rows() != U.cols()) return false;
  const Eigen::Index n = U.rows();
  const double unit = (U.adjoint() * U - CMatrix::Identity(n, n)).norm();
  const double symm = (U - U.transpose()).norm();
  return unit <= tol && symm <= tol;
}

std::vector<CVector> c_real_basis(const Conjugation& C) {
  const auto tk = numlin::takagi(C.U);
  std::vector<CVector> basis;
  basis.reserve(static_cast<size_t>(tk.W.cols()));
  for (Eigen::Index k = 0; k < tk.W.cols(); ++k) basis.push_back(tk.W.col(k));
  return basis;
}

CSymmetryCheck is_c_symmetric(const CMatrix& T, const Conjugation& C,
                              double tol) {
  if (T.rows() != T.cols() || T.rows() != C.U.rows())
    throw InvalidInput("is_c_symmetric: dimension mismatch");
  const double residual = (T * C.U - C.U * T.transpose()).norm();
  return CSymmetryCheck{residual <= tol * std::max(1.0, T.norm()), residual};
}

ConjugationSearch find_conjugation(const CMatrix& T, double tol,
                                   std::uint64_t seed) {
  if (T.rows() != T.cols()) throw InvalidInput("find_conjugation: not square");
  const Eigen::Index n = T.rows();
  ConjugationSearch out;
  if (n == 0) {
    out.verdict = Verdict::Symmetric;
    out.witness = Conjugation{CMatrix::Identity(0, 0)};
    return out;
  }

  // vec(T X - X T^T) = (I (x) T - T (x) I) vec(X)
  const CMatrix I = CMatrix::Identity(n, n);
  CMatrix sylvester =
      Eigen::kroneckerProduct(I, T) - Eigen::kroneckerProduct(T, I);

  const double null_threshold = 1e-7 * std::max(1.0, T.norm());
  auto null_basis = numlin::joint_nullspace({sylvester}, null_threshold);
  out.intertwiner_dim = static_cast<int>(null_basis.size());
  if (null_basis.empty()) {
    out.verdict = Verdict::NotSymmetric;
    return out;
  }

  // The nullspace is transpose-invariant, so its symmetric part is
  // spanned by the symmetrizations of a basis.
  std::vector<CVector> symmetrized;
  symmetrized.reserve(null_basis.size());
  for (const auto& v : null_basis) {
    const CMatrix X = unvec(v, n, n);
    symmetrized.push_back(vec(0.5 * (X + X.transpose())));
  }
  auto sym_basis = detail::orthonormalize(symmetrized);
  out.symmetric_dim = static_cast<int>(sym_basis.size());
  if (sym_basis.empty()) {
    out.verdict = Verdict::NotSymmetric;
    return out;
  }

  auto retract = [n](const CVector& x) {
    return vec(numlin::polar_unitary(unvec(x, n, n)));
  };
  auto residual_of = [n, &I](const CVector& x) {
    const CMatrix U = unvec(x, n, n);
    return (U.adjoint() * U - I).norm();
  };

  std::vector<CVector> warm;
  if (const auto cand = spectral_candidate(T)) warm.push_back(vec(*cand));

  const auto search = detail::find_structured_span_element(
      sym_basis, retract, residual_of, 1e-6, 200, 32, seed, warm);
  out.best_residual = search.residual;
  if (!search.found) return out;

  CMatrix U = numlin::polar_unitary(unvec(search.element, n, n));
  U = numlin::polar_unitary(0.5 * (U + U.transpose().eval()));
  const Conjugation C{U};
  const auto check = is_c_symmetric(T, C, tol);
  const double unit = (U.adjoint() * U - I).norm();
  const double symm = (U - U.transpose()).norm();
  if (check.symmetric && unit <= 1e-8 && symm <= 1e-8) {
    out.verdict = Verdict::Symmetric;
    out.witness = C;
    out.best_residual = check.residual;
  }
  return out;
}

CMatrix matrix_in_c_real_basis(const CMatrix& T, const Conjugation& C,
                               double tol) {
  const auto check = is_c_symmetric(T, C, tol);
  if (!check.symmetric)
    throw NotCSymmetric("matrix_in_c_real_basis: T is not C-symmetric");
  const auto tk = numlin::takagi(C.U);
  return tk.W.adjoint() * T * tk.W;
}

}  // namespace symcontract
