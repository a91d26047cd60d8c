#include "symcontract/numlin.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "symcontract/errors.hpp"

namespace symcontract::numlin {

namespace {

constexpr int kJacobiLimit = 64;

void run_svd(const CMatrix& A, CMatrix& U, RVector& S, CMatrix& V) {
  if (std::min(A.rows(), A.cols()) <= kJacobiLimit) {
    Eigen::JacobiSVD<CMatrix> dec(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U = dec.matrixU();
    S = dec.singularValues();
    V = dec.matrixV();
  } else {
    Eigen::BDCSVD<CMatrix> dec(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    U = dec.matrixU();
    S = dec.singularValues();
    V = dec.matrixV();
  }
}

}  // namespace

bool is_finite(const CMatrix& A) {
  return A.allFinite();
}

SvdResult svd(const CMatrix& A) {
  if (!is_finite(A)) throw InvalidInput("svd: non-finite input");
  SvdResult r;
  run_svd(A, r.U, r.S, r.V);
  return r;
}

double op_norm(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  if (std::min(A.rows(), A.cols()) <= kJacobiLimit) {
    return Eigen::JacobiSVD<CMatrix>(A).singularValues()(0);
  }
  return Eigen::BDCSVD<CMatrix>(A).singularValues()(0);
}

CMatrix polar_unitary(const CMatrix& A) {
  CMatrix U, V;
  RVector S;
  run_svd(A, U, S, V);
  return U * V.adjoint();
}

TakagiResult takagi(const CMatrix& A) {
  if (!is_finite(A)) throw InvalidInput("takagi: non-finite input");
  if (A.rows() != A.cols()) throw NotSymmetric("takagi: matrix not square");
  const double scale = std::max(1.0, A.norm());
  if ((A - A.transpose()).norm() > 1e-10 * scale)
    throw NotSymmetric("takagi: matrix not complex symmetric");

  const Eigen::Index n = A.rows();
  const CMatrix As = 0.5 * (A + A.transpose());

  CMatrix U, V;
  RVector S;
  run_svd(As, U, S, V);

  const double smax = n > 0 ? S(0) : 0.0;
  const double group_tol = 1e-7 * std::max(1.0, smax);
  const double rank_tol = 1e-13 * std::max(1.0, smax);

  const CMatrix Q = U.adjoint() * V.conjugate();

  CMatrix Sroot = CMatrix::Identity(n, n);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && S(j - 1) - S(j) <= group_tol) ++j;
    if (S(i) > rank_tol) {
      const Eigen::Index k = j - i;
      CMatrix Qb = Q.block(i, i, k, k);
      Qb = 0.5 * (Qb + Qb.transpose().eval());
      Eigen::ComplexEigenSolver<CMatrix> es(Qb);
      CVector sq(k);
      for (Eigen::Index m = 0; m < k; ++m) {
        const Complex ev = es.eigenvalues()(m);
        sq(m) = std::polar(1.0, std::arg(ev) / 2.0);
      }
      Sroot.block(i, i, k, k) =
          es.eigenvectors() * sq.asDiagonal() * es.eigenvectors().inverse();
    }
    i = j;
  }

  CMatrix W = polar_unitary(U * Sroot);

  // Remaining diagonal phase: W^H A conj(W) should be diag(S).
  const CMatrix M = W.adjoint() * As * W.conjugate();
  for (Eigen::Index m = 0; m < n; ++m) {
    if (std::abs(M(m, m)) > rank_tol) {
      W.col(m) *= std::polar(1.0, std::arg(M(m, m)) / 2.0);
    }
  }

  return TakagiResult{std::move(W), std::move(S)};
}

CMatrix psd_sqrt(const CMatrix& A) {
  if (!is_finite(A)) throw InvalidInput("psd_sqrt: non-finite input");
  if (A.rows() != A.cols()) throw InvalidInput("psd_sqrt: matrix not square");
  const CMatrix H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(H);
  const double scale = std::max(1.0, op_norm(H));
  RVector lam = es.eigenvalues();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    if (lam(k) < -1e-8 * scale)
      throw NotPSD("psd_sqrt: eigenvalue below -1e-8");
    lam(k) = std::sqrt(std::max(0.0, lam(k)));
  }
  CMatrix B = es.eigenvectors() * lam.asDiagonal() *
              es.eigenvectors().adjoint();
  return 0.5 * (B + B.adjoint());
}

std::vector<CVector> joint_nullspace(const std::vector<CMatrix>& maps,
                                     double threshold) {
  if (maps.empty()) throw InvalidInput("joint_nullspace: empty map list");
  const Eigen::Index n = maps.front().cols();
  Eigen::Index rows = 0;
  for (const auto& m : maps) {
    if (m.cols() != n)
      throw InvalidInput("joint_nullspace: column count mismatch");
    rows += m.rows();
  }
  CMatrix stacked(rows, n);
  Eigen::Index at = 0;
  for (const auto& m : maps) {
    stacked.middleRows(at, m.rows()) = m;
    at += m.rows();
  }

  CMatrix U, V;
  RVector S;
  run_svd(stacked, U, S, V);

  std::vector<CVector> basis;
  for (Eigen::Index k = 0; k < n; ++k) {
    const bool in_null = k >= S.size() || S(k) <= threshold;
    if (in_null) basis.push_back(V.col(k));
  }
  return basis;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
  Eigen::Index deg = static_cast<Eigen::Index>(coeffs.size()) - 1;
  while (deg >= 0 && coeffs[static_cast<size_t>(deg)] == Complex(0.0, 0.0))
    --deg;
  if (deg < 0) throw InvalidInput("poly_roots: zero polynomial");
  if (deg == 0) return {};

  const Complex lead = coeffs[static_cast<size_t>(deg)];
  CMatrix comp = CMatrix::Zero(deg, deg);
  for (Eigen::Index k = 0; k < deg; ++k) {
    comp(k, deg - 1) = -coeffs[static_cast<size_t>(k)] / lead;
    if (k + 1 < deg) comp(k + 1, k) = 1.0;
  }
  Eigen::ComplexEigenSolver<CMatrix> es(comp, /*computeEigenvectors=*/false);

  auto eval = [&](Complex z, Complex& p, Complex& dp) {
    p = coeffs[static_cast<size_t>(deg)];
    dp = 0.0;
    for (Eigen::Index k = deg - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + coeffs[static_cast<size_t>(k)];
    }
  };

  std::vector<Complex> roots;
  roots.reserve(static_cast<size_t>(deg));
  for (Eigen::Index k = 0; k < deg; ++k) {
    Complex z = es.eigenvalues()(k);
    for (int it = 0; it < 3; ++it) {
      Complex p, dp;
      eval(z, p, dp);
      if (std::abs(dp) < 1e-300) break;
      const Complex step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) break;
      // Near a multiple root p is pure cancellation noise and p/dp can be
      // O(1); only keep steps that actually reduce the residual.
      Complex p_next, dp_next;
      eval(z - step, p_next, dp_next);
      if (std::abs(p_next) >= std::abs(p)) break;
      z -= step;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace symcontract::numlin
