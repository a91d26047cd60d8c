#include "symcontract/inner2x2.hpp"

#include <cmath>

#include "symcontract/errors.hpp"
#include "symcontract/numlin.hpp"

namespace symcontract {

namespace {

CVector conj_coeffs(const Conjugation& C, const CVector& c) {
  return C.U * c.conjugate();
}

Complex eval_coeffs(const ModelSpace& space, const CVector& c, Complex z) {
  return space.basis_at(z).cwiseProduct(c).sum();
}

}  // namespace

InnerPair make_inner_pair(const FiniteBlaschke& phi, const CVector& a,
                          const CVector& b) {
  InnerPair pair{phi, model_space_zphi(phi), a, b, model_conjugation(phi)};
  if (a.size() != pair.space.dim() || b.size() != pair.space.dim())
    throw InvalidInput("inner pair: coefficient length mismatch");
  return pair;
}

MatrixEval build_theta(const InnerPair& pair) {
  const CVector ca = conj_coeffs(pair.conj, pair.a);
  const CVector cb = conj_coeffs(pair.conj, pair.b);
  return [pair, ca, cb](Complex z) {
    CMatrix th(2, 2);
    th(0, 0) = eval_coeffs(pair.space, pair.a, z);
    th(0, 1) = -eval_coeffs(pair.space, pair.b, z);
    th(1, 0) = eval_coeffs(pair.space, cb, z);
    th(1, 1) = eval_coeffs(pair.space, ca, z);
    return th;
  };
}

InnerVerification verify_inner(const InnerPair& pair) {
  InnerVerification rep;
  const auto theta = build_theta(pair);
  const int M = 256;
  for (int m = 0; m < M; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / M);
    const double mod = std::norm(eval_coeffs(pair.space, pair.a, w)) +
                       std::norm(eval_coeffs(pair.space, pair.b, w));
    rep.modulus_residual = std::max(rep.modulus_residual, std::abs(mod - 1.0));
    const CMatrix th = theta(w);
    rep.unitarity_residual =
        std::max(rep.unitarity_residual,
                 (th.adjoint() * th - CMatrix::Identity(2, 2)).norm());
    if (m % 4 == 0) {
      rep.det_residual = std::max(
          rep.det_residual,
          std::abs(th(0, 0) * th(1, 1) - th(0, 1) * th(1, 0) - eval(pair.phi, w)));
    }
  }
  rep.ok = rep.modulus_residual <= 1e-8 && rep.unitarity_residual <= 1e-8 &&
           rep.det_residual <= 1e-8;
  return rep;
}

std::optional<std::pair<Complex, Complex>> symmetrizable_test(
    const InnerPair& pair) {
  const Eigen::Index n = pair.space.dim();
  const CVector A = pair.a;
  const CVector B = pair.b;

  // Degenerate case first: a nontrivial combination gamma a + theta b = 0
  // is itself a fixed point.
  {
    CMatrix AB(n, 2);
    AB.col(0) = A;
    AB.col(1) = B;
    const auto dec = numlin::svd(AB);
    const double scale = dec.S.size() > 0 ? dec.S(0) : 0.0;
    if (dec.S.size() < 2 || dec.S(1) <= 1e-10 * std::max(1.0, scale)) {
      const CVector nullv = dec.V.col(1);
      Complex g = nullv(0), t = nullv(1);
      const double nrm = std::sqrt(std::norm(g) + std::norm(t));
      return std::make_pair(g / nrm, t / nrm);
    }
  }

  const CVector Ac = conj_coeffs(pair.conj, A);
  const CVector Bc = conj_coeffs(pair.conj, B);

  // R(gamma, theta) = gamma A + theta B - conj(gamma) Ac - conj(theta) Bc,
  // real-linear in (Re gamma, Im gamma, Re theta, Im theta).
  Eigen::MatrixXd M(2 * n, 4);
  const Complex i1(0.0, 1.0);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Complex d_g1 = A(r) - Ac(r);
    const Complex d_g2 = i1 * (A(r) + Ac(r));
    const Complex d_t1 = B(r) - Bc(r);
    const Complex d_t2 = i1 * (B(r) + Bc(r));
    M(2 * r, 0) = d_g1.real();
    M(2 * r, 1) = d_g2.real();
    M(2 * r, 2) = d_t1.real();
    M(2 * r, 3) = d_t2.real();
    M(2 * r + 1, 0) = d_g1.imag();
    M(2 * r + 1, 1) = d_g2.imag();
    M(2 * r + 1, 2) = d_t1.imag();
    M(2 * r + 1, 3) = d_t2.imag();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(M, Eigen::ComputeFullV);
  const double scale = std::max(1.0, dec.singularValues()(0));
  if (dec.singularValues()(3) > 1e-7 * scale) return std::nullopt;

  const Eigen::Vector4d x = dec.matrixV().col(3);
  Complex gamma(x(0), x(1));
  Complex theta(x(2), x(3));
  const double nrm = std::sqrt(std::norm(gamma) + std::norm(theta));
  gamma /= nrm;
  theta /= nrm;
  // Real sign normalization (complex phases are not allowed: the fixed
  // point equation is only real-linear).
  const Complex lead = std::abs(gamma) > 1e-8 ? gamma : theta;
  if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) {
    gamma = -gamma;
    theta = -theta;
  }

  const CVector fixed = gamma * A + theta * B;
  const double res = (conj_coeffs(pair.conj, fixed) - fixed).norm();
  if (res > 1e-8) return std::nullopt;
  return std::make_pair(gamma, theta);
}

Symmetrizer make_symmetrizer(const InnerPair& pair, Complex gamma,
                             Complex theta) {
  const double nrm = std::sqrt(std::norm(gamma) + std::norm(theta));
  if (nrm < 1e-14) throw InvalidInput("symmetrizer: (gamma, theta) = (0, 0)");
  gamma /= nrm;
  theta /= nrm;

  const CVector fixed = gamma * pair.a + theta * pair.b;
  const double res = (conj_coeffs(pair.conj, fixed) - fixed).norm();
  if (res > 1e-6)
    throw FixedPointViolated("symmetrizer: gamma a + theta b is not C-fixed");

  Symmetrizer s;
  s.gamma = gamma;
  s.theta = theta;
  s.U1 = CMatrix::Zero(2, 2);
  s.U1(0, 0) = Complex(0.0, -1.0);
  s.U1(1, 1) = Complex(0.0, 1.0);
  s.U2 = CMatrix::Zero(2, 2);
  s.U2(0, 0) = std::conj(theta);
  s.U2(0, 1) = -gamma;
  s.U2(1, 0) = std::conj(gamma);
  s.U2(1, 1) = theta;
  return s;
}

MatrixEval symmetrized_theta(const InnerPair& pair, const Symmetrizer& s) {
  const auto theta = build_theta(pair);
  const CMatrix U1 = s.U1;
  const CMatrix U2 = s.U2;
  return [theta, U1, U2](Complex z) { return CMatrix(U1 * theta(z) * U2); };
}

InnerPair build_symmetric_inner(const ModelFunction& b,
                                const FiniteBlaschke& phi) {
  const ModelSpace space = model_space_zphi(phi);
  if (b.coeffs.size() != space.dim())
    throw InvalidInput("build_symmetric_inner: b not in K_{z phi}");
  const Conjugation C = model_conjugation(phi);
  const CVector cb = b.coeffs;
  if ((C.U * cb.conjugate() - cb).norm() > 1e-8)
    throw CbNotB("build_symmetric_inner: C(b) != b");

  const int M = space.quad_points();
  double min_mod = 2.0, max_mod = 0.0;
  for (int m = 0; m < M; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / M);
    const double mod = std::abs(eval_coeffs(space, cb, w));
    min_mod = std::min(min_mod, mod);
    max_mod = std::max(max_mod, mod);
  }

  if (min_mod >= 1.0 - 1e-8 && max_mod <= 1.0 + 1e-8) {
    // b inner: then b^2 = phi up to a unimodular constant and
    // Theta = [[0, ib], [ib, 0]].
    Complex ratio0;
    bool first = true;
    for (int m = 0; m < 64; ++m) {
      const Complex w = std::polar(1.0, 2.0 * M_PI * m / 64);
      const Complex ratio =
          eval_coeffs(space, cb, w) * eval_coeffs(space, cb, w) / eval(phi, w);
      if (first) {
        ratio0 = ratio;
        first = false;
      } else if (std::abs(ratio - ratio0) > 1e-6) {
        throw FactorizationFailed("build_symmetric_inner: b^2 != phi");
      }
    }
    const CVector zero = CVector::Zero(space.dim());
    return make_inner_pair(phi, zero, Complex(0.0, -1.0) * cb);
  }

  // 1 - |b|^2 = (|D|^2 - |D b|^2) / |D|^2 with D the Blaschke denominator;
  // factor the numerator and divide back.
  const std::vector<Complex> D = denominator_coeffs(phi);
  const int n = degree(phi);

  // Coefficients of the polynomial D * b (degree <= n) from boundary values.
  std::vector<Complex> Nb(static_cast<size_t>(n) + 1, Complex(0.0));
  for (int m = 0; m < M; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / M);
    Complex dw = 0.0;
    for (size_t k = D.size(); k-- > 0;) dw = dw * w + D[k];
    const Complex f = dw * eval_coeffs(space, cb, w);
    for (int k = 0; k <= n; ++k)
      Nb[static_cast<size_t>(k)] += f * std::pow(std::conj(w), k);
  }
  for (auto& x : Nb) x /= static_cast<double>(M);

  auto autocorr = [n](const std::vector<Complex>& p) {
    std::vector<Complex> c(static_cast<size_t>(n) + 1, Complex(0.0));
    for (int k = 0; k <= n; ++k) {
      for (size_t j = 0; j + static_cast<size_t>(k) < p.size(); ++j)
        c[static_cast<size_t>(k)] += p[j + static_cast<size_t>(k)] * std::conj(p[j]);
    }
    return c;
  };
  std::vector<Complex> trig = autocorr(D);
  const std::vector<Complex> trig_b = autocorr(Nb);
  for (size_t k = 0; k < trig.size(); ++k) trig[k] -= trig_b[k];

  const std::vector<Complex> q = fejer_riesz(trig);

  // a = q / D lies in K_{z phi}; recover its TM coefficients.
  auto a_boundary = [&](Complex w) {
    Complex qw = 0.0;
    for (size_t k = q.size(); k-- > 0;) qw = qw * w + q[k];
    Complex dw = 0.0;
    for (size_t k = D.size(); k-- > 0;) dw = dw * w + D[k];
    return qw / dw;
  };
  const CVector ca = space.project_boundary(a_boundary);

  // Membership and modulus identity checks.
  double worst_member = 0.0, worst_mod = 0.0;
  for (int m = 0; m < 256; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / 256);
    const Complex av = eval_coeffs(space, ca, w);
    worst_member = std::max(worst_member, std::abs(av - a_boundary(w)));
    const double mod = std::norm(av) + std::norm(eval_coeffs(space, cb, w));
    worst_mod = std::max(worst_mod, std::abs(mod - 1.0));
  }
  if (worst_member > 1e-8 || worst_mod > 1e-8)
    throw FactorizationFailed("build_symmetric_inner: constructed a invalid");

  return make_inner_pair(phi, ca, Complex(0.0, -1.0) * cb);
}

}  // namespace symcontract
