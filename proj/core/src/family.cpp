#include "symcontract/family.hpp"

#include <cmath>

#include "symcontract/errors.hpp"
#include "symcontract/numlin.hpp"

namespace symcontract {

const char* to_string(FamilyCase c) {
  switch (c) {
    case FamilyCase::Zero: return "ZERO";
    case FamilyCase::Unimodular: return "UNIMODULAR";
    case FamilyCase::Mobius: return "MOBIUS";
    default: return "NOT_SYMMETRIC";
  }
}

namespace {

void validate(const FamilySpec& spec) {
  if (degree(spec.u) < 1 || degree(spec.v) < 1)
    throw InvalidInput("family: u and v must be nonconstant");
  if (std::abs(spec.Y) > 1.0 + 1e-12)
    throw InvalidInput("family: |Y| > 1");
}

// Unit vector spanning the 1-dimensional range of a defect operator.
CVector defect_direction(const CMatrix& D) {
  const auto dec = numlin::svd(D);
  if (dec.S.size() == 0 || dec.S(0) <= 1e-8)
    throw NumericalDegeneracy("family: defect direction vanished");
  CVector v = dec.U.col(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

}  // namespace

Contraction build_T(const FamilySpec& spec) {
  validate(spec);
  const Contraction Tu = compressed_shift(spec.u);
  const Contraction Tv = compressed_shift(spec.v);
  const Eigen::Index nu = Tu.T.rows();
  const Eigen::Index nv = Tv.T.rows();

  const CMatrix DTustar = numlin::psd_sqrt(
      CMatrix::Identity(nu, nu) - Tu.T * Tu.T.adjoint());
  const CMatrix DTv = numlin::psd_sqrt(
      CMatrix::Identity(nv, nv) - Tv.T.adjoint() * Tv.T);

  const CVector eu = defect_direction(DTustar);
  const CVector ev = defect_direction(DTv);
  const CMatrix X =
      spec.Y * (DTustar * eu) * (DTv * ev).adjoint();

  CMatrix T = CMatrix::Zero(nu + nv, nu + nv);
  T.topLeftCorner(nu, nu) = Tu.T;
  T.topRightCorner(nu, nv) = X;
  T.bottomRightCorner(nv, nv) = Tv.T;
  return make_contraction(T);
}

std::pair<int, int> expected_defects(const FamilySpec& spec) {
  validate(spec);
  if (std::abs(std::abs(spec.Y) - 1.0) <= 1e-12) return {1, 1};
  return {2, 2};
}

FamilyClassification classify_family(const FamilySpec& spec) {
  validate(spec);
  FamilyClassification out;
  out.defects = expected_defects(spec);
  if (std::abs(spec.Y) <= 1e-12) {
    out.kind = FamilyCase::Zero;
    return out;
  }
  if (std::abs(std::abs(spec.Y) - 1.0) <= 1e-12) {
    out.kind = FamilyCase::Unimodular;
    return out;
  }
  if (auto rel = detect_mobius_relation(spec.u, spec.v)) {
    out.kind = FamilyCase::Mobius;
    out.relation = rel;
    return out;
  }
  out.kind = FamilyCase::NotSymmetric;
  return out;
}

ThetaProductReport theta_product_check(const FamilySpec& spec, double tol,
                                       std::uint64_t seed) {
  validate(spec);
  const double y = std::abs(spec.Y);
  if (y <= 1e-12 || std::abs(y - 1.0) <= 1e-12)
    throw InvalidInput("theta_product_check: requires 0 < |Y| < 1");

  const Contraction T = build_T(spec);
  const auto grid = default_grid(static_cast<int>(T.T.rows()));
  const auto theta = char_evaluator(T);

  // tr(Theta Theta^*) is a coincidence invariant; fit |alpha|^2 against
  //   |alpha|^2 (1 + |uv|^2) + |beta|^2 (|u|^2 + |v|^2)
  // with |alpha|^2 + |beta|^2 = 1.
  double num = 0.0, den = 0.0;
  for (Complex z : grid) {
    const double uu = std::norm(eval(spec.u, z));
    const double vv = std::norm(eval(spec.v, z));
    const double g1 = 1.0 + uu * vv;
    const double g2 = uu + vv;
    const double F = theta(z).squaredNorm();
    num += (g1 - g2) * (F - g2);
    den += (g1 - g2) * (g1 - g2);
  }
  double x = den > 1e-14 ? num / den : 0.5;
  x = std::clamp(x, 0.0, 1.0);

  ThetaProductReport rep;
  rep.alpha = std::sqrt(x);
  rep.beta = std::sqrt(1.0 - x);
  rep.unit_residual =
      std::abs(std::norm(rep.alpha) + std::norm(rep.beta) - 1.0);

  // Candidate [[alpha, -beta u], [conj(beta) v, conj(alpha) u v]].  It
  // factors exactly as diag(1,v) R diag(1,u) with the rotation-like
  // R = [[alpha, -beta], [conj(beta), conj(alpha)]]: the v-side factor of
  // the characteristic function (the quotient along the invariant
  // subspace for u) multiplies from the left.
  const Complex alpha = rep.alpha, beta = rep.beta;
  CMatrix R(2, 2);
  R(0, 0) = alpha;
  R(0, 1) = -beta;
  R(1, 0) = std::conj(beta);
  R(1, 1) = std::conj(alpha);
  const FiniteBlaschke u = spec.u, v = spec.v;
  auto candidate = [alpha, beta, u, v](Complex z) {
    const Complex uz = eval(u, z);
    const Complex vz = eval(v, z);
    CMatrix th(2, 2);
    th(0, 0) = alpha;
    th(0, 1) = -beta * uz;
    th(1, 0) = std::conj(beta) * vz;
    th(1, 1) = std::conj(alpha) * uz * vz;
    return th;
  };

  for (Complex z : grid) {
    CMatrix left = CMatrix::Identity(2, 2);
    left(1, 1) = eval(spec.v, z);
    CMatrix right = CMatrix::Identity(2, 2);
    right(1, 1) = eval(spec.u, z);
    rep.factorization_residual = std::max(
        rep.factorization_residual, (left * R * right - candidate(z)).norm());
  }

  const auto match = coincide(theta, candidate, grid, tol, seed);
  if (!match)
    throw CoincidenceFailed("theta_product_check: no (alpha, beta) fit");
  rep.coincidence_residual = match->residual;
  return rep;
}

CrossValidation cross_validate(const FamilySpec& spec, double tol,
                               std::uint64_t seed) {
  CrossValidation out;
  out.symbolic = classify_family(spec);
  const Contraction T = build_T(spec);
  out.numeric = classify(T, {}, tol, seed);

  if (out.numeric.overall == Verdict::Indeterminate) {
    out.indeterminate = true;
    return out;
  }
  const bool symbolic_symmetric = out.symbolic.kind != FamilyCase::NotSymmetric;
  out.agree =
      symbolic_symmetric == (out.numeric.overall == Verdict::Symmetric);
  return out;
}

PointFixeBridge point_fixe_bridge(const FamilySpec& spec) {
  const auto cls = classify_family(spec);
  if (cls.kind != FamilyCase::Mobius || !cls.relation)
    throw InvalidInput("point_fixe_bridge: spec is not in the Mobius case");
  const Complex mu = cls.relation->mu;
  const Complex lambda = cls.relation->lambda;

  // mu = -zeta / conj(zeta) for zeta = e^{i (arg(mu) + pi) / 2}.
  const Complex zeta = std::polar(1.0, (std::arg(mu) + M_PI) / 2.0);
  PointFixeBridge out;
  out.s = -lambda * zeta;
  out.t = zeta;
  if (!(std::abs(out.s) < std::abs(out.t)))
    throw FixedPointViolated("point_fixe_bridge: |s| >= |t|");

  const FiniteBlaschke uv = product(spec.u, spec.v);
  const ModelSpace space = model_space_zphi(uv);
  const Conjugation C = model_conjugation(uv);

  const Complex s = out.s, t = out.t;
  const FiniteBlaschke u = spec.u;
  out.g_coeffs =
      space.project_boundary([s, t, u](Complex w) { return s + t * eval(u, w); });

  // Membership sanity: g must reproduce from its coefficients.
  for (int m = 0; m < 64; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * (m + 0.21) / 64);
    const Complex gv = space.basis_at(w).cwiseProduct(out.g_coeffs).sum();
    if (std::abs(gv - (s + t * eval(u, w))) > 1e-8)
      throw FixedPointViolated("point_fixe_bridge: g escaped K_{zuv}");
  }

  out.fixed_residual =
      (C.U * out.g_coeffs.conjugate() - out.g_coeffs).norm();
  if (out.fixed_residual > 1e-8)
    throw FixedPointViolated("point_fixe_bridge: C(g) != g");
  return out;
}

}  // namespace symcontract
