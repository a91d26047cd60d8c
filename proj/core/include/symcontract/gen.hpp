#pragma once

#include <random>

#include "symcontract/errors.hpp"

#include "symcontract/blaschke.hpp"
#include "symcontract/family.hpp"
#include "symcontract/inner2x2.hpp"
#include "symcontract/numlin.hpp"
#include "symcontract/types.hpp"

namespace symcontract::gen {

inline Complex random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const double re = g(rng);
  const double im = g(rng);
  return Complex(re, im);
}

inline Complex random_disk_point(std::mt19937_64& rng, double radius = 0.8) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::polar(radius * std::sqrt(unif(rng)),
                    2.0 * M_PI * unif(rng));
}

inline Complex random_phase(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::polar(1.0, 2.0 * M_PI * unif(rng));
}

inline CMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = random_complex(rng);
  return m;
}

inline CMatrix random_unitary(std::mt19937_64& rng, int n) {
  return numlin::polar_unitary(random_matrix(rng, n, n));
}

inline CMatrix random_symmetric(std::mt19937_64& rng, int n) {
  const CMatrix m = random_matrix(rng, n, n);
  return 0.5 * (m + m.transpose());
}

inline CMatrix random_contraction_matrix(std::mt19937_64& rng, int n,
                                         double norm_cap = 0.95) {
  CMatrix m = random_matrix(rng, n, n);
  const double s = numlin::op_norm(m);
  std::uniform_real_distribution<double> unif(0.2, norm_cap);
  return m * (unif(rng) / s);
}

inline FiniteBlaschke random_blaschke(std::mt19937_64& rng, int deg,
                                      double radius = 0.8) {
  FiniteBlaschke b;
  b.zeros.reserve(static_cast<size_t>(deg));
  for (int k = 0; k < deg; ++k)
    b.zeros.push_back(random_disk_point(rng, radius));
  b.constant = random_phase(rng);
  return b;
}

/// Family corpus branches: Y = 0, |Y| = 1, Mobius-related pair, and an
/// unrelated pair; Y magnitudes drawn from {0.3, 0.7, 0.95}.
enum class FamilyBranch { Zero, Unimodular, Mobius, Unrelated };

inline FamilySpec random_family_spec(std::mt19937_64& rng,
                                     FamilyBranch branch, int max_deg = 4) {
  std::uniform_int_distribution<int> degs(1, max_deg);
  std::uniform_int_distribution<int> mags(0, 2);
  const double mag_choices[] = {0.3, 0.7, 0.95};
  FamilySpec spec;
  spec.u = random_blaschke(rng, degs(rng));
  switch (branch) {
    case FamilyBranch::Zero:
      spec.v = random_blaschke(rng, degs(rng));
      spec.Y = 0.0;
      break;
    case FamilyBranch::Unimodular:
      spec.v = random_blaschke(rng, degs(rng));
      spec.Y = random_phase(rng);
      break;
    case FamilyBranch::Mobius:
      spec.v = compose_elementary(random_phase(rng),
                                  random_disk_point(rng, 0.7), spec.u);
      spec.Y = mag_choices[mags(rng)] * random_phase(rng);
      break;
    case FamilyBranch::Unrelated: {
      // A degree mismatch guarantees the absence of a Mobius relation.
      const int du = degree(spec.u);
      spec.v = random_blaschke(rng, du < max_deg ? du + 1 : du - 1);
      spec.Y = mag_choices[mags(rng)] * random_phase(rng);
      break;
    }
  }
  return spec;
}

/// Symmetrizable inner pair via the coupled-shift reduction: over
/// phi = u v with v = mu b_lambda(u), the pair (alpha, beta u) admits a
/// C-fixed combination.
inline InnerPair random_symmetrizable_pair(std::mt19937_64& rng,
                                           int max_deg = 3) {
  std::uniform_int_distribution<int> degs(1, max_deg);
  std::uniform_real_distribution<double> ang(0.15, M_PI / 2.0 - 0.15);
  const FiniteBlaschke u = random_blaschke(rng, degs(rng));
  const FiniteBlaschke v = compose_elementary(random_phase(rng),
                                              random_disk_point(rng, 0.7), u);
  const FiniteBlaschke phi = product(u, v);
  const double psi = ang(rng);
  const Complex alpha = std::cos(psi) * random_phase(rng);
  const Complex beta = std::sin(psi) * random_phase(rng);
  const ModelSpace space = model_space_zphi(phi);
  const CVector a =
      space.project_boundary([alpha](Complex) { return alpha; });
  const CVector b = space.project_boundary(
      [beta, u](Complex w) { return beta * eval(u, w); });
  return make_inner_pair(phi, a, b);
}

/// Same pair shape but with deg v != deg u, so no Mobius relation exists
/// and the pair is not symmetrizable.
inline InnerPair random_nonsymmetrizable_pair(std::mt19937_64& rng,
                                              int max_deg = 3) {
  std::uniform_int_distribution<int> degs(1, max_deg);
  std::uniform_real_distribution<double> ang(0.15, M_PI / 2.0 - 0.15);
  const FiniteBlaschke u = random_blaschke(rng, degs(rng));
  const int du = degree(u);
  const FiniteBlaschke v =
      random_blaschke(rng, du < max_deg ? du + 1 : du - 1);
  const FiniteBlaschke phi = product(u, v);
  const double psi = ang(rng);
  const Complex alpha = std::cos(psi) * random_phase(rng);
  const Complex beta = std::sin(psi) * random_phase(rng);
  const ModelSpace space = model_space_zphi(phi);
  const CVector a =
      space.project_boundary([alpha](Complex) { return alpha; });
  const CVector b = space.project_boundary(
      [beta, u](Complex w) { return beta * eval(u, w); });
  return make_inner_pair(phi, a, b);
}

/// Symmetric inner function from a random C-fixed b with sup |b| < 1 on
/// the boundary.
inline InnerPair random_symmetric_inner(std::mt19937_64& rng,
                                        int max_deg = 3) {
  std::uniform_int_distribution<int> degs(1, max_deg);
  std::normal_distribution<double> g(0.0, 1.0);
  const FiniteBlaschke phi = random_blaschke(rng, degs(rng));
  const Conjugation C = model_conjugation(phi);
  const auto fixed = fixed_points(C);
  CVector coeffs = CVector::Zero(static_cast<Eigen::Index>(fixed[0].size()));
  for (const CVector& e : fixed) coeffs += g(rng) * e;

  const ModelSpace space = model_space_zphi(phi);
  double peak = 0.0;
  for (int m = 0; m < 256; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / 256.0);
    peak = std::max(peak, std::abs(space.basis_at(w).cwiseProduct(coeffs).sum()));
  }
  if (peak < 1e-8)
    throw NumericalDegeneracy("random_symmetric_inner: degenerate draw");
  coeffs *= 0.8 / peak;
  return build_symmetric_inner(ModelFunction{space, coeffs}, phi);
}

}  // namespace symcontract::gen
