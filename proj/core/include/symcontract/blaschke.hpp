#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "symcontract/charfun.hpp"
#include "symcontract/conjugation.hpp"
#include "symcontract/types.hpp"

namespace symcontract {

/// Finite Blaschke product: const * prod (zeros[i] - z) / (1 - conj(zeros[i]) z).
struct FiniteBlaschke {
  std::vector<Complex> zeros;  // all strictly inside the unit disk
  Complex constant = 1.0;      // unimodular
};

int degree(const FiniteBlaschke& B);
Complex eval(const FiniteBlaschke& B, Complex z);

/// The elementary factor b_lambda(z) = (lambda - z) / (1 - conj(lambda) z).
FiniteBlaschke elementary(Complex lambda);

/// Pointwise product of two finite Blaschke products.
FiniteBlaschke product(const FiniteBlaschke& u, const FiniteBlaschke& v);

/// mu * b_lambda(u), again a finite Blaschke product of the same degree.
FiniteBlaschke compose_elementary(Complex mu, Complex lambda,
                                  const FiniteBlaschke& u);

struct MobiusRelation {
  Complex mu;      // unimodular
  Complex lambda;  // in the open disk
  double residual;
};

/// Detect v = mu * b_lambda(u): solve a small linear system at a few
/// sample points, then verify globally.
std::optional<MobiusRelation> detect_mobius_relation(const FiniteBlaschke& u,
                                                     const FiniteBlaschke& v);

/// Coefficients of the denominator prod (1 - conj(zeros[i]) z).
std::vector<Complex> denominator_coeffs(const FiniteBlaschke& B);

/// Finite-dimensional model space K_phi = H^2 (-) phi H^2 with its
/// Takenaka-Malmquist orthonormal basis (zeros taken in input order).
class ModelSpace {
 public:
  explicit ModelSpace(FiniteBlaschke phi);

  const FiniteBlaschke& phi() const { return phi_; }
  int dim() const { return static_cast<int>(phi_.zeros.size()); }
  int quad_points() const { return quad_points_; }

  Complex basis_eval(int k, Complex z) const;
  CVector basis_at(Complex z) const;

  /// Coefficients of the boundary function f in the TM basis, by
  /// uniform trapezoid quadrature on the circle.
  CVector project_boundary(const std::function<Complex(Complex)>& f) const;

 private:
  FiniteBlaschke phi_;
  int quad_points_;
};

ModelSpace model_space(const FiniteBlaschke& phi);

/// K_{z phi}: the zero of z phi at the origin is placed first, so that
/// phi = z^n yields the monomial basis.
ModelSpace model_space_zphi(const FiniteBlaschke& phi);

struct ModelFunction {
  ModelSpace space;
  CVector coeffs;
};

Complex mf_eval(const ModelFunction& f, Complex z);

/// Matrix of the compressed shift P_{K_phi} M_z | K_phi in the TM basis.
Contraction compressed_shift(const FiniteBlaschke& phi);

/// The conjugation C(f) = conj(f) * phi on K_{z phi}, in TM coordinates.
Conjugation model_conjugation(const FiniteBlaschke& phi);

/// Real-linear basis of { f : C f = f }.
std::vector<CVector> fixed_points(const Conjugation& C);

/// Fejer-Riesz factorization.  Input: coefficients c_0..c_m of
/// p(e^{it}) = c_0 + sum_{k>=1} 2 Re(c_k e^{ikt}) >= 0.  Output: the
/// outer-normalized analytic polynomial q with |q|^2 = p on the circle.
std::vector<Complex> fejer_riesz(const std::vector<Complex>& trig_coeffs);

}  // namespace symcontract
