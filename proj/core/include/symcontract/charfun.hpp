#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "symcontract/conjugation.hpp"
#include "symcontract/types.hpp"

namespace symcontract {

/// Square matrix with operator norm <= 1 (inputs up to 1 + 1e-10 over
/// are rescaled; anything beyond raises NotAContraction).
struct Contraction {
  CMatrix T;
};

Contraction make_contraction(const CMatrix& T);

struct DefectData {
  CMatrix DT;          // (I - T*T)^{1/2}
  CMatrix DTstar;      // (I - TT*)^{1/2}
  CMatrix basisT;      // n x dT, orthonormal basis of range(DT)
  CMatrix basisTstar;  // n x dTstar
  int dT = 0;
  int dTstar = 0;
};

DefectData defect(const Contraction& T);

/// Theta_T(z) = [-T + z D_{T*} (I - z T*)^{-1} D_T] compressed to the
/// defect bases; dTstar x dT.
CMatrix char_eval(const Contraction& T, const DefectData& dd, Complex z);
CMatrix char_eval(const Contraction& T, Complex z);

using ThetaEval = std::function<CMatrix(Complex)>;

ThetaEval char_evaluator(const Contraction& T);

struct CharSamples {
  std::vector<Complex> points;
  std::vector<CMatrix> values;
};

CharSamples char_sample(const Contraction& T, const std::vector<Complex>& grid);

bool is_pure_at_origin(const CMatrix& theta0);

struct InnerSampleReport {
  bool inner = false;
  std::vector<double> radii;
  std::vector<double> isometry_defect;  // max ||Theta* Theta - I|| per radius
};

InnerSampleReport is_inner_sampled(const ThetaEval& eval,
                                   std::vector<double> radii = {0.9, 0.99,
                                                                0.999},
                                   int angles = 256, double tol = 1e-6);

struct CnuSplit {
  CMatrix unitary_projection;  // orthogonal projection onto H_u
  bool cnu = false;            // H_u = {0}
  int unitary_dim = 0;
};

CnuSplit cnu_unitary_split(const Contraction& T);

/// Finite-dimensional C00 test: spectral radius < 1 - 1e-10,
/// cross-checked by a matrix power falling below tol.
bool c00_check(const Contraction& T, double tol = 1e-8);

/// Default sample grid: 16 points on |z| = 0.7 plus 8 seeded interior
/// points, expanded so the count exceeds 2*dim + 1.
std::vector<Complex> default_grid(int dim, int grid_size = 24,
                                  std::uint64_t seed = 20240913);

struct JDetection {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<AntilinearMap> J;  // x -> U conj(x) in the defect bases
  double residual = 0.0;           // max grid ||Theta U^T - (Theta U^T)^T||
  int nullspace_dim = 0;           // certificate when 0
};

/// Detector for the antilinear intertwining Theta(z) = J Theta(z)* J:
/// in coordinates, Theta(z) U^T must be symmetric for every z, which is
/// linear in U.
JDetection detect_J(const Contraction& T, const std::vector<Complex>& grid,
                    double tol = 1e-8, std::uint64_t seed = 0);

struct Coincidence {
  CMatrix U;      // Theta(z) = Ustar^H Theta'(z) U
  CMatrix Ustar;
  double residual = 0.0;
};

std::optional<Coincidence> coincide(const ThetaEval& theta,
                                    const ThetaEval& theta_prime,
                                    const std::vector<Complex>& grid,
                                    double tol = 1e-8, std::uint64_t seed = 0);

struct ClassifyReport {
  Verdict overall = Verdict::Indeterminate;
  ConjugationSearch direct;  // condition (i): conjugation on the space
  JDetection char_side;      // condition (ii): J on the defect spaces
  DefectData defects;
  bool cnu = false;
  bool c00 = false;
  bool disagreement = false;
};

ClassifyReport classify(const Contraction& T,
                        const std::vector<Complex>& grid = {},
                        double tol = 1e-8, std::uint64_t seed = 0);

}  // namespace symcontract
