#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "symcontract/blaschke.hpp"
#include "symcontract/charfun.hpp"
#include "symcontract/types.hpp"

namespace symcontract {

/// Upper-triangular 2x2-block contraction [[T_u, X], [0, T_v]] built from
/// two compressed shifts, with the corner X = D_{T_u*} Y D_{T_v} pinned
/// down by a scalar coupling Y of modulus at most 1.
struct FamilySpec {
  FiniteBlaschke u;
  FiniteBlaschke v;
  Complex Y = 0.0;
};

Contraction build_T(const FamilySpec& spec);

/// (1, 1) when |Y| = 1, (2, 2) otherwise.
std::pair<int, int> expected_defects(const FamilySpec& spec);

enum class FamilyCase { Zero, Unimodular, Mobius, NotSymmetric };

const char* to_string(FamilyCase c);

struct FamilyClassification {
  FamilyCase kind = FamilyCase::NotSymmetric;
  std::optional<MobiusRelation> relation;  // present in the Mobius case
  std::pair<int, int> defects{2, 2};
};

FamilyClassification classify_family(const FamilySpec& spec);

struct ThetaProductReport {
  Complex alpha;
  Complex beta;
  double coincidence_residual = 0.0;
  double unit_residual = 0.0;           // | |alpha|^2 + |beta|^2 - 1 |
  double factorization_residual = 0.0;  // diag(1,u) rotation diag(1,v) identity
};

/// For 0 < |Y| < 1: the characteristic function coincides with
/// [[alpha, -beta u], [conj(beta) v, conj(alpha) u v]]; recover (alpha,
/// beta) from grid data and verify the coincidence.
ThetaProductReport theta_product_check(const FamilySpec& spec,
                                       double tol = 1e-6,
                                       std::uint64_t seed = 0);

struct CrossValidation {
  FamilyClassification symbolic;
  ClassifyReport numeric;
  bool indeterminate = false;  // numeric side gave no definite verdict
  bool agree = false;          // meaningful only when !indeterminate
};

CrossValidation cross_validate(const FamilySpec& spec, double tol = 1e-8,
                               std::uint64_t seed = 0);

struct PointFixeBridge {
  Complex s;
  Complex t;
  CVector g_coeffs;       // of g = s + t u in K_{z u v}
  double fixed_residual;  // ||C(g) - g||
};

/// Constructive converse of the Mobius branch: from v = mu b_lambda(u)
/// produce the C-fixed combination g = s + t u in K_{z u v}.
PointFixeBridge point_fixe_bridge(const FamilySpec& spec);

}  // namespace symcontract
