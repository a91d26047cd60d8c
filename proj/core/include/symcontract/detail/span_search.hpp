#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "symcontract/types.hpp"

namespace symcontract::detail {

/// Frobenius-orthonormalize a list of vectors, dropping near-dependent ones.
inline std::vector<CVector> orthonormalize(const std::vector<CVector>& vecs,
                                           double drop_tol = 1e-8) {
  std::vector<CVector> out;
  for (const auto& v : vecs) {
    CVector w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : out) w -= b.dot(w) * b;
    }
    const double nrm = w.norm();
    if (nrm > drop_tol) out.push_back(w / nrm);
  }
  return out;
}

struct SpanSearch {
  bool found = false;
  CVector element;
  double residual = std::numeric_limits<double>::infinity();
};

/// Multi-start alternating projections between the complex span of
/// `basis` and a structured set (retract = nearest structured point,
/// residual_of = distance from the set).  Deterministic given the seed;
/// the first attempts start from the basis vectors themselves.
inline SpanSearch find_structured_span_element(
    const std::vector<CVector>& basis,
    const std::function<CVector(const CVector&)>& retract,
    const std::function<double(const CVector&)>& residual_of,
    double tol, int iterations = 200, int random_starts = 16,
    std::uint64_t seed = 0, const std::vector<CVector>& warm_starts = {}) {
  SpanSearch best;
  if (basis.empty()) return best;

  auto project_span = [&](const CVector& x) {
    CVector p = CVector::Zero(x.size());
    for (const auto& b : basis) p += b.dot(x) * b;
    return p;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const int fixed = static_cast<int>(warm_starts.size() + basis.size());
  const int total = fixed + random_starts;
  for (int s = 0; s < total; ++s) {
    CVector x;
    if (s < static_cast<int>(warm_starts.size())) {
      x = project_span(warm_starts[static_cast<size_t>(s)]);
      if (x.norm() < 1e-14) continue;
    } else if (s < fixed) {
      x = basis[static_cast<size_t>(s) - warm_starts.size()];
    } else {
      x = CVector::Zero(basis.front().size());
      for (const auto& b : basis) x += Complex(gauss(rng), gauss(rng)) * b;
      const double nrm = x.norm();
      if (nrm < 1e-14) continue;
      x /= nrm;
    }
    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < iterations; ++it) {
      x = project_span(retract(x));
      if (x.norm() < 1e-14) break;
      res = residual_of(x);
      if (res <= tol * 1e-2) break;
    }
    if (res < best.residual) {
      best.residual = res;
      best.element = x;
      best.found = res <= tol;
    }
    if (best.found) break;
  }
  return best;
}

}  // namespace symcontract::detail
