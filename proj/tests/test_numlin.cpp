#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "symcontract/errors.hpp"
#include "symcontract/gen.hpp"
#include "symcontract/numlin.hpp"

using namespace symcontract;
using namespace symcontract::numlin;

namespace {

CMatrix reconstruct(const SvdResult& r, Eigen::Index rows, Eigen::Index cols) {
  CMatrix D = CMatrix::Zero(rows, cols);
  for (Eigen::Index k = 0; k < r.S.size(); ++k) D(k, k) = r.S(k);
  return r.U * D * r.V.adjoint();
}

double unitarity(const CMatrix& U) {
  return (U.adjoint() * U - CMatrix::Identity(U.cols(), U.cols())).norm();
}

}  // namespace

TEST_CASE("svd: identity and diagonal cases") {
  const auto r = svd(CMatrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(r.S(k) == doctest::Approx(1.0));

  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 0) = 2.0;
  const auto d = svd(A);
  CHECK(d.S(0) == doctest::Approx(2.0));
  CHECK(d.S(1) == doctest::Approx(0.0));
}

TEST_CASE("svd: random reconstruction and unitarity") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const CMatrix A = gen::random_matrix(rng, 5, 5);
    const auto r = svd(A);
    CHECK((reconstruct(r, 5, 5) - A).norm() <= 1e-12 * std::max(1.0, A.norm()));
    CHECK(unitarity(r.U) <= 1e-10);
    CHECK(unitarity(r.V) <= 1e-10);
    for (Eigen::Index k = 1; k < r.S.size(); ++k) CHECK(r.S(k - 1) >= r.S(k));
  }
}

TEST_CASE("svd: rejects non-finite input") {
  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(svd(A), InvalidInput);
}

TEST_CASE("takagi: fixed examples") {
  SUBCASE("identity") {
    const auto t = takagi(CMatrix::Identity(2, 2));
    CHECK(t.S(0) == doctest::Approx(1.0));
    CHECK(t.S(1) == doctest::Approx(1.0));
  }
  SUBCASE("flip") {
    CMatrix A(2, 2);
    A << 0, 1, 1, 0;
    const auto t = takagi(A);
    CHECK(t.S(0) == doctest::Approx(1.0));
    CHECK(t.S(1) == doctest::Approx(1.0));
    const CMatrix rec = t.W * t.S.cast<Complex>().asDiagonal() * t.W.transpose();
    CHECK((rec - A).norm() <= 1e-10);
  }
  SUBCASE("i times identity") {
    const CMatrix A = Complex(0, 1) * CMatrix::Identity(2, 2);
    const auto t = takagi(A);
    CHECK(t.S(0) == doctest::Approx(1.0));
    const CMatrix rec = t.W * t.S.cast<Complex>().asDiagonal() * t.W.transpose();
    CHECK((rec - A).norm() <= 1e-10);
  }
}

TEST_CASE("takagi: random symmetric reconstruction") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const CMatrix A = gen::random_symmetric(rng, n);
    const auto t = takagi(A);
    const CMatrix rec = t.W * t.S.cast<Complex>().asDiagonal() * t.W.transpose();
    CHECK((rec - A).norm() <= 1e-10 * std::max(1.0, A.norm()));
    CHECK(unitarity(t.W) <= 1e-10);
  }
}

TEST_CASE("takagi: degenerate singular values still reconstruct") {
  std::mt19937_64 rng(17);
  // W diag(s, s, t) W^T with a repeated singular value.
  const CMatrix W = gen::random_unitary(rng, 3);
  RVector s(3);
  s << 0.8, 0.8, 0.3;
  const CMatrix A = W * s.cast<Complex>().asDiagonal() * W.transpose();
  const auto t = takagi(A);
  const CMatrix rec = t.W * t.S.cast<Complex>().asDiagonal() * t.W.transpose();
  CHECK((rec - A).norm() <= 1e-10);
}

TEST_CASE("takagi: rejects non-symmetric input") {
  CMatrix A(2, 2);
  A << 1, 2, 5, 3;
  CHECK_THROWS_AS(takagi(A), NotSymmetric);
}

TEST_CASE("psd_sqrt: fixed and random cases") {
  CHECK((psd_sqrt(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)).norm() <=
        1e-12);

  CMatrix A = CMatrix::Zero(2, 2);
  A(0, 0) = 4.0;
  CMatrix B = psd_sqrt(A);
  CHECK(std::abs(B(0, 0) - Complex(2.0)) <= 1e-12);
  CHECK(std::abs(B(1, 1)) <= 1e-12);

  std::mt19937_64 rng(23);
  const CMatrix Q = gen::random_unitary(rng, 2);
  RVector lam(2);
  lam << 0.3, 0.7;
  const CMatrix H = Q * lam.cast<Complex>().asDiagonal() * Q.adjoint();
  const CMatrix S = psd_sqrt(H);
  CHECK((S * S - H).norm() <= 1e-10);
  // Round trip: psd_sqrt(B^2) = B for PSD B.
  CHECK((psd_sqrt(CMatrix(S * S)) - S).norm() <= 1e-9);
}

TEST_CASE("psd_sqrt: rejects genuinely negative input") {
  CMatrix A = CMatrix::Identity(2, 2);
  A(1, 1) = -0.5;
  CHECK_THROWS_AS(psd_sqrt(A), NotPSD);
}

TEST_CASE("joint_nullspace: explicit kernels") {
  const auto full = joint_nullspace({CMatrix::Zero(2, 2)}, 1e-8);
  CHECK(full.size() == 2);

  const auto none = joint_nullspace({CMatrix::Identity(2, 2)}, 1e-8);
  CHECK(none.empty());

  CMatrix row(1, 2);
  row << 1, -1;
  const auto one = joint_nullspace({row}, 1e-8);
  REQUIRE(one.size() == 1);
  const CVector v = one[0];
  CHECK(std::abs(std::abs(v(0)) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  CHECK(std::abs(v(0) - v(1)) <= 1e-12);

  CHECK_THROWS_AS(joint_nullspace({}, 1e-8), InvalidInput);
}

TEST_CASE("joint_nullspace: vectors kill every map") {
  std::mt19937_64 rng(31);
  const CMatrix A = gen::random_matrix(rng, 2, 5);
  const CMatrix B = gen::random_matrix(rng, 1, 5);
  const auto basis = joint_nullspace({A, B}, 1e-8);
  CHECK(basis.size() == 2);
  for (const auto& v : basis) {
    CHECK((A * v).norm() <= 1e-8 * std::sqrt(2.0));
    CHECK((B * v).norm() <= 1e-8 * std::sqrt(2.0));
  }
}

TEST_CASE("poly_roots: explicit polynomials") {
  auto near = [](const std::vector<Complex>& roots, Complex target) {
    for (Complex r : roots)
      if (std::abs(r - target) <= 1e-8) return true;
    return false;
  };

  const auto quad = poly_roots({-1.0, 0.0, 1.0});  // z^2 - 1
  REQUIRE(quad.size() == 2);
  CHECK(near(quad, 1.0));
  CHECK(near(quad, -1.0));

  const Complex lambda(0.2, 0.4);
  const auto lin = poly_roots({-lambda, 1.0});
  REQUIRE(lin.size() == 1);
  CHECK(std::abs(lin[0] - lambda) <= 1e-12);

  // (z - 0.3)(z - 0.5i) expanded.
  const Complex a(0.3, 0.0), b(0.0, 0.5);
  const auto both_roots = poly_roots({a * b, -(a + b), 1.0});
  REQUIRE(both_roots.size() == 2);
  CHECK(near(both_roots, a));
  CHECK(near(both_roots, b));

  CHECK_THROWS_AS(poly_roots({Complex(0.0)}), InvalidInput);
}

TEST_CASE("poly_roots: residuals are small on random polynomials") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<Complex> coeffs;
    const int deg = 2 + static_cast<int>(rng() % 9);
    for (int k = 0; k <= deg; ++k) coeffs.push_back(gen::random_complex(rng));
    double scale = 0.0;
    for (Complex c : coeffs) scale = std::max(scale, std::abs(c));
    const auto roots = poly_roots(coeffs);
    REQUIRE(static_cast<int>(roots.size()) == deg);
    for (Complex r : roots) {
      Complex p = 0.0;
      for (int k = deg; k >= 0; --k) p = p * r + coeffs[static_cast<size_t>(k)];
      const double growth = std::pow(std::max(1.0, std::abs(r)), deg);
      CHECK(std::abs(p) <= 1e-8 * scale * growth);
    }
  }
}

TEST_CASE("polar_unitary and op_norm basics") {
  std::mt19937_64 rng(47);
  const CMatrix A = gen::random_matrix(rng, 4, 4);
  const CMatrix U = polar_unitary(A);
  CHECK(unitarity(U) <= 1e-10);
  // The Hermitian factor U^H A must be PSD.
  const CMatrix P = U.adjoint() * A;
  CHECK((P - P.adjoint()).norm() <= 1e-9);
  CHECK(op_norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
}
