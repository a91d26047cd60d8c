#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "symcontract/blaschke.hpp"
#include "symcontract/charfun.hpp"
#include "symcontract/errors.hpp"
#include "symcontract/gen.hpp"
#include "symcontract/numlin.hpp"

using namespace symcontract;

TEST_CASE("make_contraction: clamping and rejection") {
  std::mt19937_64 rng(1);
  const CMatrix U = gen::random_unitary(rng, 3);
  CHECK(numlin::op_norm(make_contraction(CMatrix(U * (1.0 + 5e-11))).T) <=
        1.0 + 1e-12);
  CHECK_THROWS_AS(make_contraction(CMatrix(2.0 * U)), NotAContraction);
  CHECK_THROWS_AS(make_contraction(gen::random_matrix(rng, 2, 3)),
                  InvalidInput);
}

TEST_CASE("defect: fixed examples") {
  SUBCASE("zero operator") {
    const auto dd = defect(make_contraction(CMatrix::Zero(3, 3)));
    CHECK(dd.dT == 3);
    CHECK(dd.dTstar == 3);
    CHECK((dd.DT - CMatrix::Identity(3, 3)).norm() <= 1e-12);
  }
  SUBCASE("unitary has no defect") {
    std::mt19937_64 rng(2);
    const auto dd = defect(make_contraction(gen::random_unitary(rng, 3)));
    CHECK(dd.dT == 0);
    CHECK(dd.dTstar == 0);
  }
  SUBCASE("diag(0.6, 1)") {
    CMatrix T = CMatrix::Zero(2, 2);
    T(0, 0) = 0.6;
    T(1, 1) = 1.0;
    const auto dd = defect(make_contraction(T));
    CHECK(dd.dT == 1);
    CHECK(std::abs(dd.DT(0, 0) - Complex(0.8)) <= 1e-12);
  }
  SUBCASE("DT squares back to I - T*T") {
    std::mt19937_64 rng(3);
    const Contraction T =
        make_contraction(gen::random_contraction_matrix(rng, 4));
    const auto dd = defect(T);
    const CMatrix I = CMatrix::Identity(4, 4);
    CHECK((dd.DT * dd.DT - (I - T.T.adjoint() * T.T)).norm() <= 1e-9);
    CHECK((dd.basisT.adjoint() * dd.basisT -
           CMatrix::Identity(dd.dT, dd.dT)).norm() <= 1e-10);
  }
}

TEST_CASE("char_eval: fixed examples") {
  SUBCASE("zero operator gives z I") {
    const Contraction T = make_contraction(CMatrix::Zero(2, 2));
    const Complex z(0.3, 0.2);
    const CMatrix th = char_eval(T, z);
    CHECK((th - z * CMatrix::Identity(2, 2)).norm() <= 1e-12);
  }
  SUBCASE("value at zero is -T compressed to the defect spaces") {
    std::mt19937_64 rng(5);
    const Contraction T =
        make_contraction(gen::random_contraction_matrix(rng, 3));
    const auto dd = defect(T);
    const CMatrix th0 = char_eval(T, dd, 0.0);
    const CMatrix expect = -dd.basisTstar.adjoint() * T.T * dd.basisT;
    CHECK((th0 - expect).norm() <= 1e-12);
  }
  SUBCASE("Jordan block gives a scalar of modulus |z|^2") {
    CMatrix J2(2, 2);
    J2 << 0, 1, 0, 0;
    const Contraction T = make_contraction(J2);
    for (Complex z : default_grid(2)) {
      const CMatrix th = char_eval(T, z);
      REQUIRE(th.rows() == 1);
      REQUIRE(th.cols() == 1);
      CHECK(std::abs(std::abs(th(0, 0)) - std::norm(z)) <= 1e-10);
    }
  }
  SUBCASE("error cases") {
    const Contraction T = make_contraction(CMatrix::Zero(2, 2));
    CHECK_THROWS_AS(char_eval(T, Complex(1.0, 0.5)), OutOfDisk);
    std::mt19937_64 rng(6);
    const Contraction U = make_contraction(gen::random_unitary(rng, 2));
    CHECK_THROWS_AS(char_eval(U, Complex(0.1)), NoDefect);
  }
}

TEST_CASE("char_eval values are contractions and analytic") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const Contraction T =
        make_contraction(gen::random_contraction_matrix(rng, 4));
    const auto theta = char_evaluator(T);
    for (Complex z : default_grid(4))
      CHECK(numlin::op_norm(theta(z)) <= 1.0 + 1e-8);

    // Finite-difference Cauchy-Riemann check at an interior point.
    const Complex z0(0.21, -0.13);
    const double h = 1e-4;
    const CMatrix dx = (theta(z0 + h) - theta(z0 - h)) / (2.0 * h);
    const CMatrix dy =
        (theta(z0 + Complex(0, h)) - theta(z0 - Complex(0, h))) / (2.0 * h);
    // d/dzbar = (dx + i dy) / 2 must vanish.
    CHECK(0.5 * (dx + Complex(0, 1) * dy).norm() <= 1e-6);
  }
}

TEST_CASE("is_pure_at_origin") {
  CHECK(is_pure_at_origin(CMatrix::Zero(2, 2)));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 0.2;
  CHECK_FALSE(is_pure_at_origin(d));

  CMatrix T = CMatrix::Zero(2, 2);
  T(0, 0) = 0.5;
  T(1, 1) = 0.3;
  const Contraction c = make_contraction(T);
  CHECK(is_pure_at_origin(char_eval(c, 0.0)));
}

TEST_CASE("is_inner_sampled") {
  SUBCASE("theta(z) = z I is inner with defect 1 - r^2") {
    auto eval = [](Complex z) {
      return CMatrix(z * CMatrix::Identity(2, 2));
    };
    const auto rep = is_inner_sampled(eval);
    CHECK(rep.inner);
    for (size_t k = 0; k < rep.radii.size(); ++k) {
      const double r = rep.radii[k];
      const double expect = std::sqrt(2.0) * (1.0 - r * r);
      CHECK(rep.isometry_defect[k] == doctest::Approx(expect).epsilon(1e-6));
    }
  }
  SUBCASE("constant strict contraction is not inner") {
    auto eval = [](Complex) {
      return CMatrix(0.5 * CMatrix::Identity(1, 1));
    };
    CHECK_FALSE(is_inner_sampled(eval).inner);
  }
  SUBCASE("compressed shift of a degree-3 product is inner") {
    std::mt19937_64 rng(11);
    const Contraction T = compressed_shift(gen::random_blaschke(rng, 3));
    CHECK(is_inner_sampled(char_evaluator(T)).inner);
  }
}

TEST_CASE("cnu_unitary_split") {
  std::mt19937_64 rng(13);
  SUBCASE("unitary: whole space") {
    const auto s = cnu_unitary_split(make_contraction(gen::random_unitary(rng, 3)));
    CHECK_FALSE(s.cnu);
    CHECK(s.unitary_dim == 3);
  }
  SUBCASE("strict contraction: trivial") {
    const auto s = cnu_unitary_split(
        make_contraction(gen::random_contraction_matrix(rng, 3)));
    CHECK(s.cnu);
    CHECK(s.unitary_dim == 0);
  }
  SUBCASE("diag(1, 0.5): first axis") {
    CMatrix T = CMatrix::Zero(2, 2);
    T(0, 0) = 1.0;
    T(1, 1) = 0.5;
    const auto s = cnu_unitary_split(make_contraction(T));
    CHECK_FALSE(s.cnu);
    CHECK(s.unitary_dim == 1);
    CMatrix P = CMatrix::Zero(2, 2);
    P(0, 0) = 1.0;
    CHECK((s.unitary_projection - P).norm() <= 1e-6);
  }
}

TEST_CASE("c00_check") {
  CMatrix J2(2, 2);
  J2 << 0, 1, 0, 0;
  CHECK(c00_check(make_contraction(J2)));

  CMatrix T = CMatrix::Zero(2, 2);
  T(0, 0) = 1.0;
  T(1, 1) = 0.5;
  CHECK_FALSE(c00_check(make_contraction(T)));

  std::mt19937_64 rng(17);
  const FamilySpec spec{gen::random_blaschke(rng, 2),
                        gen::random_blaschke(rng, 2), Complex(0.5)};
  CHECK(c00_check(build_T(spec)));
}

TEST_CASE("detect_J: fixed examples") {
  SUBCASE("defect one is always symmetric") {
    std::mt19937_64 rng(19);
    const Contraction T = compressed_shift(gen::random_blaschke(rng, 3));
    const auto res = detect_J(T, default_grid(3));
    CHECK(res.verdict == Verdict::Symmetric);
    REQUIRE(res.J.has_value());
    CHECK(res.J->U.rows() == 1);
  }
  SUBCASE("symmetric matrix contraction") {
    std::mt19937_64 rng(23);
    CMatrix S = gen::random_symmetric(rng, 3);
    S *= 0.8 / numlin::op_norm(S);
    const Contraction T = make_contraction(S);
    const auto res = detect_J(T, default_grid(3));
    CHECK(res.verdict == Verdict::Symmetric);
    CHECK(res.residual <= 1e-8);
  }
  SUBCASE("non-related family instance is certified NOT_SYMMETRIC") {
    FiniteBlaschke u;
    u.zeros = {0.0, 0.0};  // z^2 up to sign convention
    FiniteBlaschke v;
    v.zeros = {0.0, 0.5};  // z b_{0.5} up to sign convention
    const FamilySpec spec{u, v, Complex(0.3)};
    const Contraction T = build_T(spec);
    const auto res = detect_J(T, default_grid(static_cast<int>(T.T.rows())));
    CHECK(res.verdict == Verdict::NotSymmetric);
    CHECK(res.nullspace_dim == 0);
  }
  SUBCASE("empty grid is rejected") {
    const Contraction T = make_contraction(CMatrix::Zero(2, 2));
    CHECK_THROWS_AS(detect_J(T, {}), InvalidInput);
  }
}

TEST_CASE("detect_J witness symmetrizes the characteristic function") {
  std::mt19937_64 rng(29);
  CMatrix S = gen::random_symmetric(rng, 3);
  S *= 0.8 / numlin::op_norm(S);
  const Contraction T = make_contraction(S);
  const auto grid = default_grid(3);
  const auto res = detect_J(T, grid);
  REQUIRE(res.verdict == Verdict::Symmetric);
  const auto dd = defect(T);
  for (Complex z : grid) {
    const CMatrix m = char_eval(T, dd, z) * res.J->U.transpose();
    CHECK((m - m.transpose().eval()).norm() <= 1e-8);
  }
}

TEST_CASE("coincide") {
  std::mt19937_64 rng(31);
  const Contraction T =
      make_contraction(gen::random_contraction_matrix(rng, 3));
  const auto theta = char_evaluator(T);
  const auto grid = default_grid(3);

  SUBCASE("with itself") {
    const auto c = coincide(theta, theta, grid);
    REQUIRE(c.has_value());
    CHECK(c->residual <= 1e-8);
  }
  SUBCASE("unimodular scalar multiple") {
    const Complex mu = std::polar(1.0, 0.7);
    auto scaled = [&](Complex z) { return CMatrix(mu * theta(z)); };
    const auto c = coincide(theta, scaled, grid);
    REQUIRE(c.has_value());
    CHECK(c->residual <= 1e-8);
  }
  SUBCASE("Jordan block coincides with z^2") {
    CMatrix J2(2, 2);
    J2 << 0, 1, 0, 0;
    const auto th = char_evaluator(make_contraction(J2));
    auto zsq = [](Complex z) {
      CMatrix m(1, 1);
      m(0, 0) = z * z;
      return m;
    };
    const auto c = coincide(th, zsq, default_grid(2));
    REQUIRE(c.has_value());
    CHECK(c->residual <= 1e-8);
  }
  SUBCASE("dimension mismatch yields absent") {
    auto one = [](Complex z) {
      return CMatrix(z * CMatrix::Identity(1, 1));
    };
    CHECK_FALSE(coincide(theta, one, grid).has_value());
  }
}

TEST_CASE("classify") {
  std::mt19937_64 rng(37);
  SUBCASE("2x2 contractions are symmetric both ways") {
    const Contraction T =
        make_contraction(gen::random_contraction_matrix(rng, 2));
    const auto rep = classify(T);
    CHECK(rep.overall == Verdict::Symmetric);
    CHECK(rep.direct.verdict == Verdict::Symmetric);
    CHECK(rep.char_side.verdict == Verdict::Symmetric);
    CHECK_FALSE(rep.disagreement);
  }
  SUBCASE("compressed shift (defect one)") {
    const Contraction T = compressed_shift(gen::random_blaschke(rng, 4));
    const auto rep = classify(T);
    CHECK(rep.overall == Verdict::Symmetric);
    CHECK(rep.cnu);
    CHECK(rep.c00);
  }
  SUBCASE("direct sum of complex symmetric operators") {
    CMatrix T = CMatrix::Zero(4, 4);
    T.topLeftCorner(2, 2) = gen::random_symmetric(rng, 2);
    T.topLeftCorner(2, 2) *= 0.7 / numlin::op_norm(T.topLeftCorner(2, 2));
    CMatrix J2(2, 2);
    J2 << 0, 1, 0, 0;
    T.bottomRightCorner(2, 2) = J2;
    const auto rep = classify(make_contraction(T));
    CHECK(rep.overall == Verdict::Symmetric);
  }
}

TEST_CASE("definite verdicts never conflict on a random corpus") {
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 15; ++rep) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Contraction T =
        make_contraction(gen::random_contraction_matrix(rng, n));
    const auto r = classify(T, {}, 1e-8, rep);
    CHECK_FALSE(r.disagreement);
  }
}

TEST_CASE("default_grid: size and containment") {
  const auto g = default_grid(3);
  CHECK(g.size() >= 24);
  for (Complex z : g) CHECK(std::abs(z) < 1.0);
  const auto big = default_grid(20);
  CHECK(big.size() >= 41);
}
