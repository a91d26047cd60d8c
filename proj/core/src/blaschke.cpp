#include "symcontract/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symcontract/errors.hpp"
#include "symcontract/numlin.hpp"

namespace symcontract {

namespace {

std::vector<Complex> poly_from_roots(const std::vector<Complex>& roots,
                                     Complex lead = 1.0) {
  std::vector<Complex> p{lead};
  for (Complex r : roots) {
    std::vector<Complex> q(p.size() + 1, Complex(0.0));
    for (size_t k = 0; k < p.size(); ++k) {
      q[k + 1] += p[k];
      q[k] -= r * p[k];
    }
    p = std::move(q);
  }
  return p;
}

Complex poly_eval(const std::vector<Complex>& p, Complex z) {
  Complex v = 0.0;
  for (size_t k = p.size(); k-- > 0;) v = v * z + p[k];
  return v;
}

Complex unimodular_or_throw(Complex c, double tol, const char* what) {
  const double m = std::abs(c);
  if (std::abs(m - 1.0) > tol) throw InvalidInput(what);
  return c / m;
}

}  // namespace

int degree(const FiniteBlaschke& B) {
  return static_cast<int>(B.zeros.size());
}

Complex eval(const FiniteBlaschke& B, Complex z) {
  Complex v = B.constant;
  for (Complex lam : B.zeros) {
    const Complex den = 1.0 - std::conj(lam) * z;
    if (std::abs(den) < 1e-14)
      throw NumericalDegeneracy("blaschke eval: near pole");
    v *= (lam - z) / den;
  }
  return v;
}

FiniteBlaschke elementary(Complex lambda) {
  if (std::abs(lambda) >= 1.0)
    throw InvalidInput("elementary: zero must lie in the open disk");
  return FiniteBlaschke{{lambda}, 1.0};
}

FiniteBlaschke product(const FiniteBlaschke& u, const FiniteBlaschke& v) {
  FiniteBlaschke w;
  w.zeros = u.zeros;
  w.zeros.insert(w.zeros.end(), v.zeros.begin(), v.zeros.end());
  w.constant = u.constant * v.constant;
  return w;
}

std::vector<Complex> denominator_coeffs(const FiniteBlaschke& B) {
  std::vector<Complex> p{Complex(1.0)};
  for (Complex lam : B.zeros) {
    std::vector<Complex> q(p.size() + 1, Complex(0.0));
    for (size_t k = 0; k < p.size(); ++k) {
      q[k] += p[k];
      q[k + 1] -= std::conj(lam) * p[k];
    }
    p = std::move(q);
  }
  return p;
}

FiniteBlaschke compose_elementary(Complex mu, Complex lambda,
                                  const FiniteBlaschke& u) {
  mu = unimodular_or_throw(mu, 1e-6, "compose_elementary: |mu| != 1");
  if (std::abs(lambda) >= 1.0)
    throw InvalidInput("compose_elementary: |lambda| >= 1");
  const int n = degree(u);
  if (n == 0) {
    const Complex c = mu * (lambda - u.constant) /
                      (1.0 - std::conj(lambda) * u.constant);
    return FiniteBlaschke{{}, c};
  }

  // Zeros of mu b_lambda(u) are the solutions of u(z) = lambda:
  // numerator of u - lambda.
  std::vector<Complex> num = poly_from_roots(u.zeros);
  // poly_from_roots gives prod(z - lambda_i); u's numerator is
  // const * prod(lambda_i - z) = const * (-1)^n * that.
  Complex sign = (n % 2 == 0) ? Complex(1.0) : Complex(-1.0);
  for (auto& c : num) c *= u.constant * sign;
  std::vector<Complex> den = denominator_coeffs(u);
  std::vector<Complex> diff(std::max(num.size(), den.size()), Complex(0.0));
  for (size_t k = 0; k < num.size(); ++k) diff[k] += num[k];
  for (size_t k = 0; k < den.size(); ++k) diff[k] -= lambda * den[k];

  std::vector<Complex> roots = numlin::poly_roots(diff);
  if (static_cast<int>(roots.size()) != n)
    throw NumericalDegeneracy("compose_elementary: wrong root count");
  for (Complex r : roots) {
    if (std::abs(r) >= 1.0)
      throw NumericalDegeneracy("compose_elementary: root escaped the disk");
  }

  FiniteBlaschke out{roots, 1.0};
  // Fit the unimodular constant at a point where neither side degenerates.
  const Complex probes[] = {Complex(0.0), Complex(0.3, 0.2), Complex(-0.41),
                            Complex(0.17, -0.53)};
  bool fitted = false;
  for (Complex z0 : probes) {
    const Complex cand = eval(out, z0);
    if (std::abs(cand) < 1e-6) continue;
    const Complex target =
        mu * eval(elementary(lambda), eval(u, z0));
    out.constant = unimodular_or_throw(
        target / cand, 1e-6, "compose_elementary: constant not unimodular");
    fitted = true;
    break;
  }
  if (!fitted)
    throw NumericalDegeneracy("compose_elementary: no usable probe point");

  // Global verification.
  for (int k = 0; k < 64; ++k) {
    const Complex z = (k % 2 == 0)
                          ? std::polar(1.0, 2.0 * M_PI * k / 64)
                          : std::polar(0.6, 2.0 * M_PI * k / 64);
    const Complex ref = mu * eval(elementary(lambda), eval(u, z));
    if (std::abs(eval(out, z) - ref) > 1e-8)
      throw NumericalDegeneracy("compose_elementary: verification failed");
  }
  return out;
}

std::optional<MobiusRelation> detect_mobius_relation(const FiniteBlaschke& u,
                                                     const FiniteBlaschke& v) {
  if (degree(u) == 0 || degree(v) == 0) return std::nullopt;
  if (degree(u) != degree(v)) return std::nullopt;

  // v = mu b_lambda(u) <=> v (conj(s) u + conj(t)) = s + t u with
  // lambda = -s/t, mu = -t/conj(t): real-linear in (s, t).
  const std::vector<Complex> pts = {Complex(0.2, 0.0), Complex(0.41, 0.1),
                                    Complex(-0.33, 0.45), Complex(0.55, -0.2),
                                    Complex(0.05, -0.61), Complex(-0.48, -0.3)};
  Eigen::MatrixXd A(2 * pts.size(), 4);
  for (size_t k = 0; k < pts.size(); ++k) {
    const Complex uz = eval(u, pts[k]);
    const Complex vz = eval(v, pts[k]);
    // residual R = vz (conj(s) uz + conj(t)) - s - t uz, with
    // s = s1 + i s2, t = t1 + i t2.
    const Complex ds1 = vz * uz - 1.0;
    const Complex ds2 = -Complex(0, 1) * vz * uz - Complex(0, 1);
    const Complex dt1 = vz - uz;
    const Complex dt2 = -Complex(0, 1) * vz - Complex(0, 1) * uz;
    A(2 * k, 0) = ds1.real();
    A(2 * k, 1) = ds2.real();
    A(2 * k, 2) = dt1.real();
    A(2 * k, 3) = dt2.real();
    A(2 * k + 1, 0) = ds1.imag();
    A(2 * k + 1, 1) = ds2.imag();
    A(2 * k + 1, 2) = dt1.imag();
    A(2 * k + 1, 3) = dt2.imag();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> dec(A, Eigen::ComputeFullV);
  const double scale = std::max(1.0, dec.singularValues()(0));

  auto verify = [&](Complex s, Complex t) -> std::optional<MobiusRelation> {
    if (std::abs(t) < 1e-10 || std::abs(s) >= std::abs(t)) return std::nullopt;
    const Complex lambda = -s / t;
    const Complex mu = -t / std::conj(t);
    double worst = 0.0;
    for (int k = 0; k < 64; ++k) {
      const Complex z = (k % 2 == 0)
                            ? std::polar(1.0, 2.0 * M_PI * k / 64)
                            : std::polar(0.7, 2.0 * M_PI * (k + 0.37) / 64);
      const Complex ref = mu * eval(elementary(lambda), eval(u, z));
      worst = std::max(worst, std::abs(eval(v, z) - ref));
    }
    if (worst > 1e-8) return std::nullopt;
    return MobiusRelation{mu, lambda, worst};
  };

  for (int k = 3; k >= 0; --k) {
    if (dec.singularValues()(k) > 1e-7 * scale) break;
    const Eigen::Vector4d x = dec.matrixV().col(k);
    const Complex s(x(0), x(1));
    const Complex t(x(2), x(3));
    if (auto rel = verify(s, t)) return rel;
  }
  return std::nullopt;
}

ModelSpace::ModelSpace(FiniteBlaschke phi) : phi_(std::move(phi)) {
  for (Complex lam : phi_.zeros) {
    if (std::abs(lam) > 1.0 - 1e-10)
      throw InvalidInput("model space: zero too close to the circle");
  }
  phi_.constant =
      unimodular_or_throw(phi_.constant, 1e-6, "model space: |const| != 1");

  // Trapezoid error on the circle decays like (max |zero|)^M, so zeros
  // close to the boundary need proportionally more points.
  double maxmod = 0.0;
  for (Complex lam : phi_.zeros) maxmod = std::max(maxmod, std::abs(lam));
  const int resolve =
      maxmod > 0.9 ? static_cast<int>(std::ceil(35.0 / (1.0 - maxmod))) : 0;
  quad_points_ = std::max({512, 16 * (dim() + 1), resolve});
  // Self-check: TM basis Gram must be the identity under quadrature.
  for (;; quad_points_ *= 2) {
    const int n = dim();
    CMatrix gram = CMatrix::Zero(n, n);
    for (int m = 0; m < quad_points_; ++m) {
      const Complex w = std::polar(1.0, 2.0 * M_PI * m / quad_points_);
      const CVector e = basis_at(w);
      gram += e * e.adjoint();
    }
    gram /= static_cast<double>(quad_points_);
    if ((gram - CMatrix::Identity(n, n)).norm() <= 1e-13) break;
    if (quad_points_ >= 65536)
      throw NumericalDegeneracy("model space: quadrature failed to resolve");
  }
}

Complex ModelSpace::basis_eval(int k, Complex z) const {
  Complex prod = 1.0;
  for (int j = 0; j < k; ++j) {
    const Complex lam = phi_.zeros[static_cast<size_t>(j)];
    prod *= (z - lam) / (1.0 - std::conj(lam) * z);
  }
  const Complex lam = phi_.zeros[static_cast<size_t>(k)];
  const double nrm = std::sqrt(1.0 - std::norm(lam));
  return prod * nrm / (1.0 - std::conj(lam) * z);
}

CVector ModelSpace::basis_at(Complex z) const {
  const int n = dim();
  CVector e(n);
  Complex prod = 1.0;
  for (int k = 0; k < n; ++k) {
    const Complex lam = phi_.zeros[static_cast<size_t>(k)];
    const Complex den = 1.0 - std::conj(lam) * z;
    if (std::abs(den) < 1e-14)
      throw NumericalDegeneracy("model space: near pole");
    e(k) = prod * std::sqrt(1.0 - std::norm(lam)) / den;
    prod *= (z - lam) / den;
  }
  return e;
}

CVector ModelSpace::project_boundary(
    const std::function<Complex(Complex)>& f) const {
  const int n = dim();
  CVector c = CVector::Zero(n);
  for (int m = 0; m < quad_points_; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / quad_points_);
    c += f(w) * basis_at(w).conjugate();
  }
  return c / static_cast<double>(quad_points_);
}

ModelSpace model_space(const FiniteBlaschke& phi) { return ModelSpace(phi); }

ModelSpace model_space_zphi(const FiniteBlaschke& phi) {
  FiniteBlaschke zphi;
  zphi.zeros.reserve(phi.zeros.size() + 1);
  zphi.zeros.push_back(Complex(0.0));
  zphi.zeros.insert(zphi.zeros.end(), phi.zeros.begin(), phi.zeros.end());
  zphi.constant = phi.constant;
  return ModelSpace(std::move(zphi));
}

Complex mf_eval(const ModelFunction& f, Complex z) {
  if (f.coeffs.size() != f.space.dim())
    throw InvalidInput("mf_eval: coefficient length mismatch");
  return f.space.basis_at(z).cwiseProduct(f.coeffs).sum();
}

Contraction compressed_shift(const FiniteBlaschke& phi) {
  if (degree(phi) < 1) throw InvalidInput("compressed_shift: constant phi");
  const ModelSpace space(phi);
  const int n = space.dim();
  const int M = space.quad_points();
  CMatrix T = CMatrix::Zero(n, n);
  for (int m = 0; m < M; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / M);
    const CVector e = space.basis_at(w);
    T += w * e.conjugate() * e.transpose();  // <z e_j, e_k> at row k, col j
  }
  T /= static_cast<double>(M);
  return make_contraction(T);
}

Conjugation model_conjugation(const FiniteBlaschke& phi) {
  if (degree(phi) < 1) throw InvalidInput("model_conjugation: constant phi");
  const ModelSpace space = model_space_zphi(phi);
  const int n = space.dim();
  const int M = space.quad_points();
  CMatrix U = CMatrix::Zero(n, n);
  for (int m = 0; m < M; ++m) {
    const Complex w = std::polar(1.0, 2.0 * M_PI * m / M);
    const CVector e = space.basis_at(w);
    const Complex phiw = eval(phi, w);
    // C(e_k) = conj(e_k) phi on the boundary; U_jk = <C(e_k), e_j>.
    U += phiw * e.conjugate() * e.adjoint();
  }
  U /= static_cast<double>(M);
  const Conjugation C{U};
  if (!is_conjugation(AntilinearMap{U}, 1e-8))
    throw NumericalDegeneracy("model_conjugation: matrix not a conjugation");
  return C;
}

std::vector<CVector> fixed_points(const Conjugation& C) {
  return c_real_basis(C);
}

std::vector<Complex> fejer_riesz(const std::vector<Complex>& trig_coeffs) {
  if (trig_coeffs.empty()) throw InvalidInput("fejer_riesz: empty input");
  std::vector<Complex> c = trig_coeffs;
  const double scale = [&] {
    double s = 0.0;
    for (Complex x : c) s = std::max(s, std::abs(x));
    return std::max(1.0, s);
  }();
  while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const int m = static_cast<int>(c.size()) - 1;

  auto p_at = [&](double theta) {
    double v = c[0].real();
    for (int k = 1; k <= m; ++k)
      v += 2.0 * (c[static_cast<size_t>(k)] *
                  std::polar(1.0, k * theta)).real();
    return v;
  };

  double pmax = 0.0;
  for (int g = 0; g < 512; ++g)
    pmax = std::max(pmax, std::abs(p_at(2.0 * M_PI * g / 512)));
  for (int g = 0; g < 512; ++g) {
    if (p_at(2.0 * M_PI * g / 512) < -1e-10 * std::max(1.0, pmax))
      throw NotNonnegative("fejer_riesz: polynomial takes negative values");
  }

  if (m == 0) return {Complex(std::sqrt(std::max(0.0, c[0].real())))};

  // z^m p(z) is a polynomial of degree 2m whose roots pair up as
  // (r, 1/conj(r)); the outer factor collects the outside-the-disk half.
  std::vector<Complex> P(static_cast<size_t>(2 * m + 1));
  for (int k = -m; k <= m; ++k) {
    const Complex ck =
        k >= 0 ? c[static_cast<size_t>(k)] : std::conj(c[static_cast<size_t>(-k)]);
    P[static_cast<size_t>(k + m)] = ck;
  }
  std::vector<Complex> roots = numlin::poly_roots(P);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
    return std::abs(a) > std::abs(b);
  });
  std::vector<Complex> chosen(roots.begin(), roots.begin() + m);
  std::vector<Complex> rest(roots.begin() + m, roots.end());
  for (auto& r : chosen) {
    // A root on the circle splits into a nearby (r, 1/conj(r)) pair with
    // opposite errors; averaging the pair restores the lost accuracy.
    size_t mate = rest.size();
    double dist = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rest.size(); ++i) {
      const double d = std::abs(rest[i] - r);
      if (d < dist) {
        dist = d;
        mate = i;
      }
    }
    if (mate < rest.size() && dist <= 1e-4 * (1.0 + std::abs(r))) {
      r = 0.5 * (r + rest[mate]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(mate));
    } else if (std::abs(r) < 1.0 && std::abs(r) > 1e-8) {
      r = 1.0 / std::conj(r);
    }
  }

  std::vector<Complex> q = poly_from_roots(chosen);
  double num = 0.0, den = 0.0;
  for (int g = 0; g < 512; ++g) {
    const double theta = 2.0 * M_PI * g / 512;
    const double qq = std::norm(poly_eval(q, std::polar(1.0, theta)));
    num += std::max(0.0, p_at(theta)) * qq;
    den += qq * qq;
  }
  if (den < 1e-300) throw FactorizationFailed("fejer_riesz: degenerate factor");
  const double gamma = std::sqrt(num / den);
  for (auto& x : q) x *= gamma;

  double worst = 0.0;
  for (int g = 0; g < 512; ++g) {
    const double theta = 2.0 * M_PI * g / 512;
    worst = std::max(worst, std::abs(std::norm(poly_eval(
                                         q, std::polar(1.0, theta))) -
                                     p_at(theta)));
  }
  if (worst > 1e-8 * std::max(1.0, pmax))
    throw FactorizationFailed("fejer_riesz: modulus mismatch");
  return q;
}

}  // namespace symcontract
