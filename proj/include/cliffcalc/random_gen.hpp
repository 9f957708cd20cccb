#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/multivector.hpp"
#include "cliffcalc/operator_tuple.hpp"
#include "cliffcalc/scalars.hpp"

namespace cliffcalc {

/// All stochastic test inputs flow through these helpers so that a fixed
/// seed reproduces every matrix, point and polynomial byte for byte.
using Rng = std::mt19937_64;

inline double random_real(Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

/// Random Hermitian matrix with entries of magnitude about `scale`.
inline Matrix random_hermitian(int dim, Rng& rng, double scale = 1.0) {
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      a(i, j) = Complex(random_real(rng), random_real(rng));
    }
  }
  Matrix h = Matrix(0.5 * scale * (a + a.adjoint()));
  return h;
}

inline OperatorTuple random_hermitian_tuple(int count, int dim, Rng& rng,
                                            double scale = 1.0) {
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) ops.push_back(random_hermitian(dim, rng, scale));
  return OperatorTuple(ops);
}

/// Commuting Hermitian tuple: every entry is a real polynomial in one shared
/// random Hermitian matrix.
inline OperatorTuple random_commuting_tuple(int count, int dim, Rng& rng,
                                            double scale = 1.0) {
  const Matrix s = random_hermitian(dim, rng, scale);
  const Matrix id = Matrix::Identity(dim, dim);
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    const double c0 = random_real(rng);
    const double c1 = random_real(rng);
    const double c2 = random_real(rng);
    ops.push_back(Matrix(c0 * id + c1 * s + c2 * s * s));
  }
  return OperatorTuple(ops);
}

/// Uniform direction on the unit sphere of R^{n+1}.
inline Point random_direction(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Point p(static_cast<std::size_t>(n) + 1);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& c : p) {
      c = gauss(rng);
      norm2 += c * c;
    }
  } while (norm2 < 1e-12);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& c : p) c *= inv;
  return p;
}

inline Point random_point_in_ball(int n, double radius, Rng& rng) {
  Point p = random_direction(n, rng);
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double r = radius * std::pow(u, 1.0 / (n + 1));
  for (double& c : p) c *= r;
  return p;
}

inline Multivector<double> random_multivector(int n, Rng& rng) {
  Multivector<double> a(n);
  const Blade count = Blade{1} << n;
  for (Blade b = 0; b < count; ++b) a.set_coeff(b, random_real(rng));
  return a;
}

/// Random polynomial in the hyperholomorphic monomial basis with full
/// multivector coefficients on every index of degree <= max_degree.
inline HyperPolynomial random_hyper_polynomial(int n, int max_degree, Rng& rng) {
  HyperPolynomial f(n);
  for (const MultiIndex& alpha : multi_indices_up_to(n, max_degree)) {
    f.set_coeff(alpha, random_multivector(n, rng));
  }
  return f;
}

}  // namespace cliffcalc
