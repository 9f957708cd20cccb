#pragma once

#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "cliffcalc/multivector.hpp"
#include "cliffcalc/scalars.hpp"

namespace cliffcalc {

/// A faithful complex matrix representation of Cl_{0,n}: matrices E_j with
/// E_j^2 = -I and E_i E_j = -E_j E_i.
struct GeneratorRep {
  int n = 0;
  int dim = 0;
  std::vector<Matrix> generators;  // E_1..E_n, anti-Hermitian
};

/// Jordan-Wigner construction: with Pauli matrices s1, s2, s3,
///   G_{2k-1} = s3^{(k-1)} (x) s1 (x) I (x) ... ,
///   G_{2k}   = s3^{(k-1)} (x) s2 (x) I (x) ... ,
/// gives Hermitian anticommuting square roots of +I; E_j = i G_j then
/// satisfies the Cl_{0,n} relations on C^{2^ceil(n/2)}.
inline GeneratorRep generator_matrices(int n) {
  validate_generator_count(n);
  const int q = (n + 1) / 2;
  const int dim = 1 << q;

  Matrix s1(2, 2), s2(2, 2), s3(2, 2), id2(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Complex(0, -1), Complex(0, 1), 0;
  s3 << 1, 0, 0, -1;
  id2 << 1, 0, 0, 1;

  GeneratorRep rep;
  rep.n = n;
  rep.dim = dim;
  for (int j = 1; j <= n; ++j) {
    const int pair = (j + 1) / 2;  // which tensor slot carries s1/s2
    Matrix g = Matrix::Identity(1, 1);
    for (int slot = 1; slot <= q; ++slot) {
      const Matrix& factor =
          (slot < pair) ? s3 : (slot == pair ? (j % 2 == 1 ? s1 : s2) : id2);
      g = Eigen::kroneckerProduct(g, factor).eval();
    }
    rep.generators.push_back(Complex(0, 1) * g);
  }
  return rep;
}

/// Matrix of a single basis blade, generators multiplied in ascending order.
inline Matrix blade_matrix(Blade b, const GeneratorRep& rep) {
  Matrix m = Matrix::Identity(rep.dim, rep.dim);
  for (int k = 0; k < rep.n; ++k)
    if (b & (Blade(1) << k)) m = (m * rep.generators[k]).eval();
  return m;
}

/// Extend the representation to a full multivector by linearity.
template <typename S>
Matrix represent(const Multivector<S>& x, const GeneratorRep& rep) {
  if (x.generators() != rep.n)
    throw std::invalid_argument("multivector and representation dimensions disagree");
  Matrix acc = Matrix::Zero(rep.dim, rep.dim);
  for (Blade b = 0; b < x.blade_count(); ++b) {
    if (scalar_is_zero(x.coeff(b))) continue;
    acc += scalar_mul(x.coeff(b), blade_matrix(b, rep));
  }
  return acc;
}

}  // namespace cliffcalc
