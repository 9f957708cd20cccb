#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/multivector.hpp"
#include "cliffcalc/operator_tuple.hpp"
#include "cliffcalc/scalars.hpp"
#include "cliffcalc/symmetric_product.hpp"

namespace cliffcalc {

/// Real polynomial in m commuting variables, the classical side of the
/// symmetrization map.
class ClassicalPolynomial {
 public:
  explicit ClassicalPolynomial(int m) : m_(m) {
    if (m < 0) throw std::invalid_argument("variable count must be nonnegative");
  }

  int variables() const { return m_; }

  void set_coeff(const MultiIndex& alpha, double value) {
    if (static_cast<int>(alpha.size()) != m_)
      throw std::invalid_argument("index length disagrees with the variable count");
    for (int e : alpha)
      if (e < 0) throw std::invalid_argument("exponents must be nonnegative");
    if (value == 0.0)
      terms_.erase(alpha);
    else
      terms_.insert_or_assign(alpha, value);
  }

  void add_coeff(const MultiIndex& alpha, double value) {
    auto it = terms_.find(alpha);
    const double current = it == terms_.end() ? 0.0 : it->second;
    set_coeff(alpha, current + value);
  }

  double coeff(const MultiIndex& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? 0.0 : it->second;
  }

  const std::map<MultiIndex, double>& terms() const { return terms_; }

  int degree() const {
    int d = -1;
    for (const auto& [a, c] : terms_) d = std::max(d, mi_degree(a));
    return d;
  }

  double evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != m_)
      throw std::invalid_argument("point length disagrees with the variable count");
    double acc = 0.0;
    for (const auto& [a, c] : terms_) {
      double mono = c;
      for (int j = 0; j < m_; ++j)
        for (int e = 0; e < a[static_cast<std::size_t>(j)]; ++e)
          mono *= x[static_cast<std::size_t>(j)];
      acc += mono;
    }
    return acc;
  }

 private:
  int m_;
  std::map<MultiIndex, double> terms_;
};

/// Operator ordering by full symmetrization: every monomial becomes the
/// average of the operator products over all orderings of its factors.
inline Matrix quantize(const ClassicalPolynomial& p, const OperatorTuple& T) {
  if (p.variables() != T.count())
    throw std::invalid_argument("polynomial variable count disagrees with the tuple");
  const int d = T.dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& [alpha, c] : p.terms())
    acc += c * v_poly_operators(alpha, T);
  return acc;
}

inline Matrix jordan_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("Jordan product needs square matrices of one size");
  return 0.5 * (a * b + b * a);
}

inline double jordan_associator_residual(const Matrix& a, const Matrix& b,
                                         const Matrix& c) {
  const Matrix left = jordan_product(jordan_product(a, b), c);
  const Matrix right = jordan_product(a, jordan_product(b, c));
  return spectral_norm(Matrix(left - right));
}

/// Fixed 2x2 real symmetric triple on which the Jordan product fails to
/// associate by a norm above 0.1; kept as a regression anchor.
inline std::vector<Matrix> jordan_witness_triple() {
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2), c = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  b(0, 0) = 1.0;
  b(0, 1) = 1.0;
  b(1, 0) = 1.0;
  b(1, 1) = -1.0;
  c(0, 0) = 1.0;
  c(1, 1) = -1.0;
  return {a, b, c};
}

inline double jordan_nonassociativity_witness() {
  const std::vector<Matrix> w = jordan_witness_triple();
  return jordan_associator_residual(w[0], w[1], w[2]);
}

/// Central finite-difference mixed derivative of t -> exp(sum_j t_j T_j) at
/// t = 0, one difference level per unit of the multi-index.
inline Matrix exp_mixed_derivative(const MultiIndex& alpha, const OperatorTuple& T,
                                   double step) {
  const int m = T.count();
  if (static_cast<int>(alpha.size()) != m)
    throw std::invalid_argument("index length disagrees with the tuple");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  const int d = T.dim();

  struct Recurse {
    const OperatorTuple& T;
    double h;
    int m, d;
    Matrix run(MultiIndex& rem, std::vector<double>& t) {
      for (int j = 0; j < m; ++j) {
        if (rem[static_cast<std::size_t>(j)] == 0) continue;
        rem[static_cast<std::size_t>(j)] -= 1;
        t[static_cast<std::size_t>(j)] += h;
        const Matrix plus = run(rem, t);
        t[static_cast<std::size_t>(j)] -= 2.0 * h;
        const Matrix minus = run(rem, t);
        t[static_cast<std::size_t>(j)] += h;
        rem[static_cast<std::size_t>(j)] += 1;
        return (plus - minus) / (2.0 * h);
      }
      Matrix exponent = Matrix::Zero(d, d);
      for (int j = 0; j < m; ++j)
        exponent += t[static_cast<std::size_t>(j)] * T.op(j + 1);
      return exponent.exp();
    }
  };

  Recurse rec{T, step, m, d};
  MultiIndex rem = alpha;
  std::vector<double> t(static_cast<std::size_t>(m), 0.0);
  return rec.run(rem, t);
}

/// Distance between the Richardson-extrapolated mixed derivative of the
/// exponential flow and the symmetrized operator monomial. This bridges the
/// exponential form of operator ordering to the symmetric product: expanding
/// exp(sum t_j T_j) multinomially, the coefficient of t^alpha is exactly the
/// symmetrized product over alpha divided by alpha factorial.
inline double weyl_exponential_check(const MultiIndex& alpha, const OperatorTuple& T,
                                     double step) {
  const Matrix coarse = exp_mixed_derivative(alpha, T, step);
  const Matrix fine = exp_mixed_derivative(alpha, T, 0.5 * step);
  const Matrix extrapolated = (4.0 * fine - coarse) / 3.0;
  const Matrix direct = v_poly_operators(alpha, T);
  return spectral_norm(Matrix(extrapolated - direct));
}

/// Occupation pattern of Fermi modes, one bit per mode.
using FillingState = Blade;

inline std::string filling_state_label(FillingState state) {
  if (state == 0) return "{}";
  std::string out = "{";
  bool first = true;
  for (int j = 0; j < kMaxGenerators; ++j) {
    if ((state >> j) & 1u) {
      if (!first) out += ",";
      out += std::to_string(j + 1);
      first = false;
    }
  }
  out += "}";
  return out;
}

enum class FermiWeight { squared, absolute };

/// Probability of each occupation pattern carried by a multivector, with
/// squared-magnitude normalization by default and plain absolute weights
/// behind the switch.
inline std::map<FillingState, double> fermi_distribution(
    const Multivector<double>& a, FermiWeight weight = FermiWeight::squared) {
  const Blade count = Blade{1} << a.generators();
  double total = 0.0;
  for (Blade b = 0; b < count; ++b) {
    const double c = a.coeff(b);
    total += weight == FermiWeight::squared ? c * c : std::abs(c);
  }
  if (total == 0.0)
    throw std::invalid_argument("the zero multivector carries no distribution");
  std::map<FillingState, double> out;
  for (Blade b = 0; b < count; ++b) {
    const double c = a.coeff(b);
    const double w = weight == FermiWeight::squared ? c * c : std::abs(c);
    if (w > 0.0) out.emplace(b, w / total);
  }
  return out;
}

/// Truncated harmonic-oscillator position and momentum pair. The commutator
/// [Q, P] equals i hbar only on the leading (d-1) x (d-1) block; the last
/// diagonal entry absorbs the trace obstruction of finite dimension.
inline OperatorTuple heisenberg_pair(int dim, double hbar = 1.0) {
  if (dim < 2) throw std::invalid_argument("dimension must be at least 2");
  Matrix lower = Matrix::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix raise = lower.adjoint();
  const double s = std::sqrt(hbar / 2.0);
  const Matrix q = s * (lower + raise);
  const Matrix p = Complex(0.0, 1.0) * s * (raise - lower);
  return OperatorTuple({q, p});
}

}  // namespace cliffcalc
