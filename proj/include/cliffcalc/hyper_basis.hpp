#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/multivector.hpp"
#include "cliffcalc/mv_polynomial.hpp"
#include "cliffcalc/symmetric_product.hpp"

namespace cliffcalc {

// The degree-k hyperholomorphic polynomials on R^{n+1} are spanned by the
// symmetric powers V_alpha = (regular variables)^{x alpha}; this header
// provides point evaluation, the symbolic forms, the Cauchy-Kovalevskaya
// route, and finite Taylor data Sum_alpha V_alpha(x) c_alpha.

using Point = std::vector<double>;  // (x_0, x_1, ..., x_n)

inline void validate_point(const Point& x) {
  if (x.size() < 2)
    throw std::invalid_argument("point needs at least coordinates (x0, x1)");
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("point has a non-finite coordinate");
}

inline int point_dimension(const Point& x) {
  validate_point(x);
  return static_cast<int>(x.size()) - 1;
}

inline double point_norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline void validate_alpha(const MultiIndex& alpha, int n) {
  if (static_cast<int>(alpha.size()) != n)
    throw std::invalid_argument("multi-index length " + std::to_string(alpha.size()) +
                                " does not match dimension " + std::to_string(n));
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
}

/// Value of the regular variable e_j x_0 - e_0 x_j at a point.
inline Multivector<double> regular_variable(int j, const Point& x) {
  const int n = point_dimension(x);
  if (j < 1 || j > n)
    throw std::invalid_argument("regular variable index " + std::to_string(j) +
                                " outside [1, " + std::to_string(n) + "]");
  Multivector<double> r(n);
  r.set_coeff(Blade(1) << (j - 1), x[0]);
  r.set_coeff(0, -x[j]);
  return r;
}

/// V_alpha(x): the symmetric product of regular-variable values with
/// multiplicities alpha; V_0 = e_0.
inline Multivector<double> v_poly_point(const MultiIndex& alpha, const Point& x) {
  const int n = point_dimension(x);
  validate_alpha(alpha, n);
  std::vector<Multivector<double>> factors;
  for (int j = 1; j <= n; ++j)
    for (int t = 0; t < alpha[j - 1]; ++t) factors.push_back(regular_variable(j, x));
  if (factors.empty()) return Multivector<double>::unit(n);
  return symmetric_product(factors);
}

/// Symbolic V_alpha as a polynomial in x_0..x_n.
template <typename S>
MvPolynomial<S> v_poly_sym(const MultiIndex& alpha, int n) {
  validate_generator_count(n);
  validate_alpha(alpha, n);
  std::vector<MvPolynomial<S>> factors;
  for (int j = 1; j <= n; ++j)
    for (int t = 0; t < alpha[j - 1]; ++t)
      factors.push_back(MvPolynomial<S>::regular_variable(n, j));
  if (factors.empty())
    return MvPolynomial<S>::constant(n, Multivector<S>::unit(n));
  return symmetric_product(factors);
}

/// Cauchy-Kovalevskaya route: extend the restriction x_1^{a1}...x_n^{an}
/// off the x_0 = 0 hyperplane,
///   (-1)^{|alpha|} * Sum_{j=0}^{|alpha|} ((-x_0)^j / j!) Dt^j (x_1^{a1}...x_n^{an}),
/// with Dt = Sum_l e_l d/dx_l.  The leading sign aligns the extension with
/// the symmetric-power form, so this must reproduce v_poly_sym exactly.
template <typename S>
MvPolynomial<S> v_poly_ck_sym(const MultiIndex& alpha, int n) {
  validate_generator_count(n);
  validate_alpha(alpha, n);
  const int k = mi_degree(alpha);

  Exponents restriction(n + 1, 0);
  for (int j = 1; j <= n; ++j) restriction[j] = alpha[j - 1];
  MvPolynomial<S> layer =
      MvPolynomial<S>::monomial(n, restriction, Multivector<S>::unit(n));

  MvPolynomial<S> acc(n);
  S coeff = S(1);
  for (int j = 0; j <= k; ++j) {
    if (j > 0) {
      layer = dirac_tangential(layer);
      coeff = scalar_neg(coeff);
      scalar_div(coeff, j);
    }
    Exponents x0pow(n + 1, 0);
    x0pow[0] = j;
    MvPolynomial<S> term =
        layer * MvPolynomial<S>::monomial(n, x0pow, Multivector<S>::unit(n));
    acc += term.scaled(coeff);
  }
  if (k % 2 == 1) acc = -acc;
  return acc;
}

/// Numeric Cauchy-Kovalevskaya evaluation of V_alpha.
inline Multivector<double> v_poly_ck(const MultiIndex& alpha, const Point& x) {
  const int n = point_dimension(x);
  return v_poly_ck_sym<double>(alpha, n).evaluate(x);
}

/// Finite Taylor data f(x) = Sum_alpha V_alpha(x) c_alpha with right
/// multivector coefficients.
class HyperPolynomial {
 public:
  explicit HyperPolynomial(int n) : n_(n) { validate_generator_count(n); }

  int generators() const { return n_; }

  void set_coeff(const MultiIndex& alpha, Multivector<double> c) {
    validate_alpha(alpha, n_);
    if (c.generators() != n_)
      throw std::invalid_argument("coefficient generator count disagrees with polynomial");
    if (c.is_zero())
      coeffs_.erase(alpha);
    else
      coeffs_.insert_or_assign(alpha, std::move(c));
  }

  Multivector<double> coeff(const MultiIndex& alpha) const {
    validate_alpha(alpha, n_);
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? Multivector<double>(n_) : it->second;
  }

  const std::map<MultiIndex, Multivector<double>>& terms() const { return coeffs_; }

  int degree() const {
    int d = -1;
    for (const auto& [a, c] : coeffs_) d = std::max(d, mi_degree(a));
    return d;
  }

  Multivector<double> evaluate(const Point& x) const {
    if (point_dimension(x) != n_)
      throw std::invalid_argument("point dimension disagrees with polynomial");
    Multivector<double> acc(n_);
    for (const auto& [a, c] : coeffs_) acc += mv_mul(v_poly_point(a, x), c);
    return acc;
  }

  HyperPolynomial& operator+=(const HyperPolynomial& o) {
    if (n_ != o.n_) throw std::invalid_argument("polynomial dimensions disagree");
    for (const auto& [a, c] : o.coeffs_) {
      auto it = coeffs_.find(a);
      if (it == coeffs_.end()) {
        coeffs_.emplace(a, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
      }
    }
    return *this;
  }

  HyperPolynomial scaled(double s) const {
    HyperPolynomial r(n_);
    for (const auto& [a, c] : coeffs_) r.set_coeff(a, scaled_left(s, c));
    return r;
  }

 private:
  int n_;
  std::map<MultiIndex, Multivector<double>> coeffs_;
};

}  // namespace cliffcalc
