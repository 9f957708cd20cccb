#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/multivector.hpp"
#include "cliffcalc/mv_polynomial.hpp"

namespace cliffcalc {

/// Surface area of the unit sphere S^n in R^{n+1}.
inline double sphere_surface_constant(int n) {
  validate_generator_count(n);
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

/// N(x) / |x|^q with a multivector-coefficient polynomial numerator and an
/// integer power of the Euclidean norm below.  Closed under d/dx_j, which
/// raises q by two:
///   d/dx_j (N / |x|^q) = (dN/dx_j |x|^2 - q x_j N) / |x|^{q+2}.
struct RadialFraction {
  int n;
  MvPolynomial<Rational> numerator;
  int denom_power;

  RadialFraction(MvPolynomial<Rational> num, int q)
      : n(num.generators()), numerator(std::move(num)), denom_power(q) {}

  RadialFraction derivative(int j) const {
    MvPolynomial<Rational> r2(n);
    for (int v = 0; v <= n; ++v) {
      Exponents e(n + 1, 0);
      e[v] = 2;
      r2.add_term(std::move(e), Multivector<Rational>::unit(n));
    }
    Exponents xj(n + 1, 0);
    if (j < 0 || j > n) throw std::invalid_argument("derivative variable out of range");
    xj[j] = 1;
    const auto xj_poly =
        MvPolynomial<Rational>::monomial(n, std::move(xj), Multivector<Rational>::unit(n));

    MvPolynomial<Rational> num = numerator.derivative(j) * r2;
    num -= (numerator * xj_poly).scaled(Rational(denom_power));
    return RadialFraction(std::move(num), denom_power + 2);
  }

  /// Dirac derivative sum_{j=0..n} e_j d/dx_j (e_0 = unit), collected over
  /// the common denominator |x|^{q+2}.  Exactly zero for the kernel and all
  /// its derivatives.
  RadialFraction dirac() const {
    MvPolynomial<Rational> acc(n);
    MvPolynomial<Rational> r2(n);
    for (int v = 0; v <= n; ++v) {
      Exponents e(n + 1, 0);
      e[v] = 2;
      r2.add_term(std::move(e), Multivector<Rational>::unit(n));
    }
    for (int j = 0; j <= n; ++j) {
      const auto ej = (j == 0) ? Multivector<Rational>::unit(n)
                               : Multivector<Rational>::generator(n, j);
      Exponents xj(n + 1, 0);
      xj[j] = 1;
      const auto xj_poly =
          MvPolynomial<Rational>::monomial(n, std::move(xj), Multivector<Rational>::unit(n));
      MvPolynomial<Rational> term = numerator.derivative(j) * r2;
      term -= (numerator * xj_poly).scaled(Rational(denom_power));
      acc += term.mv_scaled_left(ej);
    }
    return RadialFraction(std::move(acc), denom_power + 2);
  }

  Multivector<double> evaluate(const Point& x) const {
    if (point_dimension(x) != n)
      throw std::invalid_argument("point dimension disagrees with fraction");
    const double r = point_norm(x);
    if (r == 0.0) throw std::domain_error("radial fraction is singular at the origin");
    return scaled_left(std::pow(r, -denom_power), numerator.evaluate(x));
  }
};

/// The unnormalized kernel conjugate(x) / |x|^{n+1} in symbolic form.
inline RadialFraction cauchy_kernel_fraction(int n) {
  validate_generator_count(n);
  MvPolynomial<Rational> num(n);
  Exponents e0(n + 1, 0);
  e0[0] = 1;
  num.add_term(std::move(e0), Multivector<Rational>::unit(n));
  for (int j = 1; j <= n; ++j) {
    Exponents ej(n + 1, 0);
    ej[j] = 1;
    num.add_term(std::move(ej), -Multivector<Rational>::generator(n, j));
  }
  return RadialFraction(std::move(num), n + 1);
}

/// E(x) = (1/w_n) conjugate(x) / |x|^{n+1}, the reproducing kernel of the
/// Dirac operator on R^{n+1}; w_n = area of the unit S^n.
inline Multivector<double> cauchy_kernel(const Point& x) {
  const int n = point_dimension(x);
  const double r = point_norm(x);
  if (r == 0.0) throw std::domain_error("Cauchy kernel is singular at the origin");
  const double scale = 1.0 / (sphere_surface_constant(n) * std::pow(r, n + 1));
  Multivector<double> out(n);
  out.set_coeff(0, scale * x[0]);
  for (int j = 1; j <= n; ++j) out.set_coeff(Blade(1) << (j - 1), -scale * x[j]);
  return out;
}

/// Flattened double-precision form of a RadialFraction for fast repeated
/// evaluation, with an overall scale folded into the coefficients.
struct CompiledFraction {
  int n = 0;
  int denom_power = 0;
  std::vector<std::pair<Exponents, Multivector<double>>> terms;

  Multivector<double> evaluate(const Point& x) const {
    if (point_dimension(x) != n)
      throw std::invalid_argument("point dimension disagrees with fraction");
    const double r = point_norm(x);
    if (r == 0.0) throw std::domain_error("radial fraction is singular at the origin");
    Multivector<double> acc(n);
    for (const auto& [e, c] : terms) {
      double mono = 1.0;
      for (std::size_t j = 0; j < e.size(); ++j)
        for (int t = 0; t < e[j]; ++t) mono *= x[j];
      acc += scaled_left(mono, c);
    }
    return scaled_left(std::pow(r, -denom_power), acc);
  }
};

inline CompiledFraction compile_fraction(const RadialFraction& f, double scale) {
  CompiledFraction c;
  c.n = f.n;
  c.denom_power = f.denom_power;
  for (const auto& [e, mv] : f.numerator.terms())
    c.terms.emplace_back(e, scaled_left(scale, mv_cast_double(mv)));
  return c;
}

/// The outer system W_alpha = (1/alpha!) d^alpha E, with derivatives taken
/// in x_1..x_n.  Fractions are built once per multi-index by exact symbolic
/// differentiation and kept both exact and in compiled double form.
///
/// The normalization (positive sign, 1/alpha!) is the one that makes the
/// sphere pairing biorthogonal to the V_alpha system and reproduces E in the
/// two-point decomposition; see kernel_decomposition_check.
class WPolyTable {
 public:
  WPolyTable(int n, int max_degree) : n_(n), max_degree_(max_degree) {
    validate_generator_count(n);
    if (max_degree < 0) throw std::invalid_argument("max degree must be nonnegative");
    const double wn = sphere_surface_constant(n);
    fractions_.emplace(MultiIndex(n, 0), cauchy_kernel_fraction(n));
    for (int k = 1; k <= max_degree; ++k)
      for (const auto& alpha : multi_indices(n, k)) {
        int j = 0;
        while (alpha[j] == 0) ++j;
        MultiIndex parent = alpha;
        parent[j] -= 1;
        fractions_.emplace(alpha, fractions_.at(parent).derivative(j + 1));
      }
    for (const auto& [alpha, frac] : fractions_)
      compiled_.emplace(alpha, compile_fraction(frac, 1.0 / (wn * mi_factorial(alpha))));
  }

  int dimension() const { return n_; }
  int max_degree() const { return max_degree_; }

  /// W_alpha(x).
  Multivector<double> evaluate(const MultiIndex& alpha, const Point& x) const {
    return compiled_.at(alpha).evaluate(x);
  }

  /// The exact unnormalized derivative d^alpha [conjugate(x)/|x|^{n+1}].
  const RadialFraction& fraction(const MultiIndex& alpha) const {
    return fractions_.at(alpha);
  }

 private:
  int n_;
  int max_degree_;
  std::map<MultiIndex, RadialFraction> fractions_;
  std::map<MultiIndex, CompiledFraction> compiled_;
};

/// One-shot W_alpha(x).
inline Multivector<double> w_poly(const MultiIndex& alpha, const Point& x) {
  const int n = point_dimension(x);
  validate_alpha(alpha, n);
  return WPolyTable(n, mi_degree(alpha)).evaluate(alpha, x);
}

/// Sup-norm of E(y-x) - sum_{|alpha| <= J} V_alpha(x) W_alpha(y); the tail
/// decays geometrically at rate |x|/|y|.
inline double kernel_decomposition_check(const Point& x, const Point& y, int J) {
  const int n = point_dimension(x);
  if (point_dimension(y) != n) throw std::invalid_argument("point dimensions disagree");
  if (point_norm(x) >= point_norm(y))
    throw std::domain_error("decomposition requires |x| < |y|");
  Point diff(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) diff[i] = y[i] - x[i];

  const WPolyTable table(n, J);
  Multivector<double> acc(n);
  for (const auto& alpha : multi_indices_up_to(n, J))
    acc += mv_mul(v_poly_point(alpha, x), table.evaluate(alpha, y));
  return (cauchy_kernel(diff) - acc).norm_sup();
}

}  // namespace cliffcalc
