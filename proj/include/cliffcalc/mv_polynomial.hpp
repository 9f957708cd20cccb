#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliffcalc/multivector.hpp"
#include "cliffcalc/scalars.hpp"

namespace cliffcalc {

// Polynomials in the commuting variables x_0, ..., x_n with multivector
// coefficients from Cl_{0,n}.  The variables commute with the algebra;
// coefficients keep their side, so (c1 x^a)(c2 x^b) = (c1 c2) x^{a+b}.

using Exponents = std::vector<int>;  // length n+1, entry j is the power of x_j

template <typename S>
class MvPolynomial {
 public:
  using Coeff = Multivector<S>;
  using TermMap = std::map<Exponents, Coeff>;

  explicit MvPolynomial(int n) : n_(n) { validate_generator_count(n); }

  static MvPolynomial constant(int n, Coeff c) {
    MvPolynomial p(n);
    p.add_term(Exponents(n + 1, 0), std::move(c));
    return p;
  }

  static MvPolynomial monomial(int n, Exponents exps, Coeff c) {
    MvPolynomial p(n);
    p.add_term(std::move(exps), std::move(c));
    return p;
  }

  /// x_j * e_0 for j in [0, n].
  static MvPolynomial variable(int n, int j) {
    MvPolynomial p(n);
    Exponents e(n + 1, 0);
    p.check_var(j);
    e[j] = 1;
    p.add_term(std::move(e), Coeff::unit(n));
    return p;
  }

  /// The regular variable e_j x_0 - e_0 x_j, j in [1, n].
  static MvPolynomial regular_variable(int n, int j) {
    if (j < 1 || j > n)
      throw std::invalid_argument("regular variable index " + std::to_string(j) +
                                  " outside [1, " + std::to_string(n) + "]");
    MvPolynomial p(n);
    Exponents e0(n + 1, 0), ej(n + 1, 0);
    e0[0] = 1;
    ej[j] = 1;
    p.add_term(std::move(e0), Coeff::generator(n, j));
    p.add_term(std::move(ej), -Coeff::unit(n));
    return p;
  }

  int generators() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int t = 0;
      for (int v : e) t += v;
      d = std::max(d, t);
    }
    return d;  // -1 for the zero polynomial
  }

  void add_term(Exponents exps, Coeff c) {
    if (static_cast<int>(exps.size()) != n_ + 1)
      throw std::invalid_argument("exponent vector must have length n+1");
    for (int v : exps)
      if (v < 0) throw std::invalid_argument("negative exponent");
    if (c.generators() != n_)
      throw std::invalid_argument("coefficient generator count disagrees with polynomial");
    if (c.is_zero()) return;
    auto it = terms_.find(exps);
    if (it == terms_.end()) {
      terms_.emplace(std::move(exps), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MvPolynomial& operator+=(const MvPolynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MvPolynomial& operator-=(const MvPolynomial& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MvPolynomial operator+(MvPolynomial a, const MvPolynomial& b) { return a += b; }
  friend MvPolynomial operator-(MvPolynomial a, const MvPolynomial& b) { return a -= b; }
  MvPolynomial operator-() const {
    MvPolynomial r(n_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  friend MvPolynomial operator*(const MvPolynomial& a, const MvPolynomial& b) {
    a.check_same(b);
    MvPolynomial r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(std::move(e), mv_mul(ca, cb));
      }
    return r;
  }

  MvPolynomial& operator*=(const MvPolynomial& o) { return *this = *this * o; }

  /// Left scale by a ring element.
  MvPolynomial scaled(const S& s) const {
    MvPolynomial r(n_);
    for (const auto& [e, c] : terms_) r.add_term(e, scaled_left(s, c));
    return r;
  }

  /// Left multiplication by a constant multivector.
  MvPolynomial mv_scaled_left(const Coeff& m) const {
    MvPolynomial r(n_);
    for (const auto& [e, c] : terms_) r.add_term(e, mv_mul(m, c));
    return r;
  }

  /// d/dx_j, j in [0, n].
  MvPolynomial derivative(int j) const {
    check_var(j);
    MvPolynomial r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[j] == 0) continue;
      Exponents d = e;
      d[j] -= 1;
      r.add_term(std::move(d), scaled_left(S(e[j]), c));
    }
    return r;
  }

  /// Evaluate at a point (x_0, ..., x_n), converting coefficients to double.
  Multivector<double> evaluate(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_ + 1)
      throw std::invalid_argument("point must have n+1 coordinates");
    Multivector<double> acc(n_);
    for (const auto& [e, c] : terms_) {
      double mono = 1.0;
      for (std::size_t j = 0; j < x.size(); ++j)
        for (int t = 0; t < e[j]; ++t) mono *= x[j];
      acc += scaled_left(mono, mv_cast_double(c));
    }
    return acc;
  }

  double coefficient_sup_norm() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, c.norm_sup());
    return m;
  }

  friend bool operator==(const MvPolynomial& a, const MvPolynomial& b)
    requires std::equality_comparable<S>
  {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void check_var(int j) const {
    if (j < 0 || j > n_)
      throw std::invalid_argument("variable index " + std::to_string(j) + " outside [0, " +
                                  std::to_string(n_) + "]");
  }
  void check_same(const MvPolynomial& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polynomial generator counts disagree");
  }

  int n_;
  TermMap terms_;
};

template <typename S>
void element_div(MvPolynomial<S>& p, int k) {
  MvPolynomial<S> r(p.generators());
  for (const auto& [e, c] : p.terms()) {
    Multivector<S> scaled = c;
    element_div(scaled, k);
    r.add_term(e, std::move(scaled));
  }
  p = std::move(r);
}

/// Dirac operator with the unit direction included:
///   D p = dp/dx_0 + sum_{j=1..n} e_j dp/dx_j.
/// Symmetrized products of regular variables lie in its kernel.
template <typename S>
MvPolynomial<S> dirac_apply(const MvPolynomial<S>& p) {
  const int n = p.generators();
  MvPolynomial<S> r = p.derivative(0);
  for (int j = 1; j <= n; ++j)
    r += p.derivative(j).mv_scaled_left(Multivector<S>::generator(n, j));
  return r;
}

/// Tangential part only: sum_{j=1..n} e_j dp/dx_j.
template <typename S>
MvPolynomial<S> dirac_tangential(const MvPolynomial<S>& p) {
  const int n = p.generators();
  MvPolynomial<S> r(n);
  for (int j = 1; j <= n; ++j)
    r += p.derivative(j).mv_scaled_left(Multivector<S>::generator(n, j));
  return r;
}

}  // namespace cliffcalc
