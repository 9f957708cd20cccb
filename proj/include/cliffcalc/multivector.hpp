#pragma once

#include <bit>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffcalc/scalars.hpp"

namespace cliffcalc {

// Elements of the real Clifford algebra Cl_{0,n}: generators e_1..e_n with
// e_j^2 = -e_0 and e_j e_k = -e_k e_j for j != k, where e_0 is the unit.
// A basis blade is encoded as a bitmask over the generators (bit j-1 set
// means e_j participates); the unit blade is the empty mask.

inline constexpr int kMaxGenerators = 16;

using Blade = std::uint32_t;

inline void validate_generator_count(int n) {
  if (n < 1 || n > kMaxGenerators)
    throw std::invalid_argument("generator count must lie in [1, " +
                                std::to_string(kMaxGenerators) + "], got " +
                                std::to_string(n));
}

inline int blade_grade(Blade b) { return std::popcount(b); }

inline std::string blade_label(Blade b) {
  if (b == 0) return "e0";
  std::string s;
  for (int k = 0; k < kMaxGenerators; ++k)
    if (b & (Blade(1) << k)) s += "e" + std::to_string(k + 1);
  return s;
}

struct BladeProduct {
  int sign;
  Blade bits;
};

/// Product of two basis blades, each written with generator indices
/// ascending.  Merging moves every generator of b left past the larger
/// generators of a (one sign flip per swap); repeated generators then cancel
/// in pairs, each contributing a factor e_j^2 = -1.
inline BladeProduct blade_mul(Blade a, Blade b, int n) {
  validate_generator_count(n);
  const Blade limit = Blade(1) << n;
  if (a >= limit || b >= limit)
    throw std::invalid_argument("blade uses a generator beyond e" + std::to_string(n));
  int swaps = 0;
  for (Blade rest = b; rest != 0; rest &= rest - 1) {
    const int k = std::countr_zero(rest);
    swaps += std::popcount(a >> (k + 1));
  }
  int sign = (swaps % 2 == 0) ? 1 : -1;
  if (std::popcount(a & b) % 2 == 1) sign = -sign;
  return {sign, a ^ b};
}

template <typename S>
class Multivector {
 public:
  explicit Multivector(int n) : n_(n) {
    validate_generator_count(n);
    coeffs_.resize(std::size_t(1) << n);
  }

  /// The unit e_0 (requires S constructible from 1; use an explicit
  /// coefficient for matrix rings).
  static Multivector unit(int n) {
    Multivector r(n);
    r.coeffs_[0] = S(1);
    return r;
  }

  /// Generator e_j, 1-based.
  static Multivector generator(int n, int j) {
    Multivector r(n);
    if (j < 1 || j > n)
      throw std::invalid_argument("generator index " + std::to_string(j) +
                                  " outside [1, " + std::to_string(n) + "]");
    r.coeffs_[Blade(1) << (j - 1)] = S(1);
    return r;
  }

  static Multivector single(int n, Blade bits, S value) {
    Multivector r(n);
    r.check_blade(bits);
    r.coeffs_[bits] = std::move(value);
    return r;
  }

  int generators() const { return n_; }
  std::size_t blade_count() const { return coeffs_.size(); }

  const S& coeff(Blade b) const {
    check_blade(b);
    return coeffs_[b];
  }
  S& coeff(Blade b) {
    check_blade(b);
    return coeffs_[b];
  }
  void set_coeff(Blade b, S value) {
    check_blade(b);
    coeffs_[b] = std::move(value);
  }
  const S& scalar_part() const { return coeffs_[0]; }
  const std::vector<S>& coeffs() const { return coeffs_; }

  Multivector& operator+=(const Multivector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      scalar_accumulate(coeffs_[i], o.coeffs_[i]);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      scalar_accumulate(coeffs_[i], scalar_neg(o.coeffs_[i]));
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  Multivector operator-() const {
    Multivector r(n_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = scalar_neg(coeffs_[i]);
    return r;
  }

  bool is_zero() const {
    for (const S& c : coeffs_)
      if (!scalar_is_zero(c)) return false;
    return true;
  }

  /// Largest coefficient norm over all blades.
  double norm_sup() const {
    double m = 0.0;
    for (const S& c : coeffs_) m = std::max(m, coefficient_norm(c));
    return m;
  }

  /// Sum of coefficient norms over all blades.  For matrix coefficients this
  /// dominates the spectral norm of any faithful matrix representation.
  double norm_bound() const {
    double s = 0.0;
    for (const S& c : coeffs_) s += coefficient_norm(c);
    return s;
  }

  friend bool operator==(const Multivector& a, const Multivector& b)
    requires std::equality_comparable<S>
  {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_blade(Blade b) const {
    if (b >= coeffs_.size())
      throw std::invalid_argument("blade uses a generator beyond e" + std::to_string(n_));
  }
  void check_same(const Multivector& o) const {
    if (n_ != o.n_)
      throw std::invalid_argument("multivector generator counts disagree: " +
                                  std::to_string(n_) + " vs " + std::to_string(o.n_));
  }

  int n_;
  std::vector<S> coeffs_;
};

/// Geometric product.  Coefficient rings may differ (e.g. matrix times
/// double); the result ring follows scalar_mul.
template <typename A, typename B>
Multivector<product_t<A, B>> mv_mul(const Multivector<A>& x, const Multivector<B>& y) {
  if (x.generators() != y.generators())
    throw std::invalid_argument("mv_mul: generator counts disagree");
  const int n = x.generators();
  Multivector<product_t<A, B>> out(n);
  for (Blade a = 0; a < x.blade_count(); ++a) {
    if (scalar_is_zero(x.coeff(a))) continue;
    for (Blade b = 0; b < y.blade_count(); ++b) {
      if (scalar_is_zero(y.coeff(b))) continue;
      const BladeProduct p = blade_mul(a, b, n);
      auto term = scalar_mul(x.coeff(a), y.coeff(b));
      if (p.sign < 0) term = scalar_neg(term);
      scalar_accumulate(out.coeff(p.bits), term);
    }
  }
  return out;
}

template <typename A, typename B>
Multivector<product_t<A, B>> operator*(const Multivector<A>& x, const Multivector<B>& y) {
  return mv_mul(x, y);
}

/// Left multiplication by a ring element: c * x.
template <typename C, typename S>
Multivector<product_t<C, S>> scaled_left(const C& c, const Multivector<S>& x) {
  Multivector<product_t<C, S>> out(x.generators());
  for (Blade b = 0; b < x.blade_count(); ++b)
    out.set_coeff(b, scalar_mul(c, x.coeff(b)));
  return out;
}

/// Right multiplication by a ring element: x * c.
template <typename S, typename C>
Multivector<product_t<S, C>> scaled_right(const Multivector<S>& x, const C& c) {
  Multivector<product_t<S, C>> out(x.generators());
  for (Blade b = 0; b < x.blade_count(); ++b)
    out.set_coeff(b, scalar_mul(x.coeff(b), c));
  return out;
}

/// Clifford conjugation: the anti-automorphism fixing e_0 with
/// conjugate(e_j) = -e_j.  On a grade-g blade it acts as (-1)^{g(g+1)/2}.
template <typename S>
Multivector<S> conjugate(const Multivector<S>& x) {
  Multivector<S> out(x.generators());
  for (Blade b = 0; b < x.blade_count(); ++b) {
    const int g = blade_grade(b);
    const bool flip = ((g * (g + 1) / 2) % 2) != 0;
    out.set_coeff(b, flip ? scalar_neg(x.coeff(b)) : x.coeff(b));
  }
  return out;
}

template <typename S>
double mv_norm_bound(const Multivector<S>& x) {
  return x.norm_bound();
}

template <typename S>
void element_div(Multivector<S>& x, int k) {
  for (Blade b = 0; b < x.blade_count(); ++b) scalar_div(x.coeff(b), k);
}

template <typename S>
Multivector<double> mv_cast_double(const Multivector<S>& x) {
  Multivector<double> out(x.generators());
  for (Blade b = 0; b < x.blade_count(); ++b) out.set_coeff(b, to_double(x.coeff(b)));
  return out;
}

template <typename S>
std::string to_string(const Multivector<S>& x) {
  std::string s;
  for (Blade b = 0; b < x.blade_count(); ++b) {
    if (scalar_is_zero(x.coeff(b))) continue;
    if (!s.empty()) s += " + ";
    s += scalar_repr(x.coeff(b)) + " " + blade_label(b);
  }
  return s.empty() ? "0" : s;
}

}  // namespace cliffcalc
