#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_int.hpp>

namespace cliffcalc {

using Complex = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;
using Matrix = Eigen::MatrixXcd;

// Coefficient-ring glue shared by the multivector container and the
// polynomial layers.  Supported rings: double, Complex, Rational, Matrix.
//
// Convention: a default-constructed Matrix (0x0) acts as the additive zero,
// so multivectors with matrix coefficients need not know the operator
// dimension up front.  Every operation below treats an empty matrix as a
// zero of compatible size.

inline double scalar_mul(double a, double b) { return a * b; }
inline Complex scalar_mul(const Complex& a, const Complex& b) { return a * b; }
inline Complex scalar_mul(double a, const Complex& b) { return a * b; }
inline Complex scalar_mul(const Complex& a, double b) { return a * b; }
template <typename T>
  requires std::same_as<T, Rational>
T scalar_mul(const T& a, const T& b) {
  return a * b;
}

inline Matrix scalar_mul(const Matrix& a, const Matrix& b) {
  if (a.size() == 0 || b.size() == 0) return Matrix();
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product: inner dimensions disagree");
  return a * b;
}
inline Matrix scalar_mul(const Matrix& a, double b) {
  if (a.size() == 0) return Matrix();
  return a * b;
}
inline Matrix scalar_mul(double a, const Matrix& b) {
  if (b.size() == 0) return Matrix();
  return a * b;
}
inline Matrix scalar_mul(const Matrix& a, const Complex& b) {
  if (a.size() == 0) return Matrix();
  return a * b;
}
inline Matrix scalar_mul(const Complex& a, const Matrix& b) {
  if (b.size() == 0) return Matrix();
  return a * b;
}

template <typename A, typename B>
using product_t = decltype(scalar_mul(std::declval<const A&>(), std::declval<const B&>()));

inline void scalar_accumulate(double& acc, double term) { acc += term; }
inline void scalar_accumulate(Complex& acc, const Complex& term) { acc += term; }
template <typename T>
  requires std::same_as<T, Rational>
void scalar_accumulate(T& acc, const T& term) {
  acc += term;
}
inline void scalar_accumulate(Matrix& acc, const Matrix& term) {
  if (term.size() == 0) return;
  if (acc.size() == 0) {
    acc = term;
    return;
  }
  if (acc.rows() != term.rows() || acc.cols() != term.cols())
    throw std::invalid_argument("matrix sum: dimension mismatch");
  acc += term;
}

inline double scalar_neg(double a) { return -a; }
inline Complex scalar_neg(const Complex& a) { return -a; }
template <typename T>
  requires std::same_as<T, Rational>
T scalar_neg(const T& a) {
  return -a;
}
inline Matrix scalar_neg(const Matrix& a) {
  if (a.size() == 0) return Matrix();
  return -a;
}

inline void scalar_div(double& a, int k) { a /= k; }
inline void scalar_div(Complex& a, int k) { a /= double(k); }
template <typename T>
  requires std::same_as<T, Rational>
void scalar_div(T& a, int k) {
  a /= k;
}
inline void scalar_div(Matrix& a, int k) {
  if (a.size() != 0) a /= double(k);
}

inline void element_div(Matrix& m, int k) {
  if (m.size() != 0) m /= double(k);
}

inline bool scalar_is_zero(double a) { return a == 0.0; }
inline bool scalar_is_zero(const Complex& a) { return a == Complex(0.0, 0.0); }
template <typename T>
  requires std::same_as<T, Rational>
bool scalar_is_zero(const T& a) {
  return a == 0;
}
inline bool scalar_is_zero(const Matrix& a) { return a.size() == 0 || a.norm() == 0.0; }

/// Largest singular value; 0 for an empty matrix.
inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

inline double coefficient_norm(double a) { return std::abs(a); }
inline double coefficient_norm(const Complex& a) { return std::abs(a); }
template <typename T>
  requires std::same_as<T, Rational>
double coefficient_norm(const T& a) {
  return std::abs(a.template convert_to<double>());
}
inline double coefficient_norm(const Matrix& a) { return spectral_norm(a); }

inline double to_double(double a) { return a; }
template <typename T>
  requires std::same_as<T, Rational>
double to_double(const T& a) {
  return a.template convert_to<double>();
}

inline std::string scalar_repr(double a) {
  std::ostringstream os;
  os << a;
  return os.str();
}
inline std::string scalar_repr(const Complex& a) {
  std::ostringstream os;
  os << a.real();
  if (a.imag() >= 0) os << "+";
  os << a.imag() << "i";
  return os.str();
}
template <typename T>
  requires std::same_as<T, Rational>
std::string scalar_repr(const T& a) {
  std::ostringstream os;
  os << a;
  return os.str();
}
inline std::string scalar_repr(const Matrix& a) {
  std::ostringstream os;
  os << "[" << a.rows() << "x" << a.cols() << " matrix]";
  return os.str();
}

}  // namespace cliffcalc
