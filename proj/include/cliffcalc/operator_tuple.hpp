#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/scalars.hpp"
#include "cliffcalc/symmetric_product.hpp"

namespace cliffcalc {

inline constexpr double kHermiticityTol = 1e-12;

/// An m-tuple of self-adjoint complex matrices of a common dimension.
/// The entries need not commute.
class OperatorTuple {
 public:
  explicit OperatorTuple(std::vector<Matrix> ops) : ops_(std::move(ops)) {
    if (ops_.empty()) throw std::invalid_argument("operator tuple must be non-empty");
    d_ = static_cast<int>(ops_.front().rows());
    if (d_ < 1) throw std::invalid_argument("operator dimension must be positive");
    for (const Matrix& t : ops_) {
      if (t.rows() != t.cols()) throw std::invalid_argument("operators must be square");
      if (t.rows() != d_) throw std::invalid_argument("operator dimensions disagree");
    }
    const auto residuals = hermiticity_residuals(ops_);
    for (std::size_t j = 0; j < residuals.size(); ++j) {
      const double scale = spectral_norm(ops_[j]);
      if (residuals[j] > kHermiticityTol * scale)
        throw std::invalid_argument("operator " + std::to_string(j + 1) +
                                    " is not self-adjoint: deviation " +
                                    std::to_string(residuals[j]));
    }
  }

  /// Spectral norm of T - T* for each matrix.
  static std::vector<double> hermiticity_residuals(const std::vector<Matrix>& ops) {
    std::vector<double> r;
    r.reserve(ops.size());
    for (const Matrix& t : ops) r.push_back(spectral_norm(t - t.adjoint()));
    return r;
  }

  int count() const { return static_cast<int>(ops_.size()); }
  int dim() const { return d_; }

  /// T_j, 1-based.
  const Matrix& op(int j) const {
    if (j < 1 || j > count())
      throw std::invalid_argument("operator index " + std::to_string(j) + " outside [1, " +
                                  std::to_string(count()) + "]");
    return ops_[j - 1];
  }

  const std::vector<Matrix>& ops() const { return ops_; }

 private:
  std::vector<Matrix> ops_;
  int d_;
};

/// max_j of the spectral norms; every joint spectral point lies within this
/// radius, so boundary integrals are taken over larger spheres.
inline double spectral_radius_bound(const OperatorTuple& T) {
  double m = 0.0;
  for (const Matrix& t : T.ops()) m = std::max(m, spectral_norm(t));
  return m;
}

/// V_alpha(T): the symmetrized product with alpha_j copies of T_j.  Indices
/// beyond the tuple length stand for identity factors, which drop out of the
/// symmetrization, so padding the ambient dimension is harmless.
inline Matrix v_poly_operators(const MultiIndex& alpha, const OperatorTuple& T) {
  std::vector<Matrix> factors;
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    if (alpha[j] < 0) throw std::invalid_argument("multi-index entries must be nonnegative");
    if (alpha[j] == 0 || static_cast<int>(j) >= T.count()) continue;
    for (int t = 0; t < alpha[j]; ++t) factors.push_back(T.op(static_cast<int>(j) + 1));
  }
  if (factors.empty()) return Matrix::Identity(T.dim(), T.dim());
  return symmetric_product(factors);
}

/// All V_alpha(T) for |alpha| <= max_degree over n index slots.
inline std::map<MultiIndex, Matrix> v_poly_table(const OperatorTuple& T, int n,
                                                 int max_degree) {
  std::map<MultiIndex, Matrix> table;
  for (const MultiIndex& alpha : multi_indices_up_to(n, max_degree))
    table.emplace(alpha, v_poly_operators(alpha, T));
  return table;
}

}  // namespace cliffcalc
