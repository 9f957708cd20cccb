#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cliffcalc/cauchy_kernel.hpp"
#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/multivector.hpp"
#include "cliffcalc/operator_tuple.hpp"
#include "cliffcalc/quadrature.hpp"
#include "cliffcalc/scalars.hpp"

namespace cliffcalc {

struct OperatorKernelConfig {
  int truncation = 8;
  double radius = 0.0;  // nonpositive picks twice the spectral norm bound
  int quad_order = 32;
  double tol = 1e-9;
};

inline double resolve_radius(const OperatorTuple& T, double requested) {
  const double bound = spectral_radius_bound(T);
  if (requested <= 0.0) return bound > 0.0 ? 2.0 * bound : 1.0;
  if (requested <= bound)
    throw std::invalid_argument("radius below spectral bound: " +
                                std::to_string(requested) + " <= " +
                                std::to_string(bound));
  return requested;
}

/// True when a per-degree norm sequence keeps shrinking on average over its
/// tail half. Successive ratios oscillate because the per-degree mass bounds
/// do, so the verdict uses their geometric mean rather than every single
/// step. Entries at roundoff size are clamped, and sequences too short to
/// expose a tail fall back to a first/last comparison.
inline bool degree_norms_decay(const std::vector<double>& norms) {
  if (norms.size() < 2) return true;
  double peak = 0.0;
  for (double v : norms) peak = std::max(peak, v);
  const double floor = 1e-12 * peak;
  if (norms.size() < 5) return norms.back() <= std::max(norms.front(), floor);
  double log_sum = 0.0;
  int count = 0;
  for (std::size_t j = (norms.size() + 1) / 2; j < norms.size(); ++j) {
    const double cur = std::max(norms[j], floor);
    const double prev = std::max(norms[j - 1], floor);
    if (cur == floor && prev == floor) continue;
    log_sum += std::log(cur / prev);
    ++count;
  }
  return count == 0 || log_sum < 0.0;
}

/// Truncated operator kernel: the degree-j slice pairs every order-j operator
/// monomial with its dual kernel derivative at y, each matrix scaling the
/// real multivector coefficient-wise.
struct KernelExpansion {
  Multivector<Matrix> value{1};
  std::vector<double> degree_norms;
  bool decay_warning = false;
};

inline KernelExpansion operator_cauchy_kernel_expansion(
    const Point& y, const OperatorTuple& T, const OperatorKernelConfig& cfg = {}) {
  validate_point(y);
  const int n = point_dimension(y);
  if (n < T.count())
    throw std::invalid_argument("point dimension is below the operator count");
  if (point_norm(y) == 0.0)
    throw std::domain_error("operator kernel is singular at the origin");
  if (cfg.truncation < 0)
    throw std::invalid_argument("truncation degree must be nonnegative");

  const int max_degree = cfg.truncation;
  const auto v_table = v_poly_table(T, n, max_degree);
  WPolyTable w_table(n, max_degree);

  KernelExpansion out;
  out.value = Multivector<Matrix>(n);
  out.value.set_coeff(0, Matrix::Zero(T.dim(), T.dim()));
  out.degree_norms.reserve(static_cast<std::size_t>(max_degree) + 1);
  for (int j = 0; j <= max_degree; ++j) {
    Multivector<Matrix> term(n);
    for (const MultiIndex& alpha : multi_indices(n, j)) {
      const Matrix& va = v_table.at(alpha);
      if (va.norm() == 0.0) continue;
      term += scaled_left(va, w_table.evaluate(alpha, y));
    }
    out.degree_norms.push_back(mv_norm_bound(term));
    out.value += term;
  }
  out.decay_warning = !degree_norms_decay(out.degree_norms);
  return out;
}

inline Multivector<Matrix> operator_cauchy_kernel(const Point& y, const OperatorTuple& T,
                                                  const OperatorKernelConfig& cfg = {}) {
  return operator_cauchy_kernel_expansion(y, T, cfg).value;
}

/// Per-degree norms of the operator kernel series at one point, with the
/// partial-sum norms and a convergence verdict from the tail ratios.
struct ResolventProbe {
  std::vector<double> term_norms;
  std::vector<double> partial_norms;
  std::string verdict;
};

inline ResolventProbe resolvent_probe(const Point& y, const OperatorTuple& T,
                                      int max_degree) {
  validate_point(y);
  const int n = point_dimension(y);
  if (n < T.count())
    throw std::invalid_argument("point dimension is below the operator count");
  if (point_norm(y) == 0.0)
    throw std::domain_error("operator kernel is singular at the origin");
  if (max_degree < 0) throw std::invalid_argument("max degree must be nonnegative");

  const auto v_table = v_poly_table(T, n, max_degree);
  WPolyTable w_table(n, max_degree);

  ResolventProbe out;
  Multivector<Matrix> partial(n);
  for (int j = 0; j <= max_degree; ++j) {
    Multivector<Matrix> term(n);
    for (const MultiIndex& alpha : multi_indices(n, j)) {
      const Matrix& va = v_table.at(alpha);
      if (va.norm() == 0.0) continue;
      term += scaled_left(va, w_table.evaluate(alpha, y));
    }
    partial += term;
    out.term_norms.push_back(mv_norm_bound(term));
    out.partial_norms.push_back(mv_norm_bound(partial));
  }
  out.verdict = degree_norms_decay(out.term_norms) ? "converging" : "diverging";
  return out;
}

struct CalculusResult {
  Multivector<Matrix> value{1};
  std::vector<double> degree_norms;  // norm bound of the degree-j contribution
  bool decay_warning = false;
  std::string route;
  double radius = 0.0;   // integral route
  int truncation = -1;   // integral route
  int quad_order = 0;    // integral route
};

/// Taylor-substitution route: replace every monomial of f by the symmetric
/// product of the operators and apply the Taylor coefficient from the right.
/// Exact for polynomials up to floating arithmetic.
inline CalculusResult calculus_taylor(const HyperPolynomial& f, const OperatorTuple& T) {
  const int n = f.generators();
  const int deg = f.degree();

  CalculusResult out;
  out.route = "taylor";
  out.value = Multivector<Matrix>(n);
  out.value.set_coeff(0, Matrix::Zero(T.dim(), T.dim()));
  if (deg < 0) return out;

  std::vector<Multivector<Matrix>> per_degree(static_cast<std::size_t>(deg) + 1,
                                              Multivector<Matrix>(n));
  for (const auto& [alpha, c] : f.terms()) {
    const Matrix va = v_poly_operators(alpha, T);
    per_degree[static_cast<std::size_t>(mi_degree(alpha))] += scaled_left(va, c);
  }
  for (const auto& term : per_degree) {
    out.degree_norms.push_back(mv_norm_bound(term));
    out.value += term;
  }
  return out;
}

/// Boundary-integral route: quadrature of kernel * normal * f over the sphere
/// of cfg.radius. The constant operator factor of each kernel term is pulled
/// out of the node sum, so the quadrature accumulates the real boundary
/// moments of f and the matrices enter once per index.
inline CalculusResult calculus_integral(const HyperPolynomial& f, const OperatorTuple& T,
                                        const OperatorKernelConfig& cfg = {}) {
  const int n = f.generators();
  if (cfg.truncation < f.degree())
    throw std::invalid_argument("truncation degree is below the polynomial degree");
  const double radius = resolve_radius(T, cfg.radius);
  const int max_degree = cfg.truncation;

  // the decay diagnostic needs a few degrees of headroom past the truncation
  // to see through the low-degree growth of the per-degree kernel mass
  const int diag_degree = std::max(max_degree, 8);

  const QuadratureRule rule = sphere_rule(n, radius, cfg.quad_order);
  const auto v_table = v_poly_table(T, n, diag_degree);
  WPolyTable w_table(n, diag_degree);
  const auto indices = multi_indices_up_to(n, max_degree);

  std::map<MultiIndex, Multivector<double>> moments;
  for (const auto& alpha : indices) moments.emplace(alpha, Multivector<double>(n));
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Multivector<double> nu = normal_paravector(rule, i);
    const Multivector<double> fy = f.evaluate(rule.nodes[i]);
    const Multivector<double> tail = scaled_left(rule.weights[i], mv_mul(nu, fy));
    for (const auto& alpha : indices)
      moments.at(alpha) += mv_mul(w_table.evaluate(alpha, rule.nodes[i]), tail);
  }

  CalculusResult out;
  out.route = "integral";
  out.radius = radius;
  out.truncation = max_degree;
  out.quad_order = cfg.quad_order;
  out.value = Multivector<Matrix>(n);
  out.value.set_coeff(0, Matrix::Zero(T.dim(), T.dim()));
  out.degree_norms.assign(static_cast<std::size_t>(max_degree) + 1, 0.0);
  for (int j = 0; j <= max_degree; ++j) {
    Multivector<Matrix> term(n);
    for (const MultiIndex& alpha : multi_indices(n, j)) {
      const Matrix& va = v_table.at(alpha);
      if (va.norm() == 0.0) continue;
      term += scaled_left(va, moments.at(alpha));
    }
    out.degree_norms[static_cast<std::size_t>(j)] = mv_norm_bound(term);
    out.value += term;
  }

  // convergence diagnostic for the kernel series itself, sampled at a
  // generic boundary point so axis symmetries cannot hide growth
  Point probe(static_cast<std::size_t>(n) + 1,
              radius / std::sqrt(static_cast<double>(n) + 1.0));
  std::vector<double> kernel_norms(static_cast<std::size_t>(diag_degree) + 1, 0.0);
  for (const auto& alpha : multi_indices_up_to(n, diag_degree)) {
    const double va_norm = spectral_norm(v_table.at(alpha));
    if (va_norm == 0.0) continue;
    kernel_norms[static_cast<std::size_t>(mi_degree(alpha))] +=
        va_norm * mv_norm_bound(w_table.evaluate(alpha, probe));
  }
  out.decay_warning = !degree_norms_decay(kernel_norms);
  return out;
}

/// Difference between the boundary integrals over two spheres around the
/// operator tuple; near zero whenever the annulus stays outside the spectral
/// norm ball.
inline double vanishing_check(const HyperPolynomial& f, const OperatorTuple& T,
                              double r_inner, double r_outer,
                              OperatorKernelConfig cfg = {}) {
  const double bound = spectral_radius_bound(T);
  if (r_inner <= bound)
    throw std::invalid_argument("inner radius must exceed the spectral norm bound");
  if (r_outer <= r_inner)
    throw std::invalid_argument("outer radius must exceed the inner radius");
  cfg.radius = r_inner;
  const CalculusResult inner = calculus_integral(f, T, cfg);
  cfg.radius = r_outer;
  const CalculusResult outer = calculus_integral(f, T, cfg);
  Multivector<Matrix> diff = outer.value;
  diff -= inner.value;
  return mv_norm_bound(diff);
}

inline double commutation_residual(const OperatorTuple& T) {
  double worst = 0.0;
  for (int i = 1; i <= T.count(); ++i)
    for (int j = i + 1; j <= T.count(); ++j) {
      const Matrix c = T.op(i) * T.op(j) - T.op(j) * T.op(i);
      const double scale = std::max(1.0, spectral_norm(T.op(i)) * spectral_norm(T.op(j)));
      worst = std::max(worst, spectral_norm(c) / scale);
    }
  return worst;
}

/// Shared eigenbasis of a commuting Hermitian tuple, found by refining an
/// eigendecomposition of each operator inside the blocks left degenerate by
/// the previous ones.
struct JointDiagonalization {
  Matrix basis;                                 // unitary, columns are joint eigenvectors
  std::vector<Eigen::VectorXd> eigenvalues;     // eigenvalues[j - 1][i] for op(j)
};

inline JointDiagonalization joint_diagonalize(const OperatorTuple& T,
                                              double commute_tol = 1e-12) {
  if (commutation_residual(T) > commute_tol)
    throw std::invalid_argument("operators do not commute within tolerance");
  const int d = T.dim();
  Matrix u = Matrix::Identity(d, d);
  std::vector<std::pair<int, int>> blocks{{0, d}};
  for (int j = 1; j <= T.count(); ++j) {
    const double scale = std::max(1.0, spectral_norm(T.op(j)));
    std::vector<std::pair<int, int>> next;
    for (const auto& [off, size] : blocks) {
      if (size == 1) {
        next.emplace_back(off, size);
        continue;
      }
      const Matrix cols = u.middleCols(off, size);
      const Matrix block = cols.adjoint() * T.op(j) * cols;
      Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(0.5 * (block + block.adjoint())));
      u.middleCols(off, size) = cols * es.eigenvectors();
      const Eigen::VectorXd& ev = es.eigenvalues();
      int start = 0;
      for (int i = 1; i <= size; ++i) {
        if (i == size || ev(i) - ev(i - 1) > 1e-8 * scale) {
          next.emplace_back(off + start, i - start);
          start = i;
        }
      }
    }
    blocks = std::move(next);
  }

  JointDiagonalization out;
  out.basis = u;
  out.eigenvalues.reserve(static_cast<std::size_t>(T.count()));
  for (int j = 1; j <= T.count(); ++j) {
    const Matrix diag = u.adjoint() * T.op(j) * u;
    const double scale = std::max(1.0, spectral_norm(T.op(j)));
    Eigen::VectorXd ev(d);
    double off_mass = 0.0;
    for (int r = 0; r < d; ++r) {
      ev(r) = diag(r, r).real();
      for (int c = 0; c < d; ++c)
        if (r != c) off_mass = std::max(off_mass, std::abs(diag(r, c)));
    }
    if (off_mass > 1e-8 * scale)
      throw std::runtime_error("joint diagonalization failed to converge");
    out.eigenvalues.push_back(std::move(ev));
  }
  return out;
}

/// Independent oracle for commuting tuples: evaluate f on the joint
/// eigenvalues and conjugate back. Refuses non-commuting input.
inline Multivector<Matrix> commuting_oracle(const HyperPolynomial& f,
                                            const OperatorTuple& T,
                                            double commute_tol = 1e-12) {
  const int n = f.generators();
  const int d = T.dim();
  const JointDiagonalization jd = joint_diagonalize(T, commute_tol);

  const Blade blade_count = Blade{1} << n;
  std::vector<Eigen::VectorXd> diag(blade_count, Eigen::VectorXd::Zero(d));
  std::vector<bool> used(blade_count, false);
  for (const auto& [alpha, c] : f.terms()) {
    Eigen::VectorXd monomial = Eigen::VectorXd::Ones(d);
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      if (alpha[j] == 0) continue;
      if (static_cast<int>(j) >= T.count()) continue;  // identity padding
      for (int rep = 0; rep < alpha[j]; ++rep)
        monomial = monomial.cwiseProduct(jd.eigenvalues[j]).eval();
    }
    for (Blade b = 0; b < blade_count; ++b) {
      const double coeff = c.coeff(b);
      if (coeff == 0.0) continue;
      diag[b] += coeff * monomial;
      used[b] = true;
    }
  }

  Multivector<Matrix> out(n);
  out.set_coeff(0, Matrix::Zero(d, d));
  for (Blade b = 0; b < blade_count; ++b) {
    if (!used[b]) continue;
    out.set_coeff(b, Matrix(jd.basis * diag[b].cast<Complex>().asDiagonal() *
                            jd.basis.adjoint()));
  }
  return out;
}

}  // namespace cliffcalc
