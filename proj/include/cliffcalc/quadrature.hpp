#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/multivector.hpp"

namespace cliffcalc {

/// Nodes and surface-measure weights on the sphere S^n(0, r) in R^{n+1},
/// with the unit outward normal stored per node (normal = node / r).
struct QuadratureRule {
  int n = 0;
  double radius = 0.0;
  int order = 0;
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::vector<Point> normals;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial from the standard initial guesses.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  std::vector<double> nodes(m), weights(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(m, x);
      const double pm1 = std::legendre(m - 1, x);
      const double dp = m * (x * p - pm1) / (x * x - 1.0);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double pm1 = std::legendre(m - 1, x);
    const double dp = m * (x * std::legendre(m, x) - pm1) / (x * x - 1.0);
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return {nodes, weights};
}

/// Product rule on S^n(0, r): Gauss-Legendre in the polar angles, trapezoid
/// in the azimuth.  Node ordering is the fixed loop order below, so repeated
/// construction is bitwise deterministic.
///   n=1: 2*order equispaced azimuth nodes;
///   n=2: order GL nodes in cos(theta) x 2*order azimuth;
///   n=3: order GL nodes in the first polar angle (weight sin^2) x the n=2 rule.
inline QuadratureRule sphere_rule(int n, double r, int order) {
  if (n < 1 || n > 3) throw std::invalid_argument("sphere rule supports n in {1, 2, 3}");
  if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (order < 2) throw std::invalid_argument("quadrature order must be at least 2");

  QuadratureRule rule;
  rule.n = n;
  rule.radius = r;
  rule.order = order;

  const int m_phi = 2 * order;
  const double dphi = 2.0 * std::numbers::pi / m_phi;

  auto push = [&](const Point& unit, double w) {
    Point node(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) node[i] = r * unit[i];
    rule.nodes.push_back(std::move(node));
    rule.normals.push_back(unit);
    rule.weights.push_back(w * std::pow(r, n));
  };

  if (n == 1) {
    for (int i = 0; i < m_phi; ++i) {
      const double phi = i * dphi;
      push({std::cos(phi), std::sin(phi)}, dphi);
    }
  } else if (n == 2) {
    const auto [u, wu] = gauss_legendre(order);
    for (int a = 0; a < order; ++a) {
      const double s = std::sqrt(std::max(0.0, 1.0 - u[a] * u[a]));
      for (int i = 0; i < m_phi; ++i) {
        const double phi = i * dphi;
        push({u[a], s * std::cos(phi), s * std::sin(phi)}, wu[a] * dphi);
      }
    }
  } else {
    // first polar angle chi in [0, pi], measure sin^2(chi) dchi
    const auto [t, wt] = gauss_legendre(order);
    const auto [u, wu] = gauss_legendre(order);
    for (int c = 0; c < order; ++c) {
      const double chi = 0.5 * std::numbers::pi * (t[c] + 1.0);
      const double wchi = 0.5 * std::numbers::pi * wt[c] * std::sin(chi) * std::sin(chi);
      const double sc = std::sin(chi);
      for (int a = 0; a < order; ++a) {
        const double s = std::sqrt(std::max(0.0, 1.0 - u[a] * u[a]));
        for (int i = 0; i < m_phi; ++i) {
          const double phi = i * dphi;
          push({std::cos(chi), sc * u[a], sc * s * std::cos(phi), sc * s * std::sin(phi)},
               wchi * wu[a] * dphi);
        }
      }
    }
  }
  return rule;
}

/// The outward normal at node i embedded as a Clifford paravector:
/// nu = (y_0/r) e_0 + sum_j (y_j/r) e_j.
inline Multivector<double> normal_paravector(const QuadratureRule& rule, std::size_t i) {
  const Point& nu = rule.normals.at(i);
  const int n = rule.n;
  Multivector<double> out(n);
  out.set_coeff(0, nu[0]);
  for (int j = 1; j <= n; ++j) out.set_coeff(Blade(1) << (j - 1), nu[j]);
  return out;
}

/// Weighted sum of the integrand over the rule's nodes in index order.  The
/// integrand receives the node index and composes any left factor, the
/// measure multivector nu(y) w, and any right factor itself.
template <typename F>
auto integrate_boundary(const QuadratureRule& rule, F&& integrand)
    -> decltype(integrand(std::size_t(0))) {
  if (rule.size() == 0) throw std::invalid_argument("quadrature rule has no nodes");
  auto acc = scaled_left(rule.weights[0], integrand(std::size_t(0)));
  for (std::size_t i = 1; i < rule.size(); ++i)
    acc += scaled_left(rule.weights[i], integrand(i));
  return acc;
}

}  // namespace cliffcalc
