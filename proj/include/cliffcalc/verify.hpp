#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cliffcalc/calculus.hpp"
#include "cliffcalc/cauchy_kernel.hpp"
#include "cliffcalc/generator_rep.hpp"
#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/mv_polynomial.hpp"
#include "cliffcalc/quadrature.hpp"
#include "cliffcalc/quantization.hpp"
#include "cliffcalc/random_gen.hpp"
#include "cliffcalc/rational_linalg.hpp"
#include "cliffcalc/symmetric_product.hpp"

namespace cliffcalc {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparator;  // "<=" or ">"
  bool pass = false;
};

struct VerifyOptions {
  std::uint64_t seed = 12345;
  int max_degree = 3;
  int order = 0;  // 0 picks the per-suite default
  double tol_scale = 1.0;
};

namespace verify_detail {

inline CheckResult check_le(const std::string& name, double value, double tol,
                            double scale = 1.0) {
  const double t = tol * scale;
  return {name, value, t, "<=", value <= t};
}

inline CheckResult check_gt(const std::string& name, double value, double tol) {
  return {name, value, tol, ">", value > tol};
}

inline std::vector<std::vector<Rational>> coefficient_rows(
    const std::vector<MvPolynomial<Rational>>& polys) {
  std::set<std::pair<Exponents, Blade>> columns;
  for (const auto& p : polys)
    for (const auto& [e, c] : p.terms())
      for (Blade b = 0; b < c.blade_count(); ++b)
        if (!scalar_is_zero(c.coeff(b))) columns.insert({e, b});
  std::vector<std::vector<Rational>> rows;
  for (const auto& p : polys) {
    std::vector<Rational> row;
    for (const auto& [e, b] : columns) {
      auto it = p.terms().find(e);
      row.push_back(it == p.terms().end() ? Rational(0) : it->second.coeff(b));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double mv_rel_diff(const Multivector<Matrix>& a, const Multivector<Matrix>& b) {
  Multivector<Matrix> d = a;
  d -= b;
  return mv_norm_bound(d) / std::max(1.0, mv_norm_bound(b));
}

}  // namespace verify_detail

inline std::vector<CheckResult> verify_algebra(const VerifyOptions& opt) {
  using verify_detail::check_le;
  std::vector<CheckResult> out;
  Rng rng(opt.seed ^ 0x5a1eb001ULL);
  const int n = 3;
  const GeneratorRep rep = generator_matrices(n);

  double assoc = 0.0, anti = 0.0, para = 0.0, hom = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Multivector<double> x = random_multivector(n, rng);
    const Multivector<double> y = random_multivector(n, rng);
    const Multivector<double> z = random_multivector(n, rng);
    const double scale =
        std::max(1.0, x.norm_bound() * y.norm_bound() * z.norm_bound());

    Multivector<double> lhs = (x * y) * z;
    lhs -= x * (y * z);
    assoc = std::max(assoc, lhs.norm_bound() / scale);

    Multivector<double> rev = conjugate(x * y);
    rev -= conjugate(y) * conjugate(x);
    anti = std::max(anti, rev.norm_bound() /
                              std::max(1.0, x.norm_bound() * y.norm_bound()));

    Multivector<double> v(n);
    double norm2 = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double c = random_real(rng);
      v.set_coeff(j == 0 ? 0 : Blade{1} << (j - 1), c);
      norm2 += c * c;
    }
    Multivector<double> pv = v * conjugate(v);
    pv -= scaled_left(norm2, Multivector<double>::unit(n));
    para = std::max(para, pv.norm_sup());

    const Matrix prod = represent(x * y, rep);
    const Matrix split = represent(x, rep) * represent(y, rep);
    hom = std::max(hom, spectral_norm(Matrix(prod - split)) /
                            std::max(1.0, x.norm_bound() * y.norm_bound()));
  }
  out.push_back(check_le("clifford product associativity", assoc, 1e-12, opt.tol_scale));
  out.push_back(check_le("conjugation reverses products", anti, 1e-12, opt.tol_scale));
  out.push_back(check_le("paravector norm identity", para, 1e-13, opt.tol_scale));
  out.push_back(
      check_le("matrix representation is a homomorphism", hom, 1e-12, opt.tol_scale));

  double relations = 0.0;
  for (int m = 1; m <= 4; ++m) {
    const GeneratorRep r = generator_matrices(m);
    const Matrix id = Matrix::Identity(r.dim, r.dim);
    for (int i = 0; i < m; ++i) {
      relations = std::max(
          relations, spectral_norm(Matrix(r.generators[i] * r.generators[i] + id)));
      for (int j = i + 1; j < m; ++j)
        relations = std::max(
            relations, spectral_norm(Matrix(r.generators[i] * r.generators[j] +
                                            r.generators[j] * r.generators[i])));
    }
  }
  out.push_back(
      check_le("represented generator relations", relations, 1e-13, opt.tol_scale));
  return out;
}

inline std::vector<CheckResult> verify_hyperholo(const VerifyOptions& opt) {
  using verify_detail::check_gt;
  using verify_detail::check_le;
  std::vector<CheckResult> out;

  double dirac_sup = 0.0;
  double ck_mismatches = 0.0;
  for (int n = 2; n <= 3; ++n)
    for (const MultiIndex& alpha : multi_indices_up_to(n, opt.max_degree)) {
      const MvPolynomial<Rational> direct = v_poly_sym<Rational>(alpha, n);
      dirac_sup = std::max(dirac_sup, dirac_apply(direct).coefficient_sup_norm());
      if (!(v_poly_ck_sym<Rational>(alpha, n) == direct)) ck_mismatches += 1.0;
    }
  out.push_back(check_le("dirac annihilates the basis exactly", dirac_sup, 0.0));
  out.push_back(
      check_le("restriction route rebuilds the basis exactly", ck_mismatches, 0.0));

  double rank_defect = 0.0;
  for (int n = 2; n <= 3; ++n)
    for (int k = 0; k <= std::min(opt.max_degree, 4); ++k) {
      const auto alphas = multi_indices(n, k);
      std::vector<MvPolynomial<Rational>> polys;
      for (const auto& a : alphas) polys.push_back(v_poly_sym<Rational>(a, n));
      const int rank = exact_rank(verify_detail::coefficient_rows(polys));
      rank_defect += std::abs(rank - static_cast<int>(alphas.size()));
    }
  out.push_back(check_le("degree slices have full rank", rank_defect, 0.0));

  MvPolynomial<Rational> plain(2);
  Exponents e(3, 0);
  e[1] = 1;
  plain.add_term(e, Multivector<Rational>::unit(2));
  out.push_back(check_gt("dirac flags a non-regular polynomial",
                         dirac_apply(plain).coefficient_sup_norm(), 0.5));
  return out;
}

inline std::vector<CheckResult> verify_orthogonality(const VerifyOptions& opt) {
  using verify_detail::check_le;
  std::vector<CheckResult> out;
  Rng rng(opt.seed ^ 0x0a2b3c4dULL);
  const int n = 2;

  {
    const int order = opt.order > 0 ? opt.order : 48;
    const int deg = opt.max_degree;
    const auto rule = sphere_rule(n, 1.0, order);
    const WPolyTable table(n, deg);
    const auto alphas = multi_indices_up_to(n, deg);

    std::vector<Multivector<double>> pairing(alphas.size() * alphas.size(),
                                             Multivector<double>(n));
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const Multivector<double> nu = normal_paravector(rule, i);
      std::vector<Multivector<double>> wrow, vrow;
      wrow.reserve(alphas.size());
      vrow.reserve(alphas.size());
      for (const auto& a : alphas) {
        wrow.push_back(scaled_left(rule.weights[i],
                                   mv_mul(table.evaluate(a, rule.nodes[i]), nu)));
        vrow.push_back(v_poly_point(a, rule.nodes[i]));
      }
      for (std::size_t bi = 0; bi < alphas.size(); ++bi)
        for (std::size_t ai = 0; ai < alphas.size(); ++ai)
          pairing[bi * alphas.size() + ai] += mv_mul(wrow[bi], vrow[ai]);
    }
    double worst = 0.0;
    for (std::size_t bi = 0; bi < alphas.size(); ++bi)
      for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
        Multivector<double> d = pairing[bi * alphas.size() + ai];
        if (bi == ai) d -= Multivector<double>::unit(n);
        worst = std::max(worst, d.norm_sup());
      }
    out.push_back(check_le("inner and outer systems are biorthogonal", worst, 1e-6,
                           opt.tol_scale));
  }

  {
    const auto rule = sphere_rule(n, 1.0, 32);
    std::vector<Multivector<double>> normals;
    normals.reserve(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
      normals.push_back(normal_paravector(rule, i));
    const auto integral_at = [&](const Point& x) {
      return integrate_boundary(rule, [&](std::size_t i) {
        Point d(rule.nodes[i].size());
        for (std::size_t c = 0; c < d.size(); ++c) d[c] = rule.nodes[i][c] - x[c];
        return mv_mul(cauchy_kernel(d), normals[i]);
      });
    };
    double inside_dev = 0.0, outside_dev = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      Point inside = random_direction(n, rng);
      const double r = 0.5 * random_real(rng, 0.1, 1.0);
      for (double& c : inside) c *= r;
      Multivector<double> res = integral_at(inside);
      res -= Multivector<double>::unit(n);
      inside_dev = std::max(inside_dev, res.norm_sup());

      Point outside = random_direction(n, rng);
      for (double& c : outside) c *= 1.5 + 0.4 * trial;
      outside_dev = std::max(outside_dev, integral_at(outside).norm_sup());
    }
    out.push_back(check_le("boundary integral reproduces interior constants",
                           inside_dev, 1e-8, opt.tol_scale));
    out.push_back(check_le("boundary integral vanishes at exterior points",
                           outside_dev, 1e-8, opt.tol_scale));
  }

  {
    const Point dir = random_direction(n, rng);
    Point x = dir, y = dir;
    for (double& c : x) c *= 0.3;
    const double first = kernel_decomposition_check(x, y, 0);
    const double last = kernel_decomposition_check(x, y, 8);
    const double mean_rate = std::pow(last / first, 1.0 / 8.0);
    out.push_back(check_le("two-point kernel decay rate sits at the radius ratio",
                           std::abs(mean_rate - 0.3), 0.1));
  }
  return out;
}

inline std::vector<CheckResult> verify_calculus(const VerifyOptions& opt) {
  using verify_detail::check_le;
  std::vector<CheckResult> out;
  Rng rng(opt.seed ^ 0xca1c00f5ULL);
  const int order = opt.order > 0 ? opt.order : 32;

  OperatorKernelConfig cfg;
  cfg.quad_order = order;
  cfg.truncation = std::min(opt.max_degree, 3);

  double disagreement = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const OperatorTuple T = random_hermitian_tuple(2, 4, rng);
    const HyperPolynomial f = random_hyper_polynomial(2, cfg.truncation, rng);
    disagreement = std::max(
        disagreement, verify_detail::mv_rel_diff(calculus_integral(f, T, cfg).value,
                                                 calculus_taylor(f, T).value));
  }
  out.push_back(
      check_le("construction routes agree", disagreement, 1e-6, opt.tol_scale));

  {
    const OperatorTuple T = random_hermitian_tuple(2, 3, rng);
    const double bound = spectral_radius_bound(T);
    HyperPolynomial f(2);
    f.set_coeff({0, 0}, Multivector<double>::unit(2));
    f.set_coeff({1, 0}, Multivector<double>::unit(2));
    OperatorKernelConfig vcfg = cfg;
    vcfg.truncation = 1;
    out.push_back(check_le("boundary integral is radius independent",
                           vanishing_check(f, T, 1.5 * bound, 3.0 * bound, vcfg),
                           1e-6, opt.tol_scale));
  }

  {
    double collapse = 0.0;
    for (int trial = 0; trial < 2; ++trial) {
      const OperatorTuple T = random_commuting_tuple(2, 4, rng);
      const HyperPolynomial f = random_hyper_polynomial(2, 3, rng);
      collapse = std::max(collapse,
                          verify_detail::mv_rel_diff(calculus_taylor(f, T).value,
                                                     commuting_oracle(f, T)));
    }
    out.push_back(check_le("taylor route matches the joint-eigenvalue oracle",
                           collapse, 1e-10, opt.tol_scale));
  }

  {
    const int d = 3;
    const OperatorTuple zeros({Matrix::Zero(d, d), Matrix::Zero(d, d)});
    const Point y{0.4, -0.7, 1.1};
    OperatorKernelConfig kcfg;
    kcfg.truncation = 4;
    Multivector<Matrix> kernel = operator_cauchy_kernel(y, zeros, kcfg);
    const Multivector<double> scalar = cauchy_kernel(y);
    const Blade count = Blade{1} << 2;
    for (Blade b = 0; b < count; ++b) {
      Matrix expect = scalar.coeff(b) * Matrix::Identity(d, d);
      scalar_accumulate(kernel.coeff(b), scalar_neg(expect));
    }
    out.push_back(check_le("zero tuple reproduces the scalar kernel",
                           mv_norm_bound(kernel), 1e-13, opt.tol_scale));
  }

  {
    const OperatorTuple T = random_hermitian_tuple(2, 4, rng);
    Point far = random_direction(2, rng);
    for (double& c : far) c *= 2.0 * spectral_radius_bound(T);
    const ResolventProbe probe = resolvent_probe(far, T, 8);
    out.push_back(check_le("kernel series converges outside the bound",
                           probe.verdict == "converging" ? 0.0 : 1.0, 0.0));
  }
  return out;
}

inline std::vector<CheckResult> verify_quantization(const VerifyOptions& opt) {
  using verify_detail::check_gt;
  using verify_detail::check_le;
  std::vector<CheckResult> out;
  Rng rng(opt.seed ^ 0x9e3779b9ULL);

  const OperatorTuple pair = random_hermitian_tuple(2, 3, rng);
  const Matrix& a = pair.op(1);
  const Matrix& b = pair.op(2);
  ClassicalPolynomial cross(2);
  cross.set_coeff({1, 1}, 1.0);
  out.push_back(check_le("jordan product equals the quantized cross term",
                         spectral_norm(Matrix(jordan_product(a, b) -
                                              quantize(cross, pair))),
                         0.0));

  const Matrix hs = 0.5 * (a + b);
  const Matrix hd = 0.5 * (a - b);
  out.push_back(check_le("jordan product square-difference form",
                         spectral_norm(Matrix(jordan_product(a, b) - hs * hs + hd * hd)),
                         1e-13, opt.tol_scale));

  out.push_back(check_gt("jordan nonassociativity witness",
                         jordan_nonassociativity_witness(), 0.1));

  double weyl = 0.0;
  for (const MultiIndex& alpha : multi_indices_up_to(2, 3)) {
    if (mi_degree(alpha) == 0) continue;
    weyl = std::max(weyl, weyl_exponential_check(alpha, pair, 1e-2));
  }
  out.push_back(check_le("exponential derivatives match symmetrized monomials",
                         weyl, 1e-4, opt.tol_scale));

  {
    const OperatorTuple T = random_commuting_tuple(2, 4, rng);
    ClassicalPolynomial pa(2), pb(2), pab(2);
    pa.set_coeff({2, 1}, 1.0);
    pb.set_coeff({1, 2}, 1.0);
    pab.set_coeff({3, 3}, 1.0);
    const Matrix prod = quantize(pa, T) * quantize(pb, T);
    out.push_back(check_le("quantization is multiplicative on commuting tuples",
                           spectral_norm(Matrix(quantize(pab, T) - prod)) /
                               std::max(1.0, spectral_norm(prod)),
                           1e-12, opt.tol_scale));
  }

  {
    const auto dist = fermi_distribution(random_multivector(3, rng));
    double total = 0.0;
    for (const auto& [state, p] : dist) total += p;
    out.push_back(check_le("occupation probabilities sum to one",
                           std::abs(total - 1.0), 1e-12, opt.tol_scale));
  }

  {
    const int dim = 6;
    const OperatorTuple qp = heisenberg_pair(dim, 1.0);
    const Matrix comm = qp.op(1) * qp.op(2) - qp.op(2) * qp.op(1);
    const Matrix expect = Complex(0.0, 1.0) * Matrix::Identity(dim, dim);
    out.push_back(check_le(
        "truncated ladder pair obeys the commutation relation on the leading block",
        spectral_norm(Matrix((comm - expect).topLeftCorner(dim - 1, dim - 1))), 1e-12,
        opt.tol_scale));
  }
  return out;
}

inline std::vector<std::string> suite_names() {
  return {"algebra", "hyperholo", "orthogonality", "calculus", "quantization"};
}

inline std::vector<CheckResult> run_suite(const std::string& suite,
                                          const VerifyOptions& opt) {
  if (suite == "algebra") return verify_algebra(opt);
  if (suite == "hyperholo") return verify_hyperholo(opt);
  if (suite == "orthogonality") return verify_orthogonality(opt);
  if (suite == "calculus") return verify_calculus(opt);
  if (suite == "quantization") return verify_quantization(opt);
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const std::string& name : suite_names()) {
      std::vector<CheckResult> part = run_suite(name, opt);
      for (CheckResult& row : part) {
        row.name = name + ": " + row.name;
        out.push_back(std::move(row));
      }
    }
    return out;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace cliffcalc
