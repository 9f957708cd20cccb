#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "cliffcalc/calculus.hpp"
#include "cliffcalc/cauchy_kernel.hpp"
#include "cliffcalc/random_gen.hpp"

using namespace cliffcalc;

namespace {

double matrix_mv_diff(const Multivector<Matrix>& a, const Multivector<Matrix>& b) {
  Multivector<Matrix> d = a;
  d -= b;
  return mv_norm_bound(d);
}

double relative_diff(const Multivector<Matrix>& a, const Multivector<Matrix>& b) {
  return matrix_mv_diff(a, b) / std::max(1.0, mv_norm_bound(b));
}

Multivector<Matrix> embed(const Multivector<double>& a, int dim) {
  Multivector<Matrix> out(a.generators());
  const Blade count = Blade{1} << a.generators();
  for (Blade b = 0; b < count; ++b)
    out.set_coeff(b, Matrix(a.coeff(b) * Matrix::Identity(dim, dim)));
  return out;
}

}  // namespace

TEST_CASE("spectral norm bound of a tuple") {
  const int d = 2;
  Matrix t1 = Matrix::Zero(d, d);
  t1(0, 0) = 1.0;
  t1(1, 1) = -2.0;
  const Matrix t2 = Matrix::Identity(d, d);
  CHECK(spectral_radius_bound(OperatorTuple({t1, t2})) == Catch::Approx(2.0));

  Matrix pauli1 = Matrix::Zero(d, d);
  pauli1(0, 1) = 1.0;
  pauli1(1, 0) = 1.0;
  Matrix pauli3 = Matrix::Zero(d, d);
  pauli3(0, 0) = 1.0;
  pauli3(1, 1) = -1.0;
  CHECK(spectral_radius_bound(OperatorTuple({pauli1, pauli3})) == Catch::Approx(1.0));

  const OperatorTuple zeros({Matrix::Zero(d, d), Matrix::Zero(d, d)});
  CHECK(spectral_radius_bound(zeros) == 0.0);
}

TEST_CASE("radius resolution guards the spectral bound") {
  Rng rng(11);
  const OperatorTuple T = random_hermitian_tuple(2, 3, rng);
  const double bound = spectral_radius_bound(T);
  CHECK(resolve_radius(T, 0.0) == Catch::Approx(2.0 * bound));
  CHECK(resolve_radius(T, 3.0 * bound) == Catch::Approx(3.0 * bound));
  CHECK_THROWS_AS(resolve_radius(T, 0.5 * bound), std::invalid_argument);

  const int d = 2;
  const OperatorTuple zeros({Matrix::Zero(d, d), Matrix::Zero(d, d)});
  CHECK(resolve_radius(zeros, 0.0) == Catch::Approx(1.0));
}

TEST_CASE("operator kernel of the zero tuple is the scalar kernel times identity") {
  const int n = 2, d = 3;
  const OperatorTuple zeros({Matrix::Zero(d, d), Matrix::Zero(d, d)});
  const Point y{0.4, -0.7, 1.1};
  OperatorKernelConfig cfg;
  cfg.truncation = 5;
  const KernelExpansion ek = operator_cauchy_kernel_expansion(y, zeros, cfg);
  CHECK(matrix_mv_diff(ek.value, embed(cauchy_kernel(y), d)) < 1e-14);
  REQUIRE(ek.degree_norms.size() == 6);
  for (int j = 1; j <= 5; ++j) CHECK(ek.degree_norms[j] == 0.0);
  CHECK_FALSE(ek.decay_warning);
  CHECK(n == 2);
}

TEST_CASE("operator kernel of scalar operators reduces to a shifted point kernel") {
  // for 1x1 tuples the kernel series sums the two-point decomposition, so it
  // must approach E(y - x) at the point whose regular variables equal t
  const int n = 2;
  const std::vector<double> t{0.12, -0.16};
  Matrix t1(1, 1), t2(1, 1);
  t1(0, 0) = t[0];
  t2(0, 0) = t[1];
  const OperatorTuple T({t1, t2});
  const Point x{0.0, -t[0], -t[1]};
  const Point y{0.8, -0.5, 0.6};

  OperatorKernelConfig cfg;
  cfg.truncation = 10;
  const Multivector<Matrix> ek = operator_cauchy_kernel(y, T, cfg);
  Point shifted(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) shifted[i] = y[i] - x[i];
  const Multivector<double> expected = cauchy_kernel(shifted);
  Multivector<double> got(n);
  const Blade count = Blade{1} << n;
  for (Blade b = 0; b < count; ++b) got.set_coeff(b, ek.coeff(b)(0, 0).real());
  Multivector<double> diff = got;
  diff -= expected;
  CHECK(mv_norm_bound(diff) < 1e-7);
}

TEST_CASE("operator kernel rejects singular and undersized points") {
  Rng rng(3);
  const OperatorTuple T = random_hermitian_tuple(2, 2, rng);
  CHECK_THROWS_AS(operator_cauchy_kernel(Point{0.0, 0.0, 0.0}, T), std::domain_error);
  CHECK_THROWS_AS(operator_cauchy_kernel(Point{1.0, 2.0}, T), std::invalid_argument);
}

TEST_CASE("resolvent probe verdicts") {
  const int d = 2;
  const OperatorTuple zeros({Matrix::Zero(d, d), Matrix::Zero(d, d)});
  const ResolventProbe zp = resolvent_probe(Point{0.5, 0.5, 0.0}, zeros, 6);
  CHECK(zp.verdict == "converging");
  REQUIRE(zp.term_norms.size() == 7);
  for (int j = 1; j <= 6; ++j) CHECK(zp.term_norms[j] == 0.0);
  CHECK(zp.partial_norms[6] == Catch::Approx(zp.term_norms[0]));

  Rng rng(5);
  const OperatorTuple T = random_hermitian_tuple(2, 4, rng);
  const double bound = spectral_radius_bound(T);
  Point far = random_direction(2, rng);
  for (double& c : far) c *= 2.0 * bound;
  const ResolventProbe fp = resolvent_probe(far, T, 10);
  CHECK(fp.verdict == "converging");
  CHECK(fp.term_norms[10] < fp.term_norms[1]);

  // a tuple of identities keeps every substituted monomial at norm one, so
  // close to the origin the per-degree terms blow up
  const OperatorTuple ones({Matrix::Identity(d, d), Matrix::Identity(d, d)});
  Point near{0.05, 0.05, 0.05};
  const ResolventProbe np = resolvent_probe(near, ones, 8);
  CHECK(np.verdict == "diverging");
  CHECK(np.term_norms[8] > np.term_norms[0]);
}

TEST_CASE("Taylor route sends generators to the operators") {
  Rng rng(7);
  const int n = 2, dim = 3;
  const OperatorTuple T = random_hermitian_tuple(n, dim, rng);

  HyperPolynomial f(n);
  f.set_coeff({1, 0}, Multivector<double>::unit(n));
  const CalculusResult r = calculus_taylor(f, T);
  CHECK(spectral_norm(Matrix(r.value.coeff(0) - T.op(1))) < 1e-14);
  const Blade count = Blade{1} << n;
  for (Blade b = 1; b < count; ++b) CHECK(scalar_is_zero(r.value.coeff(b)));

  HyperPolynomial g(n);
  g.set_coeff({1, 1}, Multivector<double>::unit(n));
  const Matrix expected = 0.5 * (T.op(1) * T.op(2) + T.op(2) * T.op(1));
  CHECK(spectral_norm(Matrix(calculus_taylor(g, T).value.coeff(0) - expected)) < 1e-14);

  HyperPolynomial one(n);
  one.set_coeff({0, 0}, Multivector<double>::unit(n));
  CHECK(spectral_norm(Matrix(calculus_taylor(one, T).value.coeff(0) -
                             Matrix::Identity(dim, dim))) == 0.0);

  const CalculusResult empty = calculus_taylor(HyperPolynomial(n), T);
  CHECK(empty.value.is_zero());
}

TEST_CASE("Taylor route on a commuting diagonal tuple evaluates the monomial") {
  const int n = 2, dim = 3;
  Matrix t1 = Matrix::Zero(dim, dim), t2 = Matrix::Zero(dim, dim);
  t1.diagonal() << 0.5, -1.0, 2.0;
  t2.diagonal() << 1.5, 0.25, -0.75;
  const OperatorTuple T({t1, t2});

  HyperPolynomial f(n);
  f.set_coeff({2, 1}, Multivector<double>::unit(n));
  const Matrix got = calculus_taylor(f, T).value.coeff(0);
  for (int i = 0; i < dim; ++i) {
    const double t1i = t1(i, i).real(), t2i = t2(i, i).real();
    CHECK(got(i, i).real() == Catch::Approx(t1i * t1i * t2i).margin(1e-14));
  }
}

TEST_CASE("Taylor route is linear and preserves hermiticity for scalar coefficients") {
  Rng rng(13);
  const int n = 2, dim = 4;
  const OperatorTuple T = random_hermitian_tuple(n, dim, rng);
  const HyperPolynomial f = random_hyper_polynomial(n, 3, rng);
  const HyperPolynomial g = random_hyper_polynomial(n, 3, rng);
  const double lambda = 0.7;

  HyperPolynomial combo = f.scaled(lambda);
  combo += g;
  const Multivector<Matrix> lhs = calculus_taylor(combo, T).value;
  Multivector<Matrix> rhs = calculus_taylor(g, T).value;
  const Multivector<Matrix> fv = calculus_taylor(f, T).value;
  const Blade count = Blade{1} << n;
  for (Blade b = 0; b < count; ++b)
    scalar_accumulate(rhs.coeff(b), scalar_mul(fv.coeff(b), lambda));
  CHECK(relative_diff(lhs, rhs) < 1e-13);

  HyperPolynomial real_poly(n);
  for (const MultiIndex& alpha : multi_indices_up_to(n, 3))
    real_poly.set_coeff(alpha, scaled_left(random_real(rng), Multivector<double>::unit(n)));
  const Matrix val = calculus_taylor(real_poly, T).value.coeff(0);
  CHECK(spectral_norm(Matrix(val - val.adjoint())) < 1e-12);
}

TEST_CASE("boundary integral reproduces constants and generators") {
  Rng rng(19);
  const int n = 2, dim = 3;
  const OperatorTuple T = random_hermitian_tuple(n, dim, rng);

  OperatorKernelConfig cfg;
  cfg.truncation = 2;
  cfg.quad_order = 32;

  HyperPolynomial one(n);
  one.set_coeff({0, 0}, Multivector<double>::unit(n));
  const CalculusResult id = calculus_integral(one, T, cfg);
  CHECK(spectral_norm(Matrix(id.value.coeff(0) - Matrix::Identity(dim, dim))) < 1e-7);
  CHECK(id.radius == Catch::Approx(2.0 * spectral_radius_bound(T)));
  CHECK_FALSE(id.decay_warning);

  HyperPolynomial x1(n);
  x1.set_coeff({1, 0}, Multivector<double>::unit(n));
  const CalculusResult gen = calculus_integral(x1, T, cfg);
  CHECK(spectral_norm(Matrix(gen.value.coeff(0) - T.op(1))) < 1e-7);
}

TEST_CASE("the two construction routes agree on random polynomials") {
  Rng rng(23);
  OperatorKernelConfig cfg;
  cfg.truncation = 3;
  cfg.quad_order = 32;

  for (int trial = 0; trial < 3; ++trial) {
    const int n = 2;
    const OperatorTuple T = random_hermitian_tuple(n, 4, rng);
    const HyperPolynomial f = random_hyper_polynomial(n, 3, rng);
    const CalculusResult direct = calculus_taylor(f, T);
    const CalculusResult integral = calculus_integral(f, T, cfg);
    CHECK(relative_diff(integral.value, direct.value) < 1e-6);
  }

  const int n = 3;
  const OperatorTuple T = random_hermitian_tuple(n, 4, rng);
  const HyperPolynomial f = random_hyper_polynomial(n, 2, rng);
  cfg.truncation = 2;
  cfg.quad_order = 24;
  const CalculusResult direct = calculus_taylor(f, T);
  const CalculusResult integral = calculus_integral(f, T, cfg);
  CHECK(relative_diff(integral.value, direct.value) < 1e-6);
}

TEST_CASE("boundary integral enforces its preconditions") {
  Rng rng(29);
  const int n = 2;
  const OperatorTuple T = random_hermitian_tuple(n, 3, rng);
  HyperPolynomial f(n);
  f.set_coeff({2, 1}, Multivector<double>::unit(n));

  OperatorKernelConfig cfg;
  cfg.radius = 0.5 * spectral_radius_bound(T);
  CHECK_THROWS_AS(calculus_integral(f, T, cfg), std::invalid_argument);

  cfg.radius = 0.0;
  cfg.truncation = 2;
  CHECK_THROWS_AS(calculus_integral(f, T, cfg), std::invalid_argument);
}

TEST_CASE("the boundary integral is radius independent") {
  Rng rng(31);
  const int n = 2;
  const OperatorTuple T = random_hermitian_tuple(n, 3, rng);
  const double bound = spectral_radius_bound(T);

  OperatorKernelConfig cfg;
  cfg.truncation = 1;
  cfg.quad_order = 32;

  HyperPolynomial one(n);
  one.set_coeff({0, 0}, Multivector<double>::unit(n));
  CHECK(vanishing_check(one, T, 1.5 * bound, 3.0 * bound, cfg) < 1e-7);

  HyperPolynomial x1(n);
  x1.set_coeff({1, 0}, Multivector<double>::unit(n));
  CHECK(vanishing_check(x1, T, 1.5 * bound, 3.0 * bound, cfg) < 1e-6);

  const int d = 2;
  const OperatorTuple zeros({Matrix::Zero(d, d), Matrix::Zero(d, d)});
  cfg.truncation = 2;
  const HyperPolynomial f = random_hyper_polynomial(n, 2, rng);
  CHECK(vanishing_check(f, zeros, 1.0, 2.0, cfg) < 1e-8);

  CHECK_THROWS_AS(vanishing_check(one, T, 0.5 * bound, 3.0 * bound, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(vanishing_check(one, T, 2.0 * bound, 1.5 * bound, cfg),
                  std::invalid_argument);
}

TEST_CASE("commuting oracle evaluates on joint eigenvalues") {
  const int n = 2, dim = 3;
  Matrix t1 = Matrix::Zero(dim, dim), t2 = Matrix::Zero(dim, dim);
  t1.diagonal() << 0.5, -1.0, 2.0;
  t2.diagonal() << 1.5, 0.25, -0.75;
  const OperatorTuple T({t1, t2});

  HyperPolynomial f(n);
  f.set_coeff({1, 1}, Multivector<double>::unit(n));
  const Multivector<Matrix> got = commuting_oracle(f, T);
  for (int i = 0; i < dim; ++i)
    CHECK(got.coeff(0)(i, i).real() ==
          Catch::Approx(t1(i, i).real() * t2(i, i).real()));

  HyperPolynomial one(n);
  one.set_coeff({0, 0}, Multivector<double>::unit(n));
  CHECK(spectral_norm(Matrix(commuting_oracle(one, T).coeff(0) -
                             Matrix::Identity(dim, dim))) < 1e-14);
}

TEST_CASE("commuting oracle matches the Taylor route on commuting tuples") {
  Rng rng(37);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2, dim = 4;
    const OperatorTuple T = random_commuting_tuple(n, dim, rng);
    const HyperPolynomial f = random_hyper_polynomial(n, 3, rng);
    const Multivector<Matrix> oracle = commuting_oracle(f, T);
    const Multivector<Matrix> taylor = calculus_taylor(f, T).value;
    CHECK(relative_diff(taylor, oracle) < 1e-10);
  }
}

TEST_CASE("commuting oracle handles identity padding beyond the tuple") {
  Rng rng(41);
  const OperatorTuple T = random_commuting_tuple(2, 3, rng);
  HyperPolynomial f(3);
  f.set_coeff({1, 0, 2}, Multivector<double>::unit(3));
  const Multivector<Matrix> oracle = commuting_oracle(f, T);
  const Multivector<Matrix> taylor = calculus_taylor(f, T).value;
  CHECK(relative_diff(taylor, oracle) < 1e-12);
  CHECK(spectral_norm(Matrix(oracle.coeff(0) - T.op(1))) < 1e-10);
}

TEST_CASE("commuting oracle refuses non-commuting input") {
  Rng rng(43);
  const OperatorTuple T = random_hermitian_tuple(2, 3, rng);
  HyperPolynomial f(2);
  f.set_coeff({1, 0}, Multivector<double>::unit(2));
  CHECK_THROWS_AS(commuting_oracle(f, T), std::invalid_argument);
}
