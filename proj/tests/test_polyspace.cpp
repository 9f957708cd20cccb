#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cliffcalc/hyper_basis.hpp"
#include "cliffcalc/multi_index.hpp"
#include "cliffcalc/mv_polynomial.hpp"
#include "cliffcalc/operator_tuple.hpp"
#include "cliffcalc/rational_linalg.hpp"
#include "cliffcalc/symmetric_product.hpp"

using namespace cliffcalc;

namespace {

Matrix random_matrix(int d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

Matrix random_hermitian(int d, std::mt19937_64& rng) {
  Matrix m = random_matrix(d, rng);
  return ((m + m.adjoint()) / 2.0).eval();
}

Point random_point(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  Point x(n + 1);
  for (double& v : x) v = dist(rng);
  return x;
}

long binom(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Flatten the terms of symbolic polynomials into exact coefficient rows over
/// a shared (exponent, blade) column basis.
std::vector<std::vector<Rational>> coefficient_rows(
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

}  // namespace

TEST_CASE("multi-index enumeration is lexicographic and complete") {
  CHECK(multi_indices(2, 0) == std::vector<MultiIndex>{{0, 0}});
  CHECK(multi_indices(2, 2) == std::vector<MultiIndex>{{0, 2}, {1, 1}, {2, 0}});
  CHECK(multi_indices(3, 2).size() == 6);

  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 5; ++k) {
      const auto list = multi_indices(n, k);
      CHECK(static_cast<long>(list.size()) == binom(k + n - 1, n - 1));
      for (const auto& a : list) CHECK(mi_degree(a) == k);
      CHECK(std::is_sorted(list.begin(), list.end()));
    }

  CHECK(multi_indices_up_to(2, 2).size() == 1 + 2 + 3);
  CHECK_THROWS_AS(multi_indices(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(multi_indices(2, -1), std::invalid_argument);
}

TEST_CASE("multi-index factorials") {
  CHECK(mi_factorial({3, 2}) == 12.0);
  CHECK(mi_factorial_exact({0, 0, 0}) == 1);
  CHECK(factorial_exact(10) == 3628800);
}

TEST_CASE("two- and three-factor symmetric products match closed forms") {
  std::mt19937_64 rng(31337);
  const Matrix a = random_matrix(3, rng);
  const Matrix b = random_matrix(3, rng);
  const Matrix c = random_matrix(3, rng);

  CHECK(spectral_norm(symmetric_product<Matrix>({a, b}) - (a * b + b * a) / 2.0) <= 1e-14);
  CHECK(spectral_norm(symmetric_product<Matrix>({a, a, a}) - a * a * a) <= 1e-13);

  const Matrix six = (a * b * c + a * c * b + b * a * c + b * c * a + c * a * b + c * b * a) / 6.0;
  CHECK(spectral_norm(symmetric_product<Matrix>({a, b, c}) - six) <= 1e-14);
}

TEST_CASE("symmetric product is permutation invariant") {
  std::mt19937_64 rng(4242);
  std::vector<Matrix> f;
  for (int i = 0; i < 4; ++i) f.push_back(random_matrix(3, rng));
  const Matrix base = symmetric_product(f);
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    std::vector<Matrix> g;
    for (int i : perm) g.push_back(f[i]);
    CHECK(spectral_norm(symmetric_product(g) - base) <= 1e-13);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("subset recursion agrees with the permutation sum") {
  std::mt19937_64 rng(90210);
  for (int k = 1; k <= 6; ++k) {
    std::vector<Matrix> f;
    for (int i = 0; i < k; ++i) f.push_back(random_matrix(3, rng));
    CHECK(spectral_norm(symmetric_product(f) - symmetric_product_naive(f)) <= 1e-12);
  }
}

TEST_CASE("symmetric product preserves hermiticity and collapses for commuting factors") {
  std::mt19937_64 rng(555);
  std::vector<Matrix> herm;
  for (int i = 0; i < 3; ++i) herm.push_back(random_hermitian(4, rng));
  const Matrix s = symmetric_product(herm);
  CHECK(spectral_norm(s - s.adjoint()) <= 1e-12);

  // commuting factors: diagonal matrices
  Matrix d1 = Matrix::Zero(3, 3), d2 = Matrix::Zero(3, 3);
  d1.diagonal() << 1.0, 2.0, 3.0;
  d2.diagonal() << -1.0, 0.5, 2.0;
  CHECK(spectral_norm(symmetric_product<Matrix>({d1, d2, d1}) - d1 * d2 * d1) <= 1e-12);
}

TEST_CASE("symmetric product rejects bad input") {
  CHECK_THROWS_AS(symmetric_product(std::vector<Matrix>{}), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_product_naive(std::vector<Matrix>{}), std::invalid_argument);
  std::vector<Matrix> mixed = {Matrix::Identity(2, 2), Matrix::Identity(3, 3)};
  CHECK_THROWS_AS(symmetric_product(mixed), std::invalid_argument);
}

TEST_CASE("identity factors drop out of the symmetrized product") {
  std::mt19937_64 rng(8);
  const Matrix a = random_matrix(3, rng);
  const Matrix b = random_matrix(3, rng);
  const Matrix id = Matrix::Identity(3, 3);
  CHECK(spectral_norm(symmetric_product<Matrix>({a, id}) - a) <= 1e-14);
  CHECK(spectral_norm(symmetric_product<Matrix>({a, id, b, id}) -
                      symmetric_product<Matrix>({a, b})) <= 1e-13);
}

TEST_CASE("regular variable values") {
  CHECK((regular_variable(1, {1, 0, 0}) -
         Multivector<double>::generator(2, 1)).norm_sup() == 0.0);
  CHECK((regular_variable(1, {0, 1, 0}) + Multivector<double>::unit(2)).norm_sup() == 0.0);

  const auto v = regular_variable(2, {2, 5, 3});
  CHECK(v.coeff(0b10) == 2.0);
  CHECK(v.coeff(0) == -3.0);
  CHECK(v.coeff(0b01) == 0.0);

  CHECK_THROWS_AS(regular_variable(3, {1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(regular_variable(0, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("point values of the basis polynomials") {
  // degree zero
  CHECK((v_poly_point({0, 0}, {0.3, -0.4, 2.0}) -
         Multivector<double>::unit(2)).norm_sup() == 0.0);

  // single factor
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Point x = random_point(2, rng);
    CHECK((v_poly_point({1, 0}, x) - regular_variable(1, x)).norm_sup() == 0.0);
    CHECK((v_poly_point({0, 1}, x) - regular_variable(2, x)).norm_sup() == 0.0);
  }

  // alpha=(1,1) at (1,1,1): average of (e1-e0)(e2-e0) and (e2-e0)(e1-e0)
  const auto v = v_poly_point({1, 1}, {1, 1, 1});
  Multivector<double> expected(2);
  expected.set_coeff(0, 1.0);
  expected.set_coeff(0b01, -1.0);
  expected.set_coeff(0b10, -1.0);
  CHECK((v - expected).norm_sup() <= 1e-15);
}

TEST_CASE("symbolic basis polynomials evaluate to the point values") {
  std::mt19937_64 rng(2718);
  for (int n = 2; n <= 3; ++n)
    for (int deg = 0; deg <= 3; ++deg)
      for (const auto& alpha : multi_indices(n, deg)) {
        const auto sym = v_poly_sym<double>(alpha, n);
        for (int trial = 0; trial < 3; ++trial) {
          const Point x = random_point(n, rng);
          CHECK((sym.evaluate(x) - v_poly_point(alpha, x)).norm_sup() <= 1e-13);
        }
      }
}

TEST_CASE("Cauchy-Kovalevskaya route reproduces the symmetric powers exactly") {
  for (int n = 2; n <= 3; ++n)
    for (int deg = 0; deg <= 4; ++deg)
      for (const auto& alpha : multi_indices(n, deg)) {
        const auto ck = v_poly_ck_sym<Rational>(alpha, n);
        const auto direct = v_poly_sym<Rational>(alpha, n);
        CHECK(ck == direct);
      }
}

TEST_CASE("Cauchy-Kovalevskaya point evaluation matches") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Point x = random_point(2, rng);
    for (const auto& alpha : multi_indices_up_to(2, 4))
      CHECK((v_poly_ck(alpha, x) - v_poly_point(alpha, x)).norm_sup() <= 1e-12);
  }
}

TEST_CASE("Dirac derivative of the basis polynomials vanishes exactly") {
  for (int n = 2; n <= 3; ++n) {
    const int top = (n == 2) ? 5 : 4;
    for (int deg = 0; deg <= top; ++deg)
      for (const auto& alpha : multi_indices(n, deg))
        CHECK(dirac_apply(v_poly_sym<Rational>(alpha, n)).is_zero());
  }
}

TEST_CASE("Dirac derivative detects non-hyperholomorphic input") {
  const int n = 2;
  const auto x0 = MvPolynomial<Rational>::variable(n, 0);
  CHECK_FALSE(dirac_apply(x0).is_zero());

  const auto x1 = MvPolynomial<Rational>::variable(n, 1);
  const auto d = dirac_apply(x1);
  REQUIRE(d.terms().size() == 1);
  CHECK(d.terms().begin()->second.coeff(0b01) == Rational(1));

  // constants are trivially in the kernel
  CHECK(dirac_apply(MvPolynomial<Rational>::constant(n, Multivector<Rational>::unit(n))).is_zero());
}

TEST_CASE("basis polynomials of each degree are linearly independent") {
  for (int n = 2; n <= 3; ++n)
    for (int k = 1; k <= (n == 2 ? 4 : 3); ++k) {
      const auto alphas = multi_indices(n, k);
      std::vector<MvPolynomial<Rational>> polys;
      for (const auto& a : alphas) polys.push_back(v_poly_sym<Rational>(a, n));
      CHECK(exact_rank(coefficient_rows(polys)) == static_cast<int>(alphas.size()));
    }
}

TEST_CASE("operator tuple validation") {
  std::mt19937_64 rng(22);
  std::vector<Matrix> good = {random_hermitian(3, rng), random_hermitian(3, rng)};
  CHECK_NOTHROW(OperatorTuple(good));

  std::vector<Matrix> skew = good;
  skew[1](0, 1) += Complex(0.5, 0.0);
  CHECK_THROWS_AS(OperatorTuple(skew), std::invalid_argument);

  CHECK_THROWS_AS(OperatorTuple({}), std::invalid_argument);
  CHECK_THROWS_AS(OperatorTuple({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
                  std::invalid_argument);

  const OperatorTuple T(good);
  CHECK(T.count() == 2);
  CHECK(T.dim() == 3);
  CHECK_THROWS_AS(T.op(0), std::invalid_argument);
  CHECK_THROWS_AS(T.op(3), std::invalid_argument);

  double expected = std::max(spectral_norm(good[0]), spectral_norm(good[1]));
  CHECK(spectral_radius_bound(T) == Catch::Approx(expected));
}

TEST_CASE("operator substitution into the basis polynomials") {
  std::mt19937_64 rng(7117);
  const OperatorTuple T({random_hermitian(3, rng), random_hermitian(3, rng)});
  const Matrix& t1 = T.op(1);
  const Matrix& t2 = T.op(2);

  CHECK(spectral_norm(v_poly_operators({0, 0}, T) - Matrix::Identity(3, 3)) == 0.0);
  CHECK(spectral_norm(v_poly_operators({2, 0}, T) - t1 * t1) <= 1e-13);
  CHECK(spectral_norm(v_poly_operators({1, 1}, T) - (t1 * t2 + t2 * t1) / 2.0) <= 1e-13);

  // padding indices contribute identity factors only
  CHECK(spectral_norm(v_poly_operators({1, 1, 2}, T) - v_poly_operators({1, 1}, T)) <= 1e-13);

  // commuting tuple: symmetrization collapses to the plain product
  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
  d1.diagonal() << 2.0, -1.0;
  d2.diagonal() << 0.5, 3.0;
  const OperatorTuple D({d1, d2});
  CHECK(spectral_norm(v_poly_operators({2, 3}, D) - d1 * d1 * d2 * d2 * d2) <= 1e-12);

  const auto table = v_poly_table(T, 2, 3);
  CHECK(table.size() == 1 + 2 + 3 + 4);
  CHECK(spectral_norm(table.at({1, 1}) - v_poly_operators({1, 1}, T)) == 0.0);
}
