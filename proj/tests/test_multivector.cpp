#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cliffcalc/generator_rep.hpp"
#include "cliffcalc/multivector.hpp"

using namespace cliffcalc;

namespace {

Multivector<double> random_mv(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Multivector<double> x(n);
  for (Blade b = 0; b < x.blade_count(); ++b) x.set_coeff(b, dist(rng));
  return x;
}

double diff_sup(const Multivector<double>& a, const Multivector<double>& b) {
  return (a - b).norm_sup();
}

}  // namespace

TEST_CASE("blade product signs and bits") {
  // e1 e1 = -e0
  auto p = blade_mul(0b01, 0b01, 2);
  CHECK(p.sign == -1);
  CHECK(p.bits == 0u);

  // e2 e1 = -e1e2
  p = blade_mul(0b10, 0b01, 2);
  CHECK(p.sign == -1);
  CHECK(p.bits == 0b11u);

  // e1 e2 = +e1e2
  p = blade_mul(0b01, 0b10, 2);
  CHECK(p.sign == 1);
  CHECK(p.bits == 0b11u);

  // (e1e2) e1 = e2
  p = blade_mul(0b11, 0b01, 2);
  CHECK(p.sign == 1);
  CHECK(p.bits == 0b10u);

  // unit is neutral
  p = blade_mul(0, 0b101, 3);
  CHECK(p.sign == 1);
  CHECK(p.bits == 0b101u);

  CHECK(blade_grade(0b1011) == 3);
  CHECK(blade_label(0) == "e0");
  CHECK(blade_label(0b101) == "e1e3");
}

TEST_CASE("blade product validates inputs") {
  CHECK_THROWS_AS(blade_mul(0b100, 0b01, 2), std::invalid_argument);
  CHECK_THROWS_AS(blade_mul(0, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(blade_mul(0, 0, 17), std::invalid_argument);
  CHECK_THROWS_AS(Multivector<double>(17), std::invalid_argument);
  CHECK_NOTHROW(Multivector<double>(16));
}

TEST_CASE("basic multivector arithmetic") {
  const int n = 2;
  auto e0 = Multivector<double>::unit(n);
  auto e1 = Multivector<double>::generator(n, 1);
  auto e2 = Multivector<double>::generator(n, 2);

  // (1 + e1)(1 - e1) = 1 - e1^2 = 2
  auto prod = mv_mul(e0 + e1, e0 - e1);
  CHECK(diff_sup(prod, scaled_left(2.0, e0)) == 0.0);

  // e1 e2 e1 = e2
  auto chain = mv_mul(mv_mul(e1, e2), e1);
  CHECK(diff_sup(chain, e2) == 0.0);

  CHECK(to_string(e0 + e1) == "1 e0 + 1 e1");
  CHECK(mv_mul(e1, e1).scalar_part() == -1.0);
}

TEST_CASE("geometric product is associative and unital") {
  std::mt19937_64 rng(2024);
  const int n = 3;
  const auto unit = Multivector<double>::unit(n);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_mv(n, rng);
    auto y = random_mv(n, rng);
    auto z = random_mv(n, rng);
    worst = std::max(worst, diff_sup(mv_mul(mv_mul(x, y), z), mv_mul(x, mv_mul(y, z))));
    CHECK(diff_sup(mv_mul(unit, x), x) == 0.0);
    CHECK(diff_sup(mv_mul(x, unit), x) == 0.0);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("conjugation fixes the unit and negates generators") {
  const int n = 3;
  auto e1 = Multivector<double>::generator(n, 1);
  auto e12 = Multivector<double>::single(n, 0b011, 1.0);
  auto e123 = Multivector<double>::single(n, 0b111, 1.0);

  CHECK(diff_sup(conjugate(Multivector<double>::unit(n)), Multivector<double>::unit(n)) == 0.0);
  CHECK(diff_sup(conjugate(e1), -e1) == 0.0);
  CHECK(diff_sup(conjugate(e12), -e12) == 0.0);
  CHECK(diff_sup(conjugate(e123), e123) == 0.0);
}

TEST_CASE("conjugation is an involutive anti-automorphism") {
  std::mt19937_64 rng(77);
  const int n = 3;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_mv(n, rng);
    auto y = random_mv(n, rng);
    worst = std::max(worst, diff_sup(conjugate(mv_mul(x, y)),
                                     mv_mul(conjugate(y), conjugate(x))));
    CHECK(diff_sup(conjugate(conjugate(x)), x) == 0.0);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("paravector times its conjugate is the squared norm") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  const int n = 3;
  for (int trial = 0; trial < 50; ++trial) {
    Multivector<double> v(n);
    double norm2 = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double c = dist(rng);
      norm2 += c * c;
      v.set_coeff(j == 0 ? 0 : Blade(1) << (j - 1), c);
    }
    auto prod = mv_mul(v, conjugate(v));
    CHECK(diff_sup(prod, scaled_left(norm2, Multivector<double>::unit(n))) <= 1e-13);
  }
}

TEST_CASE("rational coefficients stay exact") {
  const int n = 2;
  Multivector<Rational> x(n);
  x.set_coeff(0b01, Rational(1, 3));
  x.set_coeff(0b10, Rational(1, 5));
  auto sq = mv_mul(x, x);

  Multivector<Rational> expected(n);
  expected.set_coeff(0, Rational(-1, 9) + Rational(-1, 25));
  CHECK(sq == expected);

  auto negated = conjugate(x);
  CHECK(negated.coeff(0b01) == Rational(-1, 3));
}

TEST_CASE("matrix coefficients multiply blockwise") {
  const int n = 2;
  Matrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 1, 1, 0;

  auto x = Multivector<Matrix>::single(n, 0b01, a);  // a e1
  auto y = Multivector<Matrix>::single(n, 0b01, b);  // b e1
  auto prod = mv_mul(x, y);                          // -(a b) e0

  CHECK(prod.coeff(0b01).size() == 0);
  CHECK(spectral_norm(prod.scalar_part() + a * b) <= 1e-14);

  // empty coefficients act as zero
  Multivector<Matrix> z(n);
  CHECK(z.is_zero());
  CHECK((z + x).coeff(0b01).isApprox(a));
  CHECK(mv_norm_bound(x) == Catch::Approx(spectral_norm(a)));

  // scaling by a plain double keeps the ring
  auto half = scaled_left(0.5, x);
  CHECK(half.coeff(0b01).isApprox(0.5 * a));
}

TEST_CASE("norm bound dominates the represented spectral norm") {
  std::mt19937_64 rng(99);
  const int n = 3;
  const auto rep = generator_matrices(n);
  for (int trial = 0; trial < 25; ++trial) {
    auto x = random_mv(n, rng);
    CHECK(spectral_norm(represent(x, rep)) <= x.norm_bound() + 1e-12);
  }
}

TEST_CASE("generator matrices satisfy the defining relations") {
  for (int n = 1; n <= 5; ++n) {
    const auto rep = generator_matrices(n);
    REQUIRE(rep.dim == (1 << ((n + 1) / 2)));
    const Matrix id = Matrix::Identity(rep.dim, rep.dim);
    for (int i = 0; i < n; ++i) {
      CHECK(spectral_norm(rep.generators[i] * rep.generators[i] + id) <= 1e-14);
      CHECK(spectral_norm(rep.generators[i] + rep.generators[i].adjoint()) <= 1e-14);
      for (int j = i + 1; j < n; ++j)
        CHECK(spectral_norm(rep.generators[i] * rep.generators[j] +
                            rep.generators[j] * rep.generators[i]) <= 1e-14);
    }
  }
}

TEST_CASE("representation is an algebra homomorphism") {
  std::mt19937_64 rng(1234);
  const int n = 3;
  const auto rep = generator_matrices(n);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto x = random_mv(n, rng);
    auto y = random_mv(n, rng);
    const Matrix lhs = represent(mv_mul(x, y), rep);
    const Matrix rhs = represent(x, rep) * represent(y, rep);
    worst = std::max(worst, spectral_norm(lhs - rhs));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("mismatched dimensions are rejected") {
  Multivector<double> a(2), b(3);
  CHECK_THROWS_AS(mv_mul(a, b), std::invalid_argument);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
  CHECK_THROWS_AS(a.coeff(0b100), std::invalid_argument);
  CHECK_THROWS_AS(Multivector<double>::generator(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(represent(a, generator_matrices(3)), std::invalid_argument);
}
