#include "doctest.h"
#include "towerkit/error.hpp"
#include "towerkit/linalg.hpp"
#include "towerkit/random.hpp"

using namespace towerkit;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c, Field f = {}) {
  Matrix m(r, c, f);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.small_rational(4));
  return m;
}

}  // namespace

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("3/2") == Rational(3, 2));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(parse_rational("+7") == 7);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK_THROWS_AS(parse_rational("1/"), Error);
}

TEST_CASE("rank, kernel and solve agree on random matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = static_cast<std::size_t>(rng.uniform(1, 6));
    std::size_t c = static_cast<std::size_t>(rng.uniform(1, 6));
    Matrix a = random_matrix(rng, r, c);
    Matrix k = kernel(a);
    CHECK(k.cols() + rank(a) == c);
    CHECK((a * k).is_zero());
    Matrix x = random_matrix(rng, c, 2);
    Matrix b = a * x;
    auto sol = solve(a, b);
    REQUIRE(sol.has_value());
    CHECK(a * *sol == b);
  }
}

TEST_CASE("inverse of a product") {
  Matrix a = Matrix::from_rows({{1, 2}, {3, 4}}, 2);
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == Matrix::identity(2));
  CHECK_FALSE(inverse(Matrix::from_rows({{1, 2}, {2, 4}}, 2)).has_value());
}

TEST_CASE("complement basis completes a span") {
  Matrix span = Matrix::from_rows({{1}, {1}, {0}}, 1);
  Matrix c = complement_basis(span, 3);
  CHECK(c.cols() == 2);
  CHECK(rank(hstack(span, c)) == 3);
}

TEST_CASE("prime field arithmetic stays reduced") {
  Field f = Field::prime(7);
  Matrix a = Matrix::from_rows({{3, 5}, {2, Rational(1, 2)}}, 2, f);
  CHECK(a(1, 1) == 4);  // 2 * 4 = 8 = 1 mod 7
  auto inv = inverse(a);
  REQUIRE(inv);
  CHECK(a * *inv == Matrix::identity(2, f));
  CHECK_THROWS_AS(Field::prime(8), Error);
  CHECK_THROWS_AS(f.normalize(Rational(1, 7)), Error);
}
