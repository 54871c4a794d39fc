#include "holonome/rational.hpp"

#include <doctest.h>

using namespace holonome;

TEST_SUITE("rational") {
  TEST_CASE("parse and print") {
    CHECK(parse_rational("6/4") == frac(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(to_string(frac(-4, 6)) == "-2/3");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  }

  TEST_CASE("frac is canonical") {
    CHECK(frac(2, 4).get_num() == 1);
    CHECK(frac(2, 4).get_den() == 2);
    CHECK(frac(3, -6) == frac(-1, 2));
  }

  TEST_CASE("products and kron") {
    QMatrix a(2, 2), b(2, 2);
    a(0, 1) = 1;
    b(1, 0) = 1;
    QMatrix ab = a * b;
    CHECK(ab(0, 0) == 1);
    CHECK(ab.nonzeros() == 1);
    QMatrix k = kron(a, QMatrix::identity(3));
    CHECK(k.rows() == 6);
    CHECK(k(0, 3) == 1);
    CHECK(k(2, 5) == 1);
    CHECK(k.nonzeros() == 3);
    CHECK(commutator(a, b) == QMatrix::diagonal(std::vector<Rational>{1, -1}));
  }

  TEST_CASE("nullspace, rank and solve") {
    // Rows (1,2,3), (2,4,6), (0,1,1): rank 2, kernel spanned by (-1,-1,1).
    QMatrix m(3, 3);
    const int entries[3][3] = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = entries[i][j];
    CHECK(rank(m) == 2);
    const QMatrix ker = nullspace(m);
    REQUIRE(ker.cols() == 1);
    CHECK((m * ker).is_zero());
    CHECK(ker(0, 0) == ker(1, 0));
    CHECK(ker(0, 0) == -ker(2, 0));

    QMatrix rhs(3, 1);
    rhs(0, 0) = 1;
    CHECK_FALSE(solve(m, rhs).has_value());
    rhs(1, 0) = 2;
    rhs(2, 0) = 5;
    const auto x = solve(m, rhs);
    REQUIRE(x.has_value());
    CHECK(m * *x == rhs);
  }

  TEST_CASE("exp of a nilpotent matrix") {
    QMatrix n(3, 3);
    n(0, 1) = 1;
    n(1, 2) = 1;
    const QMatrix e = exp_nilpotent(n);
    CHECK(e(0, 0) == 1);
    CHECK(e(0, 1) == 1);
    CHECK(e(0, 2) == frac(1, 2));
    CHECK(e(1, 2) == 1);
    CHECK_THROWS_AS(exp_nilpotent(QMatrix::identity(2)), std::invalid_argument);
  }

  TEST_CASE("coordinates in a basis") {
    QMatrix basis(3, 2), v(3, 1);
    basis(0, 0) = 1;
    basis(1, 0) = 1;
    basis(2, 1) = 2;
    v(0, 0) = 3;
    v(1, 0) = 3;
    v(2, 0) = 4;
    const QMatrix c = coordinates_in(basis, v);
    CHECK(c(0, 0) == 3);
    CHECK(c(1, 0) == 2);
    v(1, 0) = 1;
    CHECK_THROWS_AS(coordinates_in(basis, v), std::runtime_error);
  }
}
