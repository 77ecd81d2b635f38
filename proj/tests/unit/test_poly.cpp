#include <doctest.h>

#include "frobpow/poly.hpp"

using namespace frobpow;

namespace {

Monomial mono(std::vector<std::uint32_t> e) { return Monomial(std::move(e)); }

Polynomial x(const Field& f, std::size_t n, std::size_t i) { return Polynomial::variable(f, n, i); }

}  // namespace

TEST_CASE("arithmetic examples") {
  const Field f2 = make_field(2, 1);
  const auto sum = x(f2, 2, 0) + x(f2, 2, 1);
  CHECK(sum.pow(2) == x(f2, 2, 0).pow(2) + x(f2, 2, 1).pow(2));

  const Field f5 = make_field(5, 1);
  const auto x1 = x(f5, 3, 0), x3 = x(f5, 3, 2);
  const auto f1 = x1.pow(5) - x1 * x3.pow(4);
  CHECK(f1 * Polynomial::constant(f5, 3, f5.one()) == f1);

  Polynomial expected(f5, 3);
  expected.add_term(mono({10, 0, 0}), f5.one());
  expected.add_term(mono({6, 0, 4}), f5.from_int(-2));
  expected.add_term(mono({2, 0, 8}), f5.one());
  CHECK(f1.pow(2) == expected);
  CHECK(f1 * f1 == expected);
  CHECK(f1.to_string(MonomialOrder::grlex(3)) == "x1^5 - x1*x3^4");
}

TEST_CASE("arithmetic rejects mismatched rings") {
  const Field f2 = make_field(2, 1), f3 = make_field(3, 1);
  CHECK_THROWS_AS(x(f2, 2, 0) + x(f3, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(x(f2, 2, 0) * x(f2, 3, 0), std::invalid_argument);
  Polynomial p(f2, 2);
  CHECK_THROWS_AS(p.add_term(Monomial(3), f2.one()), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::variable(f2, 2, 2), std::out_of_range);
}

TEST_CASE("pow agrees with repeated multiplication") {
  const Field f3 = make_field(3, 1);
  const auto a = x(f3, 2, 0) + x(f3, 2, 1).scaled(f3.from_int(2));
  const auto b = a + Polynomial::constant(f3, 2, f3.one());
  Polynomial ra = Polynomial::constant(f3, 2, f3.one()), rb = ra;
  for (unsigned k = 0; k <= 12; ++k) {
    CHECK(a.pow(k) == ra);
    CHECK(b.pow(k) == rb);
    ra = ra * a;
    rb = rb * b;
  }
}

TEST_CASE("order examples") {
  const auto grlex = MonomialOrder::grlex(3);
  CHECK(grlex.compare(mono({1, 0, 1}), mono({0, 2, 0})) > 0);
  CHECK(grlex.compare(mono({1, 1, 0}), mono({1, 1, 0})) == 0);
  CHECK(grlex.compare(mono({0, 0, 3}), mono({2, 0, 0})) > 0);

  const MonomialOrder weighted({5, 5, 1});
  CHECK(weighted.compare(mono({0, 0, 5}), mono({1, 0, 0})) < 0);
  CHECK(weighted.weighted_degree(mono({1, 2, 3})) == 18);
  CHECK_THROWS_AS(MonomialOrder({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(weighted.weighted_degree(mono({1, 1})), std::invalid_argument);
}

TEST_CASE("leading terms") {
  const Field f5 = make_field(5, 1);
  const auto x1 = x(f5, 3, 0), x3 = x(f5, 3, 2);
  const auto f1 = x1.pow(5) - x1 * x3.pow(4);
  CHECK(f1.leading_monomial(MonomialOrder::grlex(3)) == mono({5, 0, 0}));

  const auto c = Polynomial::constant(f5, 3, f5.from_int(3));
  const auto [m, v] = c.leading_term(MonomialOrder::grlex(3));
  CHECK(m.is_one());
  CHECK(v == f5.from_int(3));

  CHECK_THROWS_WITH_AS(Polynomial(f5, 3).leading_monomial(MonomialOrder::grlex(3)), "LM of zero",
                       std::domain_error);
}

TEST_CASE("reduce_mod_frobenius examples") {
  const Field f2 = make_field(2, 1);
  CHECK(reduce_mod_frobenius(x(f2, 1, 0).pow(3), 2).is_zero());

  const Field f3 = make_field(3, 1);
  const auto X = x(f3, 2, 0), Y = x(f3, 2, 1);
  CHECK(reduce_mod_frobenius(X.pow(9) * Y - X * Y, 9) == -(X * Y));

  // x_n^{p^m + e - 1} with p = 5, m = 1, e = 2.
  const Field f5 = make_field(5, 1);
  CHECK(reduce_mod_frobenius(x(f5, 3, 2).pow(6), 5).is_zero());
}

TEST_CASE("division examples") {
  const Field f3 = make_field(3, 1);
  const auto order = MonomialOrder::grlex(2);
  const auto X = x(f3, 2, 0), Y = x(f3, 2, 1);
  const auto d1 = X * Y + Y.pow(2);
  {
    const std::vector<Polynomial> divs{d1};
    const auto res = divide(d1, divs, order);
    CHECK(res.quotients[0] == Polynomial::constant(f3, 2, f3.one()));
    CHECK(res.remainder.is_zero());
  }
  {
    const std::vector<Polynomial> divs{X};
    const auto res = divide(X.pow(2) + X, divs, order);
    CHECK(res.quotients[0] == X + Polynomial::constant(f3, 2, f3.one()));
    CHECK(res.remainder.is_zero());
  }
  {
    // First divisor wins, and what no leading monomial divides is moved to the remainder.
    const std::vector<Polynomial> divs{X, X + Y};
    const auto res = divide(X * Y + Y.pow(2) + Polynomial::constant(f3, 2, f3.one()), divs, order);
    CHECK(res.quotients[0] == Y);
    CHECK(res.quotients[1].is_zero());
    CHECK(res.remainder == Y.pow(2) + Polynomial::constant(f3, 2, f3.one()));
  }
}

TEST_CASE("substitute_linear is a right action with the stated convention") {
  const Field f5 = make_field(5, 1);
  const auto X = x(f5, 2, 0), Y = x(f5, 2, 1);
  // Row j of g holds the image of x_j.
  MatrixFq g = MatrixFq::identity(2);
  g.at(0, 1) = f5.from_int(-1);
  CHECK(substitute_linear(X, g) == X - Y);
  CHECK(substitute_linear(Y, g) == Y);
  CHECK(substitute_linear(X * Y, MatrixFq::identity(2)) == X * Y);
  CHECK_THROWS_AS(substitute_linear(X, MatrixFq::identity(3)), std::invalid_argument);
}

TEST_CASE("to_string renders descending terms") {
  const Field f5 = make_field(5, 1);
  const auto X = x(f5, 2, 0), Y = x(f5, 2, 1);
  const auto p = Y.scaled(f5.from_int(3)) + X.pow(2).scaled(f5.from_int(2)) + Polynomial::constant(f5, 2, f5.from_int(4));
  CHECK(p.to_string(MonomialOrder::grlex(2)) == "2*x1^2 - 2*x2 - 1");
  CHECK(Polynomial(f5, 2).to_string(MonomialOrder::grlex(2)) == "0");
  const Field f4 = make_field(2, 2);
  const auto q = Polynomial::variable(f4, 1, 0).scaled(f4.generator());
  CHECK(q.to_string(MonomialOrder::grlex(1), "f") == "[0,1]*f1");
}
