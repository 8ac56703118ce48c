#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "wittkit/error.hpp"
#include "wittkit/poly.hpp"

using namespace wittkit;

namespace {
const std::vector<std::string> kXY = {"x", "y"};
Poly P(const char* s) { return parse_poly(s, kXY); }
}  // namespace

TEST_CASE("parse and print use graded-lex order") {
  CHECK(to_string(P("y + x^2 + 3*x*y - 1"), kXY) == "x^2 + 3*x*y + y - 1");
  CHECK(to_string(P("(x+y)^2 - x^2"), kXY) == "2*x*y + y^2");
  CHECK(to_string(P("0*x"), kXY) == "0");
  CHECK(to_string(P("-x"), kXY) == "-x");
  CHECK(to_string(P("x/2"), kXY) == "1/2*x");
  CHECK_THROWS_AS(P("x^y"), Error);
  CHECK_THROWS_AS(P("z"), Error);
  CHECK_THROWS_AS(P("x/y"), Error);
  CHECK_THROWS_AS(P("(x"), Error);
}

TEST_CASE("printed polynomials re-parse to themselves") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Poly f = testing::random_poly(rng, 2, 5, 6, 50);
    CHECK(P(to_string(f, kXY).c_str()) == f);
  }
}

TEST_CASE("exact_div") {
  CHECK(exact_div(P("2*x+4"), 2) == P("x+2"));
  try {
    exact_div(P("2*x+3"), 2);
    FAIL("expected NotDivisible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotDivisible);
  }
  // phi(x^2) - x^4 for p = 2, with y standing for dx.
  Poly phi = (P("x^2 + 2*y")).pow(2);
  CHECK(exact_div(phi - P("x^4"), 2) == P("2*x^2*y + 2*y^2"));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Poly a = testing::random_poly(rng, 2, 4, 5, 9);
    Poly b = testing::random_poly(rng, 2, 4, 5, 9);
    Poly c = testing::random_poly(rng, 2, 4, 5, 9);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == Poly(2));
    CHECK(a * Poly(2, 1) == a);
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Poly a = testing::random_poly(rng, 2, 3, 4, 5);
    Poly b = testing::random_poly(rng, 2, 3, 4, 5);
    std::vector<Poly> imgs = {testing::random_poly(rng, 2, 2, 3, 3),
                              testing::random_poly(rng, 2, 2, 3, 3)};
    CHECK((a * b).substitute(imgs) == a.substitute(imgs) * b.substitute(imgs));
    CHECK((a + b).substitute(imgs) == a.substitute(imgs) + b.substitute(imgs));
  }
}

TEST_CASE("large univariate products agree with pointwise evaluation") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> coeff(-1000000, 1000000);
  auto dense = [&](unsigned deg, int scale_bits) {
    std::vector<Poly::Term> terms;
    for (unsigned e = 0; e <= deg; ++e) {
      Integer c = coeff(rng);
      c <<= (e % 3 == 0 ? scale_bits : 0);
      terms.push_back({Monomial::variable(1, 0, e), Rational(c)});
    }
    return Poly::from_terms(1, std::move(terms));
  };
  auto at = [](const Poly& f, long k) {
    Integer v = 0;
    for (const auto& t : f.terms()) {
      Integer pk;
      mpz_pow_ui(pk.get_mpz_t(), Integer(k).get_mpz_t(), t.mono[0]);
      v += t.coeff.get_num() * pk;
    }
    return v;
  };
  for (unsigned deg : {30U, 100U, 300U}) {
    Poly a = dense(deg, 200), b = dense(deg / 2 + 7, 0);
    Poly ab = a * b;
    CHECK(ab.total_degree() == a.total_degree() + b.total_degree());
    for (long k : {-3L, -1L, 0L, 1L, 2L, 5L}) CHECK(at(ab, k) == at(a, k) * at(b, k));
    CHECK(ab == b * a);
    CHECK((a * (-b)) == -(ab));
  }
}
