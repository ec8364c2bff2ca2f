#include <doctest.h>

#include <random>

#include "invar/mpoly.hpp"

using namespace invar;

namespace {

Poly random_poly(const Field& f, std::size_t nvars, std::mt19937_64& rng, int terms = 5, int maxdeg = 3) {
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial::Exps e(nvars);
    for (auto& x : e) x = rng() % (maxdeg + 1);
    ts.push_back({Monomial(std::move(e)), rng() % f.q()});
  }
  return Poly::from_terms(f, nvars, std::move(ts));
}

}  // namespace

TEST_CASE("canonical order is graded, then lex with variable 0 largest") {
  const Monomial a(Monomial::Exps{2, 0, 0}), b(Monomial::Exps{1, 1, 0}), c(Monomial::Exps{0, 0, 3});
  CHECK(b < a);
  CHECK(a < c);
  const Field f = Field::create(3);
  const Poly p = parse_poly("x^2 + x*y + z^3", f, std::vector<std::string>{"x", "y", "z"});
  CHECK(p.leading().mono == c);
}

TEST_CASE("render and parse round trip") {
  const Field f = Field::create(3);
  const BiPoly g = parse_bipoly("x1^3*x2 + 2*x1*x2^3", f, 2);
  CHECK(render(g) == "x1^3*x2 + 2*x1*x2^3");
  CHECK(parse_bipoly(render(g), f, 2) == g);
  const Field f4 = Field::create(2, 2);
  const BiPoly h = parse_bipoly("(1+1*t)*x1*y1 + (1*t)*x2", f4, 2);
  CHECK(parse_bipoly(render(h), f4, 2) == h);
  CHECK_THROWS_AS(parse_bipoly("x3", f, 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_bipoly("x1 + ", f, 2), std::invalid_argument);
}

TEST_CASE("frobenius powers are cheap and exact") {
  const Field f = Field::create(3);
  const BiPoly u = parse_bipoly("x1*y1 + x2*y2", f, 2);
  CHECK(u.pow(3) == parse_bipoly("x1^3*y1^3 + x2^3*y2^3", f, 2));
  CHECK(u.pow(2).size() == 3);
}

TEST_CASE("bidegree") {
  const Field f = Field::create(2);
  CHECK(bidegree(parse_bipoly("x1^2*y2 + x1*x2*y1", f, 2)).value == Bidegree{2, 1});
  CHECK(bidegree(parse_bipoly("x1 + y1", f, 2)).kind == BidegreeResult::Kind::Mixed);
  CHECK(bidegree(bi_constant(f, 2, 0)).kind == BidegreeResult::Kind::Zero);
}

TEST_CASE("monomial basis size") {
  // C(d+n-1, n-1) * C(e+n-1, n-1)
  CHECK(monomial_basis(2, {3, 2}).size() == 4 * 3);
  CHECK(monomial_basis(3, {2, 2}).size() == 6 * 6);
  const auto b = monomial_basis(2, {2, 1});
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] < b[i - 1]);
}

TEST_CASE("json round trip") {
  const Field f = Field::create(3, 2);
  const BiPoly g = parse_bipoly("(2+1*t)*x1^2*y2 + x2", f, 2);
  CHECK(bipoly_from_json(to_json(g), f, 2) == g);
}

TEST_CASE("checked arithmetic") {
  CHECK(checked_pow(3, 4) == 81);
  CHECK_THROWS_AS(checked_pow(2, 64), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(1ull << 40, 1ull << 40), std::overflow_error);
}

TEST_CASE("property: ring axioms on random polynomials") {
  std::mt19937_64 rng(11);
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    const Field f = Field::create(p, e);
    for (int it = 0; it < 60; ++it) {
      const Poly a = random_poly(f, 3, rng), b = random_poly(f, 3, rng), c = random_poly(f, 3, rng);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a - a).is_zero());
      CHECK(a.pow(3) == a * a * a);
      CHECK(a.pow(f.p()) == a.frobenius_power(1));
    }
  }
}

TEST_CASE("property: substitution is a ring homomorphism") {
  std::mt19937_64 rng(5);
  const Field f = Field::create(3);
  for (int it = 0; it < 40; ++it) {
    const Poly a = random_poly(f, 2, rng), b = random_poly(f, 2, rng);
    std::vector<Poly> imgs = {random_poly(f, 2, rng, 3, 2), random_poly(f, 2, rng, 3, 2)};
    CHECK((a * b).substitute(imgs) == a.substitute(imgs) * b.substitute(imgs));
    CHECK((a + b).substitute(imgs) == a.substitute(imgs) + b.substitute(imgs));
  }
}
