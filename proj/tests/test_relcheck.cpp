#include <doctest.h>

#include <random>

#include "invar/relcheck.hpp"

using namespace invar;

namespace {

RingMatrix ints(const CoeffRing& r, std::vector<std::vector<int>> rows) {
  RingMatrix m;
  for (auto& row : rows) {
    m.emplace_back();
    for (int v : row) m.back().push_back(r.from_int(v));
  }
  return m;
}

}  // namespace

TEST_CASE("ring elements") {
  const auto z = CoeffRing::integers(), z6 = CoeffRing::integers_mod(6), f9 = CoeffRing::finite_field(Field::create(3, 2));
  CHECK(z.name() == "Z");
  CHECK(z6.name() == "Z/6");
  CHECK(f9.name() == "F_9");
  CHECK((z6.from_int(2) * z6.from_int(3)).is_zero());
  CHECK(z6.from_int(-1) == z6.from_int(5));
  CHECK((z.from_int(-4) * z.from_int(5)).str() == "-20");
  CHECK_THROWS_AS(z.one() + z6.one(), std::invalid_argument);
  CHECK_THROWS_AS(CoeffRing::integers_mod(1), std::invalid_argument);
}

TEST_CASE("division-free determinant") {
  const auto z = CoeffRing::integers();
  CHECK(det(z, {}) == z.one());
  CHECK(det(z, ints(z, {{2, 1}, {7, 4}})) == z.from_int(1));
  CHECK(det(z, ints(z, {{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == z.from_int(-3));
  const auto z6 = CoeffRing::integers_mod(6);
  CHECK(det(z6, ints(z6, {{2, 0}, {0, 3}})).is_zero());
  CHECK(det(z6, ints(z6, {{5, 1}, {1, 5}})) == z6.from_int(0));
}

TEST_CASE("property: determinant is alternating and multiplicative") {
  std::mt19937_64 rng(17);
  for (const auto& ring : default_fuzz_rings()) {
    for (std::size_t n = 1; n <= 4; ++n)
      for (int it = 0; it < 20; ++it) {
        auto a = random_matrix(ring, n, rng), b = random_matrix(ring, n, rng);
        RingMatrix ab(n, std::vector<RingElem>(n, ring.zero()));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) ab[i][j] = ab[i][j] + a[i][k] * b[k][j];
        CHECK(det(ring, ab) == det(ring, a) * det(ring, b));
        if (n >= 2) {
          auto s = a;
          std::swap(s[0], s[1]);
          CHECK(det(ring, s) == -det(ring, a));
        }
      }
  }
}

TEST_CASE("identity and cofactor lemmas on random matrices") {
  std::mt19937_64 rng(1);
  for (const auto& ring : default_fuzz_rings())
    for (std::size_t n = 1; n <= 5; ++n)
      for (std::size_t k = 1; k <= n; ++k)
        for (int it = 0; it < 5; ++it) {
          const auto a = random_matrix(ring, n, rng), b = random_matrix(ring, n, rng);
          CHECK(check_det_identity(ring, n, k, a, b));
          CHECK(check_cofactor_lemmas(ring, n, k, a, b));
        }
}

TEST_CASE("fuzzing is reproducible from the seed") {
  const auto a = fuzz_det_identity(42, 4, 20, default_fuzz_rings());
  const auto b = fuzz_det_identity(42, 4, 20, default_fuzz_rings());
  const auto c = fuzz_det_identity(43, 4, 20, default_fuzz_rings());
  CHECK(to_json(a) == to_json(b));
  CHECK(a.total_failures() == 0);
  CHECK(c.total_failures() == 0);
  CHECK(a.total_trials() == 5 * 10 * 20);
  CHECK(to_json(a)["seed"] == 42);
  CHECK(to_text(a).find("0 failures") != std::string::npos);
}

TEST_CASE("inner sums collapse to powers of u") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::create(q);
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = 1; j <= 3; ++j) CHECK(check_inner_sum(f, 3, i, j));
  }
}

TEST_CASE("determinant factorization into f and Dickson invariants") {
  for (auto [n, q] : {std::pair{3u, 2u}, {3u, 3u}, {4u, 2u}}) {
    const Field f = Field::create(q);
    for (std::size_t k = 0; k <= n; ++k)
      for (std::size_t i = 0; i <= k; ++i) CHECK_MESSAGE(check_dickson_factorization(f, n, k, i), n, q, k, i);
  }
}

TEST_CASE("specialized identity and its divisibility") {
  for (auto [n, q] : {std::pair{2u, 2u}, {3u, 2u}, {3u, 3u}, {4u, 2u}}) {
    const Field f = Field::create(q);
    for (std::size_t k = 1; k <= n; ++k) {
      const auto r = check_specialization(f, n, k, n == 3);
      CHECK(r.identity_holds);
      if (n == 3) CHECK(r.divisible);
    }
  }
}

TEST_CASE("exact division") {
  const Field f = Field::create(3);
  const std::vector<std::string> names{"x", "y"};
  const Poly a = parse_poly("x + 1", f, names), b = parse_poly("x + y", f, names);
  const auto q = exact_divide(a * b, a);
  REQUIRE(q);
  CHECK(*q == b);
  CHECK_FALSE(exact_divide(parse_poly("x^2 + 1", f, names), parse_poly("x", f, names)));
}
