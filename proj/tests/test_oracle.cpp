#include <doctest.h>

#include <cstdlib>
#include <random>

#include "invar/errors.hpp"
#include "invar/hilbert.hpp"
#include "invar/invgen.hpp"
#include "invar/oracle.hpp"

using namespace invar;

namespace {

// Exponent vectors m with sum m_i w_i = d.
std::uint64_t count_weighted(const std::vector<std::uint64_t>& w, std::uint64_t d) {
  std::vector<std::uint64_t> ways(d + 1, 0);
  ways[0] = 1;
  for (auto wi : w)
    for (std::uint64_t x = wi; x <= d; ++x) ways[x] += ways[x - wi];
  return ways[d];
}

}  // namespace

TEST_CASE("row echelon rank") {
  const Field f = Field::create(3);
  RowEchelon re(f, 3);
  std::vector<Field::Elem> r1{1, 2, 0}, r2{2, 1, 0}, r3{0, 0, 1}, r4{1, 2, 1};
  CHECK(re.insert(r1));
  CHECK_FALSE(re.insert(r2));  // 2 * r1
  CHECK(re.insert(r3));
  CHECK_FALSE(re.insert(r4));
  CHECK(re.rank() == 2);
  std::vector<Field::Elem> wrong{1, 2};
  CHECK_THROWS_AS(re.insert(wrong), std::invalid_argument);
}

TEST_CASE("property: rank does not depend on row order") {
  std::mt19937_64 rng(9);
  const Field f = Field::create(2, 2);
  for (int it = 0; it < 30; ++it) {
    const std::size_t rows = 1 + rng() % 8, cols = 1 + rng() % 8;
    std::vector<std::vector<Field::Elem>> m(rows, std::vector<Field::Elem>(cols));
    for (auto& row : m)
      for (auto& x : row) x = rng() % 3 == 0 ? rng() % 4 : 0;
    auto rank_of = [&](std::vector<std::vector<Field::Elem>> rs) {
      RowEchelon re(f, cols);
      for (auto& r : rs) re.insert(r);
      return re.rank();
    };
    const auto r0 = rank_of(m);
    std::shuffle(m.begin(), m.end(), rng);
    CHECK(rank_of(m) == r0);
    m.push_back(m.front());
    CHECK(rank_of(m) == r0);
  }
}

TEST_CASE("invariants of U_3 in y-degree 0 are polynomials in f_1, f_2, f_3") {
  const GroupSpec g{GroupKind::Un, 3, Field::create(2)};
  for (std::uint64_t d = 0; d <= 10; ++d) CHECK(invariant_dim(g, {d, 0}) == count_weighted({1, 2, 4}, d));
}

TEST_CASE("invariants of GL_2 in y-degree 0 form the Dickson algebra") {
  for (unsigned q : {2u, 3u}) {
    const GroupSpec g{GroupKind::GLn, 2, Field::create(q)};
    for (std::uint64_t d = 0; d <= 12; ++d) CHECK(invariant_dim(g, {d, 0}) == count_weighted({q * q - q, q * q - 1}, d));
  }
}

TEST_CASE("oracle agrees with the closed form on small cases") {
  for (auto kind : {GroupKind::Un, GroupKind::Bn}) {
    const GroupSpec g{kind, 2, Field::create(3)};
    const auto s = expand(series_for(kind, 2, 3), 8, 8);
    const auto t = invariant_dims(g, 8);
    for (const auto& [de, dim] : t.dims) CHECK(s.at(de.first, de.second) == dim);
  }
}

TEST_CASE("property: subalgebra of invariants never exceeds the invariant space") {
  std::mt19937_64 rng(21);
  for (auto kind : {GroupKind::Un, GroupKind::Bn}) {
    const GroupSpec g{kind, 2, Field::create(2)};
    const auto gens = theorem_generators(g);
    for (int it = 0; it < 10; ++it) {
      std::vector<BiPoly> subset;
      for (const auto& x : gens)
        if (rng() % 2) subset.push_back(x);
      for (const auto& b : cells_up_to(6)) CHECK(subalgebra_dim(subset, b) <= invariant_dim(g, b));
    }
  }
}

TEST_CASE("theorem generators generate at small cutoffs") {
  for (auto kind : {GroupKind::Un, GroupKind::Bn})
    for (unsigned q : {2u, 3u}) {
      const GroupSpec g{kind, 2, Field::create(q)};
      CHECK(check_generation(g, theorem_generators(g), 8).pass());
    }
  const GroupSpec g{GroupKind::Un, 2, Field::create(3)};
  auto gens = theorem_generators(g);
  gens.pop_back();  // drop U0
  const auto rep = check_generation(g, gens, 4);
  CHECK_FALSE(rep.pass());
  CHECK(rep.first_deficit() == Bidegree{1, 1});
}

TEST_CASE("determinism and job independence") {
  const GroupSpec g{GroupKind::Bn, 2, Field::create(3)};
  const auto a = invariant_dims(g, 7);
  const auto b = invariant_dims(g, 7);
  const auto c = invariant_dims(g, 7, {}, {}, 3);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_csv() == c.to_csv());
  CHECK(a.to_json() == c.to_json());
  const auto gens = theorem_generators(g);
  CHECK(check_generation(g, gens, 6).to_json() == check_generation(g, gens, 6, {}, {}, false, 4).to_json());
}

TEST_CASE("resource bounds") {
  const GroupSpec g{GroupKind::Un, 3, Field::create(2)};
  OracleLimits tight;
  tight.max_columns = 10;
  CHECK_THROWS_AS(invariant_dim(g, {2, 2}, tight), ResourceLimit);
  OracleLimits few;
  few.max_tuples = 2;
  CHECK_THROWS_AS(subalgebra_dim(theorem_generators(g), {4, 4}, few), ResourceLimit);
  const GroupSpec big{GroupKind::Un, 4, Field::create(2)};
  CHECK_THROWS_AS(invariant_dims(big, 12, tight, {}, 2), ResourceLimit);
}

TEST_CASE("column bound from the environment") {
  ::setenv("INVAR_MAX_COLUMNS", "123", 1);
  CHECK(OracleLimits::from_env().max_columns == 123);
  ::setenv("INVAR_MAX_COLUMNS", "12x", 1);
  CHECK_THROWS_AS(OracleLimits::from_env(), std::invalid_argument);
  ::setenv("INVAR_MAX_COLUMNS", "0", 1);
  CHECK_THROWS_AS(OracleLimits::from_env(), std::invalid_argument);
  ::unsetenv("INVAR_MAX_COLUMNS");
  CHECK(OracleLimits::from_env().max_columns == OracleLimits{}.max_columns);
}

TEST_CASE("subalgebra input validation and early stop") {
  const Field f = Field::create(2);
  CHECK_THROWS_AS(subalgebra_dim({parse_bipoly("x1 + y1", f, 1)}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(subalgebra_dim({bi_constant(f, 1, 1)}, {1, 1}), std::invalid_argument);
  const std::vector<BiPoly> free = {x_var(f, 2, 1), x_var(f, 2, 2)};
  CHECK(subalgebra_dim(free, {3, 0}) == 4);
  CHECK(subalgebra_dim(free, {3, 0}, {}, 2) == 2);
  CHECK(subalgebra_dim(free, {3, 1}) == 0);
  CHECK(subalgebra_dim({}, {0, 0}) == 1);
}

TEST_CASE("cell order") {
  const auto c = cells_up_to(2);
  REQUIRE(c.size() == 6);
  CHECK(c[1] == Bidegree{0, 1});
  CHECK(c[2] == Bidegree{1, 0});
  CHECK(c[5] == Bidegree{2, 0});
  CHECK(default_oracle_cutoff(3) == 12);
  CHECK(default_oracle_cutoff(4) == 8);
}

TEST_CASE("conjectured generators for GL_2") {
  const Field f = Field::create(3);
  const auto gens = conjecture_generators(f, 2);
  CHECK(gens.size() == 7);
  CHECK(check_generation({GroupKind::GLn, 2, f}, gens, 8).pass());
}

TEST_CASE("SL_2(F_3) example") {
  const auto r = sl2_counterexample_report(6);
  CHECK(r.f1_invariant);
  CHECK(r.f2_invariant);
  CHECK(r.vector_invariants_generated);
  CHECK(r.orbit_size == 6);
  CHECK(r.contains_negative);
  CHECK(r.negated_product_invariant);
  CHECK(r.product_bidegree == Bidegree{6, 6});
  CHECK_FALSE(r.generation.pass());
  REQUIRE(r.first_deficit);
  CHECK(*r.first_deficit == Bidegree{3, 3});
  CHECK(r.deficit_at_first == 1);
  CHECK(r.as_expected());
  CHECK(r.to_json()["first_deficit"] == nlohmann::json::array({3, 3}));
}
