#include <doctest.h>

#include <random>

#include "invar/errors.hpp"
#include "invar/groups.hpp"

using namespace invar;

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t k) {
  std::uint64_t r = 1;
  while (k--) r *= b;
  return r;
}

Matrix random_invertible(const Field& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    std::vector<Field::Elem> a(n * n);
    for (auto& x : a) x = rng() % f.q();
    Matrix m(f, n, a);
    if (m.det() != 0) return m;
  }
}

}  // namespace

TEST_CASE("group orders from closure under generators") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::create(q);
    for (std::size_t n : {1u, 2u, 3u}) {
      const auto tri = ipow(q, n * (n - 1) / 2);
      CHECK(enumerate_group({GroupKind::Un, n, f}).size() == tri);
      CHECK(enumerate_group({GroupKind::Bn, n, f}).size() == tri * ipow(q - 1, n));
    }
  }
  const Field f2 = Field::create(2), f3 = Field::create(3), f4 = Field::create(2, 2);
  CHECK(enumerate_group({GroupKind::GLn, 2, f2}).size() == 6);
  CHECK(enumerate_group({GroupKind::GLn, 2, f3}).size() == 48);
  CHECK(enumerate_group({GroupKind::SLn, 2, f3}).size() == 24);
  CHECK(enumerate_group({GroupKind::GLn, 3, f2}).size() == 168);
  CHECK(enumerate_group({GroupKind::Un, 2, f4}).size() == 4);
  CHECK(enumerate_group({GroupKind::Bn, 2, f4}).size() == 36);
}

TEST_CASE("membership") {
  const Field f = Field::create(3);
  const GroupSpec u{GroupKind::Un, 2, f}, b{GroupKind::Bn, 2, f}, sl{GroupKind::SLn, 2, f};
  const auto t = Matrix::transvection(f, 2, 1, 2, 1);
  const auto d = Matrix::diagonal_unit(f, 2, 1, 2);
  CHECK(in_group(u, t));
  CHECK_FALSE(in_group(u, d));
  CHECK(in_group(b, d));
  CHECK_FALSE(in_group(sl, d));
  for (const auto& g : generators(b)) CHECK(in_group(b, g));
}

TEST_CASE("orbit size limit") {
  const Field f = Field::create(3);
  const BiPoly x = x_var(f, 3, 1);
  CHECK_THROWS_AS(orbit({GroupKind::GLn, 3, f}, x, 5), ResourceLimit);
}

TEST_CASE("group names and parsing") {
  const Field f = Field::create(3);
  CHECK(GroupSpec{GroupKind::Bn, 3, f}.name() == "B_3(F_3)");
  CHECK(parse_group_kind("GLn") == GroupKind::GLn);
  CHECK_THROWS_AS(parse_group_kind("on"), std::invalid_argument);
}

TEST_CASE("property: the action is a left action and u_0 is GL-invariant") {
  std::mt19937_64 rng(3);
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
    const Field f = Field::create(p, e);
    const std::size_t n = 3;
    BiPoly u0 = bi_constant(f, n, 0);
    for (std::size_t i = 1; i <= n; ++i) u0 += x_var(f, n, i) * y_var(f, n, i);
    const BiPoly poly = parse_bipoly("x1^2*y3 + x2*x3*y1 + y2^2", f, n);
    for (int it = 0; it < 20; ++it) {
      const Matrix s = random_invertible(f, n, rng), t = random_invertible(f, n, rng);
      CHECK(act(s * t, poly) == act(s, act(t, poly)));
      CHECK(act(s, u0) == u0);
      CHECK(s * s.inverse() == Matrix::identity(f, n));
      CHECK(star(star(poly)) == poly);
      CHECK(star_mat(star_mat(s)) == s);
      // star intertwines the action
      CHECK(star(act(s, poly)) == act(star_mat(s), star(poly)));
    }
  }
}

TEST_CASE("property: star preserves U_n and B_n") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::create(q);
    for (auto kind : {GroupKind::Un, GroupKind::Bn}) {
      const GroupSpec g{kind, 3, f};
      for (const auto& s : enumerate_group(g)) CHECK(in_group(g, star_mat(s)));
    }
  }
}
