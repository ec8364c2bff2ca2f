#include <doctest.h>

#include <algorithm>

#include "invar/presentation.hpp"

using namespace invar;

namespace {

struct Syms {
  Field f;
  Alphabet a;
  Poly v(SymKind k, int i) const { return Poly::variable(f, a.size(), a.require(k, i)); }
  Poly F(int i) const { return v(SymKind::F, i); }
  Poly Fs(int i) const { return v(SymKind::Fs, i); }
  Poly Ft(int i) const { return v(SymKind::Ft, i); }
  Poly Fts(int i) const { return v(SymKind::Fts, i); }
  Poly U(int j) const { return v(SymKind::U, j); }
};

std::vector<std::string> labels(const Presentation& p) {
  std::vector<std::string> out;
  for (const auto& r : p.relations) out.push_back(r.label);
  return out;
}

const RelPoly& relation(const Presentation& p, const std::string& label) {
  auto it = std::find_if(p.relations.begin(), p.relations.end(), [&](const RelPoly& r) { return r.label == label; });
  REQUIRE(it != p.relations.end());
  return *it;
}

}  // namespace

TEST_CASE("generator and relation counts") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::create(q);
    const auto u2 = build_presentation({GroupKind::Un, 2, f});
    CHECK(u2.generators.size() == 5);
    CHECK(labels(u2) == std::vector<std::string>{"R2special"});
    for (std::size_t n = 3; n <= 5; ++n) {
      const auto p = build_presentation({GroupKind::Un, n, f});
      CHECK(p.generators.size() == 4 * n - 3);
      CHECK(p.relations.size() == 2 * n - 3);
    }
    for (std::size_t n = 1; n <= 5; ++n) {
      const auto p = build_presentation({GroupKind::Bn, n, f});
      CHECK(p.generators.size() == 4 * n - 1);
      CHECK(p.relations.size() == 2 * n - 1);
    }
  }
  const Field f = Field::create(2);
  CHECK(labels(build_presentation({GroupKind::Un, 4, f})) ==
        std::vector<std::string>{"R1+", "R2", "R3-", "R3", "R4-"});
  CHECK(labels(build_presentation({GroupKind::Bn, 3, f})) ==
        std::vector<std::string>{"Rt1", "Rt1+", "Rt2", "Rt2+", "Rt3"});
}

TEST_CASE("U_1 is the flagged free case") {
  const auto p = build_presentation({GroupKind::Un, 1, Field::create(2)});
  CHECK(p.free_case);
  CHECK(p.relations.empty());
  CHECK(p.generators.size() == 2);
  CHECK_FALSE(p.note.empty());
  CHECK_THROWS_AS(build_presentation({GroupKind::GLn, 2, Field::create(2)}), std::invalid_argument);
}

TEST_CASE("relations written out in small cases") {
  for (unsigned q : {2u, 3u, 5u}) {
    const Field f = Field::create(q);
    {
      const Syms s{f, theorem_alphabet(GroupKind::Un, 2, q)};
      const auto r = build_relation(RelFamily::R2Special, 2, 2, f, s.a).poly;
      CHECK(r == s.U(0).pow(q) - (s.F(1) * s.Fs(1)).pow(q - 1) * s.U(0) - s.F(1).pow(q) * s.Fs(2) -
                     s.Fs(1).pow(q) * s.F(2));
    }
    {
      const Syms s{f, theorem_alphabet(GroupKind::Bn, 1, q)};
      CHECK(build_relation(RelFamily::RTilde, 1, 1, f, s.a).poly == s.U(0).pow(q - 1) - s.Ft(1) * s.Fts(1));
    }
    {
      const Syms s{f, theorem_alphabet(GroupKind::Un, 3, q)};
      CHECK(build_relation(RelFamily::R, 2, 3, f, s.a).poly ==
            s.U(0).pow(q) - s.Fs(1).pow(q - 1) * s.U(1) - s.F(1).pow(q - 1) * s.U(-1) +
                (s.F(1) * s.Fs(1)).pow(q - 1) * s.U(0) - s.F(2) * s.Fs(2));
    }
  }
}

TEST_CASE("out-of-list relations need the widened window") {
  const Field f = Field::create(3);
  CHECK_THROWS_AS(build_relation(RelFamily::R, 1, 3, f, theorem_alphabet(GroupKind::Un, 3, 3)), std::out_of_range);
  const Syms s{f, widened_alphabet(GroupKind::Un, 3, 3)};
  CHECK(build_relation(RelFamily::R, 1, 3, f, s.a).poly ==
        s.U(-2) - (s.Fs(1).pow(6) + s.Fs(2).pow(2)) * s.U(-1) + (s.Fs(1) * s.Fs(2)).pow(2) * s.U(0) -
            s.F(1) * s.Fs(3));
  CHECK_THROWS_AS(build_relation(RelFamily::R, 4, 3, f, s.a), std::out_of_range);
}

TEST_CASE("kernel verification on the grid") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    const Field f = Field::create(p, e);
    for (std::size_t n = 1; n <= (f.q() > 3 ? 2u : 4u); ++n)
      for (auto kind : {GroupKind::Un, GroupKind::Bn}) {
        const GroupSpec g{kind, n, f};
        const auto rep = verify_kernel(build_presentation(g), build_invariants(g));
        CHECK_MESSAGE(rep.all_pass(), g.name());
      }
  }
}

TEST_CASE("extra relations at n = 2 vanish and combine to the special one") {
  for (unsigned q : {2u, 3u, 4u, 5u}) {
    const Field f = q == 4 ? Field::create(2, 2) : Field::create(q);
    const Syms s{f, widened_alphabet(GroupKind::Un, 2, q)};
    const auto inv = build_invariants({GroupKind::Un, 2, f});
    const auto r1 = build_relation(RelFamily::R, 1, 2, f, s.a).poly;
    const auto r2m = build_relation(RelFamily::RMinus, 2, 2, f, s.a).poly;
    CHECK(evaluate(r1, s.a, inv).is_zero());
    CHECK(evaluate(r2m, s.a, inv).is_zero());
    CHECK(build_relation(RelFamily::R2Special, 2, 2, f, s.a).poly == s.F(1).pow(q - 1) * r1 + r2m);
  }
}

TEST_CASE("a corrupted relation leaves a nonzero residue") {
  const Field f = Field::create(3);
  const GroupSpec g{GroupKind::Un, 2, f};
  auto p = build_presentation(g);
  const Syms s{f, p.generators};
  // flip the sign of the F2*Fs1^q term
  p.relations[0].poly = p.relations[0].poly + s.Fs(1).pow(3) * s.F(2).scaled(f.from_int(2));
  const auto rep = verify_kernel(p, build_invariants(g));
  REQUIRE(rep.entries.size() == 1);
  CHECK_FALSE(rep.entries[0].pass);
  CHECK_FALSE(rep.entries[0].residue.is_zero());
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("bidegree tables") {
  for (unsigned q : {2u, 3u}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const Alphabet uw = widened_alphabet(GroupKind::Un, n, q), bw = widened_alphabet(GroupKind::Bn, n, q);
      const Field f = Field::create(q);
      for (int k = 1; k <= static_cast<int>(n); ++k) {
        for (auto fam : {RelFamily::R, RelFamily::RPlus, RelFamily::RMinus}) {
          const auto r = build_relation(fam, k, n, f, uw);
          const auto b = abstract_bidegree(r.poly, uw);
          REQUIRE(b.homogeneous());
          CHECK_MESSAGE(b.value == expected_relation_bidegree(fam, k, n, q), r.label, " n=", n, " q=", q);
        }
        for (auto fam : {RelFamily::RTilde, RelFamily::RTildePlus}) {
          if (fam == RelFamily::RTildePlus && k == static_cast<int>(n)) continue;
          const auto r = build_relation(fam, k, n, f, bw);
          const auto b = abstract_bidegree(r.poly, bw);
          REQUIRE(b.homogeneous());
          CHECK_MESSAGE(b.value == expected_relation_bidegree(fam, k, n, q), r.label, " n=", n, " q=", q);
        }
      }
    }
    // generator table
    const auto a = widened_alphabet(GroupKind::Un, 3, q);
    CHECK(a[a.require(SymKind::F, 3)].bidegree == Bidegree{q * q, 0});
    CHECK(a[a.require(SymKind::U, -2)].bidegree == Bidegree{1, q * q});
    CHECK(a[a.require(SymKind::U, 2)].bidegree == Bidegree{q * q, 1});
    const auto b = widened_alphabet(GroupKind::Bn, 3, q);
    CHECK(b[b.require(SymKind::Fts, 2)].bidegree == Bidegree{0, (q - 1) * q});
  }
  CHECK(expected_relation_bidegree(RelFamily::R, 2, 4, 3) == Bidegree{3, 9});
  CHECK(expected_relation_bidegree(RelFamily::RTilde, 2, 3, 3) == Bidegree{6, 6});
  CHECK(expected_relation_bidegree(RelFamily::R2Special, 2, 2, 3) == Bidegree{3, 3});
}

TEST_CASE("elimination structure reproduces both tables") {
  for (unsigned q : {2u, 3u})
    for (std::size_t n = 1; n <= 5; ++n)
      for (auto kind : {GroupKind::Un, GroupKind::Bn}) {
        const GroupSpec g{kind, n, Field::create(q)};
        const auto rep = check_elimination_structure(build_presentation(g));
        CHECK_MESSAGE(rep.all_ok(), g.name());
      }
}

TEST_CASE("specific elimination rows") {
  const Field f = Field::create(3);
  const auto u = build_presentation({GroupKind::Un, 4, f});
  const auto an = analyze_relation(relation(u, "R2").poly, u.generators);
  CHECK(std::count(an.f_eliminates.begin(), an.f_eliminates.end(), "Fs3") == 1);
  CHECK(std::count(an.f_eliminates.begin(), an.f_eliminates.end(), "Um2") == 1);
  CHECK(an.relation_for == -1);

  const auto b = build_presentation({GroupKind::Bn, 3, f});
  const auto bn = analyze_relation(relation(b, "Rt1+").poly, b.generators);
  CHECK(bn.f_eliminates == std::vector<std::string>{"Um2"});
  CHECK(bn.fstar_eliminates == std::vector<std::string>{"U1"});

  // the special relation is linear in Fs2 with coefficient -F1^q
  const auto u2 = build_presentation({GroupKind::Un, 2, f});
  const auto fs2 = *u2.generators.find(SymKind::Fs, 2);
  CHECK(eliminates(u2.relations[0].poly, u2.generators, fs2, false));
  CHECK_FALSE(eliminates(u2.relations[0].poly, u2.generators, *u2.generators.find(SymKind::U, 0), false));
}

TEST_CASE("minimality obstruction") {
  auto flagged = [](GroupKind k, std::size_t n, unsigned q) {
    std::vector<std::string> out;
    for (const auto& fl : check_minimality_obstruction(build_presentation({k, n, Field::create(q)})).flags)
      out.push_back(fl.generator + "/" + fl.relation);
    return out;
  };
  CHECK(flagged(GroupKind::Bn, 3, 2) == std::vector<std::string>{"Um2/Rt1", "U2/Rt3"});
  CHECK(flagged(GroupKind::Bn, 1, 2) == std::vector<std::string>{"U0/Rt1"});
  CHECK(flagged(GroupKind::Un, 3, 3).empty());
  CHECK(flagged(GroupKind::Bn, 1, 3).empty());
  for (unsigned q : {2u, 3u})
    for (std::size_t n = 2; n <= 5; ++n) {
      CHECK(flagged(GroupKind::Un, n, q).empty());
      if (q == 3) CHECK(flagged(GroupKind::Bn, n, q).empty());
      if (q == 2) CHECK(flagged(GroupKind::Bn, n, q).size() == 2);
    }
}

TEST_CASE("the involution on relations at n = 4") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::create(q);
    const auto a = widened_alphabet(GroupKind::Un, 4, q);
    auto rel = [&](RelFamily fam, int k) { return build_relation(fam, k, 4, f, a).poly; };
    CHECK(star_relation(rel(RelFamily::RPlus, 1), a) == rel(RelFamily::RMinus, 4));
    CHECK(star_relation(rel(RelFamily::R, 2), a) == rel(RelFamily::R, 3));
    CHECK(star_relation(rel(RelFamily::RMinus, 3), a) != rel(RelFamily::RMinus, 3));
    CHECK(star_relation(star_relation(rel(RelFamily::RMinus, 3), a), a) == rel(RelFamily::RMinus, 3));
  }
}

TEST_CASE("symmetrized R3 at n = 4") {
  for (unsigned q : {2u, 3u}) {
    const Field f = Field::create(q);
    const Syms s{f, widened_alphabet(GroupKind::Un, 4, q)};
    const std::uint64_t Q = q;
    const Poly r3s = s.U(0).pow(Q * Q) - s.Fs(1).pow(Q * (Q - 1)) * s.U(1).pow(Q) -
                     s.F(1).pow(Q * (Q - 1)) * s.U(-1).pow(Q) +
                     ((s.F(1) * s.Fs(1)).pow(Q * (Q - 1)) - (s.F(2) * s.Fs(2)).pow(Q - 1)) * s.U(0).pow(Q) +
                     (s.F(2) * s.Fs(1) * s.Fs(2)).pow(Q - 1) * s.U(1) +
                     (s.F(1) * s.F(2) * s.Fs(2)).pow(Q - 1) * s.U(-1) -
                     (s.F(1) * s.F(2) * s.Fs(1) * s.Fs(2)).pow(Q - 1) * s.U(0) - s.F(3) * s.Fs(2).pow(Q) -
                     s.F(2).pow(Q) * s.Fs(3);
    const auto r3m = build_relation(RelFamily::RMinus, 3, 4, f, s.a).poly;
    const auto r2 = build_relation(RelFamily::R, 2, 4, f, s.a).poly;
    CHECK(r3s == r3m + s.F(2).pow(Q - 1) * r2);
    CHECK(star_relation(r3s, s.a) == r3s);
  }
}

TEST_CASE("serialization") {
  const Field f = Field::create(2, 2);
  const auto p = build_presentation({GroupKind::Bn, 2, f});
  const auto j = to_json(p);
  const auto back = presentation_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(labels(back) == labels(p));
  CHECK(to_text(back) == to_text(p));
  const auto cas = to_cas_script(p);
  CHECK(cas.find("ring R = (4,t)") != std::string::npos);
  CHECK(cas.find("ideal I =") != std::string::npos);
  const auto p3 = to_cas_script(build_presentation({GroupKind::Un, 3, Field::create(3)}));
  CHECK(p3.find("ring R = 3, (") != std::string::npos);
  CHECK(to_cas_script(build_presentation({GroupKind::Un, 1, Field::create(3)})).find("ideal I = 0;") !=
        std::string::npos);

  auto bad = j;
  bad["q"] = 5;
  CHECK_THROWS_AS(presentation_from_json(bad), std::invalid_argument);
  bad = j;
  bad["relations"][0]["terms"][0]["exps"] = {{"Nope", 1}};
  CHECK_THROWS_AS(presentation_from_json(bad), std::invalid_argument);
  CHECK_THROWS_AS(presentation_from_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("symbol names") {
  CHECK(parse_symbol("Um2", 3).index == -2);
  CHECK(parse_symbol("Fts3", 3).kind == SymKind::Fts);
  CHECK(parse_symbol("U1", 3).bidegree == Bidegree{3, 1});
  CHECK_THROWS(parse_symbol("Q1", 3));
  CHECK(relation_label(RelFamily::RTildePlus, 2) == "Rt2+");
}
