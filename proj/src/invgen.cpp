#include "invar/invgen.hpp"

#include <stdexcept>

#include "invar/det.hpp"

namespace invar {

BiPoly build_u(const Field& field, std::size_t n, int j) {
  const std::uint64_t k = checked_pow(field.q(), static_cast<std::uint64_t>(j < 0 ? -j : j));
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i) {
    Monomial::Exps e(2 * n, 0);
    e[i] = j >= 0 ? k : 1;
    e[n + i] = j >= 0 ? 1 : k;
    terms.push_back({Monomial(std::move(e)), 1});
  }
  return Poly::from_terms(field, 2 * n, std::move(terms));
}

BiPoly build_f(const Field& field, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::out_of_range("f_i needs 1 <= i <= n");
  const auto elems = field.elements();
  const std::uint64_t q = field.q();
  const std::uint64_t count = checked_pow(q, i - 1);
  BiPoly prod = bi_constant(field, n, 1);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t r = idx;
    std::vector<Term> lin;
    Monomial::Exps e(2 * n, 0);
    e[i - 1] = 1;
    lin.push_back({Monomial(std::move(e)), 1});
    for (std::size_t j = 1; j < i; ++j) {
      const auto a = elems[r % q];
      r /= q;
      if (!a) continue;
      Monomial::Exps ej(2 * n, 0);
      ej[j - 1] = 1;
      lin.push_back({Monomial(std::move(ej)), a});
    }
    prod = prod * Poly::from_terms(field, 2 * n, std::move(lin));
  }
  return prod;
}

BiPoly build_fstar(const Field& field, std::size_t n, std::size_t i) { return star(build_f(field, n, i)); }

BiPoly build_ftilde(const Field& field, std::size_t n, std::size_t i) {
  return build_f(field, n, i).pow(field.q() - 1);
}

BiPoly build_ftildestar(const Field& field, std::size_t n, std::size_t i) {
  return star(build_ftilde(field, n, i));
}

std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t s, std::size_t len) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t next) -> void {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = next; j + (len - cur.size()) <= s + 1; ++j) {
      cur.push_back(j);
      self(self, j + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

BiPoly build_dickson(const Field& field, std::size_t n, std::size_t s, std::size_t t) {
  if (t > s || s > n) throw std::out_of_range("c_{s,t} needs 0 <= t <= s <= n");
  if (t == s) return bi_constant(field, n, 1);
  const std::uint64_t q = field.q();
  std::vector<BiPoly> ft;
  for (std::size_t j = 1; j <= s; ++j) ft.push_back(build_ftilde(field, n, j));
  BiPoly sum(field, 2 * n);
  for (const auto& tuple : increasing_tuples(s, s - t)) {
    BiPoly prod = bi_constant(field, n, 1);
    for (std::size_t l = 1; l <= tuple.size(); ++l) {
      const std::size_t j = tuple[l - 1];
      // exponent q^{t+l-j}, with j <= t + l for increasing tuples
      const std::uint64_t k = checked_pow(q, t + l - j);
      prod = prod * ft[j - 1].pow(k);
    }
    sum += prod;
  }
  return sum;
}

BiPoly build_dickson_star(const Field& field, std::size_t n, std::size_t s, std::size_t t) {
  return star(build_dickson(field, n, s, t));
}

BiPoly build_det_d(const Field& field, std::size_t n, std::size_t k, std::size_t i) {
  if (k > n || i > k) throw std::out_of_range("d_{k,i} needs 0 <= i <= k <= n");
  if (k > 5) throw std::invalid_argument("d_{k,i} is only offered for k <= 5");
  const std::uint64_t q = field.q();
  std::vector<std::vector<BiPoly>> m;
  for (std::size_t row = 0; row <= k; ++row) {
    if (row == i) continue;
    const std::uint64_t e = checked_pow(q, row);
    std::vector<BiPoly> r;
    for (std::size_t j = 1; j <= k; ++j) r.push_back(x_var(field, n, j).pow(e));
    m.push_back(std::move(r));
  }
  return laplace_det(m, bi_constant(field, n, 1));
}

InvariantSet build_invariants(const GroupSpec& g) {
  InvariantSet inv{g, {}, {}, {}, {}, {}};
  const std::size_t n = g.n;
  for (std::size_t i = 1; i <= n; ++i) {
    auto f = build_f(g.field, n, i);
    auto ft = f.pow(g.field.q() - 1);
    inv.fstar.push_back(star(f));
    inv.ftildestar.push_back(star(ft));
    inv.f.push_back(std::move(f));
    inv.ftilde.push_back(std::move(ft));
  }
  const int w = static_cast<int>(n) - 1;
  for (int j = -w; j <= w; ++j) inv.u.emplace(j, build_u(g.field, n, j));
  return inv;
}

}  // namespace invar
