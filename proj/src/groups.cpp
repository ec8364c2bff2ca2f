#include "invar/groups.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "invar/errors.hpp"

namespace invar {

Matrix::Matrix(Field field, std::size_t n) : field_(std::move(field)), n_(n), a_(n * n, 0) {}

Matrix::Matrix(Field field, std::size_t n, std::vector<Field::Elem> entries)
    : field_(std::move(field)), n_(n), a_(std::move(entries)) {
  if (a_.size() != n_ * n_) throw std::invalid_argument("matrix needs n*n entries");
  for (auto v : a_)
    if (v >= field_.q()) throw std::invalid_argument("matrix entry out of range");
}

Matrix Matrix::identity(const Field& field, std::size_t n) {
  Matrix m(field, n);
  for (std::size_t i = 1; i <= n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::transvection(const Field& field, std::size_t n, std::size_t i, std::size_t j, Field::Elem c) {
  Matrix m = identity(field, n);
  m.at(i, j) = field.add(m(i, j), c);
  return m;
}

Matrix Matrix::diagonal_unit(const Field& field, std::size_t n, std::size_t i, Field::Elem c) {
  Matrix m = identity(field, n);
  m.at(i, i) = c;
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  field_.require_same(o.field_);
  if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
  Matrix r(field_, n_);
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t k = 1; k <= n_; ++k) {
      const auto a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 1; j <= n_; ++j) r.at(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
    }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, n_);
  for (std::size_t i = 1; i <= n_; ++i)
    for (std::size_t j = 1; j <= n_; ++j) r.at(j, i) = (*this)(i, j);
  return r;
}

Matrix Matrix::inverse() const {
  Matrix a = *this;
  Matrix inv = identity(field_, n_);
  const auto& F = field_;
  for (std::size_t col = 1; col <= n_; ++col) {
    std::size_t piv = col;
    while (piv <= n_ && a(piv, col) == 0) ++piv;
    if (piv > n_) throw std::domain_error("matrix is singular");
    if (piv != col)
      for (std::size_t j = 1; j <= n_; ++j) {
        std::swap(a.at(piv, j), a.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    const auto s = F.inv(a(col, col));
    for (std::size_t j = 1; j <= n_; ++j) {
      a.at(col, j) = F.mul(a(col, j), s);
      inv.at(col, j) = F.mul(inv(col, j), s);
    }
    for (std::size_t r = 1; r <= n_; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const auto m = a(r, col);
      for (std::size_t j = 1; j <= n_; ++j) {
        a.at(r, j) = F.sub(a(r, j), F.mul(m, a(col, j)));
        inv.at(r, j) = F.sub(inv(r, j), F.mul(m, inv(col, j)));
      }
    }
  }
  return inv;
}

Field::Elem Matrix::det() const {
  Matrix a = *this;
  const auto& F = field_;
  Field::Elem d = 1;
  for (std::size_t col = 1; col <= n_; ++col) {
    std::size_t piv = col;
    while (piv <= n_ && a(piv, col) == 0) ++piv;
    if (piv > n_) return 0;
    if (piv != col) {
      for (std::size_t j = 1; j <= n_; ++j) std::swap(a.at(piv, j), a.at(col, j));
      d = F.neg(d);
    }
    d = F.mul(d, a(col, col));
    const auto s = F.inv(a(col, col));
    for (std::size_t r = col + 1; r <= n_; ++r) {
      if (a(r, col) == 0) continue;
      const auto m = F.mul(a(r, col), s);
      for (std::size_t j = col; j <= n_; ++j) a.at(r, j) = F.sub(a(r, j), F.mul(m, a(col, j)));
    }
  }
  return d;
}

nlohmann::json Matrix::to_json() const {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 1; i <= n_; ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 1; j <= n_; ++j) row.push_back(field_.digits((*this)(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Un: return "un";
    case GroupKind::Bn: return "bn";
    case GroupKind::SLn: return "sln";
    case GroupKind::GLn: return "gln";
  }
  return "?";
}

GroupKind parse_group_kind(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "un" || l == "u") return GroupKind::Un;
  if (l == "bn" || l == "b") return GroupKind::Bn;
  if (l == "sln" || l == "sl") return GroupKind::SLn;
  if (l == "gln" || l == "gl") return GroupKind::GLn;
  throw std::invalid_argument("unknown group '" + s + "' (expected un, bn, sln, gln)");
}

std::string GroupSpec::name() const {
  const std::string q = std::to_string(field.q());
  const std::string nn = std::to_string(n);
  switch (kind) {
    case GroupKind::Un: return "U_" + nn + "(F_" + q + ")";
    case GroupKind::Bn: return "B_" + nn + "(F_" + q + ")";
    case GroupKind::SLn: return "SL_" + nn + "(F_" + q + ")";
    case GroupKind::GLn: return "GL_" + nn + "(F_" + q + ")";
  }
  return "?";
}

std::vector<Matrix> generators(const GroupSpec& g) {
  const auto& F = g.field;
  const auto basis = F.prime_basis();
  std::vector<Matrix> out;
  switch (g.kind) {
    case GroupKind::Un:
    case GroupKind::Bn:
      for (std::size_t i = 1; i < g.n; ++i)
        for (auto c : basis) out.push_back(Matrix::transvection(F, g.n, i, i + 1, c));
      if (g.kind == GroupKind::Bn)
        for (std::size_t i = 1; i <= g.n; ++i) out.push_back(Matrix::diagonal_unit(F, g.n, i, F.primitive()));
      break;
    case GroupKind::SLn:
    case GroupKind::GLn:
      for (std::size_t i = 1; i <= g.n; ++i)
        for (std::size_t j = 1; j <= g.n; ++j)
          if (i != j)
            for (auto c : basis) out.push_back(Matrix::transvection(F, g.n, i, j, c));
      if (g.kind == GroupKind::GLn) out.push_back(Matrix::diagonal_unit(F, g.n, 1, F.primitive()));
      break;
  }
  return out;
}

std::vector<Matrix> enumerate_group(const GroupSpec& g, std::size_t max_size) {
  const auto gens = generators(g);
  std::set<Matrix> seen;
  std::vector<Matrix> order;
  std::deque<Matrix> frontier;
  auto id = Matrix::identity(g.field, g.n);
  seen.insert(id);
  order.push_back(id);
  frontier.push_back(id);
  while (!frontier.empty()) {
    auto cur = frontier.front();
    frontier.pop_front();
    for (const auto& s : gens) {
      auto nxt = s * cur;
      if (seen.insert(nxt).second) {
        if (seen.size() > max_size) throw ResourceLimit("group order exceeds bound " + std::to_string(max_size));
        order.push_back(nxt);
        frontier.push_back(std::move(nxt));
      }
    }
  }
  return order;
}

std::vector<BiPoly> act_images(const Matrix& s) {
  const std::size_t n = s.n();
  const auto& F = s.field();
  const Matrix inv = s.inverse();
  std::vector<BiPoly> images;
  images.reserve(2 * n);
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<Term> terms;
    for (std::size_t i = 1; i <= n; ++i) {
      Monomial::Exps e(2 * n, 0);
      e[i - 1] = 1;
      terms.push_back({Monomial(std::move(e)), s(i, j)});
    }
    images.push_back(Poly::from_terms(F, 2 * n, std::move(terms)));
  }
  for (std::size_t j = 1; j <= n; ++j) {
    std::vector<Term> terms;
    for (std::size_t i = 1; i <= n; ++i) {
      Monomial::Exps e(2 * n, 0);
      e[n + i - 1] = 1;
      terms.push_back({Monomial(std::move(e)), inv(j, i)});
    }
    images.push_back(Poly::from_terms(F, 2 * n, std::move(terms)));
  }
  return images;
}

BiPoly act(const Matrix& s, const BiPoly& f) {
  if (f.nvars() != 2 * s.n()) throw std::invalid_argument("matrix dimension does not match polynomial ring");
  f.field().require_same(s.field());
  const auto images = act_images(s);
  return f.substitute(images);
}

BiPoly star(const BiPoly& f) {
  std::vector<std::size_t> perm(f.nvars());
  for (std::size_t v = 0; v < perm.size(); ++v) perm[v] = perm.size() - 1 - v;
  return f.permute_variables(perm);
}

Matrix star_mat(const Matrix& s) {
  const std::size_t n = s.n();
  const Matrix t = s.inverse().transpose();
  Matrix r(s.field(), n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) r.at(i, j) = t(n + 1 - i, n + 1 - j);
  return r;
}

bool in_group(const GroupSpec& g, const Matrix& s) {
  if (s.n() != g.n || s.field() != g.field) return false;
  switch (g.kind) {
    case GroupKind::Un:
    case GroupKind::Bn:
      for (std::size_t i = 1; i <= g.n; ++i) {
        for (std::size_t j = 1; j < i; ++j)
          if (s(i, j) != 0) return false;
        if (g.kind == GroupKind::Un && s(i, i) != 1) return false;
        if (s(i, i) == 0) return false;
      }
      return true;
    case GroupKind::SLn: return s.det() == 1;
    case GroupKind::GLn: return s.det() != 0;
  }
  return false;
}

std::vector<BiPoly> orbit(const GroupSpec& g, const BiPoly& f, std::size_t max_size) {
  const auto gens = generators(g);
  std::vector<std::vector<BiPoly>> images;
  for (const auto& s : gens) images.push_back(act_images(s));
  std::unordered_set<std::string> seen;
  std::vector<BiPoly> out;
  std::deque<std::size_t> frontier;
  seen.insert(render(f));
  out.push_back(f);
  frontier.push_back(0);
  while (!frontier.empty()) {
    const std::size_t idx = frontier.front();
    frontier.pop_front();
    for (const auto& im : images) {
      BiPoly h = out[idx].substitute(im);
      if (seen.insert(render(h)).second) {
        if (out.size() >= max_size) throw ResourceLimit("orbit length exceeds bound " + std::to_string(max_size));
        out.push_back(std::move(h));
        frontier.push_back(out.size() - 1);
      }
    }
  }
  return out;
}

BiPoly orbit_product(const GroupSpec& g, const BiPoly& f, std::size_t max_size) {
  BiPoly prod = bi_constant(f.field(), bi_n(f), 1);
  for (const auto& h : orbit(g, f, max_size)) prod = prod * h;
  return prod;
}

}  // namespace invar
