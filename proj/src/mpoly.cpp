#include "invar/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace invar {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > ~std::uint64_t{0} - b) throw std::overflow_error("exponent overflow");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > ~std::uint64_t{0} / a) throw std::overflow_error("exponent overflow");
  return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = checked_mul(r, base);
  return r;
}

// --- Monomial ---------------------------------------------------------------

Monomial::Monomial(Exps exps) : exps_(std::move(exps)) {
  for (auto v : exps_) deg_ = checked_add(deg_, v);
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked_add(exps_[i], o.exps_[i]);
  r.deg_ = checked_add(deg_, o.deg_);
  return r;
}

Monomial Monomial::scaled(std::uint64_t k) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = checked_mul(exps_[i], k);
  r.deg_ = checked_mul(deg_, k);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = o.exps_[i] - exps_[i];
  r.deg_ = o.deg_ - deg_;
  return r;
}

bool Monomial::operator<(const Monomial& o) const {
  if (deg_ != o.deg_) return deg_ < o.deg_;
  return exps_ < o.exps_;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : exps_) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

// --- Poly -------------------------------------------------------------------

namespace {

bool term_before(const Term& a, const Term& b) { return b.mono < a.mono; }

}  // namespace

Poly Poly::from_map_unsorted(const Field& field, std::size_t nvars, std::vector<Term> terms) {
  Poly r(field, nvars);
  std::erase_if(terms, [](const Term& t) { return t.coeff == 0; });
  std::sort(terms.begin(), terms.end(), term_before);
  r.terms_ = std::move(terms);
  return r;
}

Poly Poly::from_terms(const Field& field, std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.mono.nvars() != nvars) throw std::invalid_argument("monomial arity does not match polynomial");
    if (t.coeff >= field.q()) throw std::invalid_argument("coefficient encoding out of range");
  }
  std::sort(terms.begin(), terms.end(), term_before);
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().mono == t.mono)
      merged.back().coeff = field.add(merged.back().coeff, t.coeff);
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const Term& t) { return t.coeff == 0; });
  Poly r(field, nvars);
  r.terms_ = std::move(merged);
  return r;
}

Poly Poly::constant(const Field& field, std::size_t nvars, Field::Elem c) {
  Poly r(field, nvars);
  if (c != 0) r.terms_.push_back({Monomial(nvars), c});
  return r;
}

Poly Poly::variable(const Field& field, std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Monomial::Exps e(nvars, 0);
  e[index] = 1;
  return monomial(field, Monomial(std::move(e)), 1);
}

Poly Poly::monomial(const Field& field, Monomial m, Field::Elem c) {
  Poly r(field, m.nvars());
  if (c != 0) r.terms_.push_back({std::move(m), c});
  return r;
}

Field::Elem Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return key < t.mono; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

std::uint64_t Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

void Poly::require_compatible(const Poly& o) const {
  field_.require_same(o.field_);
  if (nvars_ != o.nvars_)
    throw std::invalid_argument("polynomials have different variable counts (" + std::to_string(nvars_) + " vs " +
                                std::to_string(o.nvars_) + ")");
}

Poly Poly::operator+(const Poly& o) const {
  require_compatible(o);
  Poly r(field_, nvars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (a->mono == b->mono) {
      const auto c = field_.add(a->coeff, b->coeff);
      if (c != 0) r.terms_.push_back({a->mono, c});
      ++a;
      ++b;
    } else if (b->mono < a->mono) {
      r.terms_.push_back(*a++);
    } else {
      r.terms_.push_back(*b++);
    }
  }
  r.terms_.insert(r.terms_.end(), a, terms_.end());
  r.terms_.insert(r.terms_.end(), b, o.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::scaled(Field::Elem c) const {
  if (c == 0) return Poly(field_, nvars_);
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
  return r;
}

Poly Poly::times_term(const Monomial& m, Field::Elem c) const {
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial arity does not match polynomial");
  if (c == 0) return Poly(field_, nvars_);
  Poly r(field_, nvars_);
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves a monomial order.
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, field_.mul(t.coeff, c)});
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  require_compatible(o);
  if (terms_.empty() || o.terms_.empty()) return Poly(field_, nvars_);
  if (terms_.size() == 1) return o.times_term(terms_[0].mono, terms_[0].coeff);
  if (o.terms_.size() == 1) return times_term(o.terms_[0].mono, o.terms_[0].coeff);
  std::unordered_map<Monomial, Field::Elem, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(terms_.size() * o.terms_.size(), std::size_t{1} << 22));
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      auto [it, inserted] = acc.try_emplace(a.mono * b.mono, 0);
      it->second = field_.add(it->second, field_.mul(a.coeff, b.coeff));
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.push_back({m, c});
  return from_map_unsorted(field_, nvars_, std::move(out));
}

Poly Poly::frobenius_power(unsigned i) const {
  if (i == 0) return *this;
  const std::uint64_t k = checked_pow(field_.p(), i);
  Poly r(field_, nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto c = t.coeff;
    for (unsigned j = 0; j < i; ++j) c = field_.frobenius(c);
    r.terms_.push_back({t.mono.scaled(k), c});
  }
  return r;
}

Poly Poly::pow(std::uint64_t k) const {
  Poly result = constant(field_, nvars_, 1);
  if (k == 0) return result;
  if (terms_.empty()) return Poly(field_, nvars_);
  if (terms_.size() == 1) {
    const auto& t = terms_[0];
    return monomial(field_, t.mono.scaled(k), field_.pow(t.coeff, k));
  }
  const std::uint64_t p = field_.p();
  unsigned digit_pos = 0;
  while (k) {
    const std::uint64_t d = k % p;
    k /= p;
    if (d) {
      Poly base = frobenius_power(digit_pos);
      Poly acc = constant(field_, nvars_, 1);
      std::uint64_t dd = d;
      while (dd) {
        if (dd & 1) acc = acc * base;
        dd >>= 1;
        if (dd) base = base * base;
      }
      result = result * acc;
    }
    ++digit_pos;
  }
  return result;
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars_)
    throw std::invalid_argument("substitute needs one image per variable (" + std::to_string(nvars_) + "), got " +
                                std::to_string(images.size()));
  if (images.empty()) return *this;
  const std::size_t out_vars = images[0].nvars();
  for (const auto& im : images) {
    field_.require_same(im.field());
    if (im.nvars() != out_vars) throw std::invalid_argument("substitution images have different variable counts");
  }
  std::vector<std::map<std::uint64_t, Poly>> cache(nvars_);
  auto power = [&](std::size_t v, std::uint64_t e) -> const Poly& {
    auto it = cache[v].find(e);
    if (it == cache[v].end()) it = cache[v].emplace(e, images[v].pow(e)).first;
    return it->second;
  };
  std::unordered_map<Monomial, Field::Elem, MonomialHash> acc;
  for (const auto& t : terms_) {
    Poly prod = constant(field_, out_vars, t.coeff);
    for (std::size_t v = 0; v < nvars_ && !prod.is_zero(); ++v)
      if (t.mono[v]) prod = prod * power(v, t.mono[v]);
    for (const auto& pt : prod.terms_) {
      auto [it, ins] = acc.try_emplace(pt.mono, 0);
      it->second = field_.add(it->second, pt.coeff);
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc) out.push_back({m, c});
  return from_map_unsorted(field_, out_vars, std::move(out));
}

Poly Poly::scale_exponents(std::size_t begin, std::size_t end, std::uint64_t k) const {
  Poly r(field_, nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial::Exps e = t.mono.exps();
    for (std::size_t v = begin; v < end; ++v) e[v] = checked_mul(e[v], k);
    r.terms_.push_back({Monomial(std::move(e)), t.coeff});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), term_before);
  return r;
}

Poly Poly::permute_variables(std::span<const std::size_t> perm) const {
  if (perm.size() != nvars_) throw std::invalid_argument("permutation size mismatch");
  Poly r(field_, nvars_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial::Exps e(nvars_, 0);
    for (std::size_t v = 0; v < nvars_; ++v) e[perm[v]] = t.mono[v];
    r.terms_.push_back({Monomial(std::move(e)), t.coeff});
  }
  std::sort(r.terms_.begin(), r.terms_.end(), term_before);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  require_compatible(o);
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono) return false;
  return true;
}

std::string Poly::render(std::span<const std::string> names) const {
  if (names.size() != nvars_) throw std::invalid_argument("render needs one name per variable");
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const auto& t = terms_[k];
    if (k) out += " + ";
    std::string body;
    for (std::size_t v = 0; v < nvars_; ++v) {
      if (!t.mono[v]) continue;
      if (!body.empty()) body += '*';
      body += names[v];
      if (t.mono[v] > 1) body += '^' + std::to_string(t.mono[v]);
    }
    if (body.empty())
      out += field_.render(t.coeff);
    else if (t.coeff == 1)
      out += body;
    else
      out += field_.render(t.coeff) + '*' + body;
  }
  return out;
}

// --- parsing ----------------------------------------------------------------

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s) {
  s = strip(s);
  if (s.empty()) throw std::invalid_argument("expected an integer");
  std::uint64_t v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
    v = checked_add(checked_mul(v, 10), static_cast<std::uint64_t>(c - '0'));
  }
  return v;
}

// Splits on `sep` outside parentheses.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth < 0) throw std::invalid_argument("unbalanced parentheses");
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced parentheses");
  parts.push_back(s.substr(start));
  return parts;
}

Field::Elem parse_coeff(std::string_view s, const Field& field) {
  s = strip(s);
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') throw std::invalid_argument("bad extension-field coefficient");
    auto inner = s.substr(1, s.size() - 2);
    std::vector<std::uint64_t> digits(field.e(), 0);
    for (auto part : split_top(inner, '+')) {
      part = strip(part);
      auto star = part.find('*');
      if (star == std::string_view::npos) {
        digits[0] = parse_uint(part);
        continue;
      }
      auto c = parse_uint(part.substr(0, star));
      auto rest = strip(part.substr(star + 1));
      std::uint64_t power = 1;
      if (rest.size() > 1 && rest[0] == 't' && rest[1] == '^')
        power = parse_uint(rest.substr(2));
      else if (rest != "t")
        throw std::invalid_argument("bad extension-field coefficient");
      if (power >= field.e()) throw std::invalid_argument("power of t out of range");
      digits[power] = c;
    }
    return field.from_digits(digits);
  }
  const auto v = parse_uint(s);
  if (field.e() == 1) {
    if (v >= field.p()) throw std::invalid_argument("coefficient out of range");
    return v;
  }
  if (v >= field.p()) throw std::invalid_argument("coefficient out of range");
  return v;
}

}  // namespace

Poly parse_poly(std::string_view text, const Field& field, std::span<const std::string> names) {
  const std::size_t nvars = names.size();
  text = strip(text);
  if (text == "0") return Poly(field, nvars);
  std::vector<Term> terms;
  for (auto term_text : split_top(text, '+')) {
    term_text = strip(term_text);
    if (term_text.empty()) throw std::invalid_argument("empty term");
    Field::Elem coeff = 1;
    Monomial::Exps e(nvars, 0);
    bool first = true;
    for (auto factor : split_top(term_text, '*')) {
      factor = strip(factor);
      const bool numeric = !factor.empty() && (factor.front() == '(' || std::isdigit(static_cast<unsigned char>(factor.front())));
      if (numeric) {
        if (!first) throw std::invalid_argument("coefficient must lead the term");
        coeff = parse_coeff(factor, field);
      } else {
        auto caret = factor.find('^');
        auto name = strip(factor.substr(0, caret));
        std::uint64_t power = caret == std::string_view::npos ? 1 : parse_uint(factor.substr(caret + 1));
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
        auto& slot = e[static_cast<std::size_t>(it - names.begin())];
        slot = checked_add(slot, power);
      }
      first = false;
    }
    terms.push_back({Monomial(std::move(e)), coeff});
  }
  return Poly::from_terms(field, nvars, std::move(terms));
}

// --- bigraded helpers ---------------------------------------------------------

std::string BidegreeResult::str() const {
  switch (kind) {
    case Kind::Zero: return "zero";
    case Kind::Mixed: return "mixed";
    default: return "(" + std::to_string(value.d) + "," + std::to_string(value.e) + ")";
  }
}

BiPoly x_var(const Field& field, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::out_of_range("x index out of range");
  return Poly::variable(field, 2 * n, i - 1);
}

BiPoly y_var(const Field& field, std::size_t n, std::size_t i) {
  if (i < 1 || i > n) throw std::out_of_range("y index out of range");
  return Poly::variable(field, 2 * n, n + i - 1);
}

BiPoly bi_constant(const Field& field, std::size_t n, Field::Elem c) { return Poly::constant(field, 2 * n, c); }

Bidegree bidegree_of(const Monomial& m) {
  const std::size_t n = m.nvars() / 2;
  Bidegree b;
  for (std::size_t i = 0; i < n; ++i) b.d = checked_add(b.d, m[i]);
  for (std::size_t i = n; i < 2 * n; ++i) b.e = checked_add(b.e, m[i]);
  return b;
}

BidegreeResult bidegree(const BiPoly& f) {
  BidegreeResult r;
  if (f.is_zero()) return r;
  r.kind = BidegreeResult::Kind::Homogeneous;
  r.value = bidegree_of(f.leading().mono);
  for (const auto& t : f.terms()) {
    if (bidegree_of(t.mono) != r.value) {
      r.kind = BidegreeResult::Kind::Mixed;
      r.value = {};
      break;
    }
  }
  return r;
}

BiPoly frobenius_x(const BiPoly& f) { return f.scale_exponents(0, bi_n(f), f.field().q()); }

BiPoly frobenius_y(const BiPoly& f) { return f.scale_exponents(bi_n(f), f.nvars(), f.field().q()); }

std::vector<std::string> bi_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i) names.push_back("y" + std::to_string(i));
  return names;
}

std::string render(const BiPoly& f) { return f.render(bi_names(bi_n(f))); }

BiPoly parse_bipoly(std::string_view text, const Field& field, std::size_t n) {
  return parse_poly(text, field, bi_names(n));
}

nlohmann::json field_to_json(const Field& field) {
  return {{"p", field.p()}, {"e", field.e()}, {"modulus", field.modulus()}};
}

nlohmann::json to_json(const BiPoly& f) {
  const std::size_t n = bi_n(f);
  auto arr = nlohmann::json::array();
  for (const auto& t : f.terms()) {
    std::vector<std::uint64_t> xs(t.mono.exps().begin(), t.mono.exps().begin() + n);
    std::vector<std::uint64_t> ys(t.mono.exps().begin() + n, t.mono.exps().end());
    arr.push_back({{"xexp", xs}, {"yexp", ys}, {"coeff", f.field().digits(t.coeff)}});
  }
  return arr;
}

BiPoly bipoly_from_json(const nlohmann::json& j, const Field& field, std::size_t n) {
  std::vector<Term> terms;
  for (const auto& t : j) {
    auto xs = t.at("xexp").get<std::vector<std::uint64_t>>();
    auto ys = t.at("yexp").get<std::vector<std::uint64_t>>();
    if (xs.size() != n || ys.size() != n) throw std::invalid_argument("exponent vector length mismatch");
    Monomial::Exps e(xs.begin(), xs.end());
    e.insert(e.end(), ys.begin(), ys.end());
    terms.push_back({Monomial(std::move(e)), field.from_digits(t.at("coeff").get<std::vector<std::uint64_t>>())});
  }
  return Poly::from_terms(field, 2 * n, std::move(terms));
}

namespace {

void compositions(std::size_t parts, std::uint64_t total, std::vector<std::uint64_t>& cur,
                  std::vector<std::vector<std::uint64_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::uint64_t v = total + 1; v-- > 0;) {
    cur.push_back(v);
    compositions(parts, total - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Monomial> monomial_basis(std::size_t n, Bidegree b) {
  std::vector<std::vector<std::uint64_t>> xs, ys;
  std::vector<std::uint64_t> cur;
  compositions(n, b.d, cur, xs);
  compositions(n, b.e, cur, ys);
  std::vector<Monomial> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs)
    for (const auto& y : ys) {
      Monomial::Exps e(x.begin(), x.end());
      e.insert(e.end(), y.begin(), y.end());
      out.emplace_back(std::move(e));
    }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& c) { return c < a; });
  return out;
}

}  // namespace invar
