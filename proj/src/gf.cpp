#include "invar/gf.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace invar {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 k, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (k) {
    if (k & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1;
  }
  return r;
}

// Dense polynomials over F_p, low-to-high, trailing zeros trimmed.
using Dense = std::vector<u64>;

void trim(Dense& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m.
Dense poly_rem(Dense a, const Dense& m, u64 p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const u64 lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      const u64 t = mulmod(lead, m[i], p);
      a[shift + i] = (a[shift + i] + p - t) % p;
    }
    trim(a);
  }
  return a;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits
// of idx, with c_0 as the most significant digit so that increasing idx walks
// coefficient lists in lexicographic order.
Dense monic_from_lex_index(u64 idx, unsigned d, u64 p) {
  Dense c(d + 1, 0);
  c[d] = 1;
  for (unsigned i = d; i-- > 0;) {
    c[i] = idx % p;
    idx /= p;
  }
  return c;
}

bool irreducible(const Dense& f, u64 p) {
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 1) return true;
  for (unsigned k = 1; 2 * k <= d; ++k) {
    u64 count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (u64 idx = 0; idx < count; ++idx) {
      if (poly_rem(f, monic_from_lex_index(idx, k, p), p).empty()) return false;
    }
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d <= n / d; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::create(std::uint64_t p, unsigned e) {
  if (!invar::is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (e == 0) throw std::invalid_argument("field extension degree must be at least 1");
  u64 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > (~u64{0}) / p) throw std::overflow_error("p^e does not fit in 64 bits");
    q *= p;
  }
  auto d = std::make_shared<Data>();
  d->p = p;
  d->e = e;
  d->q = q;
  if (e == 1) {
    d->modulus = {0, 1};
  } else {
    for (u64 idx = 0;; ++idx) {
      Dense cand = monic_from_lex_index(idx, e, p);
      if (irreducible(cand, p)) {
        d->modulus = std::move(cand);
        break;
      }
    }
  }
  Field f(d);
  // Smallest generator of the unit group, walking elements lexicographically.
  if (q == 2) {
    d->primitive = 1;
  } else {
    const auto factors = prime_factors(q - 1);
    std::vector<u64> lex(e, 0);
    for (;;) {
      // advance lex (c_0 most significant) by one
      for (unsigned i = e; i-- > 0;) {
        if (++lex[i] < p) break;
        lex[i] = 0;
      }
      const Elem a = f.from_digits(lex);
      if (a == 0) continue;
      bool gen = true;
      for (u64 r : factors) {
        if (f.pow(a, (q - 1) / r) == 1) {
          gen = false;
          break;
        }
      }
      if (gen) {
        d->primitive = a;
        break;
      }
    }
  }
  return f;
}

std::vector<std::uint64_t> Field::digits(Elem a) const {
  std::vector<u64> c(data_->e, 0);
  for (unsigned i = 0; i < data_->e; ++i) {
    c[i] = a % data_->p;
    a /= data_->p;
  }
  return c;
}

Field::Elem Field::from_digits(const std::vector<std::uint64_t>& c) const {
  if (c.size() != data_->e) throw std::invalid_argument("element must have exactly e residues");
  Elem v = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= data_->p) throw std::invalid_argument("residue out of range");
    v = v * data_->p + c[i];
  }
  return v;
}

Field::Elem Field::add(Elem a, Elem b) const {
  const u64 p = data_->p;
  if (data_->e == 1) {
    const u64 s = a + b;
    return (s >= p || s < a) ? s - p : s;
  }
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < data_->e; ++i) {
    const u64 da = a % p, db = b % p;
    a /= p;
    b /= p;
    r += ((da + db) % p) * scale;
    scale *= p;
  }
  return r;
}

Field::Elem Field::neg(Elem a) const {
  const u64 p = data_->p;
  if (data_->e == 1) return a == 0 ? 0 : p - a;
  Elem r = 0, scale = 1;
  for (unsigned i = 0; i < data_->e; ++i) {
    const u64 da = a % p;
    a /= p;
    r += ((p - da) % p) * scale;
    scale *= p;
  }
  return r;
}

Field::Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Field::Elem Field::mul(Elem a, Elem b) const {
  const u64 p = data_->p;
  if (data_->e == 1) return mulmod(a, b, p);
  if (a == 0 || b == 0) return 0;
  const auto da = digits(a), db = digits(b);
  Dense prod(2 * data_->e - 1, 0);
  for (unsigned i = 0; i < data_->e; ++i) {
    if (da[i] == 0) continue;
    for (unsigned j = 0; j < data_->e; ++j) prod[i + j] = (prod[i + j] + mulmod(da[i], db[j], p)) % p;
  }
  Dense r = poly_rem(std::move(prod), data_->modulus, p);
  r.resize(data_->e, 0);
  return from_digits(r);
}

Field::Elem Field::pow(Elem a, std::uint64_t k) const {
  if (data_->e == 1) return powmod(a, k, data_->p);
  Elem r = 1;
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

Field::Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(data_->q));
  return pow(a, data_->q - 2);
}

Field::Elem Field::frobenius(Elem a) const { return data_->e == 1 ? a : pow(a, data_->p); }

Field::Elem Field::from_int(std::int64_t k) const {
  const auto p = static_cast<std::int64_t>(data_->p);
  std::int64_t r = k % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

std::vector<Field::Elem> Field::prime_basis() const {
  std::vector<Elem> out;
  Elem t = 1;
  for (unsigned i = 0; i < data_->e; ++i) {
    out.push_back(t);
    t *= data_->p;
  }
  return out;
}

bool Field::lex_less(Elem a, Elem b) const {
  const auto da = digits(a), db = digits(b);
  return da < db;
}

std::vector<Field::Elem> Field::elements() const {
  std::vector<Elem> out(data_->q);
  for (Elem v = 0; v < data_->q; ++v) out[v] = v;
  if (data_->e > 1) std::sort(out.begin(), out.end(), [this](Elem a, Elem b) { return lex_less(a, b); });
  return out;
}

Fq Field::element(Elem v) const {
  if (v >= data_->q) throw std::invalid_argument("element encoding out of range");
  return Fq(*this, v);
}

std::string Field::render(Elem a) const {
  if (data_->e == 1) return std::to_string(a);
  const auto c = digits(a);
  std::ostringstream os;
  os << '(' << c[0];
  for (unsigned i = 1; i < data_->e; ++i) {
    os << '+' << c[i] << "*t";
    if (i > 1) os << '^' << i;
  }
  os << ')';
  return os.str();
}

bool Field::operator==(const Field& o) const {
  if (data_ == o.data_) return true;
  if (!data_ || !o.data_) return false;
  return data_->p == o.data_->p && data_->e == o.data_->e && data_->modulus == o.data_->modulus;
}

void Field::require_same(const Field& o) const {
  if (*this != o)
    throw FieldMismatch("operands live in different fields (F_" + std::to_string(q()) + " vs F_" +
                        std::to_string(o.q()) + ")");
}

Fq::Fq(Field f, Field::Elem v) : field_(std::move(f)), v_(v) {
  if (v_ >= field_.q()) throw std::invalid_argument("element encoding out of range");
}

Fq Fq::operator+(const Fq& o) const {
  field_.require_same(o.field_);
  return {field_, field_.add(v_, o.v_)};
}
Fq Fq::operator-(const Fq& o) const {
  field_.require_same(o.field_);
  return {field_, field_.sub(v_, o.v_)};
}
Fq Fq::operator*(const Fq& o) const {
  field_.require_same(o.field_);
  return {field_, field_.mul(v_, o.v_)};
}
Fq Fq::inv() const { return {field_, field_.inv(v_)}; }

bool Fq::operator==(const Fq& o) const {
  field_.require_same(o.field_);
  return v_ == o.v_;
}

}  // namespace invar
