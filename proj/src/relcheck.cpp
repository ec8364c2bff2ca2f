#include "invar/relcheck.hpp"

#include <sstream>
#include <stdexcept>

#include "invar/det.hpp"
#include "invar/invgen.hpp"

namespace invar {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void mixed() { throw std::invalid_argument("ring elements from different rings"); }

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

template <class Op>
RingElem combine(const RingElem::Value& x, const RingElem::Value& y, Op op) {
  if (x.index() != y.index()) mixed();
  return std::visit(
      [&](const auto& a) -> RingElem {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(y);
        if constexpr (std::is_same_v<T, ModInt>) {
          if (a.m != b.m) mixed();
        }
        return RingElem(op(a, b));
      },
      x);
}

}  // namespace

bool RingElem::is_zero() const {
  return std::visit(overloaded{[](const BigInt& a) { return a == 0; }, [](const ModInt& a) { return a.v == 0; },
                               [](const Fq& a) { return a.is_zero(); }},
                    v_);
}

RingElem RingElem::operator+(const RingElem& o) const {
  return combine(v_, o.v_,
                 overloaded{[](const BigInt& a, const BigInt& b) -> Value { return BigInt(a + b); },
                            [](const ModInt& a, const ModInt& b) -> Value {
                              return ModInt{(a.v + b.v) % a.m, a.m};
                            },
                            [](const Fq& a, const Fq& b) -> Value { return a + b; }});
}

RingElem RingElem::operator-(const RingElem& o) const {
  return combine(v_, o.v_,
                 overloaded{[](const BigInt& a, const BigInt& b) -> Value { return BigInt(a - b); },
                            [](const ModInt& a, const ModInt& b) -> Value {
                              return ModInt{(a.v + a.m - b.v) % a.m, a.m};
                            },
                            [](const Fq& a, const Fq& b) -> Value { return a - b; }});
}

RingElem RingElem::operator*(const RingElem& o) const {
  return combine(v_, o.v_,
                 overloaded{[](const BigInt& a, const BigInt& b) -> Value { return BigInt(a * b); },
                            [](const ModInt& a, const ModInt& b) -> Value {
                              return ModInt{mulmod(a.v, b.v, a.m), a.m};
                            },
                            [](const Fq& a, const Fq& b) -> Value { return a * b; }});
}

RingElem RingElem::operator-() const {
  return std::visit(overloaded{[](const BigInt& a) { return RingElem(BigInt(-a)); },
                               [](const ModInt& a) { return RingElem(ModInt{(a.m - a.v) % a.m, a.m}); },
                               [](const Fq& a) { return RingElem(-a); }},
                    v_);
}

bool RingElem::operator==(const RingElem& o) const {
  if (v_.index() != o.v_.index()) return false;
  return std::visit(
      [&](const auto& a) -> bool {
        using T = std::decay_t<decltype(a)>;
        const auto& b = std::get<T>(o.v_);
        if constexpr (std::is_same_v<T, ModInt>)
          return a.v == b.v && a.m == b.m;
        else
          return a == b;
      },
      v_);
}

std::string RingElem::str() const {
  return std::visit(overloaded{[](const BigInt& a) { return a.str(); },
                               [](const ModInt& a) { return std::to_string(a.v); },
                               [](const Fq& a) { return a.str(); }},
                    v_);
}

CoeffRing CoeffRing::integers() { return CoeffRing{}; }

CoeffRing CoeffRing::integers_mod(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("Z/m needs m >= 2");
  CoeffRing r;
  r.kind_ = RingKind::IntegersMod;
  r.m_ = m;
  return r;
}

CoeffRing CoeffRing::finite_field(const Field& f) {
  CoeffRing r;
  r.kind_ = RingKind::FiniteField;
  r.field_ = f;
  return r;
}

std::string CoeffRing::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::IntegersMod: return "Z/" + std::to_string(m_);
    case RingKind::FiniteField: return "F_" + std::to_string(field_->q());
  }
  return "?";
}

RingElem CoeffRing::from_int(std::int64_t k) const {
  switch (kind_) {
    case RingKind::Integers: return RingElem(BigInt(k));
    case RingKind::IntegersMod: {
      const auto m = static_cast<std::int64_t>(m_);
      return RingElem(ModInt{static_cast<std::uint64_t>(((k % m) + m) % m), m_});
    }
    case RingKind::FiniteField: return RingElem(field_->element(field_->from_int(k)));
  }
  throw std::logic_error("unknown ring");
}

RingElem CoeffRing::random(std::mt19937_64& rng) const {
  // plain modular reduction: reproducible across standard libraries
  switch (kind_) {
    case RingKind::Integers: return RingElem(BigInt(static_cast<std::int64_t>(rng() % 19) - 9));
    case RingKind::IntegersMod: return RingElem(ModInt{rng() % m_, m_});
    case RingKind::FiniteField: return RingElem(field_->element(rng() % field_->q()));
  }
  throw std::logic_error("unknown ring");
}

RingElem det(const CoeffRing& ring, const RingMatrix& m) { return laplace_det(m, ring.one()); }

RingMatrix random_matrix(const CoeffRing& ring, std::size_t n, std::mt19937_64& rng) {
  RingMatrix m(n);
  for (auto& row : m)
    for (std::size_t j = 0; j < n; ++j) row.push_back(ring.random(rng));
  return m;
}

namespace {

// Rows [0, rows) minus `skip` (0-based, or rows to skip none), columns [0, cols).
RingMatrix minor_of(const RingMatrix& a, std::size_t rows, std::size_t skip, std::size_t cols) {
  RingMatrix out;
  for (std::size_t r = 0; r < rows; ++r) {
    if (r == skip) continue;
    out.emplace_back(a[r].begin(), a[r].begin() + static_cast<std::ptrdiff_t>(cols));
  }
  return out;
}

// First `rows` rows, columns [0, cols) followed by column `extra`.
RingMatrix bordered(const RingMatrix& a, std::size_t rows, std::size_t cols, std::size_t extra) {
  RingMatrix out;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<RingElem> row(a[r].begin(), a[r].begin() + static_cast<std::ptrdiff_t>(cols));
    row.push_back(a[r][extra]);
    out.push_back(std::move(row));
  }
  return out;
}

RingElem signed_(const RingElem& x, std::size_t parity) { return parity % 2 ? -x : x; }

void require_square(const RingMatrix& a, std::size_t n) {
  if (a.size() != n) throw std::invalid_argument("matrix must be n x n");
  for (const auto& r : a)
    if (r.size() != n) throw std::invalid_argument("matrix must be n x n");
}

void require_k(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) throw std::out_of_range("need 1 <= k <= n");
}

}  // namespace

bool check_det_identity(const CoeffRing& ring, std::size_t n, std::size_t k, const RingMatrix& a,
                        const RingMatrix& b) {
  require_k(n, k);
  require_square(a, n);
  require_square(b, n);
  const std::size_t m = n + 1 - k;
  // minors do not depend on l: precompute
  std::vector<RingElem> amin, bmin;
  for (std::size_t i = 0; i < k; ++i) amin.push_back(k == 1 ? ring.one() : det(ring, minor_of(a, k, i, k - 1)));
  for (std::size_t j = 0; j < m; ++j) bmin.push_back(k == n ? ring.one() : det(ring, minor_of(b, m, j, n - k)));
  RingElem lhs = ring.zero();
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t j = 1; j <= m; ++j) {
      RingElem inner = ring.zero();
      for (std::size_t l = 1; l <= n; ++l) inner = inner + a[i - 1][l - 1] * b[j - 1][n - l];
      lhs = lhs + signed_(inner * amin[i - 1] * bmin[j - 1], i + j + n + 1);
    }
  const RingElem rhs = det(ring, minor_of(a, k, k, k)) * det(ring, minor_of(b, m, m, m));
  return lhs == rhs;
}

bool check_cofactor_a(const CoeffRing& ring, std::size_t n, std::size_t k, std::size_t l, const RingMatrix& a) {
  require_k(n, k);
  require_square(a, n);
  if (l < 1 || l > n) throw std::out_of_range("need 1 <= l <= n");
  RingElem lhs = ring.zero();
  for (std::size_t i = 1; i <= k; ++i) lhs = lhs + signed_(a[i - 1][l - 1] * det(ring, minor_of(a, k, i - 1, k - 1)), i);
  const RingElem rhs = signed_(det(ring, bordered(a, k, k - 1, l - 1)), k);
  if (lhs != rhs) return false;
  return l > k - 1 || rhs.is_zero();
}

bool check_cofactor_b(const CoeffRing& ring, std::size_t n, std::size_t k, std::size_t l, const RingMatrix& b) {
  require_k(n, k);
  require_square(b, n);
  if (l < 1 || l > n) throw std::out_of_range("need 1 <= l <= n");
  const std::size_t m = n + 1 - k;
  const std::size_t col = n - l;  // column n+1-l, 0-based
  RingElem lhs = ring.zero();
  for (std::size_t j = 1; j <= m; ++j) lhs = lhs + signed_(b[j - 1][col] * det(ring, minor_of(b, m, j - 1, n - k)), j);
  const RingElem rhs = signed_(det(ring, bordered(b, m, n - k, col)), m);
  if (lhs != rhs) return false;
  return l < k + 1 || rhs.is_zero();
}

bool check_cofactor_lemmas(const CoeffRing& ring, std::size_t n, std::size_t k, const RingMatrix& a,
                           const RingMatrix& b) {
  for (std::size_t l = 1; l <= n; ++l)
    if (!check_cofactor_a(ring, n, k, l, a) || !check_cofactor_b(ring, n, k, l, b)) return false;
  return true;
}

std::size_t FuzzReport::total_trials() const {
  std::size_t t = 0;
  for (const auto& c : cases) t += c.trials;
  return t;
}

std::size_t FuzzReport::total_failures() const {
  std::size_t t = 0;
  for (const auto& c : cases) t += c.det_failures + c.cofactor_failures;
  return t;
}

std::vector<CoeffRing> default_fuzz_rings() {
  return {CoeffRing::integers(), CoeffRing::integers_mod(4), CoeffRing::integers_mod(6),
          CoeffRing::finite_field(Field::create(2)), CoeffRing::finite_field(Field::create(3, 2))};
}

FuzzReport fuzz_det_identity(std::uint64_t seed, std::size_t max_n, std::size_t trials,
                             const std::vector<CoeffRing>& rings) {
  FuzzReport rep;
  rep.seed = seed;
  rep.trials_per_case = trials;
  for (std::size_t r = 0; r < rings.size(); ++r) {
    std::seed_seq ss{seed, static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(ss);
    for (std::size_t n = 1; n <= max_n; ++n)
      for (std::size_t k = 1; k <= n; ++k) {
        FuzzCase c{rings[r].name(), n, k, trials, 0, 0};
        for (std::size_t t = 0; t < trials; ++t) {
          const auto a = random_matrix(rings[r], n, rng);
          const auto b = random_matrix(rings[r], n, rng);
          if (!check_det_identity(rings[r], n, k, a, b)) ++c.det_failures;
          if (!check_cofactor_lemmas(rings[r], n, k, a, b)) ++c.cofactor_failures;
        }
        rep.cases.push_back(c);
      }
  }
  return rep;
}

nlohmann::json to_json(const FuzzReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"ring", c.ring},
                     {"n", c.n},
                     {"k", c.k},
                     {"trials", c.trials},
                     {"det_failures", c.det_failures},
                     {"cofactor_failures", c.cofactor_failures}});
  return {{"seed", r.seed},
          {"trials_per_case", r.trials_per_case},
          {"total_trials", r.total_trials()},
          {"total_failures", r.total_failures()},
          {"cases", cases}};
}

std::string to_text(const FuzzReport& r) {
  std::ostringstream os;
  os << "seed " << r.seed << ", " << r.trials_per_case << " trials per case\n";
  for (const auto& c : r.cases)
    os << "  " << c.ring << " n=" << c.n << " k=" << c.k << ": " << c.det_failures << " det failures, "
       << c.cofactor_failures << " cofactor failures\n";
  os << "total " << r.total_trials() << " trials, " << r.total_failures() << " failures\n";
  return os.str();
}

// --- specialization --------------------------------------------------------

std::optional<Poly> exact_divide(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  const auto& F = f.field();
  const Term& lg = g.leading();
  const auto inv_lc = F.inv(lg.coeff);
  Poly quotient(F, f.nvars());
  Poly rem = f;
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    if (!lg.mono.divides(lr.mono)) return std::nullopt;
    const Monomial m = lg.mono.quotient_of(lr.mono);
    const auto c = F.mul(lr.coeff, inv_lc);
    quotient += Poly::monomial(F, m, c);
    rem -= g.times_term(m, c);
  }
  return quotient;
}

bool check_inner_sum(const Field& field, std::size_t n, std::size_t i, std::size_t j) {
  if (i < 1 || j < 1) throw std::out_of_range("need i, j >= 1");
  const std::uint64_t q = field.q();
  BiPoly lhs = bi_constant(field, n, 0);
  for (std::size_t l = 1; l <= n; ++l)
    lhs += x_var(field, n, l).pow(checked_pow(q, i - 1)) * y_var(field, n, l).pow(checked_pow(q, j - 1));
  const int diff = static_cast<int>(i) - static_cast<int>(j);
  const BiPoly rhs = build_u(field, n, diff).pow(checked_pow(q, std::min(i, j) - 1));
  return lhs == rhs;
}

bool check_dickson_factorization(const Field& field, std::size_t n, std::size_t k, std::size_t i) {
  if (i > k || k > n) throw std::out_of_range("need 0 <= i <= k <= n");
  BiPoly rhs = build_dickson(field, n, k, i);
  for (std::size_t j = 1; j <= k; ++j) rhs *= build_f(field, n, j);
  return build_det_d(field, n, k, i) == rhs;
}

SpecializationResult check_specialization(const Field& field, std::size_t n, std::size_t k, bool check_division) {
  if (k < 1 || k > n) throw std::out_of_range("need 1 <= k <= n");
  const std::uint64_t q = field.q();
  SpecializationResult res{n, k, q, false, false};
  std::vector<BiPoly> d_left, d_right;
  for (std::size_t i = 0; i <= k - 1; ++i) d_left.push_back(build_det_d(field, n, k - 1, i));
  for (std::size_t j = 0; j <= n - k; ++j) d_right.push_back(star(build_det_d(field, n, n - k, j)));
  BiPoly lhs = bi_constant(field, n, 0);
  for (std::size_t i = 0; i <= k - 1; ++i)
    for (std::size_t j = 0; j <= n - k; ++j) {
      const int diff = static_cast<int>(i) - static_cast<int>(j);
      BiPoly t = build_u(field, n, diff).pow(checked_pow(q, std::min(i, j))) * d_left[i] * d_right[j];
      if ((i + j + n + 1) % 2) t = -t;
      lhs += t;
    }
  const BiPoly rhs = build_det_d(field, n, k, k) * star(build_det_d(field, n, n + 1 - k, n + 1 - k));
  res.identity_holds = lhs == rhs;
  if (check_division) {
    BiPoly div = bi_constant(field, n, 1);
    for (std::size_t j = 1; j + 1 <= k; ++j) div *= build_f(field, n, j);
    for (std::size_t j = 1; j <= n - k; ++j) div *= build_fstar(field, n, j);
    const auto ql = exact_divide(lhs, div);
    const auto qr = exact_divide(rhs, div);
    res.divisible = ql.has_value() && qr.has_value();
  }
  return res;
}

}  // namespace invar
