#include "invar/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace invar {

namespace {

std::uint64_t qpow(std::uint64_t q, std::uint64_t k) { return checked_pow(q, k); }

int kind_code(SymKind k) { return static_cast<int>(k); }

const char* kind_prefix(SymKind k) {
  switch (k) {
    case SymKind::F: return "F";
    case SymKind::Fs: return "Fs";
    case SymKind::Ft: return "Ft";
    case SymKind::Fts: return "Fts";
    case SymKind::U: return "U";
  }
  return "?";
}

SymKind star_kind(SymKind k) {
  switch (k) {
    case SymKind::F: return SymKind::Fs;
    case SymKind::Fs: return SymKind::F;
    case SymKind::Ft: return SymKind::Fts;
    case SymKind::Fts: return SymKind::Ft;
    case SymKind::U: return SymKind::U;
  }
  return k;
}

// Builder state shared by the relation formulas.
struct Ctx {
  const Field& field;
  const Alphabet& alph;
  std::size_t n;
  std::uint64_t q;

  Poly one() const { return Poly::constant(field, alph.size(), 1); }

  Poly power(SymKind kind, int index, std::uint64_t e) const {
    Monomial::Exps ex(alph.size(), 0);
    ex[alph.require(kind, index)] = e;
    return Poly::monomial(field, Monomial(std::move(ex)), 1);
  }

  // U_{m}^{q^{k}}
  Poly u(int m, std::uint64_t k) const { return power(SymKind::U, m, qpow(q, k)); }

  // c_{s,t} written in the symbols of `kind`. With F/Fs the f~ powers become
  // exponents times (q-1); with Ft/Fts they stay as symbols.
  Poly dickson(SymKind kind, std::size_t s, std::size_t t) const {
    if (t > s || s > n) throw std::out_of_range("c_{s,t} needs 0 <= t <= s <= n");
    if (s == t) return one();
    const bool tilde = kind == SymKind::Ft || kind == SymKind::Fts;
    Poly sum(field, alph.size());
    for (const auto& tuple : increasing_tuples(s, s - t)) {
      Monomial::Exps ex(alph.size(), 0);
      for (std::size_t l = 1; l <= tuple.size(); ++l) {
        const std::size_t j = tuple[l - 1];
        std::uint64_t e = qpow(q, t + l - j);
        if (!tilde) e = checked_mul(e, q - 1);
        auto& slot = ex[alph.require(kind, static_cast<int>(j))];
        slot = checked_add(slot, e);
      }
      sum += Poly::monomial(field, Monomial(std::move(ex)), 1);
    }
    return sum;
  }

  Poly sign(int parity) const { return Poly::constant(field, alph.size(), parity % 2 == 0 ? 1 : field.neg(1)); }
};

void require_k(int k, int lo, int hi, const char* what) {
  if (k < lo || k > hi)
    throw std::out_of_range(std::string(what) + " needs " + std::to_string(lo) + " <= k <= " + std::to_string(hi) +
                            ", got " + std::to_string(k));
}

// Sum_{i<k, j<=n-k} sign * C_{k-1,i}^{a} Cs_{n-k,j}^{b} U_shift, shared by the
// R, R+, R- families and the tilde families.
enum class Twist { None, Plus, Minus };

Poly core_sum(const Ctx& c, SymKind fk, SymKind fsk, int k, Twist tw, int extra_sign) {
  const int n = static_cast<int>(c.n);
  Poly sum(c.field, c.alph.size());
  for (int i = 0; i <= k - 1; ++i) {
    Poly ci = c.dickson(fk, static_cast<std::size_t>(k - 1), static_cast<std::size_t>(i));
    if (tw == Twist::Plus) ci = ci.pow(c.q);
    for (int j = 0; j <= n - k; ++j) {
      Poly cj = c.dickson(fsk, static_cast<std::size_t>(n - k), static_cast<std::size_t>(j));
      if (tw == Twist::Minus) cj = cj.pow(c.q);
      Poly uu(c.field, c.alph.size());
      switch (tw) {
        case Twist::None: uu = c.u(i - j, static_cast<std::uint64_t>(std::min(i, j))); break;
        case Twist::Plus: uu = c.u(i - j + 1, static_cast<std::uint64_t>(std::min(i + 1, j))); break;
        case Twist::Minus: uu = c.u(i - j - 1, static_cast<std::uint64_t>(std::min(i, j + 1))); break;
      }
      sum += c.sign(i + j + extra_sign) * ci * cj * uu;
    }
  }
  return sum;
}

}  // namespace

// --- symbols ---------------------------------------------------------------

std::string GenSymbol::name() const {
  if (kind == SymKind::U && index < 0) return "Um" + std::to_string(-index);
  return kind_prefix(kind) + std::to_string(index);
}

Bidegree symbol_bidegree(SymKind kind, int index, std::uint64_t q) {
  switch (kind) {
    case SymKind::F: return {qpow(q, static_cast<std::uint64_t>(index - 1)), 0};
    case SymKind::Fs: return {0, qpow(q, static_cast<std::uint64_t>(index - 1))};
    case SymKind::Ft: return {checked_mul(q - 1, qpow(q, static_cast<std::uint64_t>(index - 1))), 0};
    case SymKind::Fts: return {0, checked_mul(q - 1, qpow(q, static_cast<std::uint64_t>(index - 1)))};
    case SymKind::U:
      if (index >= 0) return {qpow(q, static_cast<std::uint64_t>(index)), 1};
      return {1, qpow(q, static_cast<std::uint64_t>(-index))};
  }
  return {};
}

GenSymbol parse_symbol(const std::string& name, std::uint64_t q) {
  auto bad = [&] { return std::invalid_argument("not a generator symbol: '" + name + "'"); };
  static const std::pair<const char*, SymKind> prefixes[] = {
      {"Fts", SymKind::Fts}, {"Ft", SymKind::Ft}, {"Fs", SymKind::Fs}, {"F", SymKind::F}, {"Um", SymKind::U},
      {"U", SymKind::U}};
  for (const auto& [pre, kind] : prefixes) {
    const std::string p = pre;
    if (name.compare(0, p.size(), p) != 0) continue;
    const std::string rest = name.substr(p.size());
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
      continue;
    if (rest.size() > 1 && rest[0] == '0') throw bad();
    int idx = std::stoi(rest);
    if (p == "Um") {
      if (idx == 0) throw bad();
      idx = -idx;
    }
    if (kind != SymKind::U && idx < 1) throw bad();
    return {kind, idx, symbol_bidegree(kind, idx, q)};
  }
  throw bad();
}

Alphabet::Alphabet(std::vector<GenSymbol> symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto key = std::make_pair(kind_code(symbols_[i].kind), symbols_[i].index);
    if (!index_.emplace(key, i).second) throw std::invalid_argument("duplicate symbol " + symbols_[i].name());
  }
}

std::optional<std::size_t> Alphabet::find(SymKind kind, int index) const {
  auto it = index_.find({kind_code(kind), index});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::require(SymKind kind, int index) const {
  if (auto i = find(kind, index)) return *i;
  throw std::out_of_range("symbol " + GenSymbol{kind, index, {}}.name() + " is not in the alphabet");
}

std::vector<std::string> Alphabet::names() const {
  std::vector<std::string> out;
  out.reserve(symbols_.size());
  for (const auto& s : symbols_) out.push_back(s.name());
  return out;
}

namespace {

Alphabet make_alphabet(GroupKind kind, std::size_t n, std::uint64_t q, int ulo, int uhi) {
  std::vector<GenSymbol> syms;
  const bool tilde = kind == GroupKind::Bn;
  const SymKind a = tilde ? SymKind::Ft : SymKind::F;
  const SymKind b = tilde ? SymKind::Fts : SymKind::Fs;
  for (int i = 1; i <= static_cast<int>(n); ++i) syms.push_back({a, i, symbol_bidegree(a, i, q)});
  for (int i = 1; i <= static_cast<int>(n); ++i) syms.push_back({b, i, symbol_bidegree(b, i, q)});
  for (int j = ulo; j <= uhi; ++j) syms.push_back({SymKind::U, j, symbol_bidegree(SymKind::U, j, q)});
  return Alphabet(std::move(syms));
}

void require_presentable(GroupKind kind) {
  if (kind != GroupKind::Un && kind != GroupKind::Bn)
    throw std::invalid_argument("presentations are only available for un and bn");
}

}  // namespace

Alphabet theorem_alphabet(GroupKind kind, std::size_t n, std::uint64_t q) {
  require_presentable(kind);
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  const int w = static_cast<int>(n);
  if (kind == GroupKind::Un) {
    if (n == 1) return make_alphabet(kind, n, q, 1, 0);
    return make_alphabet(kind, n, q, 2 - w, w - 2);
  }
  return make_alphabet(kind, n, q, 1 - w, w - 1);
}

Alphabet widened_alphabet(GroupKind kind, std::size_t n, std::uint64_t q) {
  require_presentable(kind);
  if (n == 0) throw std::invalid_argument("n must be at least 1");
  const int w = static_cast<int>(n);
  return make_alphabet(kind, n, q, -w, w);
}

// --- relations -------------------------------------------------------------

std::string relation_label(RelFamily family, int k) {
  const std::string ks = std::to_string(k);
  switch (family) {
    case RelFamily::R: return "R" + ks;
    case RelFamily::RPlus: return "R" + ks + "+";
    case RelFamily::RMinus: return "R" + ks + "-";
    case RelFamily::RTilde: return "Rt" + ks;
    case RelFamily::RTildePlus: return "Rt" + ks + "+";
    case RelFamily::R2Special: return "R2special";
    case RelFamily::Custom: return "C" + ks;
  }
  return "?";
}

namespace {

std::pair<RelFamily, int> parse_label(const std::string& label) {
  if (label == "R2special") return {RelFamily::R2Special, 2};
  std::string body = label;
  bool tilde = false;
  if (body.rfind("Rt", 0) == 0) {
    tilde = true;
    body = body.substr(2);
  } else if (body.rfind("R", 0) == 0) {
    body = body.substr(1);
  } else {
    return {RelFamily::Custom, 0};
  }
  char suffix = 0;
  if (!body.empty() && (body.back() == '+' || body.back() == '-')) {
    suffix = body.back();
    body.pop_back();
  }
  if (body.empty() || !std::all_of(body.begin(), body.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    return {RelFamily::Custom, 0};
  const int k = std::stoi(body);
  if (tilde) {
    if (suffix == 0) return {RelFamily::RTilde, k};
    if (suffix == '+') return {RelFamily::RTildePlus, k};
    return {RelFamily::Custom, 0};
  }
  if (suffix == 0) return {RelFamily::R, k};
  return {suffix == '+' ? RelFamily::RPlus : RelFamily::RMinus, k};
}

}  // namespace

RelPoly build_relation(RelFamily family, int k, std::size_t n, const Field& field, const Alphabet& alphabet) {
  if (n == 0) throw std::out_of_range("n must be at least 1");
  const Ctx c{field, alphabet, n, field.q()};
  const int nn = static_cast<int>(n);
  RelPoly r{relation_label(family, k), family, k, Poly(field, alphabet.size())};
  switch (family) {
    case RelFamily::R:
      require_k(k, 1, nn, "R_k");
      r.poly = core_sum(c, SymKind::F, SymKind::Fs, k, Twist::None, nn + 1) -
               c.power(SymKind::F, k, 1) * c.power(SymKind::Fs, nn + 1 - k, 1);
      break;
    case RelFamily::RPlus:
      require_k(k, 1, nn, "R_k^+");
      r.poly = core_sum(c, SymKind::F, SymKind::Fs, k, Twist::Plus, nn + 1) -
               c.power(SymKind::F, k, c.q) * c.power(SymKind::Fs, nn + 1 - k, 1);
      break;
    case RelFamily::RMinus:
      require_k(k, 1, nn, "R_k^-");
      r.poly = core_sum(c, SymKind::F, SymKind::Fs, k, Twist::Minus, nn + 1) -
               c.power(SymKind::F, k, 1) * c.power(SymKind::Fs, nn + 1 - k, c.q);
      break;
    case RelFamily::RTilde:
      require_k(k, 1, nn, "Rt_k");
      r.poly = core_sum(c, SymKind::Ft, SymKind::Fts, k, Twist::None, 0).pow(c.q - 1) -
               c.power(SymKind::Ft, k, 1) * c.power(SymKind::Fts, nn + 1 - k, 1);
      break;
    case RelFamily::RTildePlus:
      require_k(k, 1, nn - 1, "Rt_k^+");
      r.poly = core_sum(c, SymKind::Ft, SymKind::Fts, k, Twist::Plus, nn + 1) -
               c.power(SymKind::Ft, k, 1) * core_sum(c, SymKind::Ft, SymKind::Fts, k, Twist::None, nn + 1);
      break;
    case RelFamily::R2Special: {
      if (n != 2) throw std::out_of_range("R2special exists only for n = 2");
      const Poly f1fs1 = c.power(SymKind::F, 1, 1) * c.power(SymKind::Fs, 1, 1);
      r.poly = c.u(0, 1) - f1fs1.pow(c.q - 1) * c.u(0, 0) -
               c.power(SymKind::F, 1, c.q) * c.power(SymKind::Fs, 2, 1) -
               c.power(SymKind::Fs, 1, c.q) * c.power(SymKind::F, 2, 1);
      break;
    }
    case RelFamily::Custom: throw std::out_of_range("custom relations have no builder");
  }
  return r;
}

BidegreeResult abstract_bidegree(const Poly& p, const Alphabet& alphabet) {
  if (p.nvars() != alphabet.size()) throw std::invalid_argument("polynomial does not match alphabet");
  BidegreeResult res;
  if (p.is_zero()) return res;
  bool first = true;
  for (const auto& t : p.terms()) {
    Bidegree b;
    for (std::size_t v = 0; v < alphabet.size(); ++v) {
      if (!t.mono[v]) continue;
      const auto& s = alphabet[v].bidegree;
      b = b + Bidegree{checked_mul(s.d, t.mono[v]), checked_mul(s.e, t.mono[v])};
    }
    if (first) {
      res.kind = BidegreeResult::Kind::Homogeneous;
      res.value = b;
      first = false;
    } else if (b != res.value) {
      res.kind = BidegreeResult::Kind::Mixed;
      res.value = {};
      return res;
    }
  }
  return res;
}

Bidegree expected_relation_bidegree(RelFamily family, int k, std::size_t n, std::uint64_t q) {
  const auto K = static_cast<std::uint64_t>(k);
  const auto N = static_cast<std::uint64_t>(n);
  switch (family) {
    case RelFamily::R: return {qpow(q, K - 1), qpow(q, N - K)};
    case RelFamily::RPlus: return {qpow(q, K), qpow(q, N - K)};
    case RelFamily::RMinus: return {qpow(q, K - 1), qpow(q, N + 1 - K)};
    case RelFamily::RTilde: return {checked_mul(q - 1, qpow(q, K - 1)), checked_mul(q - 1, qpow(q, N - K))};
    case RelFamily::RTildePlus: return {qpow(q, K), qpow(q, N - K)};
    case RelFamily::R2Special: return {q, q};
    case RelFamily::Custom: break;
  }
  throw std::invalid_argument("custom relations have no tabulated bidegree");
}

Presentation build_presentation(const GroupSpec& g) {
  require_presentable(g.kind);
  if (g.n == 0) throw std::invalid_argument("n must be at least 1");
  const std::uint64_t q = g.field.q();
  const int n = static_cast<int>(g.n);
  Presentation p{g, theorem_alphabet(g.kind, g.n, q), {}, false, {}};
  auto add = [&](RelFamily f, int k) { p.relations.push_back(build_relation(f, k, g.n, g.field, p.generators)); };
  if (g.kind == GroupKind::Un) {
    if (n == 1) {
      p.free_case = true;
      p.note = "U_1 is trivial: the ring is free on F1 = x1 and Fs1 = y1, outside the uniform description";
      return p;
    }
    if (n == 2) {
      add(RelFamily::R2Special, 2);
      return p;
    }
    add(RelFamily::RPlus, 1);
    add(RelFamily::R, 2);
    for (int k = 3; k <= n - 1; ++k) {
      add(RelFamily::RMinus, k);
      add(RelFamily::R, k);
    }
    add(RelFamily::RMinus, n);
    return p;
  }
  for (int k = 1; k <= n - 1; ++k) {
    add(RelFamily::RTilde, k);
    add(RelFamily::RTildePlus, k);
  }
  add(RelFamily::RTilde, n);
  return p;
}

// --- verification ----------------------------------------------------------

BiPoly symbol_value(const GenSymbol& s, const InvariantSet& inv) {
  const auto n = static_cast<int>(inv.n());
  auto idx = [&]() -> std::size_t {
    if (s.index < 1 || s.index > n) throw std::out_of_range("symbol " + s.name() + " outside 1..n");
    return static_cast<std::size_t>(s.index - 1);
  };
  switch (s.kind) {
    case SymKind::F: return inv.f[idx()];
    case SymKind::Fs: return inv.fstar[idx()];
    case SymKind::Ft: return inv.ftilde[idx()];
    case SymKind::Fts: return inv.ftildestar[idx()];
    case SymKind::U: {
      auto it = inv.u.find(s.index);
      if (it != inv.u.end()) return it->second;
      return build_u(inv.group.field, inv.n(), s.index);
    }
  }
  throw std::logic_error("unknown symbol kind");
}

BiPoly evaluate(const Poly& abstract, const Alphabet& alphabet, const InvariantSet& inv) {
  if (abstract.nvars() != alphabet.size()) throw std::invalid_argument("polynomial does not match alphabet");
  abstract.field().require_same(inv.group.field);
  std::vector<BiPoly> images;
  images.reserve(alphabet.size());
  for (const auto& s : alphabet.symbols()) {
    bool used = false;
    const auto v = images.size();
    for (const auto& t : abstract.terms())
      if (t.mono[v]) {
        used = true;
        break;
      }
    // unused symbols get a placeholder so out-of-window U's cost nothing
    images.push_back(used ? symbol_value(s, inv) : bi_constant(inv.group.field, inv.n(), 0));
  }
  if (images.empty()) return bi_constant(inv.group.field, inv.n(), abstract.is_zero() ? 0 : abstract.leading().coeff);
  return abstract.substitute(images);
}

bool KernelReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const KernelEntry& e) { return e.pass; });
}

KernelReport verify_kernel(const Presentation& p, const InvariantSet& inv, unsigned jobs) {
  if (inv.n() != p.group.n || inv.group.field != p.group.field)
    throw std::invalid_argument("invariant set does not match the presentation");
  KernelReport rep;
  const std::size_t m = p.relations.size();
  rep.entries.resize(m, KernelEntry{{}, false, bi_constant(p.group.field, p.group.n, 0)});
  auto one = [&](std::size_t i) {
    const auto& r = p.relations[i];
    BiPoly res = evaluate(r.poly, p.generators, inv);
    rep.entries[i] = {r.label, res.is_zero(), std::move(res)};
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(m)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < m; ++i) one(i);
    return rep;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < m; i = next++) one(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rep;
}

// --- elimination structure -------------------------------------------------

bool eliminates(const Poly& rel, const Alphabet& alphabet, std::size_t sym, bool fstar) {
  if (rel.nvars() != alphabet.size() || sym >= alphabet.size()) return false;
  const Term* linear = nullptr;
  for (const auto& t : rel.terms()) {
    const auto e = t.mono[sym];
    if (e > 1) return false;
    if (e == 1) {
      if (linear) return false;  // coefficient is not a single monomial
      linear = &t;
    }
  }
  if (!linear) return false;
  for (std::size_t v = 0; v < alphabet.size(); ++v) {
    if (v == sym || !linear->mono[v]) continue;
    const auto& s = alphabet[v];
    if (fstar ? !s.is_fstar_type() : !s.is_f_type()) return false;
  }
  return true;
}

RelationAnalysis analyze_relation(const Poly& rel, const Alphabet& alphabet) {
  RelationAnalysis a;
  std::vector<bool> used(alphabet.size(), false);
  for (const auto& t : rel.terms())
    for (std::size_t v = 0; v < alphabet.size(); ++v)
      if (t.mono[v]) used[v] = true;
  for (std::size_t v = 0; v < alphabet.size(); ++v) {
    if (!used[v]) continue;
    a.involves.push_back(alphabet[v].name());
    if (eliminates(rel, alphabet, v, false)) a.f_eliminates.push_back(alphabet[v].name());
    if (eliminates(rel, alphabet, v, true)) a.fstar_eliminates.push_back(alphabet[v].name());
  }
  const Term* pure = nullptr;
  std::size_t pure_count = 0;
  for (const auto& t : rel.terms()) {
    bool has_f = false;
    for (std::size_t v = 0; v < alphabet.size() && !has_f; ++v)
      if (t.mono[v] && alphabet[v].kind != SymKind::U) has_f = true;
    if (!has_f) {
      pure = &t;
      ++pure_count;
    }
  }
  if (pure_count == 1) {
    std::optional<std::size_t> only;
    std::size_t nz = 0;
    for (std::size_t v = 0; v < alphabet.size(); ++v)
      if (pure->mono[v]) {
        only = v;
        ++nz;
      }
    if (nz == 1 && alphabet[*only].kind == SymKind::U) a.relation_for = alphabet[*only].index;
  }
  return a;
}

namespace {

std::string sym_name(SymKind k, int i) { return GenSymbol{k, i, {}}.name(); }

void push_range(std::vector<std::string>& out, SymKind k, int lo, int hi) {
  for (int i = lo; i <= hi; ++i) out.push_back(sym_name(k, i));
}

// Rows of the two proof tables.
std::optional<RelationAnalysis> expected_row(RelFamily fam, int k, int n) {
  RelationAnalysis a;
  switch (fam) {
    case RelFamily::RPlus:
      if (k != 1) return std::nullopt;
      push_range(a.involves, SymKind::F, 1, k);
      push_range(a.involves, SymKind::Fs, 1, n + 1 - k);
      push_range(a.involves, SymKind::U, k - n + 1, k);
      a.relation_for = 2 * k - n;
      a.f_eliminates = {sym_name(SymKind::Fs, n + 1 - k)};
      a.fstar_eliminates = {sym_name(SymKind::U, k)};
      return a;
    case RelFamily::R:
      if (k < 2 || k > n - 1) return std::nullopt;
      push_range(a.involves, SymKind::F, 1, k);
      push_range(a.involves, SymKind::Fs, 1, n + 1 - k);
      push_range(a.involves, SymKind::U, k - n, k - 1);
      a.relation_for = 2 * k - n - 1;
      a.f_eliminates = {sym_name(SymKind::Fs, n + 1 - k), sym_name(SymKind::U, k - n)};
      a.fstar_eliminates = {sym_name(SymKind::F, k), sym_name(SymKind::U, k - 1)};
      return a;
    case RelFamily::RMinus:
      if (k < 3 || k > n) return std::nullopt;
      push_range(a.involves, SymKind::F, 1, k);
      push_range(a.involves, SymKind::Fs, 1, n + 1 - k);
      push_range(a.involves, SymKind::U, k - n - 1, k - 2);
      a.relation_for = 2 * k - n - 2;
      a.f_eliminates = {sym_name(SymKind::U, k - n - 1)};
      a.fstar_eliminates = {sym_name(SymKind::F, k)};
      return a;
    case RelFamily::RTilde:
      if (k < 1 || k > n) return std::nullopt;
      push_range(a.involves, SymKind::Ft, 1, k);
      push_range(a.involves, SymKind::Fts, 1, n + 1 - k);
      push_range(a.involves, SymKind::U, k - n, k - 1);
      a.relation_for = 2 * k - n - 1;
      a.f_eliminates = {sym_name(SymKind::Fts, n + 1 - k)};
      a.fstar_eliminates = {sym_name(SymKind::Ft, k)};
      return a;
    case RelFamily::RTildePlus:
      if (k < 1 || k > n - 1) return std::nullopt;
      push_range(a.involves, SymKind::Ft, 1, k);
      push_range(a.involves, SymKind::Fts, 1, n - k);
      push_range(a.involves, SymKind::U, k - n, k);
      a.relation_for = 2 * k - n;
      a.f_eliminates = {sym_name(SymKind::U, k - n)};
      a.fstar_eliminates = {sym_name(SymKind::U, k)};
      return a;
    case RelFamily::R2Special:
      if (n != 2) return std::nullopt;
      a.involves = {"F1", "F2", "Fs1", "Fs2", "U0"};
      a.relation_for = 0;
      a.f_eliminates = {"Fs2"};
      a.fstar_eliminates = {"F2"};
      return a;
    case RelFamily::Custom: break;
  }
  return std::nullopt;
}

bool same_set(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return std::all_of(a.begin(), a.end(), [&](const std::string& s) { return std::find(b.begin(), b.end(), s) != b.end(); });
}

struct ChainPlan {
  std::vector<std::string> base;
  std::vector<std::pair<std::string, std::string>> steps;  // (relation, target)
};

// The two localization orders; `invert_fstar` selects which product is inverted.
ChainPlan chain_plan(GroupKind kind, int n, bool invert_fstar) {
  ChainPlan c;
  auto F = [](int i) { return sym_name(SymKind::F, i); };
  auto Fs = [](int i) { return sym_name(SymKind::Fs, i); };
  auto Ft = [](int i) { return sym_name(SymKind::Ft, i); };
  auto Fts = [](int i) { return sym_name(SymKind::Fts, i); };
  auto U = [](int j) { return sym_name(SymKind::U, j); };
  auto lab = relation_label;
  if (kind == GroupKind::Un) {
    if (n == 2) {
      if (invert_fstar) {
        c.base = {Fs(1), Fs(2), F(1), U(0)};
        c.steps = {{"R2special", F(2)}};
      } else {
        c.base = {F(1), F(2), Fs(1), U(0)};
        c.steps = {{"R2special", Fs(2)}};
      }
      return c;
    }
    if (invert_fstar) {
      for (int i = 1; i <= n; ++i) c.base.push_back(Fs(i));
      c.base.push_back(F(1));
      for (int j = 2 - n; j <= 0; ++j) c.base.push_back(U(j));
      c.steps.push_back({lab(RelFamily::RPlus, 1), U(1)});
      c.steps.push_back({lab(RelFamily::R, 2), F(2)});
      for (int k = 3; k <= n; ++k) {
        c.steps.push_back({lab(RelFamily::RMinus, k), F(k)});
        if (k <= n - 1) c.steps.push_back({lab(RelFamily::R, k), U(k - 1)});
      }
    } else {
      for (int i = 1; i <= n; ++i) c.base.push_back(F(i));
      c.base.push_back(Fs(1));
      for (int j = 0; j <= n - 2; ++j) c.base.push_back(U(j));
      for (int k = n; k >= 3; --k) {
        c.steps.push_back({lab(RelFamily::RMinus, k), U(k - n - 1)});
        c.steps.push_back({lab(RelFamily::R, k - 1), Fs(n + 2 - k)});
      }
      c.steps.push_back({lab(RelFamily::RPlus, 1), Fs(n)});
    }
    return c;
  }
  if (invert_fstar) {
    for (int i = 1; i <= n; ++i) c.base.push_back(Fts(i));
    for (int j = 1 - n; j <= 0; ++j) c.base.push_back(U(j));
    for (int k = 1; k <= n - 1; ++k) {
      c.steps.push_back({lab(RelFamily::RTilde, k), Ft(k)});
      c.steps.push_back({lab(RelFamily::RTildePlus, k), U(k)});
    }
    c.steps.push_back({lab(RelFamily::RTilde, n), Ft(n)});
  } else {
    for (int i = 1; i <= n; ++i) c.base.push_back(Ft(i));
    for (int j = 0; j <= n - 1; ++j) c.base.push_back(U(j));
    c.steps.push_back({lab(RelFamily::RTilde, n), Fts(1)});
    for (int k = n - 1; k >= 1; --k) {
      c.steps.push_back({lab(RelFamily::RTildePlus, k), U(k - n)});
      c.steps.push_back({lab(RelFamily::RTilde, k), Fts(n + 1 - k)});
    }
  }
  return c;
}

std::vector<ChainStep> run_chain(const Presentation& p, bool invert_fstar) {
  const auto plan = chain_plan(p.group.kind, static_cast<int>(p.group.n), invert_fstar);
  std::set<std::string> avail(plan.base.begin(), plan.base.end());
  std::vector<ChainStep> out;
  for (const auto& [label, target] : plan.steps) {
    ChainStep st{label, target, false};
    auto rel = std::find_if(p.relations.begin(), p.relations.end(), [&](const RelPoly& r) { return r.label == label; });
    const auto names = p.generators.names();
    auto tpos = std::find(names.begin(), names.end(), target);
    if (rel != p.relations.end() && tpos != names.end()) {
      const auto sym = static_cast<std::size_t>(tpos - names.begin());
      const auto an = analyze_relation(rel->poly, p.generators);
      const bool rest_ok = std::all_of(an.involves.begin(), an.involves.end(),
                                       [&](const std::string& s) { return s == target || avail.count(s); });
      st.ok = rest_ok && eliminates(rel->poly, p.generators, sym, invert_fstar);
    }
    if (st.ok) avail.insert(target);
    out.push_back(st);
  }
  std::string missing;
  for (const auto& nm : p.generators.names())
    if (!avail.count(nm)) missing += (missing.empty() ? "" : ",") + nm;
  if (!missing.empty()) out.push_back({"(closure)", missing, false});
  return out;
}

}  // namespace

bool StructureReport::all_ok() const {
  auto step_ok = [](const ChainStep& s) { return s.ok; };
  return one_relation_per_u && std::all_of(rows.begin(), rows.end(), [](const StructureRow& r) { return r.ok(); }) &&
         std::all_of(chain_invert_fstar.begin(), chain_invert_fstar.end(), step_ok) &&
         std::all_of(chain_invert_f.begin(), chain_invert_f.end(), step_ok);
}

StructureReport check_elimination_structure(const Presentation& p) {
  StructureReport rep;
  const int n = static_cast<int>(p.group.n);
  std::vector<int> fors;
  for (const auto& r : p.relations) {
    StructureRow row;
    row.label = r.label;
    row.actual = analyze_relation(r.poly, p.generators);
    if (auto exp = expected_row(r.family, r.k, n)) {
      row.expected = *exp;
      row.involves_ok = same_set(row.expected.involves, row.actual.involves);
      row.relation_for_ok = row.expected.relation_for == row.actual.relation_for;
      row.f_elim_ok = subset(row.expected.f_eliminates, row.actual.f_eliminates);
      row.fstar_elim_ok = subset(row.expected.fstar_eliminates, row.actual.fstar_eliminates);
    }
    if (row.actual.relation_for) fors.push_back(*row.actual.relation_for);
    rep.rows.push_back(std::move(row));
  }
  std::vector<int> window;
  for (const auto& s : p.generators.symbols())
    if (s.kind == SymKind::U) window.push_back(s.index);
  std::sort(fors.begin(), fors.end());
  std::sort(window.begin(), window.end());
  rep.one_relation_per_u = fors == window && fors.size() == p.relations.size();
  if (!p.free_case) {
    rep.chain_invert_fstar = run_chain(p, true);
    rep.chain_invert_f = run_chain(p, false);
  }
  return rep;
}

MinimalityReport check_minimality_obstruction(const Presentation& p) {
  MinimalityReport rep;
  for (const auto& r : p.relations) {
    const auto b = abstract_bidegree(r.poly, p.generators);
    if (!b.homogeneous()) continue;
    for (const auto& g : p.generators.symbols())
      if (b.value.dominated_by(g.bidegree)) rep.flags.push_back({g.name(), r.label, g.bidegree, b.value});
  }
  return rep;
}

// --- serialization ---------------------------------------------------------

nlohmann::json to_json(const Presentation& p) {
  using nlohmann::json;
  json j;
  j["group"] = to_string(p.group.kind);
  j["n"] = p.group.n;
  j["q"] = p.group.field.q();
  j["field"] = field_to_json(p.group.field);
  j["free_case"] = p.free_case;
  if (!p.note.empty()) j["note"] = p.note;
  json gens = json::array();
  for (const auto& s : p.generators.symbols())
    gens.push_back({{"name", s.name()}, {"bidegree", {s.bidegree.d, s.bidegree.e}}});
  j["generators"] = gens;
  const auto names = p.generators.names();
  json rels = json::array();
  for (const auto& r : p.relations) {
    json rj;
    rj["label"] = r.label;
    const auto b = abstract_bidegree(r.poly, p.generators);
    if (b.homogeneous()) rj["bidegree"] = {b.value.d, b.value.e};
    json terms = json::array();
    for (const auto& t : r.poly.terms()) {
      json ex = json::object();
      for (std::size_t v = 0; v < names.size(); ++v)
        if (t.mono[v]) ex[names[v]] = t.mono[v];
      terms.push_back({{"exps", ex}, {"coeff", p.group.field.digits(t.coeff)}});
    }
    rj["terms"] = terms;
    rels.push_back(rj);
  }
  j["relations"] = rels;
  return j;
}

Presentation presentation_from_json(const nlohmann::json& j) {
  try {
    const GroupKind kind = parse_group_kind(j.at("group").get<std::string>());
    require_presentable(kind);
    const auto n = j.at("n").get<std::size_t>();
    Field field = j.contains("field") ? Field::create(j["field"].at("p").get<std::uint64_t>(),
                                                      j["field"].at("e").get<unsigned>())
                                      : Field::create(j.at("q").get<std::uint64_t>(), 1);
    if (j.contains("q") && j["q"].get<std::uint64_t>() != field.q())
      throw std::invalid_argument("q does not match the field description");
    if (j.contains("field") && j["field"].contains("modulus") &&
        j["field"]["modulus"].get<std::vector<std::uint64_t>>() != field.modulus())
      throw std::invalid_argument("field modulus differs from the canonical choice");
    std::vector<GenSymbol> syms;
    for (const auto& g : j.at("generators")) syms.push_back(parse_symbol(g.at("name").get<std::string>(), field.q()));
    Presentation p{GroupSpec{kind, n, field}, Alphabet(std::move(syms)), {}, j.value("free_case", false),
                   j.value("note", std::string())};
    const auto names = p.generators.names();
    for (const auto& rj : j.at("relations")) {
      const auto label = rj.at("label").get<std::string>();
      const auto [fam, k] = parse_label(label);
      std::vector<Term> terms;
      for (const auto& tj : rj.at("terms")) {
        Monomial::Exps ex(names.size(), 0);
        for (const auto& [sym, e] : tj.at("exps").items()) {
          auto it = std::find(names.begin(), names.end(), sym);
          if (it == names.end()) throw std::invalid_argument("relation " + label + " uses unknown symbol " + sym);
          ex[static_cast<std::size_t>(it - names.begin())] = e.get<std::uint64_t>();
        }
        const auto digits = tj.at("coeff").get<std::vector<std::uint64_t>>();
        terms.push_back({Monomial(std::move(ex)), field.from_digits(digits)});
      }
      p.relations.push_back({label, fam, k, Poly::from_terms(field, names.size(), std::move(terms))});
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed presentation: ") + e.what());
  }
}

std::string to_text(const Presentation& p) {
  std::ostringstream os;
  const auto names = p.generators.names();
  os << "group " << p.group.name() << "\n";
  if (!p.note.empty()) os << "note " << p.note << "\n";
  os << "generators " << p.generators.size() << "\n";
  for (const auto& s : p.generators.symbols())
    os << "  " << s.name() << " (" << s.bidegree.d << "," << s.bidegree.e << ")\n";
  os << "relations " << p.relations.size() << "\n";
  for (const auto& r : p.relations)
    os << "  " << r.label << " " << abstract_bidegree(r.poly, p.generators).str() << ": " << r.poly.render(names)
       << "\n";
  return os.str();
}

std::string to_cas_script(const Presentation& p) {
  std::ostringstream os;
  const auto names = p.generators.names();
  os << "// " << p.group.name() << ": " << names.size() << " generators, " << p.relations.size() << " relations\n";
  if (p.group.field.is_prime())
    os << "ring R = " << p.group.field.q() << ", (";
  else
    os << "ring R = (" << p.group.field.q() << ",t), (";
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? "," : "") << names[i];
  os << "), dp;\n";
  if (p.relations.empty()) {
    os << "ideal I = 0;\n";
    return os.str();
  }
  os << "ideal I =\n";
  for (std::size_t i = 0; i < p.relations.size(); ++i)
    os << "  " << p.relations[i].poly.render(names) << (i + 1 < p.relations.size() ? ",\n" : ";\n");
  return os.str();
}

Poly star_relation(const Poly& rel, const Alphabet& alphabet) {
  if (rel.nvars() != alphabet.size()) throw std::invalid_argument("polynomial does not match alphabet");
  std::vector<std::size_t> perm(alphabet.size());
  for (std::size_t v = 0; v < alphabet.size(); ++v) {
    const auto& s = alphabet[v];
    perm[v] = alphabet.require(star_kind(s.kind), s.kind == SymKind::U ? -s.index : s.index);
  }
  return rel.permute_variables(perm);
}

}  // namespace invar
