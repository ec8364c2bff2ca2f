#include "invar/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "invar/errors.hpp"
#include "invar/invgen.hpp"
#include "invar/presentation.hpp"

namespace invar {

OracleLimits OracleLimits::from_env() {
  OracleLimits l;
  if (const char* v = std::getenv("INVAR_MAX_COLUMNS")) {
    const std::string s = v;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 18)
      throw std::invalid_argument("INVAR_MAX_COLUMNS must be a positive integer, got '" + s + "'");
    const auto n = std::stoull(s);
    if (n == 0) throw std::invalid_argument("INVAR_MAX_COLUMNS must be positive");
    l.max_columns = static_cast<std::size_t>(n);
  }
  return l;
}

std::size_t default_oracle_cutoff(std::size_t n) { return n <= 3 ? 12 : 8; }

RowEchelon::RowEchelon(Field field, std::size_t width) : field_(std::move(field)), width_(width), pivots_(width) {}

bool RowEchelon::insert(std::vector<Field::Elem>& row) {
  if (row.size() != width_) throw std::invalid_argument("row width mismatch");
  const auto& F = field_;
  for (std::size_t c = 0; c < width_; ++c) {
    if (row[c] == 0) continue;
    const auto& piv = pivots_[c];
    if (!piv.empty()) {
      const auto f = row[c];
      for (const auto& [col, val] : piv) row[col] = F.sub(row[col], F.mul(f, val));
      continue;
    }
    const auto s = F.inv(row[c]);
    auto& dst = pivots_[c];
    for (std::size_t k = c; k < width_; ++k)
      if (row[k]) dst.emplace_back(k, F.mul(row[k], s));
    ++rank_;
    return true;
  }
  return false;
}

namespace {

using MonoIndex = std::unordered_map<Monomial, std::size_t, MonomialHash>;

MonoIndex index_basis(const std::vector<Monomial>& basis) {
  MonoIndex idx;
  idx.reserve(basis.size() * 2);
  for (std::size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], i);
  return idx;
}

void check_columns(std::size_t n, const OracleLimits& limits, Bidegree b) {
  if (n > limits.max_columns)
    throw ResourceLimit("bidegree (" + std::to_string(b.d) + "," + std::to_string(b.e) + ") needs " +
                        std::to_string(n) + " columns, bound is " + std::to_string(limits.max_columns) +
                        " (INVAR_MAX_COLUMNS)");
}

// Powers of the substitution images, filled on demand.
class PowerCache {
 public:
  explicit PowerCache(std::vector<BiPoly> images) : images_(std::move(images)), cache_(images_.size()) {}

  const BiPoly& get(std::size_t v, std::uint64_t e) {
    auto& m = cache_[v];
    auto it = m.find(e);
    if (it == m.end()) it = m.emplace(e, images_[v].pow(e)).first;
    return it->second;
  }

  BiPoly image(const Monomial& mono, const Field& F, std::size_t nvars) {
    BiPoly out = Poly::constant(F, nvars, 1);
    for (std::size_t v = 0; v < mono.nvars(); ++v)
      if (mono[v]) out = out * get(v, mono[v]);
    return out;
  }

 private:
  std::vector<BiPoly> images_;
  std::vector<std::map<std::uint64_t, BiPoly>> cache_;
};

}  // namespace

std::uint64_t invariant_dim(const GroupSpec& g, Bidegree b, const OracleLimits& limits) {
  const std::size_t n = g.n;
  const auto basis = monomial_basis(n, b);
  const std::size_t N = basis.size();
  check_columns(N, limits, b);
  if (N == 0) return 0;
  const auto idx = index_basis(basis);
  const auto gens = generators(g);
  std::vector<PowerCache> caches;
  for (const auto& s : gens) caches.emplace_back(act_images(s));
  const std::size_t G = gens.size();
  RowEchelon re(g.field, G * N);
  std::vector<Field::Elem> row(G * N);
  for (std::size_t j = 0; j < N; ++j) {
    std::fill(row.begin(), row.end(), 0);
    for (std::size_t s = 0; s < G; ++s) {
      const BiPoly img = caches[s].image(basis[j], g.field, 2 * n);
      const std::size_t off = s * N;
      for (const auto& t : img.terms()) row[off + idx.at(t.mono)] = t.coeff;
      row[off + j] = g.field.sub(row[off + j], 1);
    }
    re.insert(row);
  }
  return N - re.rank();
}

std::uint64_t subalgebra_dim(const std::vector<BiPoly>& gens, Bidegree b, const OracleLimits& limits,
                             std::optional<std::uint64_t> stop_at) {
  if (gens.empty()) return b == Bidegree{0, 0} ? 1 : 0;
  const Field& F = gens.front().field();
  const std::size_t nv = gens.front().nvars();
  const std::size_t n = nv / 2;
  std::vector<Bidegree> degs;
  for (const auto& g : gens) {
    F.require_same(g.field());
    if (g.nvars() != nv) throw std::invalid_argument("generators live in different rings");
    const auto bd = bidegree(g);
    if (!bd.homogeneous()) throw std::invalid_argument("generator is not bihomogeneous");
    if (bd.value == Bidegree{0, 0}) throw std::invalid_argument("constant generator");
    degs.push_back(bd.value);
  }
  const auto basis = monomial_basis(n, b);
  const std::size_t N = basis.size();
  check_columns(N, limits, b);
  if (stop_at && *stop_at == 0) return 0;
  const auto idx = index_basis(basis);
  const std::size_t k = gens.size();
  const std::size_t W = b.e + 1;
  // feasible[i][d*W+e]: generators i..k-1 can fill (d, e) exactly
  std::vector<std::vector<char>> feasible(k + 1, std::vector<char>((b.d + 1) * W, 0));
  feasible[k][0] = 1;
  for (std::size_t i = k; i-- > 0;)
    for (std::uint64_t d = 0; d <= b.d; ++d)
      for (std::uint64_t e = 0; e <= b.e; ++e) {
        char ok = 0;
        for (std::uint64_t m = 0; !ok; ++m) {
          const std::uint64_t md = m * degs[i].d, me = m * degs[i].e;
          if (md > d || me > e) break;
          ok = feasible[i + 1][(d - md) * W + (e - me)];
        }
        feasible[i][d * W + e] = ok;
      }
  if (!feasible[0][b.d * W + b.e]) return 0;

  std::vector<std::map<std::uint64_t, BiPoly>> powers(k);
  auto power = [&](std::size_t i, std::uint64_t m) -> const BiPoly& {
    auto it = powers[i].find(m);
    if (it == powers[i].end()) it = powers[i].emplace(m, gens[i].pow(m)).first;
    return it->second;
  };
  RowEchelon re(F, N);
  std::vector<Field::Elem> row(N);
  std::size_t tuples = 0;
  bool done = false;
  auto dfs = [&](auto&& self, std::size_t i, std::uint64_t d, std::uint64_t e, const BiPoly& prefix) -> void {
    if (done) return;
    if (i == k) {
      if (++tuples > limits.max_tuples)
        throw ResourceLimit("more than " + std::to_string(limits.max_tuples) + " exponent tuples");
      std::fill(row.begin(), row.end(), 0);
      for (const auto& t : prefix.terms()) row[idx.at(t.mono)] = t.coeff;
      re.insert(row);
      if (stop_at && re.rank() >= *stop_at) done = true;
      return;
    }
    for (std::uint64_t m = 0;; ++m) {
      const std::uint64_t md = m * degs[i].d, me = m * degs[i].e;
      if (md > d || me > e) break;
      if (!feasible[i + 1][(d - md) * W + (e - me)]) continue;
      if (m == 0)
        self(self, i + 1, d, e, prefix);
      else
        self(self, i + 1, d - md, e - me, prefix * power(i, m));
      if (done) return;
    }
  };
  dfs(dfs, 0, b.d, b.e, Poly::constant(F, nv, 1));
  return re.rank();
}

std::vector<Bidegree> cells_up_to(std::size_t cutoff) {
  std::vector<Bidegree> out;
  for (std::uint64_t t = 0; t <= cutoff; ++t)
    for (std::uint64_t d = 0; d <= t; ++d) out.push_back({d, t - d});
  return out;
}

std::string DimTable::to_csv() const {
  std::ostringstream os;
  os << "d,e,dim\n";
  for (const auto& b : cells_up_to(cutoff)) {
    auto it = dims.find({b.d, b.e});
    if (it != dims.end()) os << b.d << "," << b.e << "," << it->second << "\n";
  }
  return os.str();
}

nlohmann::json DimTable::to_json() const {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& b : cells_up_to(cutoff)) {
    auto it = dims.find({b.d, b.e});
    if (it != dims.end()) cells.push_back({{"d", b.d}, {"e", b.e}, {"dim", it->second}});
  }
  return {{"group", group}, {"n", n}, {"q", q}, {"cutoff", cutoff}, {"cells", cells}};
}

namespace {

// Runs f(i) for i in [0, count) on up to `jobs` threads. The first exception
// (by index) is rethrown after all workers finish.
template <class F>
void parallel_cells(std::size_t count, unsigned jobs, F f) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string cell_name(Bidegree b) { return "(" + std::to_string(b.d) + "," + std::to_string(b.e) + ")"; }

}  // namespace

DimTable invariant_dims(const GroupSpec& g, std::size_t cutoff, const OracleLimits& limits, const Progress& progress,
                        unsigned jobs) {
  DimTable t{to_string(g.kind), g.n, g.field.q(), cutoff, {}};
  const auto cells = cells_up_to(cutoff);
  std::vector<std::uint64_t> dims(cells.size());
  std::mutex mu;
  parallel_cells(cells.size(), jobs, [&](std::size_t i) {
    dims[i] = invariant_dim(g, cells[i], limits);
    if (progress) {
      std::lock_guard lock(mu);
      progress("dims " + cell_name(cells[i]) + " = " + std::to_string(dims[i]));
    }
  });
  for (std::size_t i = 0; i < cells.size(); ++i) t.dims[{cells[i].d, cells[i].e}] = dims[i];
  return t;
}

bool GenerationReport::pass() const {
  return std::all_of(cells.begin(), cells.end(), [](const GenerationCell& c) { return c.pass(); });
}

std::optional<Bidegree> GenerationReport::first_deficit() const {
  for (const auto& c : cells)
    if (!c.pass()) return c.b;
  return std::nullopt;
}

nlohmann::json GenerationReport::to_json() const {
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& c : cells)
    cj.push_back({{"d", c.b.d},
                  {"e", c.b.e},
                  {"invariant_dim", c.invariant},
                  {"subalgebra_dim", c.subalgebra},
                  {"pass", c.pass()}});
  nlohmann::json j = {{"group", group}, {"cutoff", cutoff}, {"pass", pass()}, {"cells", cj}};
  if (auto f = first_deficit()) j["first_deficit"] = {f->d, f->e};
  return j;
}

std::string GenerationReport::to_text() const {
  std::ostringstream os;
  os << "generation check for " << group << " up to total degree " << cutoff << "\n";
  for (const auto& c : cells)
    if (!c.pass())
      os << "  (" << c.b.d << "," << c.b.e << "): invariants " << c.invariant << ", subalgebra " << c.subalgebra
         << "  FAIL\n";
  os << (pass() ? "PASS" : "FAIL") << " (" << cells.size() << " bidegrees)\n";
  return os.str();
}

GenerationReport check_generation(const GroupSpec& g, const std::vector<BiPoly>& gens, std::size_t cutoff,
                                  const OracleLimits& limits, const Progress& progress, bool y_degree_zero,
                                  unsigned jobs) {
  GenerationReport rep{g.name(), cutoff, {}};
  for (const auto& b : cells_up_to(cutoff))
    if (!y_degree_zero || b.e == 0) rep.cells.push_back({b, 0, 0});
  std::mutex mu;
  parallel_cells(rep.cells.size(), jobs, [&](std::size_t i) {
    auto& c = rep.cells[i];
    c.invariant = invariant_dim(g, c.b, limits);
    c.subalgebra = subalgebra_dim(gens, c.b, limits, c.invariant);
    if (progress) {
      std::lock_guard lock(mu);
      progress("generation " + cell_name(c.b) + ": " + std::to_string(c.subalgebra) + "/" +
               std::to_string(c.invariant));
    }
  });
  return rep;
}

std::vector<BiPoly> theorem_generators(const GroupSpec& g) {
  const auto p = build_presentation(g);
  const auto inv = build_invariants(g);
  std::vector<BiPoly> out;
  for (const auto& s : p.generators.symbols()) out.push_back(symbol_value(s, inv));
  return out;
}

std::vector<BiPoly> conjecture_generators(const Field& field, std::size_t n) {
  std::vector<BiPoly> out;
  for (std::size_t t = 0; t < n; ++t) out.push_back(build_dickson(field, n, n, t));
  for (std::size_t t = 0; t < n; ++t) out.push_back(build_dickson_star(field, n, n, t));
  const int w = static_cast<int>(n) - 1;
  for (int j = -w; j <= w; ++j) out.push_back(build_u(field, n, j));
  return out;
}

bool Sl2Report::as_expected() const {
  return f1_invariant && f2_invariant && vector_invariants_generated && orbit_size == 6 && contains_negative &&
         negated_product_invariant && first_deficit == Bidegree{3, 3} && deficit_at_first == 1;
}

nlohmann::json Sl2Report::to_json() const {
  nlohmann::json j = {{"f1_invariant", f1_invariant},
                      {"f2_invariant", f2_invariant},
                      {"vector_invariants_generated", vector_invariants_generated},
                      {"orbit_size", orbit_size},
                      {"orbit_contains_negative", contains_negative},
                      {"negated_orbit_product_invariant", negated_product_invariant},
                      {"orbit_product_bidegree", {product_bidegree.d, product_bidegree.e}},
                      {"deficit_at_first", deficit_at_first},
                      {"as_expected", as_expected()},
                      {"generation", generation.to_json()}};
  if (first_deficit) j["first_deficit"] = {first_deficit->d, first_deficit->e};
  return j;
}

std::string Sl2Report::to_text() const {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "SL_2(F_3), h = x1*y2 - x2*y1\n";
  os << "  f1, f2 invariant: " << yn(f1_invariant && f2_invariant) << "\n";
  os << "  F_3[V]^G generated by f1, f2: " << yn(vector_invariants_generated) << "\n";
  os << "  orbit of h: size " << orbit_size << ", contains -h: " << yn(contains_negative) << "\n";
  os << "  -(orbit product) invariant: " << yn(negated_product_invariant) << ", bidegree (" << product_bidegree.d
     << "," << product_bidegree.e << ")\n";
  if (first_deficit)
    os << "  first deficit at (" << first_deficit->d << "," << first_deficit->e << "), missing " << deficit_at_first
       << "\n";
  else
    os << "  no deficit up to total degree " << generation.cutoff << "\n";
  os << (as_expected() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

Sl2Report sl2_counterexample_report(std::size_t cutoff, const OracleLimits& limits, const Progress& progress) {
  const Field F = Field::create(3);
  const GroupSpec g{GroupKind::SLn, 2, F};
  const BiPoly f1 = parse_bipoly("x1^3*x2 + 2*x1*x2^3", F, 2);
  const BiPoly f2 = parse_bipoly("x1^6 + x1^4*x2^2 + x1^2*x2^4 + x2^6", F, 2);
  const BiPoly h = parse_bipoly("x1*y2 + 2*x2*y1", F, 2);
  Sl2Report r;
  const auto gens = generators(g);
  auto fixed = [&](const BiPoly& f) {
    return std::all_of(gens.begin(), gens.end(), [&](const Matrix& s) { return act(s, f) == f; });
  };
  r.f1_invariant = fixed(f1);
  r.f2_invariant = fixed(f2);
  r.vector_invariants_generated =
      check_generation(g, {f1, f2}, std::max<std::size_t>(cutoff, 12), limits, {}, true).pass();
  const auto orb = orbit(g, h);
  r.orbit_size = orb.size();
  const BiPoly neg = -h;
  r.contains_negative = std::any_of(orb.begin(), orb.end(), [&](const BiPoly& o) { return o == neg; });
  BiPoly prod = bi_constant(F, 2, 1);
  for (const auto& o : orb) prod *= o;
  r.negated_product_invariant = fixed(-prod);
  const auto bd = bidegree(prod);
  if (bd.homogeneous()) r.product_bidegree = bd.value;
  std::vector<BiPoly> cand = {f1, f2, star(f1), star(f2), build_u(F, 2, -1), build_u(F, 2, 0), build_u(F, 2, 1)};
  r.generation = check_generation(g, cand, cutoff, limits, progress);
  r.first_deficit = r.generation.first_deficit();
  if (r.first_deficit)
    for (const auto& c : r.generation.cells)
      if (c.b == *r.first_deficit) r.deficit_at_first = c.invariant - c.subalgebra;
  return r;
}

}  // namespace invar
