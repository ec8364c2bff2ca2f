#pragma once

// Randomized and exact checks of the determinant identities behind the
// relations, over Z, Z/m (zero divisors allowed) and F_q.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "invar/gf.hpp"
#include "invar/mpoly.hpp"

namespace invar {

using BigInt = boost::multiprecision::cpp_int;

struct ModInt {
  std::uint64_t v = 0;
  std::uint64_t m = 1;
};

/// A value in Z, Z/m or F_q, tagged by its alternative. Arithmetic between
/// different rings throws std::invalid_argument. There is no division.
class RingElem {
 public:
  using Value = std::variant<BigInt, ModInt, Fq>;

  explicit RingElem(Value v) : v_(std::move(v)) {}

  const Value& value() const { return v_; }
  bool is_zero() const;

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  Value v_;
};

enum class RingKind { Integers, IntegersMod, FiniteField };

/// Descriptor used to create elements of one coefficient ring.
class CoeffRing {
 public:
  static CoeffRing integers();
  /// m >= 2.
  static CoeffRing integers_mod(std::uint64_t m);
  static CoeffRing finite_field(const Field& f);

  RingKind kind() const { return kind_; }
  /// "Z", "Z/6", "F_9".
  std::string name() const;

  RingElem zero() const { return from_int(0); }
  RingElem one() const { return from_int(1); }
  RingElem from_int(std::int64_t k) const;
  /// Integers uniform in [-9, 9]; otherwise uniform over the ring.
  RingElem random(std::mt19937_64& rng) const;

 private:
  RingKind kind_ = RingKind::Integers;
  std::uint64_t m_ = 0;
  std::optional<Field> field_;
};

using RingMatrix = std::vector<std::vector<RingElem>>;

/// Division-free determinant; the 0x0 determinant is 1.
RingElem det(const CoeffRing& ring, const RingMatrix& m);

RingMatrix random_matrix(const CoeffRing& ring, std::size_t n, std::mt19937_64& rng);

/// The triple-sum identity: the signed sum over i <= k, j <= n+1-k, l <= n of
/// a_{i,l} b_{j,n+1-l} times complementary minors equals
/// det(a_{k x k}) det(b_{(n+1-k) x (n+1-k)}). 1 <= k <= n.
bool check_det_identity(const CoeffRing& ring, std::size_t n, std::size_t k, const RingMatrix& a, const RingMatrix& b);

/// Cofactor expansion for column l of a: sum_i (-1)^i a_{i,l} M_i equals
/// (-1)^k det(a_{1..k,1..k-1} | a_{.,l}), and that side vanishes for l <= k-1.
bool check_cofactor_a(const CoeffRing& ring, std::size_t n, std::size_t k, std::size_t l, const RingMatrix& a);
/// Mirror statement for b with column n+1-l and m = n+1-k rows; the right
/// side vanishes for l >= k+1.
bool check_cofactor_b(const CoeffRing& ring, std::size_t n, std::size_t k, std::size_t l, const RingMatrix& b);
/// Both lemmas for every l = 1..n.
bool check_cofactor_lemmas(const CoeffRing& ring, std::size_t n, std::size_t k, const RingMatrix& a,
                           const RingMatrix& b);

struct FuzzCase {
  std::string ring;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trials = 0;
  std::size_t det_failures = 0;
  std::size_t cofactor_failures = 0;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  std::size_t trials_per_case = 0;
  std::vector<FuzzCase> cases;
  std::size_t total_trials() const;
  std::size_t total_failures() const;
};

/// Default rings: Z, Z/4, Z/6, F_2, F_9.
std::vector<CoeffRing> default_fuzz_rings();

/// `trials` random instances for every 1 <= k <= n <= max_n and every ring.
/// Each ring draws from its own stream derived from `seed`, so the outcome
/// depends only on (seed, max_n, trials, rings).
FuzzReport fuzz_det_identity(std::uint64_t seed, std::size_t max_n, std::size_t trials,
                             const std::vector<CoeffRing>& rings);

nlohmann::json to_json(const FuzzReport& r);
std::string to_text(const FuzzReport& r);

// --- the polynomial specialization ---------------------------------------

struct SpecializationResult {
  std::size_t n = 0, k = 0;
  std::uint64_t q = 0;
  bool identity_holds = false;
  /// Both sides divided exactly by prod_{j<k} f_j * prod_{j<=n-k} f_j^*.
  bool divisible = false;
};

/// sum (-1)^{i+j+n+1} u_{i-j}^{q^min(i,j)} d_{k-1,i} d*_{n-k,j} = d_{k,k} d*_{n+1-k,n+1-k}.
/// `check_division` also runs the exact-division test.
SpecializationResult check_specialization(const Field& field, std::size_t n, std::size_t k,
                                          bool check_division = false);

/// sum_l x_l^{q^{i-1}} y_l^{q^{j-1}} == u_{i-j}^{q^{min(i-1,j-1)}}, i, j >= 1.
bool check_inner_sum(const Field& field, std::size_t n, std::size_t i, std::size_t j);

/// d_{k,i} == f_1 ... f_k * c_{k,i}.
bool check_dickson_factorization(const Field& field, std::size_t n, std::size_t k, std::size_t i);

/// Exact division f / g under the canonical order; nullopt if a remainder appears.
std::optional<Poly> exact_divide(const Poly& f, const Poly& g);

}  // namespace invar
