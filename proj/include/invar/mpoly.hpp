#pragma once

// Sparse multivariate polynomials over F_q.
//
// Poly is the general container: any number of variables, terms kept
// sorted in the canonical graded-lexicographic order (variable 0 largest),
// highest term first, no zero coefficients. A BiPoly is a Poly in 2n
// variables x_1..x_n, y_1..y_n (in that order) carrying the bigrading
// deg x_i = (1,0), deg y_i = (0,1).

#include <boost/container/small_vector.hpp>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "invar/gf.hpp"

namespace invar {

class Monomial {
 public:
  using Exps = boost::container::small_vector<std::uint64_t, 8>;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(Exps exps);

  std::size_t nvars() const { return exps_.size(); }
  std::uint64_t degree() const { return deg_; }
  std::uint64_t operator[](std::size_t i) const { return exps_[i]; }
  const Exps& exps() const { return exps_; }

  /// Checked product (exponent addition).
  Monomial operator*(const Monomial& o) const;
  /// Every exponent multiplied by k, checked.
  Monomial scaled(std::uint64_t k) const;
  bool divides(const Monomial& o) const;
  /// o / *this; requires divides(o).
  Monomial quotient_of(const Monomial& o) const;
  bool is_one() const { return deg_ == 0; }

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }
  /// Canonical order: graded, then lexicographic with variable 0 largest.
  bool operator<(const Monomial& o) const;

  std::size_t hash() const;

 private:
  Exps exps_;
  std::uint64_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial mono;
  Field::Elem coeff;
};

/// Checked 64-bit helpers; throw std::overflow_error.
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_pow(std::uint64_t base, std::uint64_t k);

class Poly {
 public:
  Poly(Field field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static Poly constant(const Field& field, std::size_t nvars, Field::Elem c);
  static Poly variable(const Field& field, std::size_t nvars, std::size_t index);
  static Poly monomial(const Field& field, Monomial m, Field::Elem c);
  /// Arbitrary term list; duplicates are merged and zeros dropped.
  static Poly from_terms(const Field& field, std::size_t nvars, std::vector<Term> terms);

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Highest term in the canonical order; requires !is_zero().
  const Term& leading() const { return terms_.front(); }
  /// Coefficient of m (zero if absent).
  Field::Elem coeff(const Monomial& m) const;
  /// Total degree of the highest term; 0 for the zero polynomial.
  std::uint64_t total_degree() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(Field::Elem c) const;
  /// Product with a single term.
  Poly times_term(const Monomial& m, Field::Elem c) const;
  /// f^k; uses (sum c m)^p = sum c^p m^p so q-power exponents are cheap.
  Poly pow(std::uint64_t k) const;
  /// f^(p^i), termwise.
  Poly frobenius_power(unsigned i) const;

  /// Ring homomorphism sending variable v to images[v].
  Poly substitute(std::span<const Poly> images) const;
  /// Multiplies the exponents of the variables in [begin, end) by k.
  Poly scale_exponents(std::size_t begin, std::size_t end, std::uint64_t k) const;
  /// Relabels variable v as perm[v] (perm must be a permutation).
  Poly permute_variables(std::span<const std::size_t> perm) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// Canonical text form, e.g. `x1^2*y3 + 2*x2`.
  std::string render(std::span<const std::string> names) const;

 private:
  void require_compatible(const Poly& o) const;
  static Poly from_map_unsorted(const Field& field, std::size_t nvars, std::vector<Term> terms);

  Field field_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Parses the canonical text form back into a Poly; throws std::invalid_argument.
Poly parse_poly(std::string_view text, const Field& field, std::span<const std::string> names);

// ---------------------------------------------------------------------------
// Bigraded polynomials in x_1..x_n, y_1..y_n.

using BiPoly = Poly;

struct Bidegree {
  std::uint64_t d = 0;
  std::uint64_t e = 0;
  bool operator==(const Bidegree&) const = default;
  auto operator<=>(const Bidegree&) const = default;
  Bidegree operator+(const Bidegree& o) const { return {checked_add(d, o.d), checked_add(e, o.e)}; }
  /// Componentwise comparison.
  bool dominated_by(const Bidegree& o) const { return d <= o.d && e <= o.e; }
};

/// Result of asking for the bidegree of a polynomial.
struct BidegreeResult {
  enum class Kind { Homogeneous, Mixed, Zero };
  Kind kind = Kind::Zero;
  Bidegree value;
  bool homogeneous() const { return kind == Kind::Homogeneous; }
  std::string str() const;
};

inline std::size_t bi_n(const Poly& f) { return f.nvars() / 2; }

BiPoly x_var(const Field& field, std::size_t n, std::size_t i);  // 1-based
BiPoly y_var(const Field& field, std::size_t n, std::size_t i);  // 1-based
BiPoly bi_constant(const Field& field, std::size_t n, Field::Elem c);
BidegreeResult bidegree(const BiPoly& f);
Bidegree bidegree_of(const Monomial& m);

/// F: x_i -> x_i^q.
BiPoly frobenius_x(const BiPoly& f);
/// F*: y_i -> y_i^q.
BiPoly frobenius_y(const BiPoly& f);

/// x1..xn, y1..yn.
std::vector<std::string> bi_names(std::size_t n);
std::string render(const BiPoly& f);
BiPoly parse_bipoly(std::string_view text, const Field& field, std::size_t n);

/// [{"xexp": [...], "yexp": [...], "coeff": [...]}, ...]
nlohmann::json to_json(const BiPoly& f);
BiPoly bipoly_from_json(const nlohmann::json& j, const Field& field, std::size_t n);
nlohmann::json field_to_json(const Field& field);

/// All monomials of bidegree (d, e) in 2n variables, canonical order (highest first).
std::vector<Monomial> monomial_basis(std::size_t n, Bidegree b);

}  // namespace invar
