#pragma once

// Finite fields F_q, q = p^e, with elements stored as polynomials in a
// fixed root t of the modulus.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace invar {

/// Raised when two values from different fields meet in one operation.
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Fq;

/// Shared, immutable description of F_q.
///
/// An element is encoded as a single integer in [0, q): the residues
/// c_0 .. c_{e-1} of its polynomial representative read as base-p digits,
/// c_0 least significant. The encoding is what polynomials store
/// internally; the public element type is Fq.
class Field {
 public:
  using Elem = std::uint64_t;

  /// Builds F_{p^e} using the lexicographically smallest monic irreducible
  /// modulus of degree e (coefficient lists compared c_0 first).
  static Field create(std::uint64_t p, unsigned e = 1);

  std::uint64_t p() const { return data_->p; }
  unsigned e() const { return data_->e; }
  std::uint64_t q() const { return data_->q; }
  bool is_prime() const { return data_->e == 1; }
  /// Monic modulus, coefficients low-to-high, length e + 1.
  const std::vector<std::uint64_t>& modulus() const { return data_->modulus; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t k) const;
  /// a^p.
  Elem frobenius(Elem a) const;
  /// Image of the integer k under Z -> F_p -> F_q.
  Elem from_int(std::int64_t k) const;

  /// Residues c_0 .. c_{e-1}.
  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_digits(const std::vector<std::uint64_t>& c) const;

  /// Lexicographically smallest generator of the multiplicative group.
  Elem primitive() const { return data_->primitive; }
  /// Basis 1, t, .., t^{e-1} of F_q over F_p, as encodings.
  std::vector<Elem> prime_basis() const;
  /// All q elements in lexicographic order of their digit lists.
  std::vector<Elem> elements() const;
  /// True if a precedes b comparing digit lists c_0 first.
  bool lex_less(Elem a, Elem b) const;

  Fq element(Elem v) const;

  /// `3` for prime fields, `(c0+c1*t)` for extensions.
  std::string render(Elem a) const;

  bool operator==(const Field& o) const;
  bool operator!=(const Field& o) const { return !(*this == o); }

  /// Throws FieldMismatch unless *this == o.
  void require_same(const Field& o) const;

 private:
  struct Data {
    std::uint64_t p = 0;
    unsigned e = 0;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
    Elem primitive = 0;
  };
  explicit Field(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// A field element bundled with its field.
class Fq {
 public:
  Fq(Field f, Field::Elem v);

  const Field& field() const { return field_; }
  Field::Elem value() const { return v_; }
  std::vector<std::uint64_t> coeffs() const { return field_.digits(v_); }
  bool is_zero() const { return v_ == 0; }

  Fq operator+(const Fq& o) const;
  Fq operator-(const Fq& o) const;
  Fq operator*(const Fq& o) const;
  Fq operator-() const { return {field_, field_.neg(v_)}; }
  Fq inv() const;
  Fq pow(std::uint64_t k) const { return {field_, field_.pow(v_, k)}; }
  Fq frobenius() const { return {field_, field_.frobenius(v_)}; }

  bool operator==(const Fq& o) const;
  bool operator!=(const Fq& o) const { return !(*this == o); }

  std::string str() const { return field_.render(v_); }

 private:
  Field field_;
  Field::Elem v_;
};

bool is_prime(std::uint64_t n);

}  // namespace invar
