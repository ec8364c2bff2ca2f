#pragma once

// The groups U_n, B_n, SL_n, GL_n over F_q and their action on
// F_q[V + V*] = F_q[x_1..x_n, y_1..y_n].

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "invar/gf.hpp"
#include "invar/mpoly.hpp"

namespace invar {

/// Dense n x n matrix over F_q, row-major.
class Matrix {
 public:
  Matrix(Field field, std::size_t n);
  Matrix(Field field, std::size_t n, std::vector<Field::Elem> entries);

  static Matrix identity(const Field& field, std::size_t n);
  /// I + c * E_{i,j}, 1-based.
  static Matrix transvection(const Field& field, std::size_t n, std::size_t i, std::size_t j, Field::Elem c);
  /// Identity with entry (i,i) replaced by c, 1-based.
  static Matrix diagonal_unit(const Field& field, std::size_t n, std::size_t i, Field::Elem c);

  const Field& field() const { return field_; }
  std::size_t n() const { return n_; }
  /// 1-based access.
  Field::Elem operator()(std::size_t i, std::size_t j) const { return a_[(i - 1) * n_ + (j - 1)]; }
  Field::Elem& at(std::size_t i, std::size_t j) { return a_[(i - 1) * n_ + (j - 1)]; }
  const std::vector<Field::Elem>& entries() const { return a_; }

  Matrix operator*(const Matrix& o) const;
  Matrix transpose() const;
  /// Gauss-Jordan; throws std::domain_error if singular.
  Matrix inverse() const;
  Field::Elem det() const;

  bool operator==(const Matrix& o) const { return field_ == o.field_ && n_ == o.n_ && a_ == o.a_; }
  bool operator<(const Matrix& o) const { return a_ < o.a_; }

  nlohmann::json to_json() const;

 private:
  Field field_;
  std::size_t n_;
  std::vector<Field::Elem> a_;
};

enum class GroupKind { Un, Bn, SLn, GLn };

std::string to_string(GroupKind k);
/// Accepts un, bn, sln, gln (any case).
GroupKind parse_group_kind(const std::string& s);

struct GroupSpec {
  GroupKind kind;
  std::size_t n;
  Field field;

  std::string name() const;
};

/// Finite generating set (transvections over an F_p-basis, plus diagonal
/// matrices with the primitive element where the group needs them).
std::vector<Matrix> generators(const GroupSpec& g);

/// Whole group by closure under generators; throws ResourceLimit past max_size.
std::vector<Matrix> enumerate_group(const GroupSpec& g, std::size_t max_size = 200000);

/// Induced action on F_q[V + V*]: x_j -> sum_i s_{ij} x_i and
/// y_j -> sum_i (s^{-1})_{ji} y_i, a left action.
BiPoly act(const Matrix& s, const BiPoly& f);

/// Same action with the substitution images precomputed (see act_images).
std::vector<BiPoly> act_images(const Matrix& s);

/// The involution x_i <-> y_{n+1-i}.
BiPoly star(const BiPoly& f);
/// J (s^{-1})^T J with J the antidiagonal permutation.
Matrix star_mat(const Matrix& s);

/// Membership test for the named group.
bool in_group(const GroupSpec& g, const Matrix& s);

/// {s.f : s in G} by breadth-first closure under generators, in discovery
/// order. Throws ResourceLimit once more than max_size elements appear.
std::vector<BiPoly> orbit(const GroupSpec& g, const BiPoly& f, std::size_t max_size = 100000);

/// Product of all orbit elements.
BiPoly orbit_product(const GroupSpec& g, const BiPoly& f, std::size_t max_size = 100000);

}  // namespace invar
