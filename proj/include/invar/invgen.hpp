#pragma once

// Concrete invariants in F_q[x_1..x_n, y_1..y_n]: the pairings u_j, the
// orbit products f_i and their (q-1)st powers, the Dickson polynomials
// c_{s,t}, and the Moore-type determinants d_{k,i}.

#include <cstddef>
#include <map>
#include <vector>

#include "invar/groups.hpp"
#include "invar/mpoly.hpp"

namespace invar {

/// u_j = sum_k x_k^{q^j} y_k for j >= 0, sum_k x_k y_k^{q^{-j}} for j < 0.
BiPoly build_u(const Field& field, std::size_t n, int j);

/// f_i = prod over a in F_q^{i-1} of (x_i + sum_{j<i} a_j x_j).
BiPoly build_f(const Field& field, std::size_t n, std::size_t i);
BiPoly build_fstar(const Field& field, std::size_t n, std::size_t i);
/// f_i^{q-1}
BiPoly build_ftilde(const Field& field, std::size_t n, std::size_t i);
BiPoly build_ftildestar(const Field& field, std::size_t n, std::size_t i);

/// c_{s,t} in x_1..x_s (0 <= t <= s <= n); c_{s,s} = 1.
BiPoly build_dickson(const Field& field, std::size_t n, std::size_t s, std::size_t t);
BiPoly build_dickson_star(const Field& field, std::size_t n, std::size_t s, std::size_t t);

/// d_{k,i}: determinant of rows x_j^{q^m}, m = 0..k, m != i, columns j = 1..k.
/// d_{0,0} = 1. Cofactor expansion, k <= 5.
BiPoly build_det_d(const Field& field, std::size_t n, std::size_t k, std::size_t i);

/// Increasing index tuples 1 <= j_1 < .. < j_len <= s.
std::vector<std::vector<std::size_t>> increasing_tuples(std::size_t s, std::size_t len);

struct InvariantSet {
  GroupSpec group;
  std::vector<BiPoly> f, fstar, ftilde, ftildestar;  // index i-1
  std::map<int, BiPoly> u;                            // j in [-(n-1), n-1]

  std::size_t n() const { return group.n; }
  std::uint64_t q() const { return group.field.q(); }
};

/// Everything above for one group, u over the window [-(n-1), n-1].
InvariantSet build_invariants(const GroupSpec& g);

}  // namespace invar
