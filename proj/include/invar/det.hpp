#pragma once

// Division-free determinant by Laplace expansion, memoized over column
// subsets: O(2^n * n) ring multiplications, valid over any commutative ring.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace invar {

/// Determinant of a square matrix of ring elements. T needs +, -, * and a
/// value `one`; the empty matrix has determinant `one`.
template <class T>
T laplace_det(const std::vector<std::vector<T>>& m, const T& one) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return one;
  if (n > 24) throw std::invalid_argument("laplace_det limited to n <= 24");
  // minors[S] = det of rows 0..|S|-1 restricted to the columns in S.
  std::vector<T> minors(std::size_t{1} << n, one);
  for (std::size_t size = 1; size <= n; ++size) {
    for (std::size_t s = 1; s < minors.size(); ++s) {
      if (static_cast<std::size_t>(__builtin_popcountll(s)) != size) continue;
      const std::size_t row = size - 1;
      bool have = false;
      T acc = one;
      std::size_t idx = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(s >> c & 1)) continue;
        T term = m[row][c] * minors[s & ~(std::size_t{1} << c)];
        const bool negative = ((row + idx) & 1) != 0;
        if (!have) {
          acc = negative ? (one - one) - term : term;
          have = true;
        } else {
          acc = negative ? acc - term : acc + term;
        }
        ++idx;
      }
      minors[s] = acc;
    }
  }
  return minors.back();
}

}  // namespace invar
