#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gwasym/error.hpp"
#include "gwasym/numerics/big_real.hpp"

namespace gwasym {

/// Solves the dense square system A x = y by Gaussian elimination with partial
/// pivoting. A is row-major and consumed.
inline std::vector<BigReal> solve_dense(std::vector<std::vector<BigReal>> a, std::vector<BigReal> y) {
  const std::size_t n = y.size();
  if (a.size() != n) throw Error(ErrorCode::domain_error, "solve_dense: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (abs(a[row][col]) > abs(a[pivot][col])) pivot = row;
    if (a[pivot][col].is_zero()) throw Error(ErrorCode::degenerate_window, "singular linear system");
    std::swap(a[pivot], a[col]);
    std::swap(y[pivot], y[col]);
    for (std::size_t row = col + 1; row < n; ++row) {
      BigReal factor = a[row][col] / a[col][col];
      if (factor.is_zero()) continue;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
      y[row] -= factor * y[col];
    }
  }
  std::vector<BigReal> x(n);
  for (std::size_t i = n; i-- > 0;) {
    BigReal acc = y[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace gwasym
