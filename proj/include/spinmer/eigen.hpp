#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "format.hpp"
#include "matrix.hpp"

namespace spinmer {

struct EigenDecomposition {
  std::vector<double> values;  ///< ascending
  Matrix vectors;              ///< column k pairs with values[k]
};

/// Dense real-symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// The input is symmetrized as (A + A^T)/2; asymmetry above 1e-8 raises
/// NotSymmetric. Eigenvalues are returned ascending. Each eigenvector is
/// signed so that its largest-magnitude entry (first index on ties) is
/// positive. Degenerate subspaces are returned as the rotations leave them.
inline EigenDecomposition eigh(const Matrix& input) {
  const std::size_t n = input.rows();
  if (input.cols() != n) throw ModelError(ErrorCode::NotSymmetric, "matrix is not square");
  if (const double asym = asymmetry(input); asym > 1e-8)
    throw ModelError(ErrorCode::NotSymmetric, "asymmetry " + format_double(asym) + " exceeds 1e-8");

  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
  Matrix v = Matrix::identity(n);

  double frob2 = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) frob2 += a(i, j) * a(i, j);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off2 = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off2 += a(p, q) * a(p, q);
    if (off2 == 0.0 || off2 <= 1e-34 * frob2) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out{std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src);
    std::size_t big = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(big, src))) big = i;
    const double sign = v(big, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
  }
  return out;
}

}  // namespace spinmer
