#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "eigen.hpp"
#include "hamiltonian.hpp"
#include "spin.hpp"

namespace spinmer {

inline constexpr double kDegeneracyGap = 1e-10;

/// Rotates eigenvectors inside each degenerate cluster (consecutive
/// eigenvalues closer than `gap`) so that they diagonalize S^2, then S_M^2,
/// then S_L^2. The operators commute pairwise, so the combined key below
/// orders the cluster by (S, S_M, S_L).
inline void resolve_degeneracies(EigenDecomposition& eig, const Matrix& s2, const Matrix& sm2, const Matrix& sl2,
                                 double gap = kDegeneracyGap) {
  const std::size_t n = eig.values.size();
  const Matrix key = 100.0 * s2 + 10.0 * sm2 + sl2;
  for (std::size_t begin = 0; begin < n;) {
    std::size_t end = begin + 1;
    while (end < n && eig.values[end] - eig.values[end - 1] < gap) ++end;
    const std::size_t k = end - begin;
    if (k > 1) {
      Matrix block(n, k);
      for (std::size_t c = 0; c < k; ++c) block.set_column(c, eig.vectors.column(begin + c));
      const Matrix projected = block.transpose() * key * block;
      const EigenDecomposition sub = eigh(projected);
      const Matrix rotated = block * sub.vectors;
      for (std::size_t c = 0; c < k; ++c) {
        std::vector<double> col = rotated.column(c);
        std::size_t big = 0;
        for (std::size_t i = 1; i < n; ++i)
          if (std::abs(col[i]) > std::abs(col[big])) big = i;
        if (col[big] < 0.0)
          for (double& x : col) x = -x;
        eig.vectors.set_column(begin + c, col);
      }
    }
    begin = end;
  }
}

/// Eigenstates of H0 with local-spin weights.
struct ModelSpectrum {
  HamiltonianBlock h0;
  EigenDecomposition eig;
  WeightTable weights;  ///< one row per eigenstate, ascending energy

  std::vector<double> state(std::size_t k) const { return eig.vectors.column(k); }
};

inline ModelSpectrum analyze_h0(const ModelParams& p) {
  static const std::vector<SpinCoupledState> basis = coupled_basis();
  static const ConfigSpace neutral = enumerate_space(SpaceKind::Neutral);
  static const Matrix s2 = s2_matrix(neutral);
  static const Matrix sm2 = metal_s2_matrix(neutral);
  static const Matrix sl2 = ligand_s2_matrix(neutral);

  ModelSpectrum out{build_h0(p), {}, {}};
  out.eig = eigh(out.h0.matrix);
  resolve_degeneracies(out.eig, s2, sm2, sl2);
  for (std::size_t k = 0; k < out.eig.values.size(); ++k) {
    const auto v = out.eig.vectors.column(k);
    WeightRow row = decompose(v, basis, out.eig.values[k]);
    row.s_total = spin_from_s2(dot(v, s2 * v));
    out.weights.push_back(row);
  }
  return out;
}

/// Indices of eigenstates with total spin `s`, ascending energy.
inline std::vector<std::size_t> states_with_spin(const WeightTable& rows, int s) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < rows.size(); ++k)
    if (rows[k].s_total == s) idx.push_back(k);
  return idx;
}

/// The second lowest lying triplet, whose S_M mixture `tables` reports.
///
/// Without a pure |1,1,0> triplet this is the middle of the three S = 1
/// states by energy (ties broken by the larger w_111). When one triplet is a
/// pure |1,1,0> state (K1 = K2 and K'1 = K'2), it is excluded and the lower of
/// the two remaining mixed triplets is taken.
inline std::size_t second_triplet(const WeightTable& rows) {
  std::vector<std::size_t> trip = states_with_spin(rows, 1);
  constexpr std::size_t k110 = 3, k111 = 4;
  std::stable_sort(trip.begin(), trip.end(), [&](std::size_t a, std::size_t b) {
    if (std::abs(rows[a].energy - rows[b].energy) >= kDegeneracyGap) return rows[a].energy < rows[b].energy;
    return rows[a].weights[k111] > rows[b].weights[k111];
  });
  const auto pure = std::find_if(trip.begin(), trip.end(),
                                 [&](std::size_t k) { return rows[k].weights[k110] > 1.0 - 1e-8; });
  if (pure != trip.end()) {
    trip.erase(pure);
    return trip.front();
  }
  return trip.at(1);
}

}  // namespace spinmer
