#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "determinant.hpp"
#include "error.hpp"
#include "format.hpp"
#include "matrix.hpp"

namespace spinmer {

// ---------------------------------------------------------------------------
// Clebsch-Gordan coefficients
// ---------------------------------------------------------------------------

namespace detail {

inline double factorial(int n) { return std::tgamma(double(n) + 1.0); }

inline std::optional<int> twice(double j) {
  const double x = 2.0 * j;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9) return std::nullopt;
  return int(r);
}

}  // namespace detail

/// <j1 m1; j2 m2 | J M> with the Condon-Shortley phase (Racah formula).
/// Forbidden combinations (M != m1 + m2, triangle violation, |m| > j, mixed
/// integer/half-integer) give 0.
inline double cg_coefficient(double j1, double m1, double j2, double m2, double J, double M) {
  const auto tj1 = detail::twice(j1), tm1 = detail::twice(m1), tj2 = detail::twice(j2);
  const auto tm2 = detail::twice(m2), tJ = detail::twice(J), tM = detail::twice(M);
  if (!tj1 || !tm1 || !tj2 || !tm2 || !tJ || !tM) return 0.0;
  const int a = *tj1, am = *tm1, b = *tj2, bm = *tm2, c = *tJ, cm = *tM;
  if (a < 0 || b < 0 || c < 0) return 0.0;
  if (am + bm != cm) return 0.0;
  if (std::abs(am) > a || std::abs(bm) > b || std::abs(cm) > c) return 0.0;
  if ((a + am) % 2 || (b + bm) % 2 || (c + cm) % 2) return 0.0;
  if (c < std::abs(a - b) || c > a + b || (a + b + c) % 2) return 0.0;

  // all quantities below are integers once halved
  const int jpj_J = (a + b - c) / 2, J_jmj = (c + a - b) / 2, J_mjj = (c - a + b) / 2;
  const double pre = std::sqrt((c + 1) * detail::factorial(J_jmj) * detail::factorial(J_mjj) *
                               detail::factorial(jpj_J) / detail::factorial((a + b + c) / 2 + 1)) *
                     std::sqrt(detail::factorial((c + cm) / 2) * detail::factorial((c - cm) / 2) *
                               detail::factorial((a - am) / 2) * detail::factorial((a + am) / 2) *
                               detail::factorial((b - bm) / 2) * detail::factorial((b + bm) / 2));
  double sum = 0.0;
  for (int k = 0; k <= jpj_J; ++k) {
    const int d[6] = {k, jpj_J - k, (a - am) / 2 - k, (b + bm) / 2 - k, (c - b + am) / 2 + k, (c - a - bm) / 2 + k};
    bool ok = true;
    double den = 1.0;
    for (int x : d) {
      if (x < 0) {
        ok = false;
        break;
      }
      den *= detail::factorial(x);
    }
    if (ok) sum += ((k % 2) ? -1.0 : 1.0) / den;
  }
  return pre * sum;
}

// ---------------------------------------------------------------------------
// Spin-coupled basis |S, S_M, S_L>
// ---------------------------------------------------------------------------

struct SpinLabel {
  int s_total = 0;
  int s_m = 0;  ///< metal pair (phi_M, phi_M')
  int s_l = 0;  ///< ligand pair (phi_L1, phi_L2)

  bool operator==(const SpinLabel&) const = default;
};

inline constexpr std::size_t kNumLabels = 6;

/// Admissible labels in the fixed column order 000, 011, 101, 110, 111, 211.
inline constexpr std::array<SpinLabel, kNumLabels> kSpinLabels{{
    {0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}, {2, 1, 1}}};

inline std::string label_name(const SpinLabel& l) {
  return std::to_string(l.s_total) + std::to_string(l.s_m) + std::to_string(l.s_l);
}

struct SpinCoupledState {
  SpinLabel label;
  std::vector<double> coeffs;  ///< over enumerate_space(Neutral)
};

/// The six M_S = 0 spin-coupled states expanded over the neutral determinants.
///
/// (phi_M, phi_M') couple to S_M, (phi_L1, phi_L2) to S_L, then S_M x S_L
/// to S, metal first. A product of single occupations in ascending orbital
/// order is a determinant with coefficient +1.
inline std::vector<SpinCoupledState> coupled_basis() {
  const ConfigSpace neutral = enumerate_space(SpaceKind::Neutral);
  std::vector<SpinCoupledState> basis;
  basis.reserve(kNumLabels);
  // spin index 0 = up (m = +1/2), 1 = down
  auto m_of = [](int spin) { return spin == 0 ? 0.5 : -0.5; };
  for (const SpinLabel& lab : kSpinLabels) {
    SpinCoupledState state{lab, std::vector<double>(neutral.size(), 0.0)};
    for (int sm = -lab.s_m; sm <= lab.s_m; ++sm) {
      const int sl = -sm;
      if (std::abs(sl) > lab.s_l) continue;
      const double outer = cg_coefficient(lab.s_m, sm, lab.s_l, sl, lab.s_total, 0);
      if (outer == 0.0) continue;
      for (int sM = 0; sM < 2; ++sM)
        for (int sMp = 0; sMp < 2; ++sMp)
          for (int sL1 = 0; sL1 < 2; ++sL1)
            for (int sL2 = 0; sL2 < 2; ++sL2) {
              const double cm = cg_coefficient(0.5, m_of(sM), 0.5, m_of(sMp), lab.s_m, sm);
              const double cl = cg_coefficient(0.5, m_of(sL1), 0.5, m_of(sL2), lab.s_l, sl);
              if (cm == 0.0 || cl == 0.0) continue;
              Determinant d;
              const std::pair<int, int> occ[] = {{kL1, sL1}, {kM, sM}, {kMp, sMp}, {kL2, sL2}};
              for (auto [orb, spin] : occ) (spin == 0 ? d.up : d.down) |= std::uint8_t(1u << orb);
              state.coeffs[std::size_t(neutral.index_of(d))] += outer * cm * cl;
            }
    }
    basis.push_back(std::move(state));
  }
  return basis;
}

/// Rows are the coupled states in kSpinLabels order; columns neutral determinants.
inline Matrix coupled_basis_matrix(const std::vector<SpinCoupledState>& basis) {
  Matrix b(basis.size(), basis.front().coeffs.size());
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t j = 0; j < basis[k].coeffs.size(); ++j) b(k, j) = basis[k].coeffs[j];
  return b;
}

// ---------------------------------------------------------------------------
// Spin operators in a determinant basis
// ---------------------------------------------------------------------------

namespace detail {

/// c+_to c_from on an 8-bit spin-orbital mask; nullopt when the result vanishes.
inline std::optional<std::pair<int, std::uint8_t>> hop(std::uint8_t m, int from, int to) {
  if (!((m >> from) & 1u)) return std::nullopt;
  int sign = (std::popcount(unsigned(m) & ((1u << from) - 1u)) % 2) ? -1 : 1;
  m = std::uint8_t(m & ~(1u << from));
  if ((m >> to) & 1u) return std::nullopt;
  if (std::popcount(unsigned(m) & ((1u << to) - 1u)) % 2) sign = -sign;
  return std::pair{sign, std::uint8_t(m | (1u << to))};
}

/// Matrix of S_-(A) S_+(A) + S_z(A)^2 + S_z(A), i.e. S(A)^2, over `space`,
/// where A is a set of orbitals.
inline Matrix subset_s2(const ConfigSpace& space, std::span<const int> orbitals) {
  const std::size_t n = space.size();
  Matrix s2(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Determinant& d = space[i];
    const std::uint8_t m = d.mask();
    for (int q : orbitals) {
      // S_+(q) = c+_{q up} c_{q down}
      const auto raised = hop(m, spin_orbital(q, 1), spin_orbital(q, 0));
      if (!raised) continue;
      for (int p : orbitals) {
        // S_-(p) = c+_{p down} c_{p up}
        const auto lowered = hop(raised->second, spin_orbital(p, 0), spin_orbital(p, 1));
        if (!lowered) continue;
        const int j = space.index_of(Determinant::from_mask(lowered->second));
        if (j >= 0) s2(std::size_t(j), i) += raised->first * lowered->first;
      }
    }
    double two_sz = 0.0;
    for (int o : orbitals) two_sz += int(d.occupied(o, 0)) - int(d.occupied(o, 1));
    const double sz = 0.5 * two_sz;
    s2(i, i) += sz * sz + sz;
  }
  return s2;
}

}  // namespace detail

/// Total S^2 over all four orbitals; a doubly occupied orbital carries no spin.
inline Matrix s2_matrix(const ConfigSpace& space) {
  static constexpr int all[] = {kL1, kM, kMp, kL2};
  return detail::subset_s2(space, all);
}

/// S_M^2 of the metal pair (phi_M, phi_M').
inline Matrix metal_s2_matrix(const ConfigSpace& space) {
  static constexpr int metal[] = {kM, kMp};
  return detail::subset_s2(space, metal);
}

/// S_L^2 of the ligand pair (phi_L1, phi_L2).
inline Matrix ligand_s2_matrix(const ConfigSpace& space) {
  static constexpr int ligand[] = {kL1, kL2};
  return detail::subset_s2(space, ligand);
}

/// Spin quantum number S from an expectation value of S^2 = S(S+1).
inline int spin_from_s2(double s2) { return int(std::lround(0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * std::max(0.0, s2))))); }

// ---------------------------------------------------------------------------
// Local-spin weights
// ---------------------------------------------------------------------------

struct WeightRow {
  double energy = 0.0;
  int s_total = 0;
  std::array<double, kNumLabels> weights{};  ///< kSpinLabels order
  double w_sm1 = 0.0;  ///< S_M = 1 weight (lambda11^2 + lambda10^2 for triplets)
  double w_sm0 = 0.0;  ///< S_M = 0 weight

  double weight(const SpinLabel& l) const {
    for (std::size_t k = 0; k < kNumLabels; ++k)
      if (kSpinLabels[k] == l) return weights[k];
    return 0.0;
  }
};

using WeightTable = std::vector<WeightRow>;

/// Squared projections of a unit-norm neutral-space vector on the coupled basis.
/// Raises NormError when |norm - 1| > 1e-10. `energy` is copied into the row;
/// s_total is the dominant spin sector.
inline WeightRow decompose(std::span<const double> vec, const std::vector<SpinCoupledState>& basis,
                           double energy = 0.0) {
  const double norm = std::sqrt(dot(vec, vec));
  if (std::abs(norm - 1.0) > 1e-10)
    throw ModelError(ErrorCode::NormError, "vector norm " + format_double(norm) + " deviates from 1");
  WeightRow row;
  row.energy = energy;
  std::array<double, 3> per_s{};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double amp = dot(basis[k].coeffs, vec);
    row.weights[k] = amp * amp;
    per_s[std::size_t(basis[k].label.s_total)] += amp * amp;
    (basis[k].label.s_m == 1 ? row.w_sm1 : row.w_sm0) += amp * amp;
  }
  row.s_total = int(std::max_element(per_s.begin(), per_s.end()) - per_s.begin());
  return row;
}

}  // namespace spinmer
