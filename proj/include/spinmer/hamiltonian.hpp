#pragma once

#include <array>
#include <vector>

#include "determinant.hpp"
#include "matrix.hpp"
#include "params.hpp"

namespace spinmer {

/// Restricted integral dictionary: orbital energies, ligand-metal hopping,
/// direct exchange K(p,q) and on-site repulsion. Every other two-electron
/// integral (inter-orbital Coulomb, three- and four-index terms) is zero.
struct IntegralTable {
  std::array<double, kNumOrbitals> orbital_energy{};
  std::array<std::array<double, kNumOrbitals>, kNumOrbitals> hopping{};
  std::array<std::array<double, kNumOrbitals>, kNumOrbitals> exchange{};
  std::array<double, kNumOrbitals> on_site{};
};

inline IntegralTable build_integral_table(const ModelParams& p) {
  IntegralTable tab;
  tab.orbital_energy = {p.eps_l1, 0.0, p.eps_mprime, p.eps_l2};
  tab.on_site = {p.u_l, p.u_m, p.u_m, p.u_l};

  auto set_exchange = [&](int a, int b, double k) { tab.exchange[a][b] = tab.exchange[b][a] = k; };
  set_exchange(kM, kMp, p.k_m);
  set_exchange(kL1, kM, p.k1);
  set_exchange(kL2, kM, p.k2);
  set_exchange(kL1, kMp, p.kp1);
  set_exchange(kL2, kMp, p.kp2);
  set_exchange(kL1, kL2, 0.0);

  for (int lig : {kL1, kL2})
    for (int met : {kM, kMp}) tab.hopping[lig][met] = tab.hopping[met][lig] = p.t;
  return tab;
}

/// <a|H|b> under the restricted dictionary (Slater-Condon rules).
///
///  - degree 0: sum of occupied orbital energies, U for each doubly occupied
///    orbital, and -K(p,q) for each same-spin pair.
///  - degree 1: parity * t for a spin-conserving ligand <-> metal hop.
///  - degree 2: -parity * K(p,q) for an opposite-spin exchange within the
///    singly occupied pair (p,q); pair transfers vanish.
inline double matrix_element(const Determinant& a, const Determinant& b, const IntegralTable& tab) {
  const ExcitationInfo ex = excitation_info(a, b);
  switch (ex.degree) {
    case 0: {
      double e = 0.0;
      for (int o = 0; o < kNumOrbitals; ++o) {
        e += a.occupation(o) * tab.orbital_energy[o];
        if (a.occupation(o) == 2) e += tab.on_site[o];
      }
      for (int spin = 0; spin < 2; ++spin)
        for (int p = 0; p < kNumOrbitals; ++p)
          for (int q = p + 1; q < kNumOrbitals; ++q)
            if (a.occupied(p, spin) && a.occupied(q, spin)) e -= tab.exchange[p][q];
      return e;
    }
    case 1: {
      const int h = ex.holes[0], p = ex.particles[0];
      if (h % 2 != p % 2) return 0.0;
      return ex.parity * tab.hopping[h / 2][p / 2];
    }
    case 2: {
      const int h0 = ex.holes[0] / 2, h1 = ex.holes[1] / 2;
      const int p0 = ex.particles[0] / 2, p1 = ex.particles[1] / 2;
      if (h0 == h1 || h0 != p0 || h1 != p1) return 0.0;
      // same two orbitals on both sides and each one flipped its spin
      return -ex.parity * tab.exchange[h0][h1];
    }
    default: return 0.0;
  }
}

struct HamiltonianBlock {
  ConfigSpace space;
  Matrix matrix;
};

inline HamiltonianBlock build_block(const ConfigSpace& space, const IntegralTable& tab) {
  const std::size_t n = space.size();
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) h(i, j) = h(j, i) = matrix_element(space[i], space[j], tab);
  return {space, std::move(h)};
}

/// Zeroth-order Hamiltonian on the six neutral determinants. Independent of
/// t, U_M and U_L.
inline HamiltonianBlock build_h0(const ModelParams& p) {
  return build_block(enumerate_space(SpaceKind::Neutral), build_integral_table(p));
}

/// Full 36x36 M_S = 0 Hamiltonian.
inline HamiltonianBlock build_full_h(const ModelParams& p) {
  return build_block(enumerate_space(SpaceKind::FullMs0), build_integral_table(p));
}

/// Single charge-transfer perturbers and their couplings to the model space.
struct PerturberSet {
  ConfigSpace outer;           ///< 8 LMCT then 8 MLCT determinants
  ConfigSpace neutral;         ///< model space
  Matrix coupling;             ///< coupling(beta, alpha) = <Phi_beta|V|Phi_alpha>
  std::vector<double> energy;  ///< E_beta = <Phi_beta|H0 + V|Phi_beta>
};

inline PerturberSet build_v_and_perturbers(const ModelParams& p) {
  const IntegralTable tab = build_integral_table(p);
  PerturberSet set{outer_space(), enumerate_space(SpaceKind::Neutral), {}, {}};
  set.coupling = Matrix(set.outer.size(), set.neutral.size());
  set.energy.resize(set.outer.size());
  for (std::size_t b = 0; b < set.outer.size(); ++b) {
    set.energy[b] = matrix_element(set.outer[b], set.outer[b], tab);
    for (std::size_t a = 0; a < set.neutral.size(); ++a)
      set.coupling(b, a) = matrix_element(set.outer[b], set.neutral[a], tab);
  }
  return set;
}

/// Full 36x36 Hamiltonian with the exchange couplings among single
/// charge-transfer determinants removed. This is the Hamiltonian whose
/// Rayleigh-Schroedinger expansion, with determinant perturbers at energies
/// E_beta, the second-order correction truncates.
inline HamiltonianBlock build_partitioned_h(const ModelParams& p) {
  HamiltonianBlock full = build_full_h(p);
  auto single_ct = [](const Determinant& d) {
    const int nl = d.ligand_electrons();
    return nl == 1 || nl == 3;
  };
  for (std::size_t i = 0; i < full.space.size(); ++i)
    for (std::size_t j = 0; j < full.space.size(); ++j)
      if (i != j && single_ct(full.space[i]) && single_ct(full.space[j])) full.matrix(i, j) = 0.0;
  return full;
}

/// Row/column indices of `sub` inside `full`.
inline std::vector<std::size_t> embed_indices(const ConfigSpace& sub, const ConfigSpace& full) {
  std::vector<std::size_t> idx;
  idx.reserve(sub.size());
  for (const auto& d : sub.dets) idx.push_back(std::size_t(full.index_of(d)));
  return idx;
}

}  // namespace spinmer
