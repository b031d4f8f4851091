#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace spinmer {

/// Spatial orbital indices. The order fixes every phase in the library.
enum Orbital : int { kL1 = 0, kM = 1, kMp = 2, kL2 = 3 };
inline constexpr int kNumOrbitals = 4;
inline constexpr int kNumElectrons = 4;

inline constexpr bool is_ligand(int orb) { return orb == kL1 || orb == kL2; }
inline constexpr bool is_metal(int orb) { return orb == kM || orb == kMp; }

/// Spin-orbital index: 2 * orbital + spin, spin 0 = up, 1 = down. Ascending
/// spin-orbital order is the canonical creation order of a determinant.
inline constexpr int spin_orbital(int orb, int spin) { return 2 * orb + spin; }

/// Slater determinant over the four spatial orbitals.
struct Determinant {
  std::uint8_t up = 0;    ///< bit i set when orbital i holds an up electron
  std::uint8_t down = 0;  ///< bit i set when orbital i holds a down electron

  constexpr auto operator<=>(const Determinant&) const = default;

  constexpr bool occupied(int orb, int spin) const {
    return ((spin == 0 ? up : down) >> orb) & 1u;
  }
  constexpr int occupation(int orb) const { return occupied(orb, 0) + occupied(orb, 1); }
  constexpr int num_electrons() const { return std::popcount(up) + std::popcount(down); }
  /// Twice the spin projection.
  constexpr int two_ms() const { return std::popcount(up) - std::popcount(down); }

  /// Occupation as an 8-bit spin-orbital mask (bit 2*orb + spin).
  constexpr std::uint8_t mask() const {
    std::uint8_t m = 0;
    for (int o = 0; o < kNumOrbitals; ++o) {
      if ((up >> o) & 1u) m |= std::uint8_t(1u << spin_orbital(o, 0));
      if ((down >> o) & 1u) m |= std::uint8_t(1u << spin_orbital(o, 1));
    }
    return m;
  }

  static constexpr Determinant from_mask(std::uint8_t m) {
    Determinant d;
    for (int o = 0; o < kNumOrbitals; ++o) {
      if ((m >> spin_orbital(o, 0)) & 1u) d.up |= std::uint8_t(1u << o);
      if ((m >> spin_orbital(o, 1)) & 1u) d.down |= std::uint8_t(1u << o);
    }
    return d;
  }

  /// Number of electrons on the two ligand orbitals.
  constexpr int ligand_electrons() const { return occupation(kL1) + occupation(kL2); }
};

/// Diagnostic rendering such as "|L1↓ M↑ M'↑ L2↓|"; not a stable format.
inline std::string to_string(const Determinant& d) {
  static constexpr const char* names[kNumOrbitals] = {"L1", "M", "M'", "L2"};
  std::string out = "|";
  for (int o = 0; o < kNumOrbitals; ++o) {
    if (o) out += ' ';
    if (d.occupation(o) == 0) {
      out += '.';
      continue;
    }
    out += names[o];
    if (d.occupied(o, 0)) out += "↑";
    if (d.occupied(o, 1)) out += "↓";
  }
  return out + "|";
}

enum class SpaceKind { Neutral, LMCT, MLCT, FullMs0 };

inline const char* to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::Neutral: return "Neutral";
    case SpaceKind::LMCT: return "LMCT";
    case SpaceKind::MLCT: return "MLCT";
    case SpaceKind::FullMs0: return "FullMs0";
  }
  return "?";
}

struct ConfigSpace {
  SpaceKind kind{};
  std::vector<Determinant> dets;

  std::size_t size() const { return dets.size(); }
  const Determinant& operator[](std::size_t i) const { return dets[i]; }

  /// Index of `d` in this space, or -1.
  int index_of(const Determinant& d) const {
    auto it = std::lower_bound(dets.begin(), dets.end(), d);
    return (it != dets.end() && *it == d) ? int(it - dets.begin()) : -1;
  }
};

namespace detail {

inline bool in_space(const Determinant& d, SpaceKind kind) {
  if (d.num_electrons() != kNumElectrons || d.two_ms() != 0) return false;
  switch (kind) {
    case SpaceKind::FullMs0: return true;
    case SpaceKind::Neutral: return (d.up & d.down) == 0;
    // one charge moved between the ligand pair and the metal pair; the
    // receiving side gets a doubly occupied orbital, the other an empty one
    case SpaceKind::LMCT: return d.ligand_electrons() == 1;
    case SpaceKind::MLCT: return d.ligand_electrons() == 3;
  }
  return false;
}

}  // namespace detail

/// All M_S = 0 determinants of the given kind, ordered by (up, down).
inline ConfigSpace enumerate_space(SpaceKind kind) {
  ConfigSpace space{kind, {}};
  for (unsigned up = 0; up < 16; ++up)
    for (unsigned down = 0; down < 16; ++down) {
      const Determinant d{std::uint8_t(up), std::uint8_t(down)};
      if (detail::in_space(d, kind)) space.dets.push_back(d);
    }
  return space;
}

/// LMCT followed by MLCT determinants: the sixteen single charge-transfer
/// perturbers.
inline ConfigSpace outer_space() {
  auto lmct = enumerate_space(SpaceKind::LMCT);
  const auto mlct = enumerate_space(SpaceKind::MLCT);
  lmct.dets.insert(lmct.dets.end(), mlct.dets.begin(), mlct.dets.end());
  return lmct;
}

struct ExcitationInfo {
  int degree = 0;             ///< half the number of differing spin-orbitals
  int parity = 1;             ///< +1 or -1
  std::vector<int> holes;     ///< spin-orbitals occupied in a only, ascending
  std::vector<int> particles; ///< spin-orbitals occupied in b only, ascending
};

/// Excitation degree and phase between two four-electron determinants.
///
/// The parity is the sign of the permutation that sorts a's canonical
/// spin-orbital list after each hole has been replaced by the particle of the
/// same rank. For a single excitation h -> p it equals <b| c+_p c_h |a>.
inline ExcitationInfo excitation_info(const Determinant& a, const Determinant& b) {
  ExcitationInfo info;
  const std::uint8_t ma = a.mask();
  const std::uint8_t mb = b.mask();
  for (int s = 0; s < 2 * kNumOrbitals; ++s) {
    if (((ma >> s) & 1u) && !((mb >> s) & 1u)) info.holes.push_back(s);
    if (((mb >> s) & 1u) && !((ma >> s) & 1u)) info.particles.push_back(s);
  }
  info.degree = int(info.holes.size() + info.particles.size()) / 2;

  std::vector<int> list;
  for (int s = 0; s < 2 * kNumOrbitals; ++s)
    if ((ma >> s) & 1u) list.push_back(s);
  const std::size_t n_sub = std::min(info.holes.size(), info.particles.size());
  for (std::size_t k = 0; k < n_sub; ++k)
    std::replace(list.begin(), list.end(), info.holes[k], info.particles[k]);
  // count inversions
  int inversions = 0;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j)
      if (list[i] > list[j]) ++inversions;
  info.parity = (inversions % 2) ? -1 : 1;
  return info;
}

}  // namespace spinmer
