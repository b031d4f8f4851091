#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perturbation.hpp"

namespace spinmer {

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

struct SweepPoint {
  double param = 0.0;
  std::vector<double> energies;  ///< one per state, in H0 order
  std::vector<int> spins;        ///< total spin of each state
  int ground_spin = 0;
  double w_sm0 = 0.0;  ///< target-state weights
  double w_sm1 = 0.0;
  std::array<double, kNumLabels> label_weights{};
};

/// Energies grouped as (S=0 a, S=0 b, S=1 a, S=1 b, S=1 c, S=2), each group in
/// H0 order. Missing entries are NaN.
inline std::array<double, 6> sector_energies(const SweepPoint& pt) {
  std::array<double, 6> out;
  out.fill(std::numeric_limits<double>::quiet_NaN());
  constexpr std::array<std::size_t, 3> first{0, 2, 5};
  constexpr std::array<std::size_t, 3> capacity{2, 3, 1};
  std::array<std::size_t, 3> used{};
  for (std::size_t k = 0; k < pt.energies.size(); ++k) {
    const auto s = std::size_t(pt.spins[k]);
    if (s < 3 && used[s] < capacity[s]) out[first[s] + used[s]++] = pt.energies[k];
  }
  return out;
}

/// K'_1 = K_1 + 2 Q (K_M - K_1).
inline double kprime_from_q(double k_m, double k1, double q) { return k1 + 2.0 * q * (k_m - k1); }

/// Td parameter set (K2 = K1, K'2 = K'1) at a given Q, zero orbital energies.
inline ModelParams td_params(double k_m, double k1, double q) {
  ModelParams p;
  p.k_m = k_m;
  p.k1 = p.k2 = k1;
  p.kp1 = p.kp2 = kprime_from_q(k_m, k1, q);
  return p;
}

/// S_M = 0 weight lambda01^2 of the second triplet along Q at fixed K_M, K_1.
inline std::vector<SweepPoint> q_scan(double k_m, double k1, std::span<const double> q_values) {
  if (k1 == k_m) throw ModelError(ErrorCode::DegenerateDenominator, "Q is undefined for K1 = K_M");
  std::vector<SweepPoint> out;
  out.reserve(q_values.size());
  for (double q : q_values) {
    const ModelParams p = td_params(k_m, k1, q);
    check_invariants(p);
    const ModelSpectrum sp = analyze_h0(p);
    SweepPoint pt;
    pt.param = q;
    for (const WeightRow& row : sp.weights) {
      pt.energies.push_back(row.energy);
      pt.spins.push_back(row.s_total);
    }
    pt.ground_spin = sp.weights.front().s_total;
    const WeightRow& target = sp.weights[second_triplet(sp.weights)];
    pt.w_sm0 = target.weight({1, 0, 1});
    pt.w_sm1 = target.w_sm1;
    pt.label_weights = target.weights;
    out.push_back(pt);
  }
  return out;
}

inline SweepPoint t_point(const ModelParams& base, double t) {
  ModelParams p = base;
  p.t = t;
  PT2Report rep;
  try {
    rep = pt2_correct(p);
  } catch (const ModelError& e) {
    if (e.code() != ErrorCode::SmallDenominator) throw;
    throw ModelError(ErrorCode::SmallDenominator, "at t = " + format_double(t) + ": " + e.what());
  }
  const std::size_t g = rep.ground();
  const double e_ref = rep.states[g].e_pt2;
  SweepPoint pt;
  pt.param = t;
  for (const PT2State& st : rep.states) {
    pt.energies.push_back(st.e_pt2 - e_ref);
    pt.spins.push_back(st.s_total);
  }
  pt.ground_spin = rep.states[g].s_total;
  pt.w_sm0 = rep.states[g].weights.w_sm0;
  pt.w_sm1 = rep.states[g].weights.w_sm1;
  pt.label_weights = rep.states[g].weights.weights;
  return pt;
}

/// PT2 energies along t, referenced to the ground state at each point.
/// Target-state weights are the model-space weights of the ground state.
inline std::vector<SweepPoint> t_scan(const ModelParams& p, std::span<const double> t_values) {
  check_invariants(p);
  std::vector<SweepPoint> out;
  out.reserve(t_values.size());
  for (double t : t_values) out.push_back(t_point(p, t));
  return out;
}

/// Evenly spaced grid with `steps` points on [from, to].
inline std::vector<double> linspace(double from, double to, std::size_t steps) {
  std::vector<double> g(steps);
  if (steps == 1) g[0] = from;
  for (std::size_t i = 0; steps > 1 && i < steps; ++i)
    g[i] = from + (to - from) * double(i) / double(steps - 1);
  return g;
}

struct Crossing {
  double at = 0.0;
  int s_before = 0;
  int s_after = 0;
};

/// Brackets each ground-state label change between consecutive points and
/// bisects it with `evaluate(x) -> SweepPoint` until the bracket is below `tol`.
template <class Evaluate>
std::vector<Crossing> find_crossings(std::span<const SweepPoint> points, Evaluate&& evaluate, double tol = 1e-6) {
  std::vector<Crossing> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const SweepPoint& a = points[i];
    const SweepPoint& b = points[i + 1];
    if (a.ground_spin == b.ground_spin) continue;
    double lo = a.param, hi = b.param;
    while (hi - lo >= tol) {
      const double mid = 0.5 * (lo + hi);
      if (evaluate(mid).ground_spin == a.ground_spin)
        lo = mid;
      else
        hi = mid;
    }
    out.push_back({0.5 * (lo + hi), a.ground_spin, b.ground_spin});
  }
  return out;
}

/// Ground-state crossings of a t-scan.
inline std::vector<Crossing> t_scan_crossings(const ModelParams& p, std::span<const SweepPoint> points,
                                              double tol = 1e-6) {
  return find_crossings(points, [&](double t) { return t_point(p, t); }, tol);
}

// ---------------------------------------------------------------------------
// Mixing rules
// ---------------------------------------------------------------------------

enum class RuleId { R1, R2, R3 };

inline const char* to_string(RuleId r) {
  switch (r) {
    case RuleId::R1: return "R1";
    case RuleId::R2: return "R2";
    case RuleId::R3: return "R3";
  }
  return "?";
}

struct RuleReport {
  RuleId rule{};
  double parameter_residual = 0.0;  ///< signed distance from the rule's condition
  double weight_residual = 0.0;     ///< |relation| evaluated on the target state
  std::size_t state = 0;            ///< H0 index of the target state
  std::string note;
};

inline constexpr double kFamilyTolerance = 1e-12;

inline bool in_td_family(const ModelParams& p) {
  return std::abs(p.k1 - p.k2) <= kFamilyTolerance && std::abs(p.kp1 - p.kp2) <= kFamilyTolerance;
}

inline bool in_equal_k_family(const ModelParams& p) {
  return std::abs(p.k1 - p.k2) <= kFamilyTolerance && std::abs(p.k1 - p.kp1) <= kFamilyTolerance;
}

/// Evaluates one rule.
///
///  - R1, Td family (K1 = K2, K'1 = K'2): 2K_M = K1 + K'1 gives
///    lambda11^2 = lambda01^2 on the second triplet.
///  - R2, K1 = K2 = K'1 family: 2K_M = 3K2 + K'2 gives mu11^2 = mu00^2.
///  - R3, same family: 2K_M = 2K2 + 2K'2 gives 3 mu11^2 = mu00^2.
///
/// For R2 and R3 the residual is the smaller one over the two singlets.
/// Raises WrongFamily when `p` is outside the rule's family.
inline RuleReport check_rule(const ModelParams& p, RuleId rule) {
  const bool ok = rule == RuleId::R1 ? in_td_family(p) : in_equal_k_family(p);
  if (!ok)
    throw ModelError(ErrorCode::WrongFamily, std::string(to_string(rule)) + " requires " +
                                                 (rule == RuleId::R1 ? "K1 = K2 and K'1 = K'2" : "K1 = K2 = K'1"));
  const ModelSpectrum sp = analyze_h0(p);
  const WeightTable& w = sp.weights;
  RuleReport rep;
  rep.rule = rule;
  switch (rule) {
    case RuleId::R1: {
      rep.parameter_residual = 2.0 * p.k_m - (p.k1 + p.kp1);
      rep.state = second_triplet(w);
      rep.weight_residual = std::abs(w[rep.state].weight({1, 1, 1}) - w[rep.state].weight({1, 0, 1}));
      if (p.kp1 > p.k_m || p.k1 > p.k_m) rep.note = "ligand-metal exchange exceeds K_M";
      break;
    }
    case RuleId::R2:
    case RuleId::R3: {
      const double factor = rule == RuleId::R2 ? 1.0 : 3.0;
      rep.parameter_residual = rule == RuleId::R2 ? 2.0 * p.k_m - (3.0 * p.k2 + p.kp2)
                                                  : 2.0 * p.k_m - 2.0 * (p.k2 + p.kp2);
      rep.weight_residual = std::numeric_limits<double>::infinity();
      for (std::size_t k : states_with_spin(w, 0)) {
        const double r = std::abs(factor * w[k].weight({0, 1, 1}) - w[k].weight({0, 0, 0}));
        if (r < rep.weight_residual) {
          rep.weight_residual = r;
          rep.state = k;
        }
      }
      if (rule == RuleId::R2 && 3.0 * p.k2 > 2.0 * p.k_m) rep.note = "K2 >= 2 K_M / 3: R2 cannot be met";
      break;
    }
  }
  return rep;
}

/// Reports for every rule whose family contains `p`.
inline std::vector<RuleReport> rule_check(const ModelParams& p) {
  std::vector<RuleReport> out;
  for (RuleId r : {RuleId::R1, RuleId::R2, RuleId::R3}) {
    const bool ok = r == RuleId::R1 ? in_td_family(p) : in_equal_k_family(p);
    if (ok) out.push_back(check_rule(p, r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Independent oracles
// ---------------------------------------------------------------------------

struct HeisenbergResult {
  Matrix matrix;                 ///< spin Hamiltonian in the neutral-determinant order
  std::vector<double> spectrum;  ///< ascending
  double max_deviation = 0.0;    ///< max |H_spin - H0| elementwise
};

/// Builds E0 - sum_{p<q} K(p,q) (1/2 + 2 S_p.S_q) on four spin-1/2 sites with
/// plain spin algebra and compares it with build_h0. A spin configuration
/// (s_L1, s_M, s_M', s_L2) is identified with the neutral determinant holding
/// the same spins.
inline HeisenbergResult heisenberg_oracle(const ModelParams& p) {
  const ConfigSpace neutral = enumerate_space(SpaceKind::Neutral);
  const IntegralTable tab = build_integral_table(p);
  const double e0 = p.eps_mprime + p.eps_l1 + p.eps_l2;
  const std::size_t n = neutral.size();

  // site o is "up" when bit o of the up mask is set
  auto spin_z = [](const Determinant& d, int o) { return d.occupied(o, 0) ? 0.5 : -0.5; };
  HeisenbergResult res{Matrix(n, n), {}, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Determinant& d = neutral[i];
    res.matrix(i, i) += e0;
    for (int a = 0; a < kNumOrbitals; ++a)
      for (int b = a + 1; b < kNumOrbitals; ++b) {
        const double k = tab.exchange[a][b];
        if (k == 0.0) continue;
        // 1/2 + 2 Sz Sz on the diagonal
        res.matrix(i, i) -= k * (0.5 + 2.0 * spin_z(d, a) * spin_z(d, b));
        // 2 * 1/2 (S+S- + S-S+) swaps antiparallel spins with amplitude 1
        if (d.occupied(a, 0) != d.occupied(b, 0)) {
          Determinant f = d;
          f.up ^= std::uint8_t((1u << a) | (1u << b));
          f.down ^= std::uint8_t((1u << a) | (1u << b));
          res.matrix(std::size_t(neutral.index_of(f)), i) -= k;
        }
      }
  }
  res.spectrum = eigh(res.matrix).values;
  res.max_deviation = (res.matrix - build_h0(p).matrix).max_abs();
  return res;
}

/// |E_pt2 - E_exact| / t^4 for each H0 state, against the eigenstate of
/// `exact` with the largest model-space overlap.
struct ScalingRow {
  double t = 0.0;
  std::vector<double> ratio;     ///< per H0 state
  std::vector<double> residual;  ///< E_pt2 - E_exact
};

enum class ReferenceHamiltonian {
  Partitioned,  ///< build_partitioned_h: the Hamiltonian the PT2 truncates
  Complete,     ///< build_full_h
};

inline ScalingRow pt2_scaling_point(const ModelParams& base, double t, ReferenceHamiltonian ref) {
  ModelParams p = base;
  p.t = t;
  const ModelSpectrum sp = analyze_h0(p);
  const PT2Report rep = pt2_correct(p, sp);
  const HamiltonianBlock full = ref == ReferenceHamiltonian::Partitioned ? build_partitioned_h(p) : build_full_h(p);
  const EigenDecomposition exact = eigh(full.matrix);
  const auto idx = embed_indices(sp.h0.space, full.space);

  ScalingRow row;
  row.t = t;
  for (std::size_t k = 0; k < rep.states.size(); ++k) {
    const auto psi = sp.state(k);
    std::size_t best = 0;
    double best_overlap = -1.0;
    for (std::size_t j = 0; j < exact.values.size(); ++j) {
      double ov = 0.0;
      for (std::size_t a = 0; a < idx.size(); ++a) ov += psi[a] * exact.vectors(idx[a], j);
      if (std::abs(ov) > best_overlap) {
        best_overlap = std::abs(ov);
        best = j;
      }
    }
    const double r = rep.states[k].e_pt2 - exact.values[best];
    row.residual.push_back(r);
    row.ratio.push_back(std::abs(r) / std::pow(t, 4));
  }
  return row;
}

}  // namespace spinmer
