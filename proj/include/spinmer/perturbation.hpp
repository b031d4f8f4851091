#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "spectrum.hpp"

namespace spinmer {

struct PerturberContribution {
  std::size_t perturber = 0;  ///< index into PerturberSet::outer
  double coupling2 = 0.0;     ///< |<Phi_beta|V|Psi>|^2
  double denominator = 0.0;   ///< E_Psi - E_beta
};

struct PT2State {
  std::size_t index = 0;  ///< position in the H0 spectrum
  int s_total = 0;
  double e_psi = 0.0;  ///< zeroth-order energy
  double e_pt2 = 0.0;
  std::vector<PerturberContribution> contributions;
  std::vector<double> first_order_tail;  ///< amplitude on each perturber
  WeightRow weights;                     ///< model-space weights of Psi

  double correction() const { return e_pt2 - e_psi; }
  /// Correction relative to |E_Psi| (0 when E_Psi = 0).
  double relative_correction() const { return e_psi != 0.0 ? correction() / std::abs(e_psi) : 0.0; }
  double tail_norm2() const { return dot(first_order_tail, first_order_tail); }
};

struct PT2Report {
  ModelParams params;
  PerturberSet perturbers;
  std::vector<PT2State> states;  ///< same order as the H0 spectrum

  /// Index of the state with the lowest E_pt2.
  std::size_t ground() const {
    std::size_t g = 0;
    for (std::size_t k = 1; k < states.size(); ++k)
      if (states[k].e_pt2 < states[g].e_pt2) g = k;
    return g;
  }
};

/// Couplings with |<Phi_beta|V|Psi>| <= kZeroCoupling * t are rounding noise on
/// a symmetry zero and are dropped.
inline constexpr double kZeroCoupling = 1e-12;

/// Second-order energies of all six H0 eigenstates from the sixteen single
/// charge-transfer determinants:
///
///   E_pt2 = E_Psi + sum_beta |<Phi_beta|V|Psi>|^2 / (E_Psi - E_beta)
///
/// with E_beta the determinant diagonal. The first-order tail amplitude on
/// Phi_beta is <Phi_beta|V|Psi> / (E_Psi - E_beta). A coupled perturber with
/// |E_Psi - E_beta| <= 1e-9 raises SmallDenominator.
inline PT2Report pt2_correct(const ModelParams& p, const ModelSpectrum& spectrum) {
  PT2Report report{p, build_v_and_perturbers(p), {}};
  const PerturberSet& ps = report.perturbers;
  for (std::size_t k = 0; k < spectrum.eig.values.size(); ++k) {
    PT2State st;
    st.index = k;
    st.weights = spectrum.weights[k];
    st.s_total = st.weights.s_total;
    st.e_psi = spectrum.eig.values[k];
    st.e_pt2 = st.e_psi;
    const std::vector<double> coupling = ps.coupling * spectrum.state(k);
    st.first_order_tail.assign(ps.outer.size(), 0.0);
    for (std::size_t b = 0; b < ps.outer.size(); ++b) {
      const double denom = st.e_psi - ps.energy[b];
      if (std::abs(coupling[b]) <= kZeroCoupling * p.t) continue;
      if (std::abs(denom) <= 1e-9)
        throw ModelError(ErrorCode::SmallDenominator, "state " + std::to_string(k) + " vs perturber " +
                                                          to_string(ps.outer[b]) + ": gap " + format_double(denom));
      const double c2 = coupling[b] * coupling[b];
      st.contributions.push_back({b, c2, denom});
      st.e_pt2 += c2 / denom;
      st.first_order_tail[b] = coupling[b] / denom;
    }
    report.states.push_back(std::move(st));
  }
  return report;
}

inline PT2Report pt2_correct(const ModelParams& p) { return pt2_correct(p, analyze_h0(p)); }

/// Spin weights of the first-order wavefunction Psi + tail.
struct ContractedRow {
  WeightRow relative;  ///< weights within the model space (sum to 1)
  WeightRow absolute;  ///< weights after normalizing Psi + tail
  double tail_norm2 = 0.0;
  double model_space_weight = 1.0;  ///< equals 1 / (1 + |tail|^2)
};

/// Renormalizes each first-order vector (Psi, tail) and projects its
/// model-space block on the coupled basis again. The perturbers only rescale
/// that block, so ratios between model-space weights are unchanged.
inline std::vector<ContractedRow> contracted_weights(const PT2Report& report, const ModelSpectrum& spectrum) {
  static const std::vector<SpinCoupledState> basis = coupled_basis();
  std::vector<ContractedRow> out;
  out.reserve(report.states.size());
  for (const PT2State& st : report.states) {
    ContractedRow row;
    row.tail_norm2 = st.tail_norm2();
    const double scale = 1.0 / std::sqrt(1.0 + row.tail_norm2);
    std::vector<double> model = spectrum.state(st.index);
    for (double& x : model) x *= scale;

    row.absolute.energy = st.e_pt2;
    row.absolute.s_total = st.s_total;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double amp = dot(basis[k].coeffs, model);
      row.absolute.weights[k] = amp * amp;
      (basis[k].label.s_m == 1 ? row.absolute.w_sm1 : row.absolute.w_sm0) += amp * amp;
    }
    row.model_space_weight = dot(model, model);

    row.relative = row.absolute;
    for (double& w : row.relative.weights) w /= row.model_space_weight;
    row.relative.w_sm1 /= row.model_space_weight;
    row.relative.w_sm0 /= row.model_space_weight;
    out.push_back(row);
  }
  return out;
}

inline std::vector<ContractedRow> contracted_weights(const PT2Report& report) {
  return contracted_weights(report, analyze_h0(report.params));
}

}  // namespace spinmer
