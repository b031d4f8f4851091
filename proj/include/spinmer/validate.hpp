#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "perturbation.hpp"

namespace spinmer {

struct ValidatedParams {
  ModelParams params;
  std::vector<std::string> warnings;
  /// Smallest |E_Psi - E_beta| over model states and perturbers that couple to them.
  double min_coupled_gap = std::numeric_limits<double>::infinity();
};

/// Ratio t / gap above which the second-order treatment is flagged.
inline constexpr double kPerturbativeRatio = 0.25;

/// Checks the parameter invariants (NegativeExchange, NegativeRepulsion) and
/// records a warning when t is not small against the smallest model-perturber
/// gap.
inline ValidatedParams validate(const ModelParams& p) {
  check_invariants(p);
  ValidatedParams out{p, {}, std::numeric_limits<double>::infinity()};
  if (p.t == 0.0) return out;

  const ModelSpectrum spectrum = analyze_h0(p);
  const PerturberSet ps = build_v_and_perturbers(p);
  for (std::size_t k = 0; k < spectrum.eig.values.size(); ++k) {
    const auto coupling = ps.coupling * spectrum.state(k);
    for (std::size_t b = 0; b < ps.outer.size(); ++b)
      if (std::abs(coupling[b]) > kZeroCoupling * p.t)
        out.min_coupled_gap = std::min(out.min_coupled_gap, std::abs(spectrum.eig.values[k] - ps.energy[b]));
  }
  if (p.t > kPerturbativeRatio * out.min_coupled_gap)
    out.warnings.push_back("t = " + format_double(p.t) + " is not small against the smallest model-perturber gap " +
                           format_double(out.min_coupled_gap) + "; second-order results are qualitative here");
  return out;
}

}  // namespace spinmer
