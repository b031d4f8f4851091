#include <gtest/gtest.h>

#include <random>

#include "spinmer/analysis.hpp"
#include "test_util.hpp"

using namespace spinmer;

TEST(PT2, ZeroHoppingLeavesH0) {
  const ModelParams p = testutil::tscan_set();
  const ModelSpectrum sp = analyze_h0(p);
  const PT2Report rep = pt2_correct(p, sp);
  for (const PT2State& st : rep.states) {
    EXPECT_EQ(st.e_pt2, st.e_psi);
    EXPECT_EQ(st.tail_norm2(), 0.0);
  }
  const auto cw = contracted_weights(rep, sp);
  for (std::size_t k = 0; k < cw.size(); ++k)
    for (std::size_t l = 0; l < kNumLabels; ++l) EXPECT_NEAR(cw[k].absolute.weights[l], sp.weights[k].weights[l], 1e-15);
}

TEST(PT2, EvenInHopping) {
  // the sign of t only flips signs of couplings
  ModelParams p = testutil::tscan_set();
  p.t = 0.2;
  const PT2Report a = pt2_correct(p);
  const ModelSpectrum sp = analyze_h0(p);
  PerturberSet neg = build_v_and_perturbers(p);
  neg.coupling = -1.0 * neg.coupling;
  for (std::size_t k = 0; k < a.states.size(); ++k) {
    const auto c = neg.coupling * sp.state(k);
    double e = sp.eig.values[k];
    for (std::size_t b = 0; b < c.size(); ++b)
      if (c[b] != 0.0) e += c[b] * c[b] / (sp.eig.values[k] - neg.energy[b]);
    EXPECT_NEAR(e, a.states[k].e_pt2, 1e-14);
  }
}

TEST(PT2, CorrectionScalesAsTSquared) {
  ModelParams p = testutil::tscan_set();
  p.t = 0.1;
  const PT2Report a = pt2_correct(p);
  p.t = 0.2;
  const PT2Report b = pt2_correct(p);
  for (std::size_t k = 0; k < a.states.size(); ++k)
    EXPECT_NEAR(b.states[k].correction(), 4.0 * a.states[k].correction(), 1e-13);
}

TEST(PT2, QuintetIsUncorrected) {
  ModelParams p = testutil::tscan_set();
  p.t = 0.5;
  for (const PT2State& st : pt2_correct(p).states)
    if (st.s_total == 2) {
      EXPECT_EQ(st.correction(), 0.0);
      EXPECT_TRUE(st.contributions.empty());
    }
}

TEST(PT2, NegativeDenominatorsLowerTheEnergy) {
  std::mt19937 rng(41);
  for (int draw = 0; draw < 30; ++draw) {
    ModelParams p = testutil::random_params(rng);
    p.u_m += 3.0;
    p.u_l += 3.0;
    const ModelSpectrum sp = analyze_h0(p);
    const PT2Report rep = pt2_correct(p, sp);
    for (int s : {0, 1}) {
      const auto idx = states_with_spin(sp.weights, s);
      const PT2State& st = rep.states[idx.front()];
      bool all_negative = true;
      for (const auto& c : st.contributions) all_negative &= c.denominator < 0.0;
      if (all_negative) EXPECT_LE(st.e_pt2, st.e_psi);
    }
  }
}

TEST(PT2, ContractedWeightsKeepRatios) {
  std::mt19937 rng(43);
  for (int draw = 0; draw < 30; ++draw) {
    ModelParams p = testutil::random_params(rng);
    p.u_m += 3.0;
    p.u_l += 3.0;
    const ModelSpectrum sp = analyze_h0(p);
    const PT2Report rep = pt2_correct(p, sp);
    const auto cw = contracted_weights(rep, sp);
    for (std::size_t k = 0; k < cw.size(); ++k) {
      EXPECT_NEAR(cw[k].model_space_weight, 1.0 / (1.0 + cw[k].tail_norm2), 1e-14);
      for (std::size_t l = 0; l < kNumLabels; ++l) {
        EXPECT_NEAR(cw[k].relative.weights[l], sp.weights[k].weights[l], 1e-12);
        EXPECT_NEAR(cw[k].absolute.weights[l], sp.weights[k].weights[l] * cw[k].model_space_weight, 1e-14);
      }
    }
  }
}

TEST(PT2, ContractedWeightRatioWithinTriplet) {
  ModelParams p = testutil::tscan_set();
  p.t = 0.52;
  const ModelSpectrum sp = analyze_h0(p);
  const auto cw = contracted_weights(pt2_correct(p, sp), sp);
  for (std::size_t k : states_with_spin(sp.weights, 1)) {
    const double before = sp.weights[k].weight({1, 1, 1}) / sp.weights[k].weight({1, 0, 1});
    const double after = cw[k].absolute.weight({1, 1, 1}) / cw[k].absolute.weight({1, 0, 1});
    EXPECT_NEAR(after / before, 1.0, 1e-12);
    EXPECT_GT(cw[k].tail_norm2, 0.0);
  }
}

TEST(PT2, SmallDenominatorRaised) {
  // U = 0 and equal orbital energies: perturbers degenerate with the model space
  ModelParams p = testutil::exchange_only(0, 0, 0, 0, 1e-12);
  p.t = 0.1;
  try {
    pt2_correct(p);
  } catch (const ModelError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SmallDenominator);
    EXPECT_NE(std::string(e.what()).find("perturber"), std::string::npos);
    return;
  }
  FAIL() << "expected SmallDenominator";
}

TEST(PT2, ScalingAgainstPartitionedHamiltonian) {
  const ModelParams p = testutil::tscan_set();
  std::vector<ScalingRow> rows;
  for (double t : {0.025, 0.05, 0.1}) rows.push_back(pt2_scaling_point(p, t, ReferenceHamiltonian::Partitioned));
  const ModelSpectrum sp = analyze_h0(p);
  const std::size_t lowest_triplet = states_with_spin(sp.weights, 1).front();
  double lo = rows[0].ratio[lowest_triplet], hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, r.ratio[lowest_triplet]);
    hi = std::max(hi, r.ratio[lowest_triplet]);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LE(hi / lo, 2.0);
}
