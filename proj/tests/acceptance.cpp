// Acceptance checks: one PASS/FAIL line per criterion, INFO lines for
// reported-only quantities. Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "spinmer/spinmer.hpp"
#include "spinmer_cli.hpp"

using namespace spinmer;

namespace {

// Pinned tolerances.
constexpr double kTablePoints = 0.5;       // percentage points
constexpr double kTableSeconds = 1.0;
constexpr double kQOneTol = 1e-10;
constexpr double kQZeroTol = 1e-12;
constexpr double kKmIndependenceTol = 1e-10;
constexpr double kRuleTol = 1e-10;
constexpr int kRuleDraws = 20;
constexpr double kTripletWeight = 0.85, kSingletWeight = 0.36, kGroundWeightTol = 0.02;
constexpr double kHeisenbergTol = 1e-12;
constexpr int kHeisenbergDraws = 100;
constexpr double kCommutatorTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kScalingFactor = 2.0;
constexpr double kTailCutoff = 0.5;  // max |first-order amplitude| at t = 0.1 for a state to count as perturbative
constexpr double kRatioTol = 1e-12;
constexpr double kSwapTol = 1e-11;
constexpr double kSuiteSeconds = 10.0;

int failures = 0;

void report(bool ok, const std::string& id, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id.c_str(), detail.c_str());
  if (!ok) ++failures;
}

void info(const std::string& id, const std::string& detail) { std::printf("INFO %s: %s\n", id.c_str(), detail.c_str()); }

std::string fmt(double x) { return format_double(x); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelParams random_params(std::mt19937& rng) {
  std::uniform_real_distribution<double> k(0.0, 1.5), e(-3.0, 3.0), u(0.0, 5.0), t(0.0, 0.6);
  ModelParams p;
  p.k_m = 0.1 + k(rng);
  p.k1 = k(rng);
  p.k2 = k(rng);
  p.kp1 = k(rng);
  p.kp2 = k(rng);
  p.eps_mprime = e(rng);
  p.eps_l1 = e(rng);
  p.eps_l2 = e(rng);
  p.u_m = u(rng);
  p.u_l = u(rng);
  p.t = t(rng);
  return p;
}

ModelParams swap_ligands(ModelParams p) {
  std::swap(p.k1, p.k2);
  std::swap(p.kp1, p.kp2);
  std::swap(p.eps_l1, p.eps_l2);
  return p;
}

void tables(const char* id, const char* table) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = cli::reproduce_tables();
  const double elapsed = seconds_since(t0);
  bool ok = elapsed < kTableSeconds;
  std::string detail;
  for (const auto& r : rows) {
    if (std::string(r.ref.table) != table) continue;
    const double d1 = 100.0 * r.w_sm1 - r.ref.ref_sm1, d0 = 100.0 * r.w_sm0 - r.ref.ref_sm0;
    ok &= std::abs(d1) <= kTablePoints && std::abs(d0) <= kTablePoints;
    char buf[160];
    std::snprintf(buf, sizeof buf, "K1=K2=%.2f -> %.2f%%/%.2f%% (ref %.0f/%.0f); ", r.ref.k12, 100.0 * r.w_sm1,
                  100.0 * r.w_sm0, r.ref.ref_sm1, r.ref.ref_sm0);
    detail += buf;
  }
  report(ok, id, detail + "time " + fmt(elapsed) + " s");
}

void q_scan_criterion() {
  const std::vector<double> ends{0.0, 1.0};
  double dev_one = 0.0, dev_zero = 0.0;
  for (double k1 : {0.0, 0.25, 0.5}) {
    const auto e = q_scan(1.0, k1, ends);
    dev_zero = std::max(dev_zero, std::abs(e[0].w_sm0));
    dev_one = std::max(dev_one, std::abs(e[1].w_sm0 - 0.5));
  }
  const auto grid = linspace(0.0, 2.0, 41);
  const auto ref = q_scan(1.0, 0.25, grid);
  double spread = 0.0;
  for (double km : {0.5, 2.0}) {
    const auto other = q_scan(km, 0.25 * km, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) spread = std::max(spread, std::abs(other[i].w_sm0 - ref[i].w_sm0));
  }
  report(dev_one <= kQOneTol && dev_zero <= kQZeroTol && spread <= kKmIndependenceTol, "3 Q-scan crossing",
         "|w(Q=1)-0.5|=" + fmt(dev_one) + " |w(Q=0)|=" + fmt(dev_zero) + " max K_M spread on 41 points=" + fmt(spread));
}

void rules_criterion() {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> km_dist(0.5, 2.0), unit(0.0, 1.0);
  double worst[3] = {0, 0, 0};
  for (int i = 0; i < kRuleDraws; ++i) {
    const double km = km_dist(rng);
    ModelParams p;
    p.k_m = km;
    // R1: Td family, 2K_M = K1 + K'1
    const double a1 = 2.0 * km * unit(rng);
    p.k1 = p.k2 = a1;
    p.kp1 = p.kp2 = 2.0 * km - a1;
    worst[0] = std::max(worst[0], check_rule(p, RuleId::R1).weight_residual);
    // R2: K1 = K2 = K'1 = a, K'2 = 2K_M - 3a
    const double a2 = 2.0 * km / 3.0 * unit(rng);
    p.k1 = p.k2 = p.kp1 = a2;
    p.kp2 = 2.0 * km - 3.0 * a2;
    worst[1] = std::max(worst[1], check_rule(p, RuleId::R2).weight_residual);
    // R3: K1 = K2 = K'1 = a, K'2 = K_M - a
    const double a3 = km * (2.0 / 3.0 + unit(rng) / 3.0);
    p.k1 = p.k2 = p.kp1 = a3;
    p.kp2 = km - a3;
    worst[2] = std::max(worst[2], check_rule(p, RuleId::R3).weight_residual);
  }
  report(worst[0] <= kRuleTol && worst[1] <= kRuleTol && worst[2] <= kRuleTol, "4 mixing rules",
         "max residual over " + std::to_string(kRuleDraws) + " draws: R1=" + fmt(worst[0]) + " R2=" + fmt(worst[1]) +
             " R3=" + fmt(worst[2]));
}

void t_scan_criterion() {
  const ModelParams p = cli::tscan_reference_params();
  const auto grid = linspace(0.0, 0.8, 161);
  const auto pts = t_scan(p, grid);
  const auto cross = t_scan_crossings(p, pts);

  std::string seq = std::to_string(pts.front().ground_spin);
  for (const auto& c : cross) seq += "->" + std::to_string(c.s_after) + "@t=" + fmt(std::round(c.at * 1e5) / 1e5);
  const bool sequence_ok = cross.size() == 2 && pts.front().ground_spin == 2 && cross[0].s_after == 1 &&
                           cross[1].s_before == 1 && cross[1].s_after == 0;

  const SweepPoint at52 = t_point(p, 0.52);
  const bool triplet_ok = at52.ground_spin == 1 && std::abs(at52.w_sm1 - kTripletWeight) <= kGroundWeightTol;
  const SweepPoint last = pts.back();
  const bool singlet_ok = last.ground_spin == 0 && std::abs(last.w_sm1 - kSingletWeight) <= kGroundWeightTol;

  report(sequence_ok && triplet_ok && singlet_ok, "5 t-scan ground states",
         "sequence " + seq + "; t=0.52 ground S=" + std::to_string(at52.ground_spin) + " w_sm1=" + fmt(at52.w_sm1) +
             "; t=0.8 ground S=" + std::to_string(last.ground_spin) + " w_sm1=" + fmt(last.w_sm1));

  ModelParams q = p;
  q.t = 0.52;
  const PT2Report rep = pt2_correct(q);
  const PT2State& g = rep.states[rep.ground()];
  double e_quintet = 0.0;
  for (const auto& st : rep.states)
    if (st.s_total == 2) e_quintet = st.e_psi;
  info("5 triplet correction at t=0.52",
       "dE=" + fmt(g.correction()) + " dE/|E0|=" + fmt(g.relative_correction()) +
           " dE/|E0-E_quintet|=" + fmt(g.correction() / std::abs(g.e_psi - e_quintet)));
}

void heisenberg_property() {
  std::mt19937 rng(101);
  double worst = 0.0;
  for (int i = 0; i < kHeisenbergDraws; ++i) worst = std::max(worst, heisenberg_oracle(random_params(rng)).max_deviation);
  report(worst <= kHeisenbergTol, "6a Heisenberg equivalence",
         "max deviation over " + std::to_string(kHeisenbergDraws) + " draws=" + fmt(worst));
}

void commutator_property() {
  std::mt19937 rng(102);
  const ConfigSpace neutral = enumerate_space(SpaceKind::Neutral);
  const ConfigSpace full = enumerate_space(SpaceKind::FullMs0);
  const Matrix s2n = s2_matrix(neutral), s2f = s2_matrix(full);
  double worst_h0 = 0.0, worst_full = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ModelParams p = random_params(rng);
    worst_h0 = std::max(worst_h0, commutator_norm(build_h0(p).matrix, s2n));
    worst_full = std::max(worst_full, commutator_norm(build_full_h(p).matrix, s2f));
  }
  report(worst_h0 <= kCommutatorTol && worst_full <= kCommutatorTol, "6b [H,S^2] vanishes",
         "H0 " + fmt(worst_h0) + ", full " + fmt(worst_full));
}

void normalization_property() {
  std::mt19937 rng(103);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i)
    for (const WeightRow& r : analyze_h0(random_params(rng)).weights) {
      double s = 0.0;
      for (double w : r.weights) s += w;
      worst = std::max(worst, std::abs(s - 1.0));
    }
  report(worst <= kNormTol, "6c weight normalization", "max |sum-1|=" + fmt(worst));
}

void scaling_property() {
  const ModelParams p = cli::tscan_reference_params();
  const double ts[] = {0.025, 0.05, 0.1};
  std::vector<ScalingRow> part, comp;
  for (double t : ts) {
    part.push_back(pt2_scaling_point(p, t, ReferenceHamiltonian::Partitioned));
    comp.push_back(pt2_scaling_point(p, t, ReferenceHamiltonian::Complete));
  }
  ModelParams at_max = p;
  at_max.t = ts[2];
  const ModelSpectrum sp = analyze_h0(p);
  const PT2Report rep = pt2_correct(at_max, sp);
  const std::size_t lowest_triplet = states_with_spin(sp.weights, 1).front();

  bool ok = true;
  std::string detail;
  for (std::size_t k = 0; k < rep.states.size(); ++k) {
    if (rep.states[k].contributions.empty()) continue;
    double tail = 0.0;
    for (double a : rep.states[k].first_order_tail) tail = std::max(tail, std::abs(a));
    double lo = part[0].ratio[k], hi = lo;
    for (const auto& r : part) {
      lo = std::min(lo, r.ratio[k]);
      hi = std::max(hi, r.ratio[k]);
    }
    const bool asserted = k == lowest_triplet || tail <= kTailCutoff;
    const bool stable = lo > 0.0 && hi / lo <= kScalingFactor;
    if (asserted) {
      ok &= stable;
      detail += "state " + std::to_string(k) + " S=" + std::to_string(rep.states[k].s_total) + " |dE|/t^4=";
      for (const auto& r : part) detail += fmt(r.ratio[k]) + (&r == &part.back() ? "" : ",");
      detail += "; ";
    } else {
      std::string vals;
      for (const auto& r : part) vals += fmt(r.ratio[k]) + " ";
      info("6d state " + std::to_string(k), "max |tail amplitude| at t=0.1 is " + fmt(tail) +
                                                 " (near-degenerate perturber), not asserted; |dE|/t^4 = " + vals);
    }
  }
  report(ok, "6d PT2 residual O(t^4)", detail + "reference: full CI without exchange among charge-transfer determinants");
  std::string vals;
  for (const auto& r : comp) vals += "t=" + fmt(r.t) + ":" + fmt(r.ratio[lowest_triplet]) + " ";
  info("6d complete full CI", "lowest triplet |dE|/t^4 " + vals + "(O(t^2) from exchange among charge-transfer determinants)");
}

void ratio_property() {
  std::mt19937 rng(104);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    ModelParams p = random_params(rng);
    p.u_m += 3.0;
    p.u_l += 3.0;
    const ModelSpectrum sp = analyze_h0(p);
    const auto cw = contracted_weights(pt2_correct(p, sp), sp);
    for (std::size_t k = 0; k < cw.size(); ++k)
      for (std::size_t l = 0; l < kNumLabels; ++l)
        worst = std::max(worst, std::abs(cw[k].relative.weights[l] - sp.weights[k].weights[l]));
  }
  report(worst <= kRatioTol, "6e PT2 relative weights unchanged", "max deviation=" + fmt(worst));
}

void swap_property() {
  std::mt19937 rng(105);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ModelParams p = random_params(rng), q = swap_ligands(p);
    const auto a = eigh(build_h0(p).matrix).values, b = eigh(build_h0(q).matrix).values;
    const auto fa = eigh(build_full_h(p).matrix).values, fb = eigh(build_full_h(q).matrix).values;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    for (std::size_t k = 0; k < fa.size(); ++k) worst = std::max(worst, std::abs(fa[k] - fb[k]));
  }
  report(worst <= kSwapTol, "6f ligand swap invariance", "max eigenvalue change=" + fmt(worst));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  tables("1 mixing set 1 (K'1=0.60, K'2=0.80)", "1");
  tables("2 mixing set 2 (K'1=K'2=0.75)", "2");
  q_scan_criterion();
  rules_criterion();
  t_scan_criterion();
  heisenberg_property();
  commutator_property();
  normalization_property();
  scaling_property();
  ratio_property();
  swap_property();
  const double elapsed = seconds_since(t0);
  report(elapsed < kSuiteSeconds, "6 suite runtime", fmt(elapsed) + " s");
  std::printf("%d failed\n", failures);
  return failures;
}
