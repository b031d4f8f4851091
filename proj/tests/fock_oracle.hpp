#pragma once
// Test-only brute-force second quantization. States are sorted lists of
// spin-orbital indices (2 * orbital + spin); operators are applied one at a
// time by counting the operators they have to pass. Nothing here touches the
// library's bitmask code paths.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "spinmer/determinant.hpp"
#include "spinmer/matrix.hpp"
#include "spinmer/params.hpp"

namespace oracle {

using State = std::vector<int>;  // ascending spin-orbitals

struct Term {
  double coeff;
  State state;
};

inline std::optional<Term> annihilate(const Term& in, int so) {
  auto it = std::find(in.state.begin(), in.state.end(), so);
  if (it == in.state.end()) return std::nullopt;
  const auto pos = it - in.state.begin();
  Term out = in;
  out.state.erase(out.state.begin() + pos);
  if (pos % 2) out.coeff = -out.coeff;
  return out;
}

inline std::optional<Term> create(const Term& in, int so) {
  if (std::find(in.state.begin(), in.state.end(), so) != in.state.end()) return std::nullopt;
  auto it = std::lower_bound(in.state.begin(), in.state.end(), so);
  const auto pos = it - in.state.begin();
  Term out = in;
  out.state.insert(out.state.begin() + pos, so);
  if (pos % 2) out.coeff = -out.coeff;
  return out;
}

/// Applies a product of operators, rightmost first. `ops` lists (is_creation,
/// spin-orbital) from left to right as written.
inline std::optional<Term> apply(const std::vector<std::pair<bool, int>>& ops, Term t) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    auto r = it->first ? create(t, it->second) : annihilate(t, it->second);
    if (!r) return std::nullopt;
    t = *r;
  }
  return t;
}

inline State to_state(const spinmer::Determinant& d) {
  State s;
  for (int o = 0; o < 4; ++o)
    for (int sp = 0; sp < 2; ++sp)
      if (d.occupied(o, sp)) s.push_back(2 * o + sp);
  return s;
}

inline int so(int orb, int spin) { return 2 * orb + spin; }

/// H = sum eps n + sum U n_up n_dn + t sum (c+_l c_m + h.c.)
///   + 1/2 sum_{p != q} K_pq sum_{s,s'} c+_{p s} c+_{q s'} c_{p s'} c_{q s}
/// in the basis `dets`.
inline spinmer::Matrix hamiltonian(const std::vector<spinmer::Determinant>& dets, const spinmer::ModelParams& p) {
  const double eps[4] = {p.eps_l1, 0.0, p.eps_mprime, p.eps_l2};
  const double U[4] = {p.u_l, p.u_m, p.u_m, p.u_l};
  double K[4][4] = {};
  auto setk = [&](int a, int b, double v) { K[a][b] = K[b][a] = v; };
  setk(1, 2, p.k_m);
  setk(0, 1, p.k1);
  setk(3, 1, p.k2);
  setk(0, 2, p.kp1);
  setk(3, 2, p.kp2);

  std::map<State, std::size_t> index;
  for (std::size_t i = 0; i < dets.size(); ++i) index[to_state(dets[i])] = i;

  const std::size_t n = dets.size();
  spinmer::Matrix h(n, n);
  auto add = [&](std::size_t col, const std::optional<Term>& r, double scale) {
    if (!r) return;
    auto it = index.find(r->state);
    if (it != index.end()) h(it->second, col) += scale * r->coeff;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Term start{1.0, to_state(dets[i])};
    for (int o = 0; o < 4; ++o) {
      for (int s = 0; s < 2; ++s) add(i, apply({{true, so(o, s)}, {false, so(o, s)}}, start), eps[o]);
      add(i, apply({{true, so(o, 0)}, {false, so(o, 0)}, {true, so(o, 1)}, {false, so(o, 1)}}, start), U[o]);
    }
    for (int l : {0, 3})
      for (int m : {1, 2})
        for (int s = 0; s < 2; ++s) {
          add(i, apply({{true, so(l, s)}, {false, so(m, s)}}, start), p.t);
          add(i, apply({{true, so(m, s)}, {false, so(l, s)}}, start), p.t);
        }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        if (a == b || K[a][b] == 0.0) continue;
        for (int s = 0; s < 2; ++s)
          for (int s2 = 0; s2 < 2; ++s2)
            add(i, apply({{true, so(a, s)}, {true, so(b, s2)}, {false, so(a, s2)}, {false, so(b, s)}}, start),
                0.5 * K[a][b]);
      }
  }
  return h;
}

/// Total S^2 = sum_{p,q} S_p . S_q by operator application.
inline spinmer::Matrix total_s2(const std::vector<spinmer::Determinant>& dets) {
  std::map<State, std::size_t> index;
  for (std::size_t i = 0; i < dets.size(); ++i) index[to_state(dets[i])] = i;
  const std::size_t n = dets.size();
  spinmer::Matrix m(n, n);
  auto add = [&](std::size_t col, const std::optional<Term>& r, double scale) {
    if (!r) return;
    auto it = index.find(r->state);
    if (it != index.end()) m(it->second, col) += scale * r->coeff;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Term start{1.0, to_state(dets[i])};
    for (int p = 0; p < 4; ++p)
      for (int q = 0; q < 4; ++q) {
        // Sz_p Sz_q
        for (int sp = 0; sp < 2; ++sp)
          for (int sq = 0; sq < 2; ++sq) {
            const double w = (sp == 0 ? 0.5 : -0.5) * (sq == 0 ? 0.5 : -0.5);
            add(i, apply({{true, so(p, sp)}, {false, so(p, sp)}, {true, so(q, sq)}, {false, so(q, sq)}}, start), w);
          }
        // 1/2 (S+_p S-_q + S-_p S+_q)
        add(i, apply({{true, so(p, 0)}, {false, so(p, 1)}, {true, so(q, 1)}, {false, so(q, 0)}}, start), 0.5);
        add(i, apply({{true, so(p, 1)}, {false, so(p, 0)}, {true, so(q, 0)}, {false, so(q, 1)}}, start), 0.5);
      }
  }
  return m;
}

}  // namespace oracle
