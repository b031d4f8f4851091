#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "analysis.hpp"
#include "format.hpp"
#include "matrix.hpp"
#include "perturbation.hpp"
#include "spin.hpp"

namespace spinmer::csv {

inline void provenance(std::ostream& os, const std::string& what) { os << "# " << what << '\n'; }

/// Dense matrix, one row per line.
inline void write_matrix(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << format_double(m(i, j));
    os << '\n';
  }
}

inline void write_weight_row(std::ostream& os, const WeightRow& r) {
  os << format_double(r.energy) << ',' << r.s_total;
  for (double w : r.weights) os << ',' << format_double(w);
  os << ',' << format_double(r.w_sm1) << ',' << format_double(r.w_sm0) << '\n';
}

inline void write_weights(std::ostream& os, const WeightTable& rows) {
  os << "energy,s_total,w_000,w_011,w_101,w_110,w_111,w_211,w_sm1,w_sm0\n";
  for (const auto& r : rows) write_weight_row(os, r);
}

/// Weights are the model-space ones, which the perturbers leave unchanged.
inline void write_pt2(std::ostream& os, const PT2Report& rep) {
  os << "state_index,s_total,e0,e_pt2,tail_norm2,w_sm1,w_sm0\n";
  for (const auto& st : rep.states)
    os << st.index << ',' << st.s_total << ',' << format_double(st.e_psi) << ',' << format_double(st.e_pt2) << ','
       << format_double(st.tail_norm2()) << ',' << format_double(st.weights.w_sm1) << ','
       << format_double(st.weights.w_sm0) << '\n';
}

inline void write_sweep(std::ostream& os, const std::vector<SweepPoint>& points) {
  os << "param,e_s0_a,e_s0_b,e_s1_a,e_s1_b,e_s1_c,e_s2,gs_spin,w_sm0,w_sm1\n";
  for (const auto& pt : points) {
    os << format_double(pt.param);
    for (double e : sector_energies(pt)) os << ',' << format_double(e);
    os << ',' << pt.ground_spin << ',' << format_double(pt.w_sm0) << ',' << format_double(pt.w_sm1) << '\n';
  }
}

}  // namespace spinmer::csv
