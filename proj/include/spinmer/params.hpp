#pragma once

#include <array>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "error.hpp"
#include "format.hpp"

namespace spinmer {

/// One instance of the four-electron / four-orbital ML1L2 model.
///
/// Energies are in units of the metal exchange K_M. One-electron energies are
/// referenced to the phi_M orbital. The ligand-ligand exchange has no field and
/// is identically zero.
struct ModelParams {
  double k_m = 1.0;         ///< metal exchange K(M, M')
  double k1 = 0.0;          ///< K(L1, M)
  double k2 = 0.0;          ///< K(L2, M)
  double kp1 = 0.0;         ///< K(L1, M')
  double kp2 = 0.0;         ///< K(L2, M')
  double eps_mprime = 0.0;  ///< orbital energy of phi_M'
  double eps_l1 = 0.0;      ///< orbital energy of phi_L1
  double eps_l2 = 0.0;      ///< orbital energy of phi_L2
  double u_m = 0.0;         ///< on-site repulsion, both metal orbitals
  double u_l = 0.0;         ///< on-site repulsion, both ligand orbitals
  double t = 0.0;           ///< ligand-metal hopping

  bool operator==(const ModelParams&) const = default;
};

namespace detail {

struct ParamField {
  std::string_view key;
  double ModelParams::*member;
  bool required;
};

inline constexpr std::array<ParamField, 11> kParamFields{{
    {"k_m", &ModelParams::k_m, true},
    {"k1", &ModelParams::k1, true},
    {"k2", &ModelParams::k2, true},
    {"kp1", &ModelParams::kp1, true},
    {"kp2", &ModelParams::kp2, true},
    {"eps_mprime", &ModelParams::eps_mprime, true},
    {"eps_l1", &ModelParams::eps_l1, true},
    {"eps_l2", &ModelParams::eps_l2, true},
    {"u_m", &ModelParams::u_m, false},
    {"u_l", &ModelParams::u_l, false},
    {"t", &ModelParams::t, false},
}};

inline std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

}  // namespace detail

/// Throws NegativeExchange / NegativeRepulsion when an invariant is violated.
inline void check_invariants(const ModelParams& p) {
  if (!(p.k_m > 0.0)) throw ModelError(ErrorCode::NegativeExchange, "k_m must be > 0");
  const std::pair<const char*, double> exchange[] = {
      {"k1", p.k1}, {"k2", p.k2}, {"kp1", p.kp1}, {"kp2", p.kp2}};
  for (auto [name, v] : exchange)
    if (!(v >= 0.0)) throw ModelError(ErrorCode::NegativeExchange, std::string(name) + " must be >= 0");
  const std::pair<const char*, double> repulsion[] = {{"u_m", p.u_m}, {"u_l", p.u_l}, {"t", p.t}};
  for (auto [name, v] : repulsion)
    if (!(v >= 0.0)) throw ModelError(ErrorCode::NegativeRepulsion, std::string(name) + " must be >= 0");
}

/// Parses the `key = value` parameter format. Lines are order-independent,
/// '#' starts a comment, blank lines are skipped. u_m, u_l and t default to 0.
inline ModelParams parse_params(std::string_view text) {
  ModelParams p;
  std::map<std::string_view, int> seen;  // key -> line number
  int line_no = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ModelError(ErrorCode::MalformedNumber, where + ": expected 'key = value'");
    const auto key = detail::trim(line.substr(0, eq));
    const auto value_text = detail::trim(line.substr(eq + 1));

    const detail::ParamField* field = nullptr;
    for (const auto& f : detail::kParamFields)
      if (f.key == key) field = &f;
    if (!field) throw ModelError(ErrorCode::UnknownKey, where + ": unknown key '" + std::string(key) + "'");
    if (auto [it, inserted] = seen.emplace(field->key, line_no); !inserted)
      throw ModelError(ErrorCode::DuplicateKey, where + ": key '" + std::string(key) +
                                                    "' already set on line " + std::to_string(it->second));
    const auto value = detail::parse_number(value_text);
    if (!value)
      throw ModelError(ErrorCode::MalformedNumber, where + ": cannot parse '" + std::string(value_text) + "'");
    p.*(field->member) = *value;
  }
  for (const auto& f : detail::kParamFields)
    if (f.required && !seen.contains(f.key))
      throw ModelError(ErrorCode::MissingKey, "missing required key '" + std::string(f.key) + "'");
  check_invariants(p);
  return p;
}

/// Renders `p` in the parameter-file format; parse_params(render_params(p)) == p.
inline std::string render_params(const ModelParams& p) {
  std::string out;
  for (const auto& f : detail::kParamFields) {
    out += f.key;
    out += " = ";
    out += format_double(p.*(f.member));
    out += '\n';
  }
  return out;
}

/// Single-line `key=value` summary used in CSV provenance headers.
inline std::string summarize_params(const ModelParams& p) {
  std::string out;
  for (const auto& f : detail::kParamFields) {
    if (!out.empty()) out += ' ';
    out += f.key;
    out += '=';
    out += format_double(p.*(f.member));
  }
  return out;
}

}  // namespace spinmer
