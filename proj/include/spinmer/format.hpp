#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace spinmer {

/// Shortest round-trip decimal form of `x` (at most 17 significant digits),
/// independent of the global locale.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace spinmer
