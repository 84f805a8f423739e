// SPDX-License-Identifier: Apache-2.0
//
// Deterministic number formatting for the tabular outputs.  std::to_chars
// emits the shortest round-trip decimal form, which is platform-independent
// for IEEE doubles -- the byte-identical-output guarantees rest on it.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <system_error>

#include "qnt/error.hpp"

namespace qnt {

inline std::string format_double(double value) {
  // Integral values print without exponent or trailing fraction so counts
  // and grid points stay readable (and stable) in CSV columns.
  if (std::isfinite(value) && value == std::floor(value) &&
      std::abs(value) < 1e15) {
    const auto as_int = static_cast<long long>(value);
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, as_int);
    if (ec != std::errc{}) fail(Errc::invalid_argument, "format_double");
    return std::string(buf, ptr);
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) fail(Errc::invalid_argument, "format_double");
  return std::string(buf, ptr);
}

}  // namespace qnt
