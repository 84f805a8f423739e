// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qnt {

// Failure categories raised by the toolkit. The CLI maps these onto its
// exit-code contract (0 ok, 2 config, 3 simulation, 4 estimation).
enum class Errc {
  invalid_argument,
  invalid_candidate,
  degenerate_moments,
  negative_square,
  no_valid_candidate,
  no_root_in_range,
  empty_database,
  mixed_circuits,
  singular_distribution,
  singular_fim,
  dimension_too_large,
  dimension_mismatch,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::invalid_candidate: return "invalid_candidate";
    case Errc::degenerate_moments: return "degenerate_moments";
    case Errc::negative_square: return "negative_square";
    case Errc::no_valid_candidate: return "no_valid_candidate";
    case Errc::no_root_in_range: return "no_root_in_range";
    case Errc::empty_database: return "empty_database";
    case Errc::mixed_circuits: return "mixed_circuits";
    case Errc::singular_distribution: return "singular_distribution";
    case Errc::singular_fim: return "singular_fim";
    case Errc::dimension_too_large: return "dimension_too_large";
    case Errc::dimension_mismatch: return "dimension_mismatch";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const { return code_; }
  const char* code_name() const { return errc_name(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qnt
