#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gwasym {

/// Failure categories surfaced by the library. The CLI maps these onto exit
/// codes (usage vs. computation errors).
enum class ErrorCode {
  domain_error,
  precision_too_low,
  missing_prerequisite,
  insufficient_table,
  bracket_failure,
  discriminant_nonpositive,
  leading_coefficient_zero,
  insufficient_coefficients,
  nonpositive_entry,
  insufficient_length,
  degenerate_window,
  ray_out_of_range,
  sample_above_x0,
  unsupported_combination,
  io_failure,
  parse_error,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain_error: return "domain-error";
    case ErrorCode::precision_too_low: return "precision-too-low";
    case ErrorCode::missing_prerequisite: return "missing-prerequisite";
    case ErrorCode::insufficient_table: return "insufficient-table";
    case ErrorCode::bracket_failure: return "bracket-failure";
    case ErrorCode::discriminant_nonpositive: return "discriminant-nonpositive";
    case ErrorCode::leading_coefficient_zero: return "leading-coefficient-zero";
    case ErrorCode::insufficient_coefficients: return "insufficient-coefficients";
    case ErrorCode::nonpositive_entry: return "nonpositive-entry";
    case ErrorCode::insufficient_length: return "insufficient-length";
    case ErrorCode::degenerate_window: return "degenerate-window";
    case ErrorCode::ray_out_of_range: return "ray-out-of-range";
    case ErrorCode::sample_above_x0: return "sample-above-x0";
    case ErrorCode::unsupported_combination: return "unsupported-combination";
    case ErrorCode::io_failure: return "io-failure";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gwasym
