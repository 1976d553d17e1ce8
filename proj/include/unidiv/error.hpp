// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unidiv {

enum class ErrorKind {
  dimension_too_small,
  dimension_mismatch,
  non_positive_component,
  sum_out_of_tolerance,
  invalid_dimension,
  invalid_ratio_floor,
  non_positive_endpoint,
  non_positive_argument,
  m_out_of_range,
  s_out_of_range,
  degenerate_interval,
  interval_not_straddling_one,
  not_normalized,
  not_convex,
  non_monotone_second_derivative,
  unknown_measure,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension_too_small: return "DimensionTooSmall";
    case ErrorKind::dimension_mismatch: return "DimensionMismatch";
    case ErrorKind::non_positive_component: return "NonPositiveComponent";
    case ErrorKind::sum_out_of_tolerance: return "SumOutOfTolerance";
    case ErrorKind::invalid_dimension: return "InvalidDimension";
    case ErrorKind::invalid_ratio_floor: return "InvalidRatioFloor";
    case ErrorKind::non_positive_endpoint: return "NonPositiveEndpoint";
    case ErrorKind::non_positive_argument: return "NonPositiveArgument";
    case ErrorKind::m_out_of_range: return "MOutOfRange";
    case ErrorKind::s_out_of_range: return "SOutOfRange";
    case ErrorKind::degenerate_interval: return "DegenerateInterval";
    case ErrorKind::interval_not_straddling_one: return "IntervalNotStraddlingOne";
    case ErrorKind::not_normalized: return "NotNormalized";
    case ErrorKind::not_convex: return "NotConvex";
    case ErrorKind::non_monotone_second_derivative: return "NonMonotoneSecondDerivative";
    case ErrorKind::unknown_measure: return "UnknownMeasure";
  }
  return "Unknown";
}

/// Thrown by every operation whose preconditions are violated.
class Error : public std::invalid_argument {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::invalid_argument(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace unidiv
