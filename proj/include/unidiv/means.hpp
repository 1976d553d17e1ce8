// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "unidiv/error.hpp"

namespace unidiv {

/// |p - branch| below this routes to the logarithmic / identric limit branch.
inline constexpr double mean_branch_switch = 1e-8;
/// |b - a| below this fraction of max(a, b) uses the continuous extension at a = b.
inline constexpr double mean_equal_endpoints = 1e-12;

namespace detail {

inline void require_positive_endpoints(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorKind::non_positive_endpoint,
                "endpoints must be positive, got (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
  }
}

inline bool is_small_integer(double e) { return e == std::round(e) && std::abs(e) <= 4.0; }

inline double int_power(double x, int k) {
  double result = 1.0;
  const int n = k < 0 ? -k : k;
  for (int i = 0; i < n; ++i) result *= x;
  return k < 0 ? 1.0 / result : result;
}

// (b^e - a^e) / (e (b - a)) for a < b, e != 0.
inline double power_difference_quotient(double e, double a, double b) {
  if (is_small_integer(e)) {
    const int k = static_cast<int>(e);
    return (int_power(b, k) - int_power(a, k)) / (e * (b - a));
  }
  const double la = std::log(a);
  return std::exp(e * la) * std::expm1(e * (std::log(b) - la)) / (e * (b - a));
}

}  // namespace detail

/*!
  The p-th power of the p-logarithmic mean, L_p^p(a, b):

    (b^(p+1) - a^(p+1)) / ((p + 1)(b - a))   p != -1
    (ln b - ln a) / (b - a)                  p == -1
    1                                        p == 0

  with the continuous extension a^p at a == b.
*/
inline double lp_power(double p, double a, double b) {
  detail::require_positive_endpoints(a, b);
  if (a > b) std::swap(a, b);
  if (std::abs(p) < mean_branch_switch) return 1.0;
  if (b - a < mean_equal_endpoints * b) {
    return detail::is_small_integer(p) ? detail::int_power(a, static_cast<int>(p))
                                       : std::exp(p * std::log(a));
  }
  if (std::abs(p + 1.0) < mean_branch_switch) return std::log(b / a) / (b - a);
  return detail::power_difference_quotient(p + 1.0, a, b);
}

/*!
  p-logarithmic power mean L_p(a, b). p = -1 is the logarithmic mean and
  p = 0 the identric mean; the result always lies between a and b.
*/
inline double lp_mean(double p, double a, double b) {
  detail::require_positive_endpoints(a, b);
  if (a > b) std::swap(a, b);
  if (b - a < mean_equal_endpoints * b) return a;
  double value;
  if (std::abs(p + 1.0) < mean_branch_switch) {
    value = (b - a) / std::log(b / a);
  } else if (std::abs(p) < mean_branch_switch) {
    const double la = std::log(a);
    const double lb = std::log(b);
    value = std::exp((b * lb - a * la) / (b - a) - 1.0);
  } else {
    value = std::exp(std::log(detail::power_difference_quotient(p + 1.0, a, b)) / p);
  }
  return std::clamp(value, a, b);
}

}  // namespace unidiv
