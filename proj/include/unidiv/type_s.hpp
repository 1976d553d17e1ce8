// SPDX-License-Identifier: Apache-2.0
#pragma once

// One-parameter families: Phi_s (relative information of type s) and Omega_s
// (unified relative JS / AG divergence of type s), plus the Omega_s generator
// psi_s with analytic derivatives. Both families have removable singularities
// at s = 0 and s = 1, where the limit measures are used instead.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "unidiv/csiszar.hpp"
#include "unidiv/error.hpp"
#include "unidiv/measures.hpp"
#include "unidiv/simplex.hpp"

namespace unidiv {

/// Distance from 0 or 1 within which the limit branch is used.
inline constexpr double s_switch = 1e-5;

enum class SRegime { generic, limit_at_zero, limit_at_one };

constexpr std::string_view to_string(SRegime regime) {
  switch (regime) {
    case SRegime::generic: return "generic";
    case SRegime::limit_at_zero: return "limit_at_zero";
    case SRegime::limit_at_one: return "limit_at_one";
  }
  return "?";
}

/// The real parameter s together with the branch it routes to.
class SParameter {
 public:
  // Implicit on purpose: every real s is a valid parameter.
  SParameter(double s)
      : value_(s),
        regime_(std::abs(s) <= s_switch          ? SRegime::limit_at_zero
                : std::abs(s - 1.0) <= s_switch ? SRegime::limit_at_one
                                                : SRegime::generic) {}

  double value() const noexcept { return value_; }
  SRegime regime() const noexcept { return regime_; }

  /// The s actually used by the formulas: 0 or 1 on the limit branches.
  double effective() const noexcept {
    switch (regime_) {
      case SRegime::limit_at_zero: return 0.0;
      case SRegime::limit_at_one: return 1.0;
      case SRegime::generic: break;
    }
    return value_;
  }

 private:
  double value_;
  SRegime regime_;
};

namespace detail {

/*!
  [(1 + v)^s - 1 - s v] / [s(s - 1)], with its limits v - log1p(v) at s = 0
  and (1 + v) log1p(v) - v at s = 1. `ratio` is 1 + v computed directly. Summed against weights p with
  sum p v = 0 this gives the type-s families term by term, each term >= 0.
*/
inline double power_excess(double v, double ratio, SParameter s) {
  switch (s.regime()) {
    case SRegime::limit_at_zero: return log1p_excess(v, ratio);
    case SRegime::limit_at_one: return xlog_excess(v, ratio);
    case SRegime::generic: break;
  }
  const double sv = s.value();
  if (std::abs(v) <= series_cutoff && std::abs(sv) <= 10.0) {
    // Coefficients C(s, k) / [s(s - 1)]: c_2 = 1/2, c_{k+1} = c_k (s - k) / (k + 1).
    double c = 0.5;
    double power = v * v;
    double sum = 0.0;
    for (int k = 2; k < 80; ++k) {
      const double term = c * power;
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
      c *= (sv - k) / (k + 1.0);
      power *= v;
    }
    return sum;
  }
  return (std::expm1(sv * std::log(ratio)) - sv * v) / (sv * (sv - 1.0));
}

}  // namespace detail

/*!
  Relative information of type s:
    [s(s-1)]^-1 [sum p^s q^(1-s) - 1]    generic s
    K(Q||P)                              s = 0
    K(P||Q)                              s = 1
*/
inline double phi_s(const DistributionPair& pair, SParameter s) {
  switch (s.regime()) {
    case SRegime::limit_at_zero: return relative_information(pair.swapped());
    case SRegime::limit_at_one: return relative_information(pair);
    case SRegime::generic: break;
  }
  const SParameter e(1.0 - s.value());
  return detail::pair_sum(
      pair, [e](double p, double q) { return p * detail::power_excess((q - p) / p, q / p, e); });
}

/*!
  Unified relative JS and AG divergence of type s:
    [s(s-1)]^-1 [sum p ((p + q)/2p)^s - 1]    generic s
    F(P||Q)                                   s = 0
    G(P||Q)                                   s = 1
*/
inline double omega_s(const DistributionPair& pair, SParameter s) {
  switch (s.regime()) {
    case SRegime::limit_at_zero: return relative_js_divergence(pair);
    case SRegime::limit_at_one: return relative_ag_divergence(pair);
    case SRegime::generic: break;
  }
  return detail::pair_sum(pair, [s](double p, double q) {
    return p * detail::power_excess((q - p) / (2.0 * p), (p + q) / (2.0 * p), s);
  });
}

namespace detail {

inline void require_positive_argument(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorKind::non_positive_argument, "x must be positive, got " + std::to_string(x));
  }
}

// ln((x + 1) / 2x), accurate near x = 1.
inline double log_half_ratio(double x) { return std::log1p((1.0 - x) / (2.0 * x)); }

}  // namespace detail

/// psi_s(x): the generator with C_psi_s = Omega_s; psi_s(1) = 0.
inline double psi_s(double x, SParameter s) {
  detail::require_positive_argument(x);
  return x * detail::power_excess((1.0 - x) / (2.0 * x), (1.0 + x) / (2.0 * x), s);
}

inline double psi_s_d1(double x, SParameter s) {
  detail::require_positive_argument(x);
  const double u = detail::log_half_ratio(x);
  switch (s.regime()) {
    case SRegime::limit_at_zero: return (1.0 - x) / (2.0 * (1.0 + x)) - u;
    case SRegime::limit_at_one: return 0.5 * (1.0 - 1.0 / x + u);
    case SRegime::generic: break;
  }
  const double sv = s.value();
  // 1 - t^(s-1)/x = -expm1((s - 1) u - ln x)
  const double first = std::expm1(sv * u) / sv;
  const double second = -0.5 * std::expm1((sv - 1.0) * u - std::log(x));
  return (first + second) / (sv - 1.0);
}

inline double psi_s_d2(double x, SParameter s) {
  detail::require_positive_argument(x);
  switch (s.regime()) {
    case SRegime::limit_at_zero: return 1.0 / (x * (x + 1.0) * (x + 1.0));
    case SRegime::limit_at_one: return 1.0 / (2.0 * x * x * (x + 1.0));
    case SRegime::generic: break;
  }
  return std::exp((s.value() - 2.0) * detail::log_half_ratio(x)) / (4.0 * x * x * x);
}

inline double psi_s_d3(double x, SParameter s) {
  detail::require_positive_argument(x);
  const double sv = s.effective();
  const double xp1 = x + 1.0;
  return -(sv + 1.0 + 3.0 * x) / (x * x * xp1 * xp1 * xp1) *
         std::exp(sv * detail::log_half_ratio(x));
}

/// psi_s packaged for the generic Csiszar engine.
inline GeneratorFunction psi_generator(SParameter s) {
  std::string label = "psi:";
  label += std::to_string(s.value());
  return {std::move(label), [s](double x) { return psi_s(x, s); },
          [s](double x) { return psi_s_d1(x, s); }, [s](double x) { return psi_s_d2(x, s); },
          [s](double x) { return psi_s_d3(x, s); }};
}

/// One family member next to the base measure it reduces to.
struct SpecialCase {
  std::string_view label;
  double s;
  double family_value;
  double base_value;
};

/*!
  Omega_s at s = -1, 0, 1/2, 1, 2 beside independent evaluations:
  Delta/4, F(P||Q), 4 h(P||M) with M = (P + Q)/2, G(P||Q), chi^2(Q||P)/8.
*/
inline std::array<SpecialCase, 5> omega_special_cases(const DistributionPair& pair) {
  std::vector<double> mid(pair.size());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (pair.p()[i] + pair.q()[i]);
  const DistributionPair to_mid(pair.p(), Distribution::validate(mid, true));
  return {{
      {"omega_-1 = delta/4", -1.0, omega_s(pair, -1.0), 0.25 * triangular_discrimination(pair)},
      {"omega_0 = F", 0.0, omega_s(pair, 0.0), relative_js_divergence(pair)},
      {"omega_1/2 = 4h(P||M)", 0.5, omega_s(pair, 0.5), 4.0 * hellinger(to_mid)},
      {"omega_1 = G", 1.0, omega_s(pair, 1.0), relative_ag_divergence(pair)},
      {"omega_2 = chi2(Q||P)/8", 2.0, omega_s(pair, 2.0), chi_squared(pair.swapped()) / 8.0},
  }};
}

/*!
  Phi_s at s = -1, 0, 1/2, 1, 2 beside chi^2(Q||P)/2, K(Q||P), 4h, K(P||Q),
  chi^2(P||Q)/2.
*/
inline std::array<SpecialCase, 5> phi_special_cases(const DistributionPair& pair) {
  const auto reversed = pair.swapped();
  return {{
      {"phi_-1 = chi2(Q||P)/2", -1.0, phi_s(pair, -1.0), 0.5 * chi_squared(reversed)},
      {"phi_0 = K(Q||P)", 0.0, phi_s(pair, 0.0), relative_information(reversed)},
      {"phi_1/2 = 4h", 0.5, phi_s(pair, 0.5), 4.0 * hellinger(pair)},
      {"phi_1 = K(P||Q)", 1.0, phi_s(pair, 1.0), relative_information(pair)},
      {"phi_2 = chi2(P||Q)/2", 2.0, phi_s(pair, 2.0), 0.5 * chi_squared(pair)},
  }};
}

}  // namespace unidiv
