// SPDX-License-Identifier: Apache-2.0
#pragma once

// Concrete divergence measures between two distributions. Logarithms are
// natural throughout, so information-type values are in nats.

#include <cmath>
#include <string>
#include <string_view>

#include "unidiv/compensated_sum.hpp"
#include "unidiv/error.hpp"
#include "unidiv/simplex.hpp"

namespace unidiv {

namespace detail {

// Sum over i of term(p_i, q_i) in input order with compensation. Components
// with p_i == q_i contribute exactly zero when `skip_equal` is set.
template <typename Term>
double pair_sum(const DistributionPair& pair, Term&& term, bool skip_equal = true) {
  const auto p = pair.p().values();
  const auto q = pair.q().values();
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (skip_equal && p[i] == q[i]) continue;
    acc += term(p[i], q[i]);
  }
  return acc.value();
}

// x^m for real m with the integer cases 1..4 done by multiplication.
inline double power(double x, double m) {
  if (m == 1.0) return x;
  if (m == 2.0) return x * x;
  if (m == 3.0) return x * x * x;
  if (m == 4.0) {
    const double x2 = x * x;
    return x2 * x2;
  }
  if (m == 0.0) return 1.0;
  return std::exp(m * std::log(x));
}

inline constexpr double series_cutoff = 0.1;

// v - ln(ratio) >= 0 where ratio = 1 + v is supplied exactly by the caller;
// a series near v = 0 avoids cancellation.
inline double log1p_excess(double v, double ratio) {
  if (std::abs(v) > series_cutoff) return v - std::log(ratio);
  double power = v * v;
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    const double term = power / k;
    sum += (k % 2 == 0) ? term : -term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    power *= v;
  }
  return sum;
}

// ratio ln(ratio) - v >= 0 with ratio = 1 + v, as above.
inline double xlog_excess(double v, double ratio) {
  if (std::abs(v) > series_cutoff) return ratio * std::log(ratio) - v;
  double power = v * v;
  double sum = 0.0;
  for (int k = 2; k < 40; ++k) {
    const double term = power / (k * (k - 1.0));
    sum += (k % 2 == 0) ? term : -term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    power *= v;
  }
  return sum;
}

}  // namespace detail

/// Pearson chi-square divergence: sum (p - q)^2 / q.
inline double chi_squared(const DistributionPair& pair) {
  return detail::pair_sum(pair, [](double p, double q) {
    const double d = p - q;
    return d * d / q;
  });
}

/// Kullback-Leibler relative information K(P||Q) = sum p ln(p/q).
inline double relative_information(const DistributionPair& pair) {
  // Each term carries -(p - q), which sums to zero, so all terms are >= 0.
  return detail::pair_sum(pair,
                          [](double p, double q) { return q * detail::xlog_excess((p - q) / q, p / q); });
}

/// Relative J-divergence D(P||Q) = sum (p - q) ln((p + q) / 2q).
inline double relative_j_divergence(const DistributionPair& pair) {
  return detail::pair_sum(pair, [](double p, double q) {
    return (p - q) * std::log1p((p - q) / (2.0 * q));
  });
}

/// Relative Jensen-Shannon divergence F(P||Q) = sum p ln(2p / (p + q)).
inline double relative_js_divergence(const DistributionPair& pair) {
  return detail::pair_sum(pair, [](double p, double q) {
    return p * detail::log1p_excess((q - p) / (2.0 * p), (p + q) / (2.0 * p));
  });
}

/// Relative arithmetic-geometric divergence G(P||Q) = sum ((p + q)/2) ln((p + q) / 2p).
inline double relative_ag_divergence(const DistributionPair& pair) {
  return detail::pair_sum(pair, [](double p, double q) {
    return p * detail::xlog_excess((q - p) / (2.0 * p), (p + q) / (2.0 * p));
  });
}

/// Triangular discrimination: sum (p - q)^2 / (p + q). Symmetric.
inline double triangular_discrimination(const DistributionPair& pair) {
  return detail::pair_sum(pair, [](double p, double q) {
    const double d = p - q;
    return d * d / (p + q);
  });
}

/// Bhattacharyya coefficient sum sqrt(p q), in (0, 1].
inline double bhattacharyya(const DistributionPair& pair) {
  return detail::pair_sum(pair, [](double p, double q) { return std::sqrt(p * q); }, false);
}

/// Hellinger discrimination 1 - B(P||Q), evaluated as (1/2) sum (sqrt p - sqrt q)^2.
inline double hellinger(const DistributionPair& pair) {
  return 0.5 * detail::pair_sum(pair, [](double p, double q) {
    const double d = std::sqrt(p) - std::sqrt(q);
    return d * d;
  });
}

/*!
  Vajda's |chi|^m divergence, sum |p - q|^m / q^(m-1), for m >= 1. m = 1 is the
  variational distance V, m = 2 coincides with chi_squared, m = 3 is |chi|^3.
*/
inline double vajda_abs_chi(const DistributionPair& pair, double m) {
  if (!(m >= 1.0)) {
    throw Error(ErrorKind::m_out_of_range, "m must be >= 1, got " + std::to_string(m));
  }
  if (m == 2.0) return chi_squared(pair);
  return detail::pair_sum(pair, [m](double p, double q) {
    const double d = std::abs(p - q);
    if (m == 1.0) return d;
    if (m == 3.0) return d * d * d / (q * q);
    return detail::power(d, m) / detail::power(q, m - 1.0);
  });
}

/// Variational distance V(P||Q) = sum |p - q|.
inline double variational_distance(const DistributionPair& pair) { return vajda_abs_chi(pair, 1.0); }

enum class SymmetricMeasure { psi, j, i, t };

constexpr std::string_view to_string(SymmetricMeasure id) {
  switch (id) {
    case SymmetricMeasure::psi: return "psi_sym";
    case SymmetricMeasure::j: return "j";
    case SymmetricMeasure::i: return "i";
    case SymmetricMeasure::t: return "t";
  }
  return "?";
}

/*!
  Symmetrised measures: Psi = chi2(P||Q) + chi2(Q||P), J = K(P||Q) + K(Q||P),
  I = [F(P||Q) + F(Q||P)]/2 and T = [G(P||Q) + G(Q||P)]/2.
*/
inline double symmetric_divergence(const DistributionPair& pair, SymmetricMeasure id) {
  const auto reversed = pair.swapped();
  switch (id) {
    case SymmetricMeasure::psi: return chi_squared(pair) + chi_squared(reversed);
    case SymmetricMeasure::j: return relative_information(pair) + relative_information(reversed);
    case SymmetricMeasure::i:
      return 0.5 * (relative_js_divergence(pair) + relative_js_divergence(reversed));
    case SymmetricMeasure::t:
      return 0.5 * (relative_ag_divergence(pair) + relative_ag_divergence(reversed));
  }
  return 0.0;
}

}  // namespace unidiv
