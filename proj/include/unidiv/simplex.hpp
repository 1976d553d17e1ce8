// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "unidiv/compensated_sum.hpp"
#include "unidiv/error.hpp"

namespace unidiv {

/// Allowed absolute deviation of a distribution's sum from 1.
inline constexpr double sum_tolerance = 1e-9;

/*!
  A point of the open probability simplex: n >= 2 strictly positive
  components summing to 1 within `sum_tolerance`. Instances only come out of
  `validate`, so every Distribution in the program satisfies the invariant.
*/
class Distribution {
 public:
  static Distribution validate(std::span<const double> raw, bool renormalize = false) {
    if (raw.size() < 2) {
      throw Error(ErrorKind::dimension_too_small,
                  "a distribution needs at least 2 components, got " + std::to_string(raw.size()));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!(raw[i] > 0.0) || !std::isfinite(raw[i])) {
        throw Error(ErrorKind::non_positive_component,
                    "component " + std::to_string(i) + " is " + std::to_string(raw[i]));
      }
    }
    std::vector<double> values(raw.begin(), raw.end());
    if (renormalize) {
      const double total = compensated_sum(values.size(), [&](std::size_t i) { return values[i]; });
      for (auto& v : values) v /= total;
    }
    const double total = compensated_sum(values.size(), [&](std::size_t i) { return values[i]; });
    if (!(std::abs(total - 1.0) <= sum_tolerance)) {
      throw Error(ErrorKind::sum_out_of_tolerance,
                  "components sum to " + std::to_string(total) + ", expected 1 within 1e-9");
    }
    return Distribution(std::move(values));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  explicit Distribution(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> values_;
};

/// An ordered pair (P, Q) of equal-dimension distributions.
class DistributionPair {
 public:
  DistributionPair(Distribution p, Distribution q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.size() != q_.size()) {
      throw Error(ErrorKind::dimension_mismatch, "P has " + std::to_string(p_.size()) +
                                                     " components, Q has " +
                                                     std::to_string(q_.size()));
    }
  }

  const Distribution& p() const noexcept { return p_; }
  const Distribution& q() const noexcept { return q_; }
  std::size_t size() const noexcept { return p_.size(); }

  /// The pair (Q, P).
  DistributionPair swapped() const { return DistributionPair(q_, p_); }

  friend bool operator==(const DistributionPair&, const DistributionPair&) = default;

 private:
  Distribution p_;
  Distribution q_;
};

/// Convenience: validate two raw sequences and pair them.
inline DistributionPair make_pair(std::span<const double> p, std::span<const double> q,
                                  bool renormalize = false) {
  return DistributionPair(Distribution::validate(p, renormalize),
                          Distribution::validate(q, renormalize));
}

inline DistributionPair make_pair(std::initializer_list<double> p, std::initializer_list<double> q,
                                  bool renormalize = false) {
  return make_pair(std::span<const double>(p.begin(), p.size()),
                   std::span<const double>(q.begin(), q.size()), renormalize);
}

/// Tightest constants with lower <= p_i/q_i <= upper for every i.
struct RatioBounds {
  double lower;
  double upper;

  double width() const noexcept { return upper - lower; }
  bool degenerate() const noexcept { return !(lower < upper); }
  bool straddles_one() const noexcept { return lower < 1.0 && 1.0 < upper; }

  friend bool operator==(const RatioBounds&, const RatioBounds&) = default;
};

inline RatioBounds ratio_bounds(const DistributionPair& pair) {
  const auto p = pair.p().values();
  const auto q = pair.q().values();
  RatioBounds rb{p[0] / q[0], p[0] / q[0]};
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double x = p[i] / q[i];
    rb.lower = std::min(rb.lower, x);
    rb.upper = std::max(rb.upper, x);
  }
  return rb;
}

namespace detail {

// Uniform on (0, 1), never 0 or 1: 53 random bits centred in their cell.
inline double open_unit(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline std::vector<double> normalized_exponentials(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = -std::log(open_unit(rng));
  const double total = compensated_sum(n, [&](std::size_t i) { return v[i]; });
  for (auto& x : v) x /= total;
  return v;
}

inline double min_ratio(const std::vector<double>& p, const std::vector<double>& q) {
  double m = p[0] / q[0];
  for (std::size_t i = 1; i < p.size(); ++i) m = std::min(m, p[i] / q[i]);
  return m;
}

}  // namespace detail

/*!
  Deterministic random pair, uniform over the simplex (normalized exponential
  variates). When `min_ratio_floor` is set, both members are blended with the
  uniform distribution until min p_i/q_i reaches the floor.
*/
inline DistributionPair random_pair(int n, std::uint64_t seed,
                                    std::optional<double> min_ratio_floor = std::nullopt) {
  if (n < 2) {
    throw Error(ErrorKind::invalid_dimension, "n must be >= 2, got " + std::to_string(n));
  }
  if (min_ratio_floor && !(*min_ratio_floor > 0.0 && *min_ratio_floor <= 1.0)) {
    throw Error(ErrorKind::invalid_ratio_floor, "min_ratio_floor must lie in (0, 1]");
  }
  const auto size = static_cast<std::size_t>(n);
  std::mt19937_64 rng(seed);
  auto p = detail::normalized_exponentials(rng, size);
  auto q = detail::normalized_exponentials(rng, size);

  if (min_ratio_floor && detail::min_ratio(p, q) < *min_ratio_floor) {
    const double uniform = 1.0 / static_cast<double>(n);
    const auto p0 = p;
    const auto q0 = q;
    double weight = 0.0;
    while (detail::min_ratio(p, q) < *min_ratio_floor && weight < 1.0) {
      weight = 0.5 * (weight + 1.0);
      for (std::size_t i = 0; i < size; ++i) {
        p[i] = (1.0 - weight) * p0[i] + weight * uniform;
        q[i] = (1.0 - weight) * q0[i] + weight * uniform;
      }
    }
  }
  return make_pair(p, q, true);
}

}  // namespace unidiv
