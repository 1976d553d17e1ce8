// SPDX-License-Identifier: Apache-2.0
#pragma once

// Generic Csiszar f-divergence engine and the Dragomir-type bound functionals
// built on a generator f with analytic derivatives through order three.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "unidiv/error.hpp"
#include "unidiv/measures.hpp"
#include "unidiv/simplex.hpp"

namespace unidiv {

/*!
  A convex generator f on (0, inf) normalized so that f(1) = 0, carried with
  its first three derivatives. Construction checks normalization (to 1e-12)
  and probes f'' >= 0 on a fixed grid; neither check is a proof of convexity.
*/
class GeneratorFunction {
 public:
  using Map = std::function<double(double)>;

  static constexpr std::array<double, 7> convexity_probes{0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0};

  GeneratorFunction(std::string label, Map f, Map d1, Map d2, Map d3)
      : label_(std::move(label)),
        f_(std::move(f)),
        d1_(std::move(d1)),
        d2_(std::move(d2)),
        d3_(std::move(d3)) {
    const double at_one = f_(1.0);
    if (!(std::abs(at_one) <= 1e-12)) {
      throw Error(ErrorKind::not_normalized,
                  label_ + ": f(1) = " + std::to_string(at_one) + ", expected 0");
    }
    for (double x : convexity_probes) {
      if (!(d2_(x) >= 0.0)) {
        throw Error(ErrorKind::not_convex, label_ + ": f''(" + std::to_string(x) + ") < 0");
      }
    }
  }

  const std::string& label() const noexcept { return label_; }
  double operator()(double x) const { return f_(x); }
  double d1(double x) const { return d1_(x); }
  double d2(double x) const { return d2_(x); }
  double d3(double x) const { return d3_(x); }

 private:
  std::string label_;
  Map f_;
  Map d1_;
  Map d2_;
  Map d3_;
};

namespace generators {

/// x ln x, giving K(P||Q).
inline GeneratorFunction kullback_leibler() {
  return {"kl", [](double x) { return x * std::log(x); }, [](double x) { return std::log(x) + 1.0; },
          [](double x) { return 1.0 / x; }, [](double x) { return -1.0 / (x * x); }};
}

/// -ln x, giving K(Q||P).
inline GeneratorFunction reverse_kullback_leibler() {
  return {"reverse_kl", [](double x) { return -std::log(x); }, [](double x) { return -1.0 / x; },
          [](double x) { return 1.0 / (x * x); }, [](double x) { return -2.0 / (x * x * x); }};
}

/// (x - 1)^2, giving chi^2(P||Q).
inline GeneratorFunction pearson() {
  return {"chi2", [](double x) { return (x - 1.0) * (x - 1.0); },
          [](double x) { return 2.0 * (x - 1.0); }, [](double) { return 2.0; },
          [](double) { return 0.0; }};
}

/// (sqrt x - 1)^2, giving 2 h(P||Q).
inline GeneratorFunction hellinger() {
  return {"hellinger",
          [](double x) {
            const double d = std::sqrt(x) - 1.0;
            return d * d;
          },
          [](double x) { return 1.0 - 1.0 / std::sqrt(x); },
          [](double x) { return 0.5 / (x * std::sqrt(x)); },
          [](double x) { return -0.75 / (x * x * std::sqrt(x)); }};
}

}  // namespace generators

/// C_f(P||Q) = sum q_i f(p_i / q_i).
inline double csiszar_divergence(const DistributionPair& pair, const GeneratorFunction& gen) {
  return detail::pair_sum(pair, [&](double p, double q) { return q * gen(p / q); });
}

/// E_{C_f}(P||Q) = sum (p_i - q_i) f'(p_i / q_i); an upper bound on C_f.
inline double dragomir_e(const DistributionPair& pair, const GeneratorFunction& gen) {
  return detail::pair_sum(pair, [&](double p, double q) { return (p - q) * gen.d1(p / q); });
}

/// E*_{C_f}(P||Q) = sum (p_i - q_i) f'((p_i + q_i) / (2 q_i)).
inline double dragomir_e_star(const DistributionPair& pair, const GeneratorFunction& gen) {
  return detail::pair_sum(pair,
                          [&](double p, double q) { return (p - q) * gen.d1((p + q) / (2.0 * q)); });
}

namespace detail {

inline void require_proper_interval(const RatioBounds& rb) {
  if (!(rb.lower < rb.upper)) {
    throw Error(ErrorKind::degenerate_interval, "need r < R, got r = " + std::to_string(rb.lower) +
                                                    ", R = " + std::to_string(rb.upper));
  }
}

inline void require_straddling_one(const RatioBounds& rb) {
  if (!rb.straddles_one()) {
    throw Error(ErrorKind::interval_not_straddling_one,
                "need r < 1 < R, got r = " + std::to_string(rb.lower) +
                    ", R = " + std::to_string(rb.upper));
  }
}

}  // namespace detail

/// A_{C_f}(r, R) = (R - r)(f'(R) - f'(r)) / 4.
inline double bound_a(const RatioBounds& rb, const GeneratorFunction& gen) {
  detail::require_proper_interval(rb);
  return 0.25 * (rb.upper - rb.lower) * (gen.d1(rb.upper) - gen.d1(rb.lower));
}

/// B_{C_f}(r, R): the chord of f through r and R evaluated at 1.
inline double bound_b(const RatioBounds& rb, const GeneratorFunction& gen) {
  detail::require_straddling_one(rb);
  const double r = rb.lower;
  const double big_r = rb.upper;
  return ((big_r - 1.0) * gen(r) + (1.0 - r) * gen(big_r)) / (big_r - r);
}

/// Which approximation of C_f a gap bound refers to: E/2 or E*.
enum class GapTarget { half_e, e_star };

constexpr std::string_view to_string(GapTarget target) {
  return target == GapTarget::half_e ? "half_e" : "e_star";
}

/*!
  Bounds on |C_f - E/2| (half_e) or |C_f - E*| (e_star).

  `candidates` are the data-dependent terms
    k(f)[f''(R) - f''(r)] chi^2 / 8,
    c3 ||f'''|| |chi|^3          (c3 = 1/12 or 1/24),
    c1 [f'(R) - f'(r)] V         (c1 = 1 or 1/2),
  and `range_only` the same terms with chi^2, |chi|^3 and V replaced by their
  r,R caps (R - r)^2/4, (R - r)^3/8 and (R - r)/2. Each range_only entry
  therefore dominates the candidate at the same index.
*/
struct GapBounds {
  GapTarget target = GapTarget::half_e;
  double observed_gap = 0.0;
  std::array<double, 3> candidates{};
  double minimum = 0.0;
  std::array<double, 3> range_only{};
  double range_only_minimum = 0.0;
  int k = -1;
  double third_derivative_sup = 0.0;
};

namespace detail {

inline constexpr int monotonicity_samples = 33;
inline constexpr double third_derivative_zero = 1e-14;
inline constexpr int sup_grid_points = 1025;

// k(f): -1 when f'' is decreasing on [r, R] (f''' <= 0), +1 when increasing.
inline int second_derivative_direction(const GeneratorFunction& gen, const RatioBounds& rb) {
  bool has_positive = false;
  bool has_negative = false;
  for (int i = 0; i < monotonicity_samples; ++i) {
    const double x = rb.lower + (rb.upper - rb.lower) * i / (monotonicity_samples - 1);
    const double v = gen.d3(x);
    if (std::abs(v) < third_derivative_zero) continue;
    (v > 0.0 ? has_positive : has_negative) = true;
  }
  if (has_positive && has_negative) {
    throw Error(ErrorKind::non_monotone_second_derivative,
                gen.label() + ": f''' changes sign on [" + std::to_string(rb.lower) + ", " +
                    std::to_string(rb.upper) + "]");
  }
  return has_positive ? 1 : -1;
}

template <typename F>
double golden_section_max(F&& f, double lo, double hi, int iterations = 80) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < iterations && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace detail

/// sup |f'''| over [r, R]: dense grid, then golden-section refinement around the best cell.
inline double third_derivative_sup(const GeneratorFunction& gen, const RatioBounds& rb) {
  const auto magnitude = [&](double x) { return std::abs(gen.d3(x)); };
  const int n = detail::sup_grid_points;
  const double step = (rb.upper - rb.lower) / (n - 1);
  int best = 0;
  double best_value = magnitude(rb.lower);
  for (int i = 1; i < n; ++i) {
    const double x = i == n - 1 ? rb.upper : rb.lower + step * i;
    const double v = magnitude(x);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (step > 0.0) {
    const double lo = rb.lower + step * std::max(best - 1, 0);
    const double hi = std::min(rb.upper, rb.lower + step * std::min(best + 1, n - 1));
    best_value = std::max(best_value, detail::golden_section_max(magnitude, lo, hi));
  }
  return best_value;
}

namespace detail {

// Fills the data-dependent and r,R-only terms given the f''/f'''/f' inputs.
inline void fill_gap_terms(GapBounds& out, const DistributionPair& pair, const RatioBounds& rb,
                           double second_spread, double third_sup, double first_spread) {
  const bool half = out.target == GapTarget::half_e;
  const double c3 = half ? 1.0 / 12.0 : 1.0 / 24.0;
  const double c1 = half ? 1.0 : 0.5;
  const double width = rb.upper - rb.lower;
  const double chi2 = chi_squared(pair);
  const double chi3 = vajda_abs_chi(pair, 3.0);
  const double v = vajda_abs_chi(pair, 1.0);
  out.candidates = {second_spread * chi2 / 8.0, c3 * third_sup * chi3, c1 * first_spread * v};
  out.range_only = {second_spread * width * width / 32.0,
                    c3 * third_sup * width * width * width / 8.0, c1 * first_spread * width / 2.0};
  out.minimum = *std::min_element(out.candidates.begin(), out.candidates.end());
  out.range_only_minimum = *std::min_element(out.range_only.begin(), out.range_only.end());
}

}  // namespace detail

/*!
  Gap bounds for a generic generator whose second derivative is monotone on
  [r, R]. Monotonicity is checked by sampling the sign of f''' only; the
  remaining regularity assumptions (bounded variation, f''' essentially
  bounded) are taken on trust.
*/
inline GapBounds theorem33_bounds(const DistributionPair& pair, const RatioBounds& rb,
                                  const GeneratorFunction& gen, GapTarget target) {
  detail::require_straddling_one(rb);
  GapBounds out;
  out.target = target;
  out.k = detail::second_derivative_direction(gen, rb);
  out.third_derivative_sup = third_derivative_sup(gen, rb);
  const double cf = csiszar_divergence(pair, gen);
  out.observed_gap = target == GapTarget::half_e ? std::abs(cf - 0.5 * dragomir_e(pair, gen))
                                                 : std::abs(cf - dragomir_e_star(pair, gen));
  detail::fill_gap_terms(out, pair, rb, out.k * (gen.d2(rb.upper) - gen.d2(rb.lower)),
                         out.third_derivative_sup, gen.d1(rb.upper) - gen.d1(rb.lower));
  return out;
}

}  // namespace unidiv
