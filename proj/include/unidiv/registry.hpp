// SPDX-License-Identifier: Apache-2.0
#pragma once

// Name-based access to the measure catalog. Parametric measures use a colon
// suffix: vajda:3, phi:0.5, omega:-0.5.

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "unidiv/error.hpp"
#include "unidiv/measures.hpp"
#include "unidiv/simplex.hpp"
#include "unidiv/type_s.hpp"

namespace unidiv {

struct MeasureSpec {
  std::string base;
  std::optional<double> parameter;

  std::string name() const;
};

struct DivergenceValue {
  std::string measure_id;
  double value;
};

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline std::string MeasureSpec::name() const {
  return parameter ? base + ":" + format_double(*parameter) : base;
}

inline bool is_parametric_measure(std::string_view base) {
  return base == "vajda" || base == "phi" || base == "omega";
}

inline bool is_known_measure(std::string_view base) {
  for (std::string_view known : {"chi2", "kl", "rel_j", "rel_js", "rel_ag", "delta", "bhat",
                                 "hellinger", "psi_sym", "j", "i", "t"}) {
    if (base == known) return true;
  }
  return is_parametric_measure(base);
}

/// Parses "kl", "omega:-0.5", ...; a parametric name without suffix keeps an empty parameter.
inline MeasureSpec parse_measure(std::string_view text) {
  MeasureSpec spec;
  const auto colon = text.find(':');
  spec.base = std::string(text.substr(0, colon));
  if (!is_known_measure(spec.base)) {
    throw Error(ErrorKind::unknown_measure, "unknown measure '" + std::string(text) + "'");
  }
  if (colon != std::string_view::npos) {
    if (!is_parametric_measure(spec.base)) {
      throw Error(ErrorKind::unknown_measure, "measure '" + spec.base + "' takes no parameter");
    }
    const auto arg = text.substr(colon + 1);
    double value = 0.0;
    const auto res = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (res.ec != std::errc{} || res.ptr != arg.data() + arg.size() || !std::isfinite(value)) {
      throw Error(ErrorKind::unknown_measure, "bad parameter in '" + std::string(text) + "'");
    }
    spec.parameter = value;
  }
  return spec;
}

inline DivergenceValue evaluate_measure(const DistributionPair& pair, const MeasureSpec& spec) {
  const std::string& b = spec.base;
  double value = 0.0;
  if (is_parametric_measure(b) && !spec.parameter) {
    throw Error(ErrorKind::unknown_measure, "measure '" + b + "' needs a parameter, e.g. " + b + ":1");
  }
  if (b == "chi2") value = chi_squared(pair);
  else if (b == "kl") value = relative_information(pair);
  else if (b == "rel_j") value = relative_j_divergence(pair);
  else if (b == "rel_js") value = relative_js_divergence(pair);
  else if (b == "rel_ag") value = relative_ag_divergence(pair);
  else if (b == "delta") value = triangular_discrimination(pair);
  else if (b == "bhat") value = bhattacharyya(pair);
  else if (b == "hellinger") value = hellinger(pair);
  else if (b == "psi_sym") value = symmetric_divergence(pair, SymmetricMeasure::psi);
  else if (b == "j") value = symmetric_divergence(pair, SymmetricMeasure::j);
  else if (b == "i") value = symmetric_divergence(pair, SymmetricMeasure::i);
  else if (b == "t") value = symmetric_divergence(pair, SymmetricMeasure::t);
  else if (b == "vajda") value = vajda_abs_chi(pair, *spec.parameter);
  else if (b == "phi") value = phi_s(pair, *spec.parameter);
  else if (b == "omega") value = omega_s(pair, *spec.parameter);
  else throw Error(ErrorKind::unknown_measure, "unknown measure '" + b + "'");
  return {spec.name(), value};
}

}  // namespace unidiv
