// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test-only reference implementation. Every quantity is evaluated straight
// from its defining formula in binary128 (libquadmath) with plain
// left-to-right sums, sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <quadmath.h>
#include <span>
#include <vector>

namespace oracle {

__extension__ typedef __float128 Real;
using Vec = std::vector<Real>;

inline Vec from(std::span<const double> v) { return Vec(v.begin(), v.end()); }

inline Real chi2(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]) / q[i];
  return s;
}

inline Real kl(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * logq(p[i] / q[i]);
  return s;
}

inline Real rel_j(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * logq((p[i] + q[i]) / (2 * q[i]));
  return s;
}

inline Real rel_js(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * logq(2 * p[i] / (p[i] + q[i]));
  return s;
}

inline Real rel_ag(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += (p[i] + q[i]) / 2 * logq((p[i] + q[i]) / (2 * p[i]));
  }
  return s;
}

inline Real triangular(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]) / (p[i] + q[i]);
  return s;
}

inline Real bhattacharyya(const Vec& p, const Vec& q) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += sqrtq(p[i] * q[i]);
  return s;
}

inline Real vajda(const Vec& p, const Vec& q, Real m) {
  Real s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s += powq(fabsq(p[i] - q[i]), m) / powq(q[i], m - 1);
  }
  return s;
}

inline Real omega(const Vec& p, const Vec& q, Real s) {
  if (s == 0) return rel_js(p, q);
  if (s == 1) return rel_ag(p, q);
  Real acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += p[i] * powq((p[i] + q[i]) / (2 * p[i]), s);
  return (acc - 1) / (s * (s - 1));
}

inline Real phi(const Vec& p, const Vec& q, Real s) {
  if (s == 0) return kl(q, p);
  if (s == 1) return kl(p, q);
  Real acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += powq(p[i], s) * powq(q[i], 1 - s);
  return (acc - 1) / (s * (s - 1));
}

// psi_s and its derivatives, three-branch displays as written.
inline Real psi(Real x, Real s) {
  const Real t = (x + 1) / (2 * x);
  if (s == 0) return (1 - x) / 2 - x * logq(t);
  if (s == 1) return (x - 1) / 2 + (x + 1) / 2 * logq(t);
  return (x * powq(t, s) - x - s * (1 - x) / 2) / (s * (s - 1));
}

inline Real psi_d1(Real x, Real s) {
  const Real t = (x + 1) / (2 * x);
  if (s == 0) return (1 - x) / (2 * (1 + x)) - logq(t);
  if (s == 1) return (1 - 1 / x + logq(t)) / 2;
  return ((powq(t, s) - 1) / s + (1 - powq(t, s - 1) / x) / 2) / (s - 1);
}

inline Real psi_d2(Real x, Real s) {
  return powq((x + 1) / (2 * x), s - 2) / (4 * x * x * x);
}

inline Real psi_d3(Real x, Real s) {
  return -(s + 1 + 3 * x) / (x * x * powq(x + 1, 3)) * powq((x + 1) / (2 * x), s);
}

inline Real e_psi(const Vec& p, const Vec& q, Real s) {
  Real acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) acc += (p[i] - q[i]) * psi_d1(p[i] / q[i], s);
  return acc;
}

inline Real e_star_psi(const Vec& p, const Vec& q, Real s) {
  Real acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += (p[i] - q[i]) * psi_d1((p[i] + q[i]) / (2 * q[i]), s);
  }
  return acc;
}

struct Range {
  Real r;
  Real big_r;
};

inline Range ratio_range(const Vec& p, const Vec& q) {
  Range out{p[0] / q[0], p[0] / q[0]};
  for (std::size_t i = 1; i < p.size(); ++i) {
    out.r = std::min(out.r, p[i] / q[i]);
    out.big_r = std::max(out.big_r, p[i] / q[i]);
  }
  return out;
}

inline Real a_psi(Range rr, Real s) { return (rr.big_r - rr.r) * (psi_d1(rr.big_r, s) - psi_d1(rr.r, s)) / 4; }

inline Real b_psi(Range rr, Real s) {
  return ((rr.big_r - 1) * psi(rr.r, s) + (1 - rr.r) * psi(rr.big_r, s)) / (rr.big_r - rr.r);
}

}  // namespace oracle
