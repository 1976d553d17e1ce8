// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace unidiv {

/*!
  Neumaier's variant of Kahan summation. The running compensation also
  captures the error when the incoming term is larger than the partial sum,
  which plain Kahan summation loses.
*/
template <typename Value = double>
class CompensatedSum {
 public:
  constexpr CompensatedSum& operator+=(Value term) {
    const Value t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      compensation_ += (sum_ - t) + term;
    } else {
      compensation_ += (term - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  constexpr Value value() const { return sum_ + compensation_; }

 private:
  Value sum_{0};
  Value compensation_{0};
};

/// Sums `term(i)` for i in [0, n) in index order with compensation.
template <typename Term>
double compensated_sum(std::size_t n, Term&& term) {
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < n; ++i) acc += term(i);
  return acc.value();
}

}  // namespace unidiv
