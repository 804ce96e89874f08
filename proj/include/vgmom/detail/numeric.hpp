/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <limits>

namespace vgmom::detail {

/// Kahan compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline double log_cosh(double y) {
  y = std::fabs(y);
  return y + std::log1p(std::exp(-2.0 * y)) - 0.6931471805599453094;
}

/// ln|sinh(y)|; -inf at y = 0.
inline double log_abs_sinh(double y) {
  y = std::fabs(y);
  if (y == 0.0) return -std::numeric_limits<double>::infinity();
  return y + std::log1p(-std::exp(-2.0 * y)) - 0.6931471805599453094;
}

/// Streaming log-sum-exp for nonnegative series: state is ln(sum so far).
inline double log_add(double log_a, double log_b) {
  if (log_a == -std::numeric_limits<double>::infinity()) return log_b;
  if (log_b == -std::numeric_limits<double>::infinity()) return log_a;
  double hi = std::max(log_a, log_b);
  double lo = std::min(log_a, log_b);
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace vgmom::detail
