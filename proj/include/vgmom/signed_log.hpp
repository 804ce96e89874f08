/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "vgmom/errors.hpp"

namespace vgmom {

/// A real number carried as (sign, ln|value|). Moment formulas multiply
/// gamma factors that overflow doubles near k + 2*nu ~ 340, so every
/// quantity of that kind lives in log space and only materializes to a
/// plain double at the edges.
///
/// sign == 0 represents exactly zero; log_abs is then ignored.
struct SignedLog {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLog zero() { return {}; }
  static SignedLog one() { return {1, 0.0}; }

  /// A strictly positive value given by its natural log.
  static SignedLog positive(double log_abs) { return {1, log_abs}; }

  static SignedLog with_sign(int sign, double log_abs) {
    if (sign == 0) return zero();
    return {sign < 0 ? -1 : 1, log_abs};
  }

  static SignedLog from_value(double v) {
    if (v == 0.0) return zero();
    return {v < 0.0 ? -1 : 1, std::log(std::fabs(v))};
  }

  bool is_zero() const { return sign == 0; }

  /// Materialize. Overflows to +-inf, underflows to 0 as usual.
  double value() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
  }

  SignedLog operator-() const { return {-sign, log_abs}; }

  /// Multiply by e^shift without leaving log space.
  SignedLog scaled_by_log(double shift) const {
    if (sign == 0) return zero();
    return {sign, log_abs + shift};
  }

  /// |this|^e. Negative bases need an integer exponent.
  SignedLog pow(double e) const {
    if (sign == 0) {
      if (e > 0) return zero();
      if (e == 0) return one();
      throw NumericalError("SignedLog::pow: zero to a negative power");
    }
    int s = 1;
    if (sign < 0) {
      double n = std::nearbyint(e);
      if (n != e)
        throw NumericalError("SignedLog::pow: negative base needs integer exponent");
      s = (std::fmod(std::fabs(n), 2.0) < 0.5) ? 1 : -1;
    }
    return {s, log_abs * e};
  }
};

inline SignedLog abs(SignedLog a) {
  if (a.sign == 0) return SignedLog::zero();
  return {1, a.log_abs};
}

inline SignedLog operator*(SignedLog a, SignedLog b) {
  if (a.sign == 0 || b.sign == 0) return SignedLog::zero();
  return {a.sign * b.sign, a.log_abs + b.log_abs};
}

inline SignedLog operator/(SignedLog a, SignedLog b) {
  if (b.sign == 0) throw NumericalError("SignedLog division by zero");
  if (a.sign == 0) return SignedLog::zero();
  return {a.sign * b.sign, a.log_abs - b.log_abs};
}

/// Signed log-sum-exp.
inline SignedLog operator+(SignedLog a, SignedLog b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const SignedLog& hi = (a.log_abs >= b.log_abs) ? a : b;
  const SignedLog& lo = (a.log_abs >= b.log_abs) ? b : a;
  double t = hi.sign * lo.sign * std::exp(lo.log_abs - hi.log_abs);
  if (t <= -1.0) return SignedLog::zero();  // exact cancellation
  return {hi.sign, hi.log_abs + std::log1p(t)};
}

inline SignedLog operator-(SignedLog a, SignedLog b) { return a + (-b); }

inline SignedLog& operator+=(SignedLog& a, SignedLog b) { return a = a + b; }
inline SignedLog& operator*=(SignedLog& a, SignedLog b) { return a = a * b; }

/// |a - b| / max(|a|, |b|), evaluated in log space. 0 when both are zero;
/// 1 when exactly one is zero.
inline double relative_deviation(SignedLog a, SignedLog b) {
  SignedLog d = a - b;
  if (d.is_zero()) return 0.0;
  double m = a.is_zero() ? b.log_abs : (b.is_zero() ? a.log_abs : std::max(a.log_abs, b.log_abs));
  return std::exp(d.log_abs - m);
}

/// Decimal rendering with 17 significant digits. Values whose magnitude
/// leaves double range are rendered from the log representation directly.
std::string to_decimal_string(SignedLog v);

/// Inverse of to_decimal_string; also accepts mantissa-exponent strings
/// whose value leaves double range.
SignedLog signed_log_from_decimal(const std::string& s);

}  // namespace vgmom
