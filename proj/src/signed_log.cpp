/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vgmom/signed_log.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace vgmom {

namespace {

constexpr long double kLn10 = 2.302585092994045684017991454684364L;

}  // namespace

std::string to_decimal_string(SignedLog v) {
  if (v.sign == 0) return "0";
  if (std::fabs(v.log_abs) <= 700.0) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.value());
    return buf;
  }
  // Outside double range: split into mantissa and decimal exponent using
  // long double so the round-trip stays tight.
  long double l10 = static_cast<long double>(v.log_abs) / kLn10;
  long double e10 = std::floor(l10);
  long double mant = std::exp((l10 - e10) * kLn10);
  if (mant >= 10.0L) {  // guard against floor/exp rounding at the seam
    mant /= 10.0L;
    e10 += 1.0L;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%.17Lge%+.0Lf", v.sign < 0 ? "-" : "",
                mant, e10);
  return buf;
}

SignedLog signed_log_from_decimal(const std::string& s) {
  if (s.empty()) throw ValidationError("value", "empty decimal string");
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(d) &&
      !(d == 0.0 && s != "0" && s != "-0" && s.find_first_not_of("+-0.eE") !=
                                                 std::string::npos)) {
    return SignedLog::from_value(d);
  }
  // Out-of-double-range rendering: parse mantissa and exponent separately.
  auto epos = s.find_first_of("eE");
  if (epos == std::string::npos)
    throw ValidationError("value", "unparseable decimal string: " + s);
  double mant = 0.0;
  auto [mp, mec] = std::from_chars(s.data(), s.data() + epos, mant);
  long exp10 = std::strtol(s.c_str() + epos + 1, nullptr, 10);
  if (mec != std::errc() || mp != s.data() + epos || mant == 0.0)
    throw ValidationError("value", "unparseable decimal string: " + s);
  long double log_abs = std::log(std::fabs(static_cast<long double>(mant))) +
                        static_cast<long double>(exp10) * kLn10;
  return SignedLog::with_sign(mant < 0 ? -1 : 1,
                              static_cast<double>(log_abs));
}

}  // namespace vgmom
