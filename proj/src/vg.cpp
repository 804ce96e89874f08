/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vgmom/vg.hpp"

#include <cmath>
#include <string>

#include "vgmom/errors.hpp"
#include "vgmom/specfun.hpp"

namespace vgmom::vg {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kHalfLnPi = 0.5723649429247000870;  // ln(sqrt(pi))

void require_centered(const VGParams& params, const char* op) {
  if (params.mu() != 0.0)
    throw ValidationError("mu", std::string(op) +
                                    ": moment formulas require mu = 0, got " +
                                    std::to_string(params.mu()));
}

long require_integer_order(double k, const char* op) {
  double n = std::nearbyint(k);
  if (n != k || k < 0.0)
    throw ValidationError("k", std::string(op) +
                                   ": raw moments need integer k >= 0, got " +
                                   std::to_string(k));
  return static_cast<long>(n);
}

// log of (1 - beta^2/alpha^2).
double log_one_minus_skew_sq(const VGParams& p) {
  double ratio = p.beta() / p.alpha();
  return std::log1p(-ratio * ratio);
}

// Shared log prefactor of the absolute-moment formula and its expansion:
// ln[ 2^k Gamma(nu+(k+1)/2) Gamma((k+1)/2) / (sqrt(pi) alpha^k Gamma(nu+1/2)) ].
// Both callers add their own skew-dependent factors; sharing the assembly
// keeps them bit-identical at beta = 0.
double log_abs_prefactor(const VGParams& p, double k) {
  return k * kLn2 - k * std::log(p.alpha()) - kHalfLnPi -
         specfun::log_gamma(p.nu() + 0.5) +
         specfun::log_gamma(p.nu() + 0.5 * (k + 1.0)) +
         specfun::log_gamma(0.5 * (k + 1.0));
}

// Same sharing for the compact raw-moment formula, without the (2 beta/alpha)^m
// factor: ln[ 2^k Gamma(nu+l) Gamma(l) / (sqrt(pi) alpha^k Gamma(nu+1/2)) ].
double log_raw_prefactor(const VGParams& p, long k, double ell) {
  double kd = static_cast<double>(k);
  return kd * kLn2 - kd * std::log(p.alpha()) - kHalfLnPi -
         specfun::log_gamma(p.nu() + 0.5) +
         specfun::log_gamma(p.nu() + ell) + specfun::log_gamma(ell);
}

int check_expansion_order(int order) {
  if (order != 0 && order != 2 && order != 4)
    throw ValidationError("order", "expansion order must be 0, 2 or 4, got " +
                                       std::to_string(order));
  return order;
}

}  // namespace

VGParams::VGParams(double nu, double alpha, double beta, double mu)
    : nu_(nu), alpha_(alpha), beta_(beta), mu_(mu) {
  if (!(nu > -0.5))
    throw ValidationError("nu", "VGParams: requires nu > -1/2, got " +
                                    std::to_string(nu));
  if (!(alpha > 0.0))
    throw ValidationError("alpha", "VGParams: requires alpha > 0, got " +
                                       std::to_string(alpha));
  if (!(std::fabs(beta) < alpha))
    throw ValidationError("beta", "VGParams: requires |beta| < alpha, got "
                                  "beta = " +
                                      std::to_string(beta) + ", alpha = " +
                                      std::to_string(alpha));
  k_star_ = std::max(-1.0, -2.0 * nu - 1.0);
  // ln(alpha^2 - beta^2) as ln(alpha-beta) + ln(alpha+beta): safe for any
  // admissible magnitudes.
  double log_a2_minus_b2 = std::log(alpha - beta) + std::log(alpha + beta);
  log_norm_const_ = (nu + 0.5) * log_a2_minus_b2 - kHalfLnPi -
                    nu * (kLn2 + std::log(alpha)) -
                    specfun::log_gamma(nu + 0.5);
}

std::string to_string(MomentKind kind) {
  return kind == MomentKind::raw ? "raw" : "absolute";
}

std::string to_string(Method method) {
  switch (method) {
    case Method::closed_form: return "closed_form";
    case Method::series_expansion: return "series_expansion";
    case Method::oracle_quadrature: return "oracle_quadrature";
    case Method::oracle_direct_series: return "oracle_direct_series";
    case Method::oracle_monte_carlo: return "oracle_monte_carlo";
  }
  return "?";
}

void MomentQuery::validate_against(const VGParams& params) const {
  if (kind == MomentKind::absolute) {
    if (!(k > params.k_star()))
      throw ValidationError(
          "k", "absolute moment requires k > k_star = " +
                   std::to_string(params.k_star()) + ", got " +
                   std::to_string(k));
  } else {
    require_integer_order(k, "MomentQuery");
  }
}

double moment_ell(long k) {
  return static_cast<double>((k + 1) / 2) + 0.5;  // ceil(k/2) + 1/2
}

SignedLog pdf(const VGParams& params, double x) {
  double t = x - params.mu();
  if (t == 0.0) {
    if (params.nu() <= 0.0)
      throw SingularityError("pdf: density is unbounded at x = mu for nu <= 0");
    double log_limit = params.log_norm_const() + (params.nu() - 1.0) * kLn2 +
                       specfun::log_gamma(params.nu()) -
                       params.nu() * std::log(params.alpha());
    return SignedLog::positive(log_limit);
  }
  double at = std::fabs(t);
  double log_p = params.log_norm_const() + params.beta() * t +
                 params.nu() * std::log(at) +
                 specfun::bessel_k(params.nu(), params.alpha() * at).log_abs;
  return SignedLog::positive(log_p);
}

SignedLog abs_moment(const VGParams& params, double k) {
  require_centered(params, "abs_moment");
  if (!(k > params.k_star()))
    throw ValidationError("k", "abs_moment: requires k > k_star = " +
                                   std::to_string(params.k_star()) +
                                   ", got " + std::to_string(k));
  double r = params.beta() / params.alpha();
  double x = r * r;
  SignedLog f = specfun::hyp2f1(0.5 * (k + 1.0), params.nu() + 0.5 * (k + 1.0),
                                0.5, x);
  double log_val = log_abs_prefactor(params, k) +
                   (params.nu() + 0.5) * log_one_minus_skew_sq(params) +
                   f.log_abs;
  return SignedLog::positive(log_val);
}

SignedLog raw_moment_odd(const VGParams& params, long k) {
  require_centered(params, "raw_moment_odd");
  if (k < 1 || k % 2 == 0)
    throw ValidationError("k", "raw_moment_odd: k must be an odd positive "
                               "integer, got " + std::to_string(k));
  if (params.beta() == 0.0) return SignedLog::zero();
  double kd = static_cast<double>(k);
  double r = params.beta() / params.alpha();
  double x = r * r;
  SignedLog f = specfun::hyp2f1(0.5 * kd + 1.0, params.nu() + 0.5 * kd + 1.0,
                                1.5, x);
  double log_val = (kd + 1.0) * kLn2 + std::log(std::fabs(params.beta())) +
                   (params.nu() + 0.5) * log_one_minus_skew_sq(params) -
                   kHalfLnPi - (kd + 1.0) * std::log(params.alpha()) -
                   specfun::log_gamma(params.nu() + 0.5) +
                   specfun::log_gamma(params.nu() + 0.5 * kd + 1.0) +
                   specfun::log_gamma(0.5 * kd + 1.0) + f.log_abs;
  return SignedLog::with_sign(params.beta() > 0 ? 1 : -1, log_val);
}

SignedLog raw_moment(const VGParams& params, long k) {
  require_centered(params, "raw_moment");
  if (k < 0)
    throw ValidationError("k", "raw_moment: k must be a non-negative integer");
  int m = static_cast<int>(k % 2);
  if (m == 1 && params.beta() == 0.0) return SignedLog::zero();
  double ell = moment_ell(k);
  double r = params.beta() / params.alpha();
  double x = r * r;
  SignedLog f = specfun::hyp2f1(ell, params.nu() + ell, 0.5 + m, x);
  double log_val = log_raw_prefactor(params, k, ell) +
                   (params.nu() + 0.5) * log_one_minus_skew_sq(params) +
                   f.log_abs;
  if (m == 1)
    log_val += kLn2 + std::log(std::fabs(params.beta())) -
               std::log(params.alpha());
  int sign = (m == 1 && params.beta() < 0) ? -1 : 1;
  return SignedLog::with_sign(sign, log_val);
}

SignedLog abs_moment_expansion(const VGParams& params, double k, int order) {
  check_expansion_order(order);
  require_centered(params, "abs_moment_expansion");
  if (!(k > params.k_star()))
    throw ValidationError("k", "abs_moment_expansion: requires k > k_star");
  double nu = params.nu();
  double r = params.beta() / params.alpha();
  double x = r * r;
  double bracket = 1.0;
  if (order >= 2) bracket += 0.5 * k * (k + 2.0 * nu + 2.0) * x;
  if (order >= 4) {
    double c4 = k * (k * k * k + 4.0 * k * k * (nu + 2.0) +
                     4.0 * k * (nu * nu + 3.0 * nu + 4.0) - 8.0 * nu * nu +
                     8.0 * nu + 12.0) / 24.0;
    bracket += c4 * x * x;
  }
  return SignedLog::from_value(bracket)
      .scaled_by_log(log_abs_prefactor(params, k));
}

SignedLog raw_moment_expansion(const VGParams& params, long k, int order) {
  check_expansion_order(order);
  require_centered(params, "raw_moment_expansion");
  if (k < 1)
    throw ValidationError("k", "raw_moment_expansion: k must be a positive "
                               "integer, got " + std::to_string(k));
  int m = static_cast<int>(k % 2);
  if (m == 1 && params.beta() == 0.0) return SignedLog::zero();
  double nu = params.nu();
  double ell = moment_ell(k);
  double r = params.beta() / params.alpha();
  double x = r * r;
  double bracket = 1.0;
  if (order >= 2) {
    double c2 = 2.0 * ell * (ell + nu) / (2.0 * m + 1.0) - nu - 0.5;
    bracket += c2 * x;
  }
  if (order >= 4) {
    double c4 = 2.0 * ell * (ell + 1.0) * (ell + nu) * (ell + nu + 1.0) /
                    (4.0 * m * m + 8.0 * m + 3.0) -
                ell * (2.0 * nu + 1.0) * (ell + nu) / (2.0 * m + 1.0) +
                (4.0 * nu * nu - 1.0) / 8.0;
    bracket += c4 * x * x;
  }
  double log_pre = log_raw_prefactor(params, k, ell);
  if (m == 1)
    log_pre += kLn2 + std::log(std::fabs(params.beta())) -
               std::log(params.alpha());
  SignedLog result = SignedLog::from_value(bracket).scaled_by_log(log_pre);
  if (m == 1 && params.beta() < 0) result = -result;
  return result;
}

}  // namespace vgmom::vg
