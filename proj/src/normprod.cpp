/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include "vgmom/normprod.hpp"

#include <cmath>
#include <string>

#include "vgmom/errors.hpp"
#include "vgmom/specfun.hpp"

namespace vgmom::normprod {

namespace {

constexpr double kLn2 = 0.6931471805599453094;
constexpr double kHalfLnPi = 0.5723649429247000870;

}  // namespace

ProductNormalParams::ProductNormalParams(double sigma_u, double sigma_v,
                                         double rho, long n)
    : sigma_u_(sigma_u), sigma_v_(sigma_v), rho_(rho), n_(n) {
  if (!(sigma_u > 0.0))
    throw ValidationError("sigma_u", "ProductNormalParams: sigma_u must be "
                                     "positive, got " + std::to_string(sigma_u));
  if (!(sigma_v > 0.0))
    throw ValidationError("sigma_v", "ProductNormalParams: sigma_v must be "
                                     "positive, got " + std::to_string(sigma_v));
  if (!(std::fabs(rho) < 1.0))
    throw ValidationError("rho", "ProductNormalParams: requires |rho| < 1 "
                                 "(rho = +-1 degenerates the VG "
                                 "representation), got " + std::to_string(rho));
  if (n < 1)
    throw ValidationError("n", "ProductNormalParams: n must be a positive "
                               "integer, got " + std::to_string(n));
  s_ = sigma_u * sigma_v;
}

vg::VGParams vg_params_of_product_mean(const ProductNormalParams& p) {
  double denom = p.s() * (1.0 - p.rho() * p.rho());
  double nd = static_cast<double>(p.n());
  return vg::VGParams(0.5 * (nd - 1.0), nd / denom, nd * p.rho() / denom, 0.0);
}

SignedLog product_abs_moment(const ProductNormalParams& p, double k) {
  if (!(k > -1.0))
    throw ValidationError("k", "product_abs_moment: requires k > -1, got " +
                                   std::to_string(k));
  double nd = static_cast<double>(p.n());
  double rho2 = p.rho() * p.rho();
  SignedLog f = specfun::hyp2f1(0.5 * (k + 1.0), 0.5 * (nd + k), 0.5, rho2);
  double log_val = k * (kLn2 + std::log(p.s()) - std::log(nd)) +
                   (0.5 * nd + k) * std::log1p(-rho2) - kHalfLnPi -
                   specfun::log_gamma(0.5 * nd) +
                   specfun::log_gamma(0.5 * (nd + k)) +
                   specfun::log_gamma(0.5 * (k + 1.0)) + f.log_abs;
  return SignedLog::positive(log_val);
}

SignedLog product_raw_moment(const ProductNormalParams& p, long k) {
  if (k < 0)
    throw ValidationError("k", "product_raw_moment: k must be a non-negative "
                               "integer, got " + std::to_string(k));
  int m = static_cast<int>(k % 2);
  if (m == 1 && p.rho() == 0.0) return SignedLog::zero();
  double nd = static_cast<double>(p.n());
  double kd = static_cast<double>(k);
  double ell = vg::moment_ell(k);
  double rho2 = p.rho() * p.rho();
  SignedLog f = specfun::hyp2f1(ell, 0.5 * (nd - 1.0) + ell, 0.5 + m, rho2);
  double log_val = kd * (kLn2 + std::log(p.s()) - std::log(nd)) +
                   (0.5 * nd + kd) * std::log1p(-rho2) - kHalfLnPi -
                   specfun::log_gamma(0.5 * nd) +
                   specfun::log_gamma(0.5 * (nd - 1.0) + ell) +
                   specfun::log_gamma(ell) + f.log_abs;
  if (m == 1) log_val += kLn2 + std::log(std::fabs(p.rho()));
  int sign = (m == 1 && p.rho() < 0) ? -1 : 1;
  return SignedLog::with_sign(sign, log_val);
}

SignedLog product_abs_moment_via_vg(const ProductNormalParams& p, double k) {
  return vg::abs_moment(vg_params_of_product_mean(p), k);
}

SignedLog product_raw_moment_via_vg(const ProductNormalParams& p, long k) {
  return vg::raw_moment(vg_params_of_product_mean(p), k);
}

}  // namespace vgmom::normprod
