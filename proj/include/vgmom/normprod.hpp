/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vgmom/signed_log.hpp"
#include "vgmom/vg.hpp"

namespace vgmom::normprod {

/// Mean of n independent products of correlated zero-mean normals:
/// (U, V) bivariate normal with variances (sigma_u^2, sigma_v^2) and
/// correlation rho, Z = UV, and Zbar_n the average of n independent copies.
class ProductNormalParams {
 public:
  ProductNormalParams(double sigma_u, double sigma_v, double rho, long n);

  double sigma_u() const { return sigma_u_; }
  double sigma_v() const { return sigma_v_; }
  double rho() const { return rho_; }
  long n() const { return n_; }
  double s() const { return s_; }  ///< sigma_u * sigma_v

 private:
  double sigma_u_, sigma_v_, rho_;
  long n_;
  double s_;
};

/// The VG representation of Zbar_n:
/// VG((n-1)/2, n/(s(1-rho^2)), n rho/(s(1-rho^2)), 0).
vg::VGParams vg_params_of_product_mean(const ProductNormalParams& p);

/// E|Zbar_n|^k for k > -1, evaluated directly from the product-moment
/// closed form.
SignedLog product_abs_moment(const ProductNormalParams& p, double k);

/// E[Zbar_n^k] for integer k >= 0, evaluated directly.
SignedLog product_raw_moment(const ProductNormalParams& p, long k);

/// The same moments through the VG representation; kept as a permanent
/// second route so either transcription error shows up immediately.
SignedLog product_abs_moment_via_vg(const ProductNormalParams& p, double k);
SignedLog product_raw_moment_via_vg(const ProductNormalParams& p, long k);

}  // namespace vgmom::normprod
