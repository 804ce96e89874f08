/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <string>

#include "vgmom/signed_log.hpp"

namespace vgmom::vg {

/// Parameters of the variance-gamma distribution VG(nu, alpha, beta, mu):
/// shape nu > -1/2, scale alpha > 0, skew |beta| < alpha, location mu.
/// Construction validates; instances are immutable afterwards.
class VGParams {
 public:
  VGParams(double nu, double alpha, double beta, double mu = 0.0);

  double nu() const { return nu_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double mu() const { return mu_; }

  /// Existence threshold for absolute moments: E|X|^k is finite exactly
  /// for k > k_star = max(-1, -2 nu - 1).
  double k_star() const { return k_star_; }

  /// Natural log of the normalising constant
  /// M = (alpha^2 - beta^2)^{nu+1/2} / (sqrt(pi) (2 alpha)^nu Gamma(nu+1/2)).
  double log_norm_const() const { return log_norm_const_; }

 private:
  double nu_, alpha_, beta_, mu_;
  double k_star_;
  double log_norm_const_;
};

enum class MomentKind { raw, absolute };
enum class Method {
  closed_form,
  series_expansion,
  oracle_quadrature,
  oracle_direct_series,
  oracle_monte_carlo,
};

std::string to_string(MomentKind kind);
std::string to_string(Method method);

/// One moment request: order k (integer required for raw moments), kind,
/// and the evaluation method.
struct MomentQuery {
  double k = 0.0;
  MomentKind kind = MomentKind::absolute;
  Method method = Method::closed_form;

  /// Throws ValidationError when the order is out of range for the kind.
  void validate_against(const VGParams& params) const;
};

/// ceil(k/2) + 1/2 for integer k >= 0 (the order parameter unifying the
/// even and odd moment formulas).
double moment_ell(long k);

/// Density at x, in log space. For nu <= 0 the density is unbounded at
/// x = mu and a SingularityError is raised there; for nu > 0 the finite
/// limit M 2^{nu-1} Gamma(nu) / alpha^nu is returned.
SignedLog pdf(const VGParams& params, double x);

/// E|X|^k for real k > k_star; requires mu = 0.
SignedLog abs_moment(const VGParams& params, double k);

/// E[X^k] for odd positive integer k; requires mu = 0.
SignedLog raw_moment_odd(const VGParams& params, long k);

/// E[X^k] for integer k >= 0 via the compact even/odd formula;
/// requires mu = 0.
SignedLog raw_moment(const VGParams& params, long k);

/// Small-skew expansion of E|X|^k truncated after (beta/alpha)^order,
/// order in {0, 2, 4}. Exact (same code path) at beta = 0.
SignedLog abs_moment_expansion(const VGParams& params, double k, int order);

/// Small-skew expansion of E[X^k], same truncation orders.
SignedLog raw_moment_expansion(const VGParams& params, long k, int order);

}  // namespace vgmom::vg
