/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "vgmom/signed_log.hpp"

namespace vgmom::specfun {

/// ln Gamma(x) for x > 0. Self-contained Lanczos evaluation; see the
/// coefficient table in specfun.cpp.
double log_gamma(double x);

/// Ascending factorial (u)_j = u (u+1) ... (u+j-1), as sign/log-magnitude.
/// (u)_0 = 1.
SignedLog pochhammer_log(double u, long j);

struct Hyp2F1Args {
  double a;
  double b;
  double c;  ///< must not be a non-positive integer
  double x;  ///< in [0, 1)
};

/// Gauss hypergeometric function 2F1(a, b; c; x) on [0, 1).
///
/// Direct power series for x <= 1/2. For x in (1/2, 1) the Euler
/// transformation (1-x)^{c-a-b} 2F1(c-a, c-b; c; x) is applied when the
/// transformed series has the slower-growing terms (a + b > c), which is
/// the case for every in-scope call.
SignedLog hyp2f1(const Hyp2F1Args& args);

inline SignedLog hyp2f1(double a, double b, double c, double x) {
  return hyp2f1(Hyp2F1Args{a, b, c, x});
}

/// Modified Bessel function of the second kind K_nu(x), x > 0.
/// K_{-nu} = K_nu by construction (evaluated at |nu|). Result is returned
/// in log space and never overflows or underflows.
SignedLog bessel_k(double nu, double x);

/// Closed form of the definite integral of t^{r-1} K_nu(t) over (0, inf):
/// 2^{r-2} Gamma((r-nu)/2) Gamma((r+nu)/2), valid for r > |nu|.
SignedLog bessel_k_moment_integral(double r, double nu);

}  // namespace vgmom::specfun
