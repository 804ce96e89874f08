/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <functional>
#include <vector>

#include "vgmom/signed_log.hpp"

namespace vgmom::oracle {

struct QuadratureSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300;  ///< floor on the absolute error, in value units
  int max_subdivisions = 2000;

  void validate() const;
};

struct QuadratureResult {
  SignedLog value;       ///< nonnegative for a nonnegative integrand
  double rel_error = 0;  ///< achieved error estimate relative to |value|
  int panels = 0;
};

/// Adaptive Gauss-Kronrod 7/15 integration of a nonnegative integrand
/// given by its natural log (-inf where the integrand vanishes) over
/// [a, b]. The integrand is never evaluated at the endpoints, so integrable
/// endpoint singularities are tolerated. Panel sums factor out the local
/// log maximum, so integrands spanning hundreds of orders of magnitude are
/// handled without overflow.
///
/// `seeds` (optional) adds interior panel boundaries, e.g. around a known
/// peak. Throws ToleranceError when the subdivision budget is exhausted
/// before the requested tolerance is met.
QuadratureResult integrate_log(const std::function<double(double)>& log_f,
                               double a, double b,
                               const QuadratureSettings& settings = {},
                               const std::vector<double>& seeds = {});

}  // namespace vgmom::oracle
