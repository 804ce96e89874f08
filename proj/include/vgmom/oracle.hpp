/*
 * Copyright (c) 2026 vgmom developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vgmom/normprod.hpp"
#include "vgmom/quadrature.hpp"
#include "vgmom/signed_log.hpp"
#include "vgmom/vg.hpp"

namespace vgmom::oracle {

inline constexpr std::uint64_t kDefaultSeed = 0x5667206d6f6d656eULL;

struct MonteCarloSettings {
  long long sample_count = 10'000'000;
  std::uint64_t seed = kDefaultSeed;
  int batch_count = 100;  ///< batches double as independent RNG streams
  int threads = 0;        ///< 0 = hardware concurrency

  void validate() const;
};

/// Independent ground truth for moments: adaptive quadrature of the density
/// integrand. Absolute kind integrates M e^{beta t} |t|^{nu+k} K_nu(alpha|t|)
/// over the real line; raw kind carries t^k instead of |t|^k. The two
/// half-lines are combined analytically into a cosh (even part) or sinh
/// (odd part) factor, which keeps the odd raw moments free of cancellation.
QuadratureResult moment_by_quadrature(const vg::VGParams& params, double k,
                                      vg::MomentKind kind,
                                      const QuadratureSettings& settings = {});

/// Quadrature of t^{r-1} K_nu(t) over (0, inf); the numerical side of the
/// closed form in specfun::bessel_k_moment_integral.
QuadratureResult bessel_moment_integral_by_quadrature(
    double r, double nu, const QuadratureSettings& settings = {});

/// The term-by-term series for the moments (the identity behind the closed
/// forms), summed directly in log space. Requires |beta/alpha| <= 0.95.
SignedLog moment_by_direct_series(const vg::VGParams& params, double k,
                                  vg::MomentKind kind);

/// Fills `out` with means of n products of correlated zero-mean normals,
/// deterministically from (seed, stream).
void sample_product_mean(const normprod::ProductNormalParams& p,
                         std::uint64_t seed, std::uint64_t stream,
                         std::span<double> out);

struct MonteCarloResult {
  SignedLog value;
  double standard_error = 0.0;  ///< batch standard error, in value units
};

/// Batch-mean Monte Carlo estimate of the product-mean moment.
MonteCarloResult moment_by_monte_carlo(const normprod::ProductNormalParams& p,
                                       double k, vg::MomentKind kind,
                                       const MonteCarloSettings& settings = {});

/// Batch-mean Monte Carlo estimate for a general VG law, sampled through
/// the gamma variance-mean mixture X = beta W + sqrt(W) eps,
/// W ~ Gamma(nu + 1/2, (alpha^2 - beta^2)/2).
MonteCarloResult moment_by_monte_carlo(const vg::VGParams& params, double k,
                                       vg::MomentKind kind,
                                       const MonteCarloSettings& settings = {});

// ---------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------

struct VerifyCase {
  VerifyCase(std::string label,
             std::variant<vg::VGParams, normprod::ProductNormalParams> params,
             double k, vg::MomentKind kind, std::vector<vg::Method> methods)
      : label(std::move(label)),
        params(std::move(params)),
        k(k),
        kind(kind),
        methods(std::move(methods)) {}

  std::string label;
  std::variant<vg::VGParams, normprod::ProductNormalParams> params;
  double k = 0.0;
  vg::MomentKind kind = vg::MomentKind::absolute;
  std::vector<vg::Method> methods;
  double tolerance = 1e-7;  ///< deterministic pairwise bound
  double mc_sigma = 4.0;    ///< Monte Carlo band half-width, in SEs
  /// Externally known value (e.g. an Isserlis reduction) compared like a
  /// deterministic method.
  std::optional<SignedLog> expected;
  QuadratureSettings quadrature;
  MonteCarloSettings monte_carlo;
};

struct MethodResult {
  vg::Method method = vg::Method::closed_form;
  std::string detail;  ///< distinguishes dual closed-form routes etc.
  SignedLog value;
  double rel_uncertainty = 0.0;  ///< quadrature: achieved relative error
  double standard_error = 0.0;   ///< Monte Carlo batch SE, in value units
  bool is_monte_carlo = false;
  std::string error;  ///< non-empty when the method failed
  bool ok = true;
};

struct VerificationReport {
  std::string label;
  double k = 0.0;
  vg::MomentKind kind = vg::MomentKind::absolute;
  double tolerance = 1e-7;
  std::vector<MethodResult> results;
  double max_pairwise_rel_dev = 0.0;  ///< over deterministic pairs
  double max_mc_sigma = 0.0;          ///< worst |deviation| / SE over MC pairs
  bool passed = false;
  std::string note;
};

/// Runs every requested method per query; per-query errors are recorded in
/// the report instead of aborting the batch. Reports come back in input
/// order. A report passes iff every deterministic pair deviates by at most
/// `tolerance` (relative, log-space) and every Monte Carlo pair lies within
/// `mc_sigma` standard errors.
std::vector<VerificationReport> verify(const std::vector<VerifyCase>& cases);

/// Named suites backing `vgmom verify --suite <name>`:
/// "grid", "corollary", "expansion", "specfun".
std::vector<VerificationReport> run_suite(const std::string& name);

}  // namespace vgmom::oracle
